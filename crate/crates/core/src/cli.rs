//! Command-line front end.
//!
//! Every command prints one JSON report on stdout (unless `--quiet`) with
//! at least `command`, `result` and `elapsed_ms`. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | pass / success |
//! | 1 | input error (unreadable or invalid files, bad arguments) |
//! | 2 | verification failed |
//! | 3 | edge map not induced by a vertex isomorphism |
//! | 4 | precondition failed |

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::circuits::{enumerate_circuits, CircuitError, DEFAULT_MAX_CIRCUITS};
use crate::edge_maps::{
    classify_star_image, classify_star_preimage, decompose_by_star_preimage, find_type_x_or_big_circuit,
    is_circuit_injection, is_circuit_isomorphism, reconstruct_unguarded, reconstruct_vertex_isomorphism,
    DecomposeError, EdgeMap, Mode, ReconstructError, StarImageClass, TypeXError, TypeXOutcome, Verdict, VerifyError,
    ViolationWitness, Witness,
};
use crate::generators::{
    build_sanders_counterexample, named_graph, permuted_edge_map, random_permutation, random_three_connected,
    CounterexampleParams, NamedGraph,
};
use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_NOT_INDUCED: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "circmap",
    version,
    about = "Verify circuit-preserving edge maps between graphs"
)]
struct Cli {
    /// Suppress the JSON report; the exit code carries the verdict.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the map sends every circuit of SOURCE to a circuit of TARGET.
    Verify {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        /// Circuits to draw in sampled mode.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_CIRCUITS)]
        max_circuits: usize,
        /// Also require preimages of target circuits to be circuits.
        #[arg(long)]
        isomorphism: bool,
    },
    /// Recover the vertex isomorphism inducing the map.
    Reconstruct {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        /// Skip the 3-connectivity precondition.
        #[arg(long)]
        unguarded: bool,
    },
    /// Classify the image of every source star (or preimage of every target star).
    Classify {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        #[arg(long)]
        preimage: bool,
        /// Only this vertex.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Split SOURCE along the preimage of the star at VERTEX of TARGET.
    Decompose {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Find a type-X subgraph or a circuit through four cut edges.
    Typex {
        graph: PathBuf,
        /// JSON list of endpoint pairs, e.g. [["a","b"],["c","d"]].
        cut: PathBuf,
    },
    /// List every circuit of a graph.
    Circuits {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_CIRCUITS)]
        max_circuits: usize,
    },
    /// Write generated graphs and maps as JSON files.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Subcommand, Debug)]
enum GenerateKind {
    /// Theta graph, complete bipartite graph and the injection between them.
    Counterexample {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: String,
    },
    /// A graph from the catalog (K4, K3,3, W5, prism, cube, theta3, double-bowtie).
    Named {
        name: String,
        #[arg(long)]
        out: String,
    },
    /// A random 3-connected graph.
    Random3c {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: String,
    },
    /// A relabeled copy of GRAPH and the map onto it.
    Permuted {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: String,
    },
}

/// A finished command: exit code plus report body.
struct Outcome {
    code: i32,
    report: Map<String, Value>,
}

impl Outcome {
    fn new(code: i32, result: &str) -> Self {
        let mut report = Map::new();
        report.insert("result".into(), json!(result));
        Outcome { code, report }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.report.insert(key.into(), value);
        self
    }
}

/// Input problems: reported on stderr with exit code 1.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(outcome) => {
            if !cli.quiet {
                let mut report = outcome.report;
                report.insert("command".into(), json!(name));
                report.insert("elapsed_ms".into(), json!(started.elapsed().as_millis() as u64));
                let text = serde_json::to_string_pretty(&Value::Object(report)).expect("report serializes");
                let _ = writeln!(out, "{text}");
            }
            outcome.code
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Reconstruct { .. } => "reconstruct",
        Command::Classify { .. } => "classify",
        Command::Decompose { .. } => "decompose",
        Command::Typex { .. } => "typex",
        Command::Circuits { .. } => "circuits",
        Command::Generate { .. } => "generate",
    }
}

fn read(path: &FsPath) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_graph(path: &FsPath) -> Result<Graph, InputError> {
    Graph::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_map(source: &FsPath, target: &FsPath, map: &FsPath) -> Result<EdgeMap, InputError> {
    let s = load_graph(source)?;
    let t = load_graph(target)?;
    EdgeMap::from_json(s, t, &read(map)?).map_err(|e| InputError(format!("{}: {e}", map.display())))
}

fn pair(g: &Graph, e: EdgeId) -> Value {
    let (a, b) = g.endpoint_labels(e);
    json!([a, b])
}

fn pairs(g: &Graph, set: &EdgeSet) -> Value {
    Value::Array(set.iter().map(|e| pair(g, e)).collect())
}

fn labels(g: &Graph, vs: &[VertexId]) -> Value {
    Value::Array(vs.iter().map(|&v| json!(g.label(v))).collect())
}

fn class_json(g: &Graph, class: &StarImageClass) -> Value {
    match class {
        StarImageClass::StarAt(w) => json!({"kind": "star", "center": g.label(*w)}),
        StarImageClass::IndependentSet => json!({"kind": "independent"}),
        StarImageClass::Violation(ViolationWitness::Straggler {
            adjacent,
            shared,
            straggler,
        }) => json!({
            "kind": "violation",
            "adjacent": [pair(g, adjacent.0), pair(g, adjacent.1)],
            "shared": g.label(*shared),
            "straggler": pair(g, *straggler),
        }),
        StarImageClass::Violation(ViolationWitness::PartialStar { center, extra }) => json!({
            "kind": "violation",
            "center": g.label(*center),
            "missing": pair(g, *extra),
        }),
    }
}

fn verdict_outcome(f: &EdgeMap, verdict: Verdict) -> Outcome {
    match verdict {
        Verdict::Pass => Outcome::new(EXIT_PASS, "pass").with("witness", Value::Null),
        Verdict::Fail(Witness::ImageNotCircuit { circuit, image }) => Outcome::new(EXIT_FAIL, "fail").with(
            "witness",
            json!({
                "direction": "forward",
                "circuit": pairs(f.source(), circuit.edges()),
                "image": pairs(f.target(), &image),
            }),
        ),
        Verdict::Fail(Witness::PreimageNotCircuit { circuit, preimage }) => Outcome::new(EXIT_FAIL, "fail").with(
            "witness",
            json!({
                "direction": "backward",
                "circuit": pairs(f.target(), circuit.edges()),
                "preimage": pairs(f.source(), &preimage),
            }),
        ),
    }
}

fn too_many(limit: usize) -> Outcome {
    Outcome::new(EXIT_PRECONDITION, "precondition_failed").with("reason", json!(format!("more than {limit} circuits")))
}

fn dispatch(command: Command) -> Result<Outcome, InputError> {
    match command {
        Command::Verify {
            source,
            target,
            map,
            mode,
            samples,
            seed,
            max_circuits,
            isomorphism,
        } => {
            let f = load_map(&source, &target, &map)?;
            let (mode, mode_json) = match mode {
                ModeArg::Exhaustive => (Mode::Exhaustive { max_circuits }, json!("exhaustive")),
                ModeArg::Sampled => {
                    if isomorphism {
                        return Err(InputError("--isomorphism requires exhaustive mode".into()));
                    }
                    (
                        Mode::Sampled { count: samples, seed },
                        json!({"sampled": {"count": samples, "seed": seed}}),
                    )
                }
            };
            let verdict = if isomorphism {
                is_circuit_isomorphism(&f, max_circuits)
            } else {
                is_circuit_injection(&f, mode)
            };
            let check = if isomorphism { "isomorphism" } else { "injection" };
            Ok(match verdict {
                Ok(v) => verdict_outcome(&f, v),
                Err(VerifyError::TooManyCircuits { limit }) => too_many(limit),
            }
            .with("mode", mode_json)
            .with("check", json!(check)))
        }

        Command::Reconstruct {
            source,
            target,
            map,
            unguarded,
        } => {
            let f = load_map(&source, &target, &map)?;
            let result = if unguarded {
                reconstruct_unguarded(&f)
            } else {
                reconstruct_vertex_isomorphism(&f)
            };
            Ok(match result {
                Ok(iso) => Outcome::new(EXIT_PASS, "induced").with("lambda", json!(iso.to_label_map(&f))),
                Err(ReconstructError::NotThreeConnected) => Outcome::new(EXIT_PRECONDITION, "precondition_failed")
                    .with("reason", json!("source graph is not 3-connected")),
                Err(ReconstructError::NotInduced { label, class, .. }) => Outcome::new(EXIT_NOT_INDUCED, "not_induced")
                    .with(
                        "witness",
                        json!({"vertex": label, "class": class_json(f.target(), &class)}),
                    ),
                Err(ReconstructError::Map(e)) => return Err(e.into()),
                Err(other) => {
                    Outcome::new(EXIT_NOT_INDUCED, "not_induced").with("witness", json!({"reason": other.to_string()}))
                }
            })
        }

        Command::Classify {
            source,
            target,
            map,
            preimage,
            vertex,
        } => {
            let f = load_map(&source, &target, &map)?;
            let (home, away) = if preimage {
                (f.target(), f.source())
            } else {
                (f.source(), f.target())
            };
            let picked: Vec<VertexId> = match vertex {
                Some(l) => vec![home.vertex(&l)?],
                None => home.vertices().collect(),
            };
            let mut entries = Map::new();
            let mut violation = false;
            for v in picked {
                let class = if preimage {
                    classify_star_preimage(&f, v)
                } else {
                    classify_star_image(&f, v)
                };
                let value = match class {
                    Ok(c) => {
                        violation |= c.is_violation();
                        class_json(away, &c)
                    }
                    Err(e) => json!({"kind": "error", "reason": e.to_string()}),
                };
                entries.insert(home.label(v).to_string(), value);
            }
            let outcome = if violation {
                Outcome::new(EXIT_FAIL, "violation")
            } else {
                Outcome::new(EXIT_PASS, "ok")
            };
            Ok(outcome
                .with("direction", json!(if preimage { "preimage" } else { "image" }))
                .with("classes", Value::Object(entries)))
        }

        Command::Decompose {
            source,
            target,
            map,
            vertex,
        } => {
            let f = load_map(&source, &target, &map)?;
            let w = f.target().vertex(&vertex)?;
            Ok(match decompose_by_star_preimage(&f, w) {
                Ok(d) => Outcome::new(EXIT_PASS, "ok")
                    .with("first", labels(f.source(), &d.first))
                    .with("second", labels(f.source(), &d.second))
                    .with("crossing", pairs(f.source(), &d.crossing)),
                Err(e @ (DecomposeError::ComponentCount { .. } | DecomposeError::NonCrossingEdge { .. })) => {
                    Outcome::new(EXIT_FAIL, "fail").with("reason", json!(e.to_string()))
                }
                Err(DecomposeError::Map(e)) => return Err(e.into()),
                Err(e) => Outcome::new(EXIT_PRECONDITION, "precondition_failed").with("reason", json!(e.to_string())),
            })
        }

        Command::Typex { graph, cut } => {
            let g = load_graph(&graph)?;
            let raw: Vec<[String; 2]> = serde_json::from_str(&read(&cut)?)?;
            let mut ids = Vec::with_capacity(raw.len());
            for [u, v] in &raw {
                let e = g
                    .edge_between(g.vertex(u)?, g.vertex(v)?)
                    .ok_or_else(|| InputError(format!("no edge ({u}, {v})")))?;
                ids.push(e);
            }
            let cut = g.edge_set(ids)?;
            Ok(match find_type_x_or_big_circuit(&g, &cut) {
                Ok(TypeXOutcome::TypeX(x)) => Outcome::new(EXIT_PASS, "type_x").with(
                    "witness",
                    json!({
                        "circuit_a": pairs(&g, x.circuit_a.edges()),
                        "circuit_b": pairs(&g, x.circuit_b.edges()),
                        "e1": pair(&g, x.e1),
                        "e2": pair(&g, x.e2),
                        "e3": pair(&g, x.e3),
                        "path": labels(&g, x.path.vertices()),
                        "a": labels(&g, &x.a),
                        "b": labels(&g, &x.b),
                    }),
                ),
                Ok(TypeXOutcome::BigCircuit(c)) => Outcome::new(EXIT_PASS, "big_circuit").with(
                    "witness",
                    json!({"circuit": pairs(&g, c.edges()), "cut_edges": c.edges().intersection_len(&cut)}),
                ),
                Err(TypeXError::HypothesisViolation(msg)) => {
                    Outcome::new(EXIT_PRECONDITION, "precondition_failed").with("reason", json!(msg))
                }
                Err(e @ TypeXError::InvalidWitness(_)) => {
                    Outcome::new(EXIT_FAIL, "fail").with("reason", json!(e.to_string()))
                }
            })
        }

        Command::Circuits { graph, max_circuits } => {
            let g = load_graph(&graph)?;
            Ok(match enumerate_circuits(&g, max_circuits) {
                Ok(all) => Outcome::new(EXIT_PASS, "ok").with("count", json!(all.len())).with(
                    "circuits",
                    Value::Array(all.iter().map(|c| pairs(&g, c.edges())).collect()),
                ),
                Err(CircuitError::TooManyCircuits { limit }) => too_many(limit),
                Err(e) => return Err(e.into()),
            })
        }

        Command::Generate { kind } => generate(kind),
    }
}

fn write_file(path: String, contents: &str) -> Result<Value, InputError> {
    fs::write(&path, contents).map_err(|e| InputError(format!("{path}: {e}")))?;
    Ok(json!(path))
}

fn generate(kind: GenerateKind) -> Result<Outcome, InputError> {
    let (kind_name, files) = match kind {
        GenerateKind::Counterexample { p, out } => {
            let ce = build_sanders_counterexample(CounterexampleParams::new(p)?)?;
            let files = vec![
                write_file(format!("{out}.source.json"), &ce.source.to_json())?,
                write_file(format!("{out}.target.json"), &ce.target.to_json())?,
                write_file(format!("{out}.map.json"), &ce.map.to_json())?,
            ];
            ("counterexample", files)
        }
        GenerateKind::Named { name, out } => {
            let g = named_graph(&name.parse::<NamedGraph>()?)?;
            ("named", vec![write_file(format!("{out}.graph.json"), &g.to_json())?])
        }
        GenerateKind::Random3c { n, seed, out } => {
            let g = random_three_connected(n, seed)?;
            ("random3c", vec![write_file(format!("{out}.graph.json"), &g.to_json())?])
        }
        GenerateKind::Permuted { graph, seed, out } => {
            let g = load_graph(&graph)?;
            let perm = random_permutation(&g, seed);
            let f = permuted_edge_map(&g, &perm)?;
            let table: std::collections::BTreeMap<&str, &str> =
                g.vertices().map(|v| (g.label(v), g.label(perm[v.0]))).collect();
            let mut perm_text = serde_json::to_string_pretty(&json!({ "permutation": table }))?;
            perm_text.push('\n');
            let files = vec![
                write_file(format!("{out}.target.json"), &f.target().to_json())?,
                write_file(format!("{out}.map.json"), &f.to_json())?,
                write_file(format!("{out}.perm.json"), &perm_text)?,
            ];
            ("permuted", files)
        }
    };
    Ok(Outcome::new(EXIT_PASS, "ok")
        .with("kind", json!(kind_name))
        .with("files", Value::Array(files)))
}
