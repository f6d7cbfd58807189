//! Graph and edge-map constructions: the theta-to-bipartite counterexample
//! family, permutation-induced maps, a catalog of small named graphs and
//! random 3-connected graphs.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::connectivity::is_k_connected;
use crate::edge_maps::{EdgeMap, MapError};
use crate::graph::{EdgeId, Graph, GraphError, VertexId};
use crate::rng;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("{0} is not a prime greater than 2")]
    InvalidPrime(u64),
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("could not generate a 3-connected graph on {n} vertices: {reason}")]
    GenerationFailed { n: usize, reason: String },
    #[error("not a permutation of the vertex set")]
    NotABijection,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// An odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterexampleParams {
    p: u64,
}

impl CounterexampleParams {
    pub fn new(p: u64) -> Result<Self, GeneratorError> {
        let prime = p >= 3 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if prime {
            Ok(CounterexampleParams { p })
        } else {
            Err(GeneratorError::InvalidPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// A 2-connected source, a `p`-connected target and a circuit injection
/// between them that is not induced by any vertex map.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub source: Graph,
    pub target: Graph,
    pub map: EdgeMap,
}

fn theta_vertex(i: usize, k: usize, p: usize) -> String {
    match k {
        0 => "u".to_string(),
        k if k == p => "w".to_string(),
        k => format!("x_{i}_{k}"),
    }
}

/// `p` internally disjoint `u`–`w` paths of `p` edges each.
///
/// Edge `e_{i,j}` (id `i·p + j`) is the `j`-th edge of path `i` counted from
/// `u`, joining `x_{i}_{j}` and `x_{i}_{j+1}`, where `x_{i}_0 = u` and
/// `x_{i}_p = w`.
pub fn theta_graph(p: usize) -> Result<Graph, GeneratorError> {
    if p < 2 {
        return Err(GeneratorError::UnknownName(format!("theta{p}")));
    }
    let mut vertices = vec!["u".to_string(), "w".to_string()];
    for i in 0..p {
        for k in 1..p {
            vertices.push(theta_vertex(i, k, p));
        }
    }
    let mut edges = Vec::with_capacity(p * p);
    for i in 0..p {
        for j in 0..p {
            edges.push((theta_vertex(i, j, p), theta_vertex(i, j + 1, p)));
        }
    }
    Ok(Graph::build(vertices, edges)?)
}

/// Complete bipartite graph on `b_0..b_{p-1}` and `c_0..c_{p-1}`, edge
/// `(b_j, c_k)` at id `j·p + k`.
fn bipartite_bc(p: usize) -> Result<Graph, GraphError> {
    let vertices = (0..p).map(|j| format!("b_{j}")).chain((0..p).map(|k| format!("c_{k}")));
    let edges: Vec<(String, String)> = (0..p)
        .flat_map(|j| (0..p).map(move |k| (format!("b_{j}"), format!("c_{k}"))))
        .collect();
    Graph::build(vertices, edges)
}

/// Maps `e_{i,j}` of the theta graph to `(b_j, c_{(i+j) mod p})` of the
/// complete bipartite graph.
pub fn build_sanders_counterexample(params: CounterexampleParams) -> Result<Counterexample, GeneratorError> {
    let p = usize::try_from(params.p).map_err(|_| GeneratorError::InvalidPrime(params.p))?;
    let source = theta_graph(p)?;
    let target = bipartite_bc(p)?;
    let assignment = (0..p)
        .flat_map(|i| (0..p).map(move |j| EdgeId(j * p + (i + j) % p)))
        .collect();
    let map = EdgeMap::new(source.clone(), target.clone(), assignment)?;
    Ok(Counterexample { source, target, map })
}

/// The map from `g` onto its copy relabeled by `perm`: vertex `v` becomes
/// the label of `perm[v]`, and every edge keeps its id.
pub fn permuted_edge_map(g: &Graph, perm: &[VertexId]) -> Result<EdgeMap, GeneratorError> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|v| v.0 >= n || std::mem::replace(&mut seen[v.0], true)) {
        return Err(GeneratorError::NotABijection);
    }
    let target = Graph::build(
        g.labels().iter().cloned(),
        g.edge_ids().map(|e| {
            let (u, v) = g.endpoints(e);
            (g.label(perm[u.0]), g.label(perm[v.0]))
        }),
    )?;
    Ok(EdgeMap::new(g.clone(), target, g.edge_ids().collect())?)
}

/// A uniformly shuffled permutation of `g`'s vertices.
pub fn random_permutation(g: &Graph, seed: u64) -> Vec<VertexId> {
    let mut perm: Vec<VertexId> = g.vertices().collect();
    perm.shuffle(&mut rng::seeded(seed));
    perm
}

/// The named graphs in the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    /// `K_n` on `"0".."n-1"`.
    Complete(usize),
    /// `K_{m,n}` on `l_*` and `r_*`.
    CompleteBipartite(usize, usize),
    /// Hub `h` joined to every vertex of the rim cycle `r_0..r_{n-1}`.
    Wheel(usize),
    /// Two triangles `a_*`, `b_*` joined by the matching `a_i b_i`.
    Prism,
    /// The 3-cube on bit strings `000..111`.
    Cube,
    Theta(usize),
    /// Two bowties (centres `hl`, `hr`) joined by a 4-edge matching; the
    /// matching edges are the last four ids.
    DoubleBowtie,
}

impl FromStr for NamedGraph {
    type Err = GeneratorError;

    /// Accepts `K4`, `K3,3`, `W5`, `prism`, `cube` (or `Q3`), `theta3`,
    /// `double-bowtie`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GeneratorError::UnknownName(s.to_string());
        let lower = s.to_ascii_lowercase();
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        match lower.as_str() {
            "prism" => return Ok(NamedGraph::Prism),
            "cube" | "q3" => return Ok(NamedGraph::Cube),
            "double-bowtie" | "double_bowtie" => return Ok(NamedGraph::DoubleBowtie),
            _ => {}
        }
        if let Some(rest) = lower.strip_prefix("theta") {
            return Ok(NamedGraph::Theta(num(rest.trim_start_matches('_'))?));
        }
        if let Some(rest) = lower.strip_prefix('w') {
            return Ok(NamedGraph::Wheel(num(rest.trim_start_matches('_'))?));
        }
        if let Some(rest) = lower.strip_prefix('k') {
            let rest = rest.trim_start_matches('_');
            return match rest.split_once(',') {
                Some((m, n)) => Ok(NamedGraph::CompleteBipartite(num(m)?, num(n)?)),
                None => Ok(NamedGraph::Complete(num(rest)?)),
            };
        }
        Err(unknown())
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Complete(n) => write!(f, "K{n}"),
            NamedGraph::CompleteBipartite(m, n) => write!(f, "K{m},{n}"),
            NamedGraph::Wheel(n) => write!(f, "W{n}"),
            NamedGraph::Prism => write!(f, "prism"),
            NamedGraph::Cube => write!(f, "cube"),
            NamedGraph::Theta(p) => write!(f, "theta{p}"),
            NamedGraph::DoubleBowtie => write!(f, "double-bowtie"),
        }
    }
}

pub fn named_graph(name: &NamedGraph) -> Result<Graph, GeneratorError> {
    let bad = || GeneratorError::UnknownName(name.to_string());
    let g = match *name {
        NamedGraph::Complete(n) => {
            if n == 0 {
                return Err(bad());
            }
            let edges: Vec<(String, String)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i.to_string(), j.to_string())))
                .collect();
            Graph::build((0..n).map(|i| i.to_string()), edges)?
        }
        NamedGraph::CompleteBipartite(m, n) => {
            if m == 0 || n == 0 {
                return Err(bad());
            }
            let vertices = (0..m).map(|i| format!("l_{i}")).chain((0..n).map(|j| format!("r_{j}")));
            let edges: Vec<(String, String)> = (0..m)
                .flat_map(|i| (0..n).map(move |j| (format!("l_{i}"), format!("r_{j}"))))
                .collect();
            Graph::build(vertices, edges)?
        }
        NamedGraph::Wheel(n) => {
            if n < 3 {
                return Err(bad());
            }
            let rim = |i: usize| format!("r_{}", i % n);
            let mut edges: Vec<(String, String)> = (0..n).map(|i| (rim(i), rim(i + 1))).collect();
            edges.extend((0..n).map(|i| ("h".to_string(), rim(i))));
            Graph::build(std::iter::once("h".to_string()).chain((0..n).map(rim)), edges)?
        }
        NamedGraph::Prism => Graph::build(
            ["a_0", "a_1", "a_2", "b_0", "b_1", "b_2"],
            [
                ("a_0", "a_1"),
                ("a_1", "a_2"),
                ("a_2", "a_0"),
                ("b_0", "b_1"),
                ("b_1", "b_2"),
                ("b_2", "b_0"),
                ("a_0", "b_0"),
                ("a_1", "b_1"),
                ("a_2", "b_2"),
            ],
        )?,
        NamedGraph::Cube => {
            let label = |x: usize| format!("{x:03b}");
            let edges: Vec<(String, String)> = (0..8usize)
                .flat_map(|x| {
                    [1usize, 2, 4]
                        .into_iter()
                        .filter(move |bit| x & bit == 0)
                        .map(move |bit| (label(x), label(x | bit)))
                })
                .collect();
            Graph::build((0..8).map(label), edges)?
        }
        NamedGraph::Theta(p) => theta_graph(p)?,
        NamedGraph::DoubleBowtie => Graph::build(
            ["hl", "l_0", "l_1", "l_2", "l_3", "hr", "r_0", "r_1", "r_2", "r_3"],
            [
                ("hl", "l_0"),
                ("l_0", "l_1"),
                ("l_1", "hl"),
                ("hl", "l_2"),
                ("l_2", "l_3"),
                ("l_3", "hl"),
                ("hr", "r_0"),
                ("r_0", "r_1"),
                ("r_1", "hr"),
                ("hr", "r_2"),
                ("r_2", "r_3"),
                ("r_3", "hr"),
                ("l_0", "r_0"),
                ("l_1", "r_2"),
                ("l_2", "r_1"),
                ("l_3", "r_3"),
            ],
        )?,
    };
    Ok(g)
}

/// A random 3-connected graph on vertices `"0".."n-1"`.
///
/// Shuffled Hamiltonian cycle, then random chords until every degree is at
/// least three, then further chords until the connectivity check passes.
/// Deterministic for a given seed.
pub fn random_three_connected(n: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if n < 4 {
        return Err(GeneratorError::GenerationFailed {
            n,
            reason: "fewer than four vertices".into(),
        });
    }
    let mut rng = rng::seeded(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut adjacent = vec![vec![false; n]; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    fn add(u: usize, v: usize, adjacent: &mut [Vec<bool>], edges: &mut Vec<(usize, usize)>) {
        adjacent[u][v] = true;
        adjacent[v][u] = true;
        edges.push((u, v));
    }
    for i in 0..n {
        add(order[i], order[(i + 1) % n], &mut adjacent, &mut edges);
    }
    let budget = n * n;
    let build = |edges: &[(usize, usize)]| {
        Graph::build(
            (0..n).map(|i| i.to_string()),
            edges.iter().map(|&(u, v)| (u.to_string(), v.to_string())),
        )
    };
    let mut tries = 0;
    loop {
        let min_degree = (0..n)
            .map(|v| adjacent[v].iter().filter(|&&b| b).count())
            .min()
            .unwrap_or(0);
        if min_degree >= 3 {
            let g = build(&edges)?;
            if is_k_connected(&g, 3) {
                return Ok(g);
            }
        }
        tries += 1;
        if tries > budget {
            return Err(GeneratorError::GenerationFailed {
                n,
                reason: "chord budget exhausted".into(),
            });
        }
        // prefer a chord at a low-degree vertex while degrees are short
        let u = if min_degree < 3 {
            let low: Vec<usize> = (0..n)
                .filter(|&v| adjacent[v].iter().filter(|&&b| b).count() < 3)
                .collect();
            low[rng.gen_range(0..low.len())]
        } else {
            rng.gen_range(0..n)
        };
        let free: Vec<usize> = (0..n).filter(|&v| v != u && !adjacent[u][v]).collect();
        if free.is_empty() {
            continue;
        }
        let v = free[rng.gen_range(0..free.len())];
        add(u, v, &mut adjacent, &mut edges);
    }
}

/// A random 2-connected graph on `"0".."n-1"`: a shuffled Hamiltonian cycle
/// plus `chords` random chords.
pub fn random_two_connected(n: usize, chords: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::GenerationFailed {
            n,
            reason: "fewer than three vertices".into(),
        });
    }
    let mut rng = rng::seeded(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !pairs.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)))
        .collect();
    candidates.shuffle(&mut rng);
    pairs.extend(candidates.into_iter().take(chords));
    Ok(Graph::build(
        (0..n).map(|i| i.to_string()),
        pairs.iter().map(|&(u, v)| (u.to_string(), v.to_string())),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::enumerate_circuits;

    #[test]
    fn prime_parameter() {
        assert!(CounterexampleParams::new(3).is_ok());
        assert!(CounterexampleParams::new(5).is_ok());
        assert!(CounterexampleParams::new(7).is_ok());
        for bad in [0, 1, 2, 4, 9, 15] {
            assert!(matches!(
                CounterexampleParams::new(bad),
                Err(GeneratorError::InvalidPrime(_))
            ));
        }
    }

    #[test]
    fn counterexample_sizes() {
        let ce = build_sanders_counterexample(CounterexampleParams::new(3).unwrap()).unwrap();
        assert_eq!(ce.source.vertex_count(), 8);
        assert_eq!(ce.source.edge_count(), 9);
        assert_eq!(enumerate_circuits(&ce.source, 100).unwrap().len(), 3);
        assert_eq!(ce.target.vertex_count(), 6);
        assert_eq!(ce.target.edge_count(), 9);

        let ce = build_sanders_counterexample(CounterexampleParams::new(5).unwrap()).unwrap();
        assert_eq!(ce.source.vertex_count(), 22);
        assert_eq!(ce.source.edge_count(), 25);
        assert_eq!(enumerate_circuits(&ce.source, 100).unwrap().len(), 10);
        assert_eq!(ce.target.vertex_count(), 10);
    }

    #[test]
    fn counterexample_assignment_matches_formula() {
        let p = 5;
        let ce = build_sanders_counterexample(CounterexampleParams::new(p as u64).unwrap()).unwrap();
        for i in 0..p {
            for j in 0..p {
                let e = EdgeId(i * p + j);
                let (x, y) = ce.source.endpoint_labels(e);
                assert_eq!(x, theta_vertex(i, j, p));
                assert_eq!(y, theta_vertex(i, j + 1, p));
                let (b, c) = ce.target.endpoint_labels(ce.map.image(e));
                assert_eq!(b, format!("b_{j}"));
                assert_eq!(c, format!("c_{}", (i + j) % p));
            }
        }
    }

    #[test]
    fn theta_matches_counterexample_source() {
        let ce = build_sanders_counterexample(CounterexampleParams::new(3).unwrap()).unwrap();
        assert_eq!(named_graph(&NamedGraph::Theta(3)).unwrap(), ce.source);
    }

    #[test]
    fn catalog() {
        let k4 = named_graph(&"K4".parse().unwrap()).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        let prism = named_graph(&"prism".parse().unwrap()).unwrap();
        assert_eq!((prism.vertex_count(), prism.edge_count()), (6, 9));
        assert!(is_k_connected(&prism, 3));
        let k33 = named_graph(&"K3,3".parse().unwrap()).unwrap();
        assert_eq!(k33.edge_count(), 9);
        let w5 = named_graph(&"W5".parse().unwrap()).unwrap();
        assert_eq!((w5.vertex_count(), w5.edge_count()), (6, 10));
        let q3 = named_graph(&"Q3".parse().unwrap()).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        assert!(is_k_connected(&q3, 3));
        let bowties = named_graph(&NamedGraph::DoubleBowtie).unwrap();
        assert_eq!(bowties.edge_count(), 16);
        assert!(is_k_connected(&bowties, 3));
        assert!("dodecahedron".parse::<NamedGraph>().is_err());
        assert!(named_graph(&NamedGraph::Wheel(2)).is_err());
    }

    #[test]
    fn permuted_maps() {
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let id: Vec<VertexId> = k4.vertices().collect();
        let f = permuted_edge_map(&k4, &id).unwrap();
        assert_eq!(f, EdgeMap::identity(k4.clone()).unwrap());
        assert!(matches!(
            permuted_edge_map(&k4, &[VertexId(0); 4]),
            Err(GeneratorError::NotABijection)
        ));
        let tri = named_graph(&NamedGraph::Complete(3)).unwrap();
        let f = permuted_edge_map(&tri, &[VertexId(1), VertexId(0), VertexId(2)]).unwrap();
        assert_eq!(f.target().endpoint_labels(EdgeId(0)), ("1", "0"));
    }

    #[test]
    fn random_generation() {
        let k4 = random_three_connected(4, 99).unwrap();
        assert_eq!(k4.edge_count(), 6);
        let g = random_three_connected(6, 1).unwrap();
        assert!(is_k_connected(&g, 3));
        assert_eq!(g, random_three_connected(6, 1).unwrap());
        assert!(matches!(
            random_three_connected(3, 1),
            Err(GeneratorError::GenerationFailed { .. })
        ));
        let h = random_two_connected(7, 3, 5).unwrap();
        assert!(is_k_connected(&h, 2));
        assert_eq!(h.edge_count(), 10);
    }
}
