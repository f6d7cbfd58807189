use thiserror::Error;

use super::EdgeMap;
use crate::circuits::{enumerate_circuits, is_circuit, sample_circuits, Circuit, CircuitError, DEFAULT_MAX_CIRCUITS};
use crate::graph::EdgeSet;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("graph has more than {limit} circuits; use sampled mode")]
    TooManyCircuits { limit: usize },
}

/// How circuits of the source are chosen for checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every circuit, up to `max_circuits` of them.
    Exhaustive { max_circuits: usize },
    /// `count` circuits drawn from `seed`. A pass only means no
    /// counterexample was found.
    Sampled { count: usize, seed: u64 },
}

impl Mode {
    pub fn exhaustive() -> Mode {
        Mode::Exhaustive {
            max_circuits: DEFAULT_MAX_CIRCUITS,
        }
    }
}

/// Evidence that a map does not preserve circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A source circuit whose image is not a circuit of the target.
    ImageNotCircuit { circuit: Circuit, image: EdgeSet },
    /// A target circuit whose preimage is not a circuit of the source.
    PreimageNotCircuit { circuit: Circuit, preimage: EdgeSet },
}

impl Witness {
    /// Re-checks the witness from scratch against `f`.
    pub fn confirm(&self, f: &EdgeMap) -> bool {
        match self {
            Witness::ImageNotCircuit { circuit, image } => {
                is_circuit(f.source(), circuit.edges()).unwrap_or(false)
                    && f.image_set(circuit.edges()).ok().as_ref() == Some(image)
                    && !is_circuit(f.target(), image).unwrap_or(true)
            }
            Witness::PreimageNotCircuit { circuit, preimage } => {
                is_circuit(f.target(), circuit.edges()).unwrap_or(false)
                    && f.preimage_set(circuit.edges()).ok().as_ref() == Some(preimage)
                    && !is_circuit(f.source(), preimage).unwrap_or(true)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

fn circuits_for(g: &crate::graph::Graph, mode: Mode) -> Result<Vec<Circuit>, VerifyError> {
    match mode {
        Mode::Exhaustive { max_circuits } => enumerate_circuits(g, max_circuits).map_err(|e| match e {
            CircuitError::TooManyCircuits { limit } => VerifyError::TooManyCircuits { limit },
            other => unreachable!("enumeration only fails on size: {other}"),
        }),
        Mode::Sampled { count, seed } => Ok(sample_circuits(g, count, seed)),
    }
}

/// Checks that every circuit of the source maps onto a circuit of the
/// target. In exhaustive mode the witness is the first failing circuit in
/// canonical order.
pub fn is_circuit_injection(f: &EdgeMap, mode: Mode) -> Result<Verdict, VerifyError> {
    for circuit in circuits_for(f.source(), mode)? {
        let image = f.image_set(circuit.edges()).expect("circuit lives on the source");
        if !is_circuit(f.target(), &image).expect("image lives on the target") {
            return Ok(Verdict::Fail(Witness::ImageNotCircuit { circuit, image }));
        }
    }
    Ok(Verdict::Pass)
}

/// Circuits map to circuits in both directions. Always exhaustive.
pub fn is_circuit_isomorphism(f: &EdgeMap, max_circuits: usize) -> Result<Verdict, VerifyError> {
    let mode = Mode::Exhaustive { max_circuits };
    let forward = is_circuit_injection(f, mode)?;
    if !forward.is_pass() {
        return Ok(forward);
    }
    for circuit in circuits_for(f.target(), mode)? {
        let preimage = f.preimage_set(circuit.edges()).expect("circuit lives on the target");
        if !is_circuit(f.source(), &preimage).expect("preimage lives on the source") {
            return Ok(Verdict::Fail(Witness::PreimageNotCircuit { circuit, preimage }));
        }
    }
    Ok(Verdict::Pass)
}
