use std::collections::BTreeSet;

use thiserror::Error;

use super::EdgeMap;
use crate::circuits::{attached_circuit, is_circuit, Circuit};
use crate::connectivity::{cutpoints, is_k_connected, two_disjoint_paths};
use crate::graph::{EdgeId, EdgeSet, Graph, Path, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypeXError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("invalid type-X witness: {0}")]
    InvalidWitness(String),
}

/// Two vertex-disjoint circuits joined by two edges and a path.
///
/// `e1 = (a[0], b[0])` and `e2 = (a[1], b[1])`; `path` runs from `a[2]` on
/// `circuit_a` to `b[2]` on `circuit_b` and meets the circuits only at its
/// ends. `e1`, `e2` and `e3` (any edge of `path`) are the connectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeXWitness {
    pub circuit_a: Circuit,
    pub circuit_b: Circuit,
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub path: Path,
    pub e3: EdgeId,
    pub a: [VertexId; 3],
    pub b: [VertexId; 3],
}

impl TypeXWitness {
    pub fn connectors(&self) -> [EdgeId; 3] {
        [self.e1, self.e2, self.e3]
    }

    /// Checks the configuration inside `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        for (name, c) in [("A", &self.circuit_a), ("B", &self.circuit_b)] {
            if !is_circuit(g, c.edges()).map_err(|e| e.to_string())? {
                return Err(format!("{name} is not a circuit"));
            }
        }
        let on_a: BTreeSet<VertexId> = self.circuit_a.vertices(g).into_iter().collect();
        let on_b: BTreeSet<VertexId> = self.circuit_b.vertices(g).into_iter().collect();
        if !on_a.is_disjoint(&on_b) {
            return Err("circuits share a vertex".into());
        }
        let distinct = |xs: &[VertexId; 3]| xs[0] != xs[1] && xs[1] != xs[2] && xs[0] != xs[2];
        if !distinct(&self.a) || !self.a.iter().all(|v| on_a.contains(v)) {
            return Err("a1, a2, a3 are not distinct vertices of A".into());
        }
        if !distinct(&self.b) || !self.b.iter().all(|v| on_b.contains(v)) {
            return Err("b1, b2, b3 are not distinct vertices of B".into());
        }
        for (i, e) in [self.e1, self.e2].into_iter().enumerate() {
            g.check_edge(e).map_err(|e| e.to_string())?;
            let (x, y) = g.endpoints(e);
            if BTreeSet::from([x, y]) != BTreeSet::from([self.a[i], self.b[i]]) {
                return Err(format!("e{} does not join a{} and b{}", i + 1, i + 1, i + 1));
            }
        }
        self.path.validate(g).map_err(|e| e.to_string())?;
        if self.path.start() != self.a[2] || self.path.end() != self.b[2] {
            return Err("path does not run from a3 to b3".into());
        }
        let inner = &self.path.vertices()[1..self.path.vertices().len() - 1];
        if inner.iter().any(|v| on_a.contains(v) || on_b.contains(v)) {
            return Err("path meets a circuit away from its ends".into());
        }
        if !self.path.edges().contains(&self.e3) {
            return Err("e3 is not on the path".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeXOutcome {
    /// A type-X subgraph whose three connectors all come from the cut.
    TypeX(Box<TypeXWitness>),
    /// A circuit using at least four cut edges.
    BigCircuit(Circuit),
}

impl TypeXOutcome {
    /// Validates the outcome against `g` and the `cut` it was built from.
    pub fn validate(&self, g: &Graph, cut: &EdgeSet) -> Result<(), String> {
        match self {
            TypeXOutcome::TypeX(x) => {
                x.validate(g)?;
                if x.connectors().iter().all(|&e| cut.contains(e)) {
                    Ok(())
                } else {
                    Err("a connector lies outside the cut".into())
                }
            }
            TypeXOutcome::BigCircuit(c) => {
                if !is_circuit(g, c.edges()).map_err(|e| e.to_string())? {
                    return Err("not a circuit".into());
                }
                let used = c.edges().intersection_len(cut);
                if used >= 4 {
                    Ok(())
                } else {
                    Err(format!("circuit uses only {used} cut edges"))
                }
            }
        }
    }
}

fn violation(msg: &str) -> TypeXError {
    TypeXError::HypothesisViolation(msg.to_string())
}

/// For a 3-connected `g` and an independent edge cut `cut` splitting it into
/// exactly two components: a type-X subgraph with connectors from `cut`, or
/// a circuit through at least four cut edges.
///
/// When both sides are 2-connected, three cut edges `(aᵢ, bᵢ)` are chosen;
/// on each side a circuit through the first two endpoints plus a path
/// attaching the third gives the two circuits and the bridging path.
/// Otherwise a side has a cutpoint `v`; two vertices separated by `v` in
/// that side are joined by two disjoint paths in `g - v`, each of which
/// must cross the cut twice.
pub fn find_type_x_or_big_circuit(g: &Graph, cut: &EdgeSet) -> Result<TypeXOutcome, TypeXError> {
    g.check_host(cut).map_err(|e| violation(&e.to_string()))?;
    if !is_k_connected(g, 3) {
        return Err(violation("graph is not 3-connected"));
    }
    if !cut.is_independent(g) {
        return Err(violation("cut edges are not independent"));
    }
    let (rest, _) = g.delete_edges(cut).map_err(|e| violation(&e.to_string()))?;
    let blocks = rest.components();
    if blocks.len() != 2 {
        return Err(violation(&format!(
            "deleting the cut leaves {} components, not two",
            blocks.len()
        )));
    }
    let side_of = |v: VertexId| usize::from(blocks[0].binary_search(&v).is_err());
    let mut crossing = Vec::new();
    for e in cut.iter() {
        let (x, y) = g.endpoints(e);
        match (side_of(x), side_of(y)) {
            (0, 1) => crossing.push((e, x, y)),
            (1, 0) => crossing.push((e, y, x)),
            _ => return Err(violation(&format!("cut edge {} does not cross", g.describe_edge(e)))),
        }
    }

    let (first, _) = g.induced_subgraph(&blocks[0]);
    let (second, _) = g.induced_subgraph(&blocks[1]);
    let outcome = if is_k_connected(&first, 2) && is_k_connected(&second, 2) {
        if crossing.len() < 3 {
            return Err(violation("fewer than three cut edges"));
        }
        type_x_from_sides(g, &first, &second, &crossing[..3])?
    } else {
        let side = if is_k_connected(&first, 2) { &second } else { &first };
        big_circuit_around_cutpoint(g, side)?
    };
    outcome
        .validate(g, cut)
        .map_err(|msg| TypeXError::InvalidWitness(format!("internal construction error: {msg}")))?;
    Ok(outcome)
}

fn lift_vertex(g: &Graph, sub: &Graph, v: VertexId) -> VertexId {
    g.vertex(sub.label(v)).expect("subgraph labels exist in the parent")
}

fn sink_vertex(g: &Graph, sub: &Graph, v: VertexId) -> VertexId {
    sub.vertex(g.label(v)).expect("vertex lies in the subgraph")
}

fn lift_path(g: &Graph, sub: &Graph, p: &Path) -> Vec<VertexId> {
    p.vertices().iter().map(|&v| lift_vertex(g, sub, v)).collect()
}

fn lift_circuit(g: &Graph, sub: &Graph, c: &Circuit) -> Circuit {
    let ids = c.edges().iter().map(|e| {
        let (x, y) = sub.endpoints(e);
        g.edge_between(lift_vertex(g, sub, x), lift_vertex(g, sub, y))
            .expect("subgraph edges exist in the parent")
    });
    Circuit::new(g, g.edge_set(ids).expect("valid ids")).expect("a circuit of a subgraph is a circuit")
}

fn type_x_from_sides(
    g: &Graph,
    first: &Graph,
    second: &Graph,
    picked: &[(EdgeId, VertexId, VertexId)],
) -> Result<TypeXOutcome, TypeXError> {
    let side = |sub: &Graph, ends: [VertexId; 3]| {
        let [x, y, z] = ends.map(|v| sink_vertex(g, sub, v));
        attached_circuit(sub, x, y, z).map_err(|e| violation(&format!("side construction failed: {e}")))
    };
    let a_ends = [picked[0].1, picked[1].1, picked[2].1];
    let b_ends = [picked[0].2, picked[1].2, picked[2].2];
    let on_first = side(first, a_ends)?;
    let on_second = side(second, b_ends)?;

    let a3 = lift_vertex(g, first, on_first.attach);
    let b3 = lift_vertex(g, second, on_second.attach);
    let mut route = lift_path(g, first, &on_first.path.reversed());
    route.extend(lift_path(g, second, &on_second.path));
    let path = Path::from_vertices(g, route).map_err(|e| violation(&format!("bridging path: {e}")))?;

    Ok(TypeXOutcome::TypeX(Box::new(TypeXWitness {
        circuit_a: lift_circuit(g, first, &on_first.circuit),
        circuit_b: lift_circuit(g, second, &on_second.circuit),
        e1: picked[0].0,
        e2: picked[1].0,
        path,
        e3: picked[2].0,
        a: [a_ends[0], a_ends[1], a3],
        b: [b_ends[0], b_ends[1], b3],
    })))
}

fn big_circuit_around_cutpoint(g: &Graph, side: &Graph) -> Result<TypeXOutcome, TypeXError> {
    let cut_vertex = *cutpoints(side)
        .iter()
        .next()
        .ok_or_else(|| violation("side is neither 2-connected nor has a cutpoint"))?;
    let pieces = side.components_avoiding(&[cut_vertex]);
    if pieces.len() < 2 {
        return Err(violation("cutpoint does not separate its side"));
    }
    let x = lift_vertex(g, side, pieces[0][0]);
    let y = lift_vertex(g, side, pieces[1][0]);
    let v = lift_vertex(g, side, cut_vertex);
    let (p, q) = two_disjoint_paths(g, x, y, &[v]).map_err(|e| violation(&e.to_string()))?;
    let set = g
        .edge_set(p.edges().iter().chain(q.edges()).copied())
        .expect("path edges are valid");
    let circuit = Circuit::new(g, set).map_err(|e| violation(&e.to_string()))?;
    Ok(TypeXOutcome::BigCircuit(circuit))
}

/// Whether the images of connectors `e1` and `e2` share no endpoint.
///
/// For a genuine circuit injection this always holds; `false` means the map
/// was not actually verified.
pub fn check_connector_images_nonadjacent(f: &EdgeMap, x: &TypeXWitness) -> Result<bool, TypeXError> {
    x.validate(f.source()).map_err(TypeXError::InvalidWitness)?;
    let t = f.target();
    let (p, q) = t.endpoints(f.image(x.e1));
    let img2 = f.image(x.e2);
    Ok(!t.is_incident(img2, p) && !t.is_incident(img2, q))
}
