//! Brute-force oracles shared by the integration tests. They only read the
//! graph through its vertex count, edge count and edge endpoints.

#![allow(dead_code)]

use std::collections::BTreeSet;

use circmap::circuits::AttachedCircuit;
use circmap::edge_maps::TypeXWitness;
use circmap::generators::{named_graph, random_two_connected, NamedGraph};
use circmap::{EdgeId, Graph, VertexId};
use itertools::Itertools;
use rand::seq::index::sample;

pub fn corpus() -> Vec<(&'static str, Graph)> {
    [
        ("K4", NamedGraph::Complete(4)),
        ("K5", NamedGraph::Complete(5)),
        ("W5", NamedGraph::Wheel(5)),
        ("W6", NamedGraph::Wheel(6)),
        ("prism", NamedGraph::Prism),
        ("Q3", NamedGraph::Cube),
        ("K3,3", NamedGraph::CompleteBipartite(3, 3)),
    ]
    .into_iter()
    .map(|(name, which)| (name, named_graph(&which).unwrap()))
    .collect()
}

fn ends(g: &Graph, e: usize) -> (usize, usize) {
    let (u, v) = g.endpoints(EdgeId(e));
    (u.0, v.0)
}

/// Number of connected components after deleting `gone` vertices and
/// `cut` edges.
pub fn component_count(g: &Graph, gone: &[usize], cut: &[usize]) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in 0..g.edge_count() {
        let (u, v) = ends(g, e);
        if cut.contains(&e) || gone.contains(&u) || gone.contains(&v) {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru] = rv;
    }
    (0..n)
        .filter(|v| !gone.contains(v))
        .map(|v| find(&mut parent, v))
        .collect::<BTreeSet<_>>()
        .len()
}

/// More than `k` vertices and no set of fewer than `k` vertices separates.
pub fn oracle_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return k == 0;
    }
    (0..k).all(|size| {
        (0..n)
            .combinations(size)
            .all(|gone| component_count(g, &gone, &[]) == 1)
    })
}

pub fn oracle_cutpoints(g: &Graph) -> BTreeSet<usize> {
    let base = component_count(g, &[], &[]);
    (0..g.vertex_count())
        .filter(|&v| {
            let isolated = (0..g.edge_count()).all(|e| {
                let (a, b) = ends(g, e);
                a != v && b != v
            });
            // an isolated vertex vanishes with its own component
            component_count(g, &[v], &[]) > base - usize::from(isolated)
        })
        .collect()
}

/// Every touched vertex has degree two and the touched edges are connected.
pub fn oracle_is_circuit(g: &Graph, edges: &[usize]) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut degree = vec![0usize; g.vertex_count()];
    for &e in edges {
        let (u, v) = ends(g, e);
        degree[u] += 1;
        degree[v] += 1;
    }
    if degree.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    let start = ends(g, edges[0]).0;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &e in edges {
            let (u, v) = ends(g, e);
            let y = if u == x {
                v
            } else if v == x {
                u
            } else {
                continue;
            };
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == degree.iter().filter(|&&d| d == 2).count()
}

/// All circuits, by filtering the powerset of the edges.
pub fn oracle_circuits(g: &Graph) -> BTreeSet<Vec<usize>> {
    let m = g.edge_count();
    assert!(m <= 20, "powerset oracle is for small graphs");
    (1u32..(1 << m))
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|set| oracle_is_circuit(g, set))
        .collect()
}

pub fn ids(set: impl IntoIterator<Item = EdgeId>) -> Vec<usize> {
    let mut v: Vec<usize> = set.into_iter().map(|e| e.0).collect();
    v.sort_unstable();
    v
}

fn vertices_of(g: &Graph, edges: &[usize]) -> BTreeSet<usize> {
    edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = ends(g, e);
            [u, v]
        })
        .collect()
}

/// The vertex sequence is a simple path whose edge list matches it.
fn check_path(g: &Graph, vs: &[VertexId], es: &[EdgeId]) -> Result<(), String> {
    if vs.is_empty() || es.len() + 1 != vs.len() {
        return Err("path shape".into());
    }
    if vs.iter().collect::<BTreeSet<_>>().len() != vs.len() {
        return Err("path repeats a vertex".into());
    }
    for (i, e) in es.iter().enumerate() {
        let (u, v) = ends(g, e.0);
        if BTreeSet::from([u, v]) != BTreeSet::from([vs[i].0, vs[i + 1].0]) {
            return Err(format!("path edge {i} does not join its vertices"));
        }
    }
    Ok(())
}

/// Full postcondition of the circuit-plus-attached-path construction.
pub fn check_attached(g: &Graph, a: VertexId, b: VertexId, c: VertexId, out: &AttachedCircuit) -> Result<(), String> {
    let circuit = ids(out.circuit.edges().iter());
    if !oracle_is_circuit(g, &circuit) {
        return Err("not a circuit".into());
    }
    let on = vertices_of(g, &circuit);
    if !on.contains(&a.0) || !on.contains(&b.0) {
        return Err("circuit misses a or b".into());
    }
    let vs = out.path.vertices();
    check_path(g, vs, out.path.edges())?;
    if vs[0] != c || *vs.last().unwrap() != out.attach {
        return Err("path endpoints".into());
    }
    if !on.contains(&out.attach.0) {
        return Err("attachment off the circuit".into());
    }
    if vs.len() == 1 {
        if out.attach != c {
            return Err("empty path away from c".into());
        }
    } else {
        if out.attach == a || out.attach == b {
            return Err("attachment is a or b".into());
        }
        if vs[..vs.len() - 1].iter().any(|v| on.contains(&v.0)) {
            return Err("path touches the circuit early".into());
        }
    }
    Ok(())
}

/// Structure of a type-X witness with all connectors drawn from `cut`.
pub fn check_type_x(g: &Graph, x: &TypeXWitness, cut: &[usize]) -> Result<(), String> {
    let ca = ids(x.circuit_a.edges().iter());
    let cb = ids(x.circuit_b.edges().iter());
    if !oracle_is_circuit(g, &ca) || !oracle_is_circuit(g, &cb) {
        return Err("A or B is not a circuit".into());
    }
    let (va, vb) = (vertices_of(g, &ca), vertices_of(g, &cb));
    if !va.is_disjoint(&vb) {
        return Err("A and B meet".into());
    }
    let a: BTreeSet<usize> = x.a.iter().map(|v| v.0).collect();
    let b: BTreeSet<usize> = x.b.iter().map(|v| v.0).collect();
    if a.len() != 3 || b.len() != 3 || !a.is_subset(&va) || !b.is_subset(&vb) {
        return Err("connector ends".into());
    }
    for (i, e) in [x.e1, x.e2].into_iter().enumerate() {
        let (u, v) = ends(g, e.0);
        if BTreeSet::from([u, v]) != BTreeSet::from([x.a[i].0, x.b[i].0]) {
            return Err(format!("e{} misplaced", i + 1));
        }
    }
    let vs = x.path.vertices();
    check_path(g, vs, x.path.edges())?;
    if vs[0] != x.a[2] || *vs.last().unwrap() != x.b[2] {
        return Err("path endpoints".into());
    }
    if vs[1..vs.len() - 1]
        .iter()
        .any(|v| va.contains(&v.0) || vb.contains(&v.0))
    {
        return Err("path touches a circuit".into());
    }
    if !x.path.edges().contains(&x.e3) {
        return Err("e3 off the path".into());
    }
    if ![x.e1, x.e2, x.e3].iter().all(|e| cut.contains(&e.0)) {
        return Err("connector outside the cut".into());
    }
    Ok(())
}

/// Seeded `(G, a, b, c)` with `G` 2-connected on 3 to 10 vertices and
/// `a, b, c` distinct.
pub fn attached_instances(count: u64) -> Vec<(Graph, VertexId, VertexId, VertexId)> {
    (0..count)
        .map(|seed| {
            let n = 3 + (seed % 8) as usize;
            let max_chords = n * (n - 1) / 2 - n;
            let chords = (seed as usize * 7 / 8) % (max_chords + 1);
            let g = random_two_connected(n, chords, seed).unwrap();
            let picked = sample(&mut circmap::rng::seeded(seed), n, 3);
            (
                g,
                VertexId(picked.index(0)),
                VertexId(picked.index(1)),
                VertexId(picked.index(2)),
            )
        })
        .collect()
}
