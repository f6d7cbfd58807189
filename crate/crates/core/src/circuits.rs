//! Circuit recognition, enumeration and construction.
//!
//! A circuit is the edge set of a simple cycle: nonempty, connected, and
//! every touched vertex has degree exactly two in it.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::connectivity::{is_k_connected, menger_paths, two_disjoint_paths};
use crate::graph::{EdgeId, EdgeSet, Graph, GraphError, Path, VertexId};
use crate::rng;

/// Default cap on the number of circuits [`enumerate_circuits`] will produce.
pub const DEFAULT_MAX_CIRCUITS: usize = 100_000;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("graph has more than {limit} circuits")]
    TooManyCircuits { limit: usize },
    #[error("no circuit contains both {first} and {second}")]
    NoSuchCircuit { first: String, second: String },
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("vertices must be pairwise distinct")]
    NotDistinct,
    #[error("edge set is not a circuit")]
    NotACircuit,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An edge set known to be a circuit of its host graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    edges: EdgeSet,
}

impl Circuit {
    pub fn new(g: &Graph, edges: EdgeSet) -> Result<Circuit, CircuitError> {
        if is_circuit(g, &edges)? {
            Ok(Circuit { edges })
        } else {
            Err(CircuitError::NotACircuit)
        }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(e)
    }

    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.vertices(g)
    }

    pub fn contains_vertex(&self, g: &Graph, v: VertexId) -> bool {
        self.edges.iter().any(|e| g.is_incident(e, v))
    }

    /// Vertices in cyclic order, starting at the least vertex and heading
    /// toward its smaller circuit neighbour.
    pub fn cycle_vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut nbrs: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in self.edges.iter() {
            let (a, b) = g.endpoints(e);
            nbrs.entry(a).or_default().push(b);
            nbrs.entry(b).or_default().push(a);
        }
        let (&start, first) = nbrs.iter().next().expect("circuits are nonempty");
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = *first.iter().min().expect("degree two");
        while cur != start {
            order.push(cur);
            let next = nbrs[&cur].iter().copied().find(|&x| x != prev).expect("degree two");
            prev = cur;
            cur = next;
        }
        order
    }
}

/// True iff `set` is the edge set of a simple cycle of `g`.
pub fn is_circuit(g: &Graph, set: &EdgeSet) -> Result<bool, GraphError> {
    g.check_host(set)?;
    if set.len() < 3 {
        return Ok(false);
    }
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in set.iter() {
        let (a, b) = g.endpoints(e);
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return Ok(false);
    }
    // all degrees are two, so the edges form disjoint cycles; one cycle iff
    // the walk from any vertex covers every edge
    let start = *degree.keys().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(w, e) in g.neighbors(v) {
            if set.contains(e) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    Ok(seen.len() == degree.len())
}

/// Every circuit of `g`, sorted lexicographically by edge ids.
///
/// Depth-first search of elementary cycles rooted at their least vertex;
/// each cycle is kept in the orientation whose second vertex is smaller than
/// its last. Fails with [`CircuitError::TooManyCircuits`] once more than
/// `max_count` circuits are found.
pub fn enumerate_circuits(g: &Graph, max_count: usize) -> Result<Vec<Circuit>, CircuitError> {
    struct Search<'g> {
        g: &'g Graph,
        root: VertexId,
        on_path: Vec<bool>,
        vertices: Vec<VertexId>,
        edges: Vec<EdgeId>,
        found: Vec<Circuit>,
        limit: usize,
    }

    impl Search<'_> {
        fn extend(&mut self, v: VertexId) -> Result<(), CircuitError> {
            for &(w, e) in self.g.neighbors(v) {
                if w == self.root {
                    if self.vertices.len() >= 3 && self.vertices[1] < v {
                        if self.found.len() == self.limit {
                            return Err(CircuitError::TooManyCircuits { limit: self.limit });
                        }
                        let set = self.g.edge_set_unchecked(self.edges.iter().copied().chain([e]));
                        self.found.push(Circuit { edges: set });
                    }
                } else if w > self.root && !self.on_path[w.0] {
                    self.on_path[w.0] = true;
                    self.vertices.push(w);
                    self.edges.push(e);
                    self.extend(w)?;
                    self.edges.pop();
                    self.vertices.pop();
                    self.on_path[w.0] = false;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        root: VertexId(0),
        on_path: vec![false; g.vertex_count()],
        vertices: Vec::new(),
        edges: Vec::new(),
        found: Vec::new(),
        limit: max_count,
    };
    for root in g.vertices() {
        search.root = root;
        search.on_path[root.0] = true;
        search.vertices.push(root);
        search.extend(root)?;
        search.vertices.pop();
        search.on_path[root.0] = false;
    }
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// A circuit through both `first` and `second`.
///
/// Built from two vertex-disjoint paths joining the endpoints of `first` to
/// the endpoints of `second` while avoiding both edges. Always succeeds on
/// 3-connected graphs.
pub fn circuit_through_two_edges(g: &Graph, first: EdgeId, second: EdgeId) -> Result<Circuit, CircuitError> {
    g.check_edge(first)?;
    g.check_edge(second)?;
    let no_circuit = || CircuitError::NoSuchCircuit {
        first: g.describe_edge(first),
        second: g.describe_edge(second),
    };
    if first == second {
        return Err(no_circuit());
    }
    let (a, b) = g.endpoints(first);
    let (c, d) = g.endpoints(second);
    let paths = menger_paths(g, &[a, b], &[c, d], &[], &[first, second], 1, 2);
    if paths.len() < 2 {
        return Err(no_circuit());
    }
    let ids = paths
        .iter()
        .flat_map(|p| p.edges().iter().copied())
        .chain([first, second]);
    let set = g.edge_set(ids)?;
    let circuit = Circuit::new(g, set).map_err(|_| no_circuit())?;
    Ok(circuit)
}

/// A circuit through two chosen vertices together with a path attaching a
/// third vertex to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachedCircuit {
    pub circuit: Circuit,
    /// Runs from the third vertex to `attach`; empty when the third vertex
    /// already lies on the circuit.
    pub path: Path,
    pub attach: VertexId,
}

impl AttachedCircuit {
    /// Checks every structural requirement for the triple `(a, b, c)`.
    pub fn validate(&self, g: &Graph, a: VertexId, b: VertexId, c: VertexId) -> Result<(), String> {
        if !is_circuit(g, self.circuit.edges()).map_err(|e| e.to_string())? {
            return Err("circuit is not a circuit".into());
        }
        let on_circuit: BTreeSet<VertexId> = self.circuit.vertices(g).into_iter().collect();
        if !on_circuit.contains(&a) || !on_circuit.contains(&b) {
            return Err("circuit misses a or b".into());
        }
        self.path.validate(g).map_err(|e| e.to_string())?;
        if self.path.start() != c || self.path.end() != self.attach {
            return Err("path does not run from c to the attachment vertex".into());
        }
        if !on_circuit.contains(&self.attach) {
            return Err("attachment vertex is off the circuit".into());
        }
        if self.path.is_empty() {
            if self.attach != c {
                return Err("empty path must sit at c".into());
            }
        } else if self.attach == a || self.attach == b {
            return Err("attachment vertex coincides with a or b".into());
        }
        let inner = &self.path.vertices()[..self.path.vertices().len() - 1];
        if inner.iter().any(|v| on_circuit.contains(v)) {
            return Err("path meets the circuit before its end".into());
        }
        Ok(())
    }
}

/// For distinct `a`, `b`, `c` in a 2-connected graph: a circuit through `a`
/// and `b`, and a path from `c` to a circuit vertex other than `a`, `b`
/// that touches the circuit only at its end.
///
/// Takes two disjoint `a`–`b` paths as the circuit. If `c` is off it, two
/// disjoint paths from `c` to some circuit vertex `v ∉ {a, b}` are truncated
/// at their first circuit contact. When those contacts are exactly `{a, b}`
/// the two truncated paths close a circuit through all three vertices.
pub fn attached_circuit(g: &Graph, a: VertexId, b: VertexId, c: VertexId) -> Result<AttachedCircuit, CircuitError> {
    for v in [a, b, c] {
        g.check_vertex(v)?;
    }
    if a == b || b == c || a == c {
        return Err(CircuitError::NotDistinct);
    }
    if !is_k_connected(g, 2) {
        return Err(CircuitError::NotTwoConnected);
    }
    let (p, q) = two_disjoint_paths(g, a, b, &[]).map_err(|_| CircuitError::NotTwoConnected)?;
    let circuit_from = |p: &Path, q: &Path| -> Result<Circuit, CircuitError> {
        let set = g.edge_set(p.edges().iter().chain(q.edges()).copied())?;
        Circuit::new(g, set)
    };
    let circuit = circuit_from(&p, &q)?;
    if circuit.contains_vertex(g, c) {
        return Ok(AttachedCircuit {
            circuit,
            path: Path::trivial(c),
            attach: c,
        });
    }

    let on_circuit: BTreeSet<VertexId> = circuit.vertices(g).into_iter().collect();
    let v = *on_circuit
        .iter()
        .find(|&&x| x != a && x != b)
        .expect("a circuit has at least three vertices");
    let (p1, p2) = two_disjoint_paths(g, c, v, &[]).map_err(|_| CircuitError::NotTwoConnected)?;
    let first_contact = |p: &Path| {
        *p.vertices()
            .iter()
            .find(|x| on_circuit.contains(x))
            .expect("path ends on the circuit")
    };
    let t1 = first_contact(&p1);
    let t2 = first_contact(&p2);
    let head1 = p1.prefix_to(t1).expect("contact lies on path");
    let head2 = p2.prefix_to(t2).expect("contact lies on path");

    if BTreeSet::from([t1, t2]) == BTreeSet::from([a, b]) {
        // both c→v paths pass through a or b, so together they form a
        // circuit containing a, b and c
        let circuit = circuit_from(&p1, &p2)?;
        return Ok(AttachedCircuit {
            circuit,
            path: Path::trivial(c),
            attach: c,
        });
    }
    let (path, attach) = if t1 != a && t1 != b { (head1, t1) } else { (head2, t2) };
    Ok(AttachedCircuit { circuit, path, attach })
}

/// Up to `count` distinct circuits drawn deterministically from `seed`.
///
/// Starts with the fundamental circuits of a random spanning forest, then
/// adds symmetric differences of random pairs that happen to be circuits.
pub fn sample_circuits(g: &Graph, count: usize, seed: u64) -> Vec<Circuit> {
    let mut rng = rng::seeded(seed);
    let mut order: Vec<EdgeId> = g.edge_ids().collect();
    order.shuffle(&mut rng);

    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); g.vertex_count()];
    let mut chords = Vec::new();
    for &e in &order {
        let (u, v) = g.endpoints(e);
        let (ru, rv) = (find(&mut parent, u.0), find(&mut parent, v.0));
        if ru == rv {
            chords.push(e);
        } else {
            parent[ru] = rv;
            tree[u.0].push((v, e));
            tree[v.0].push((u, e));
        }
    }

    let mut pool: Vec<Circuit> = Vec::new();
    let mut seen: HashSet<EdgeSet> = HashSet::new();
    for &e in &chords {
        if pool.len() >= count {
            break;
        }
        let (u, v) = g.endpoints(e);
        let route = tree_route(&tree, u, v);
        let set = g.edge_set_unchecked(route.into_iter().chain([e]));
        debug_assert!(is_circuit(g, &set).unwrap_or(false));
        if seen.insert(set.clone()) {
            pool.push(Circuit { edges: set });
        }
    }

    let mut attempts = 0;
    while pool.len() < count && pool.len() >= 2 && attempts < count.saturating_mul(50) {
        attempts += 1;
        let i = rng.gen_range(0..pool.len());
        let j = rng.gen_range(0..pool.len());
        if i == j {
            continue;
        }
        let set = pool[i].edges.symmetric_difference(&pool[j].edges);
        if !seen.contains(&set) && is_circuit(g, &set).unwrap_or(false) {
            seen.insert(set.clone());
            pool.push(Circuit { edges: set });
        }
    }
    pool
}

fn tree_route(tree: &[Vec<(VertexId, EdgeId)>], from: VertexId, to: VertexId) -> Vec<EdgeId> {
    let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; tree.len()];
    let mut seen = vec![false; tree.len()];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, e) in &tree[x.0] {
            if !seen[y.0] {
                seen[y.0] = true;
                prev[y.0] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let mut route = Vec::new();
    let mut x = to;
    while let Some((p, e)) = prev[x.0] {
        route.push(e);
        x = p;
    }
    route
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_graph, NamedGraph};

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> Graph {
        Graph::build(vs.iter().copied(), es.iter().copied()).unwrap()
    }

    #[test]
    fn recognition() {
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let tri = k4.edge_set([EdgeId(0), EdgeId(1), EdgeId(3)]).unwrap();
        assert!(is_circuit(&k4, &tri).unwrap());
        let path = k4.edge_set([EdgeId(0), EdgeId(3)]).unwrap();
        assert!(!is_circuit(&k4, &path).unwrap());
        let prism = named_graph(&NamedGraph::Prism).unwrap();
        let both = prism.edge_set((0..6).map(EdgeId)).unwrap();
        assert!(!is_circuit(&prism, &both).unwrap());
        assert!(matches!(is_circuit(&prism, &tri), Err(GraphError::ForeignEdgeSet)));
    }

    #[test]
    fn enumeration_counts() {
        let tri = graph(&["0", "1", "2"], &[("0", "1"), ("1", "2"), ("2", "0")]);
        assert_eq!(enumerate_circuits(&tri, 10).unwrap().len(), 1);
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let all = enumerate_circuits(&k4, 100).unwrap();
        assert_eq!(all.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(all.iter().filter(|c| c.len() == 4).count(), 3);
        assert!(matches!(
            enumerate_circuits(&k4, 6),
            Err(CircuitError::TooManyCircuits { limit: 6 })
        ));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn cycle_order_walks_the_circuit() {
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        for c in enumerate_circuits(&k4, 100).unwrap() {
            let order = c.cycle_vertices(&k4);
            assert_eq!(order.len(), c.len());
            let closed = order.iter().zip(order.iter().cycle().skip(1));
            for (&u, &v) in closed {
                assert!(c.contains_edge(k4.edge_between(u, v).unwrap()));
            }
        }
    }

    #[test]
    fn circuits_through_edge_pairs() {
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let e01 = k4.edge_between(VertexId(0), VertexId(1)).unwrap();
        let e23 = k4.edge_between(VertexId(2), VertexId(3)).unwrap();
        let e02 = k4.edge_between(VertexId(0), VertexId(2)).unwrap();
        let c = circuit_through_two_edges(&k4, e01, e23).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.contains_edge(e01) && c.contains_edge(e23));
        let c = circuit_through_two_edges(&k4, e01, e02).unwrap();
        assert!(c.contains_edge(e01) && c.contains_edge(e02));

        let prism = named_graph(&NamedGraph::Prism).unwrap();
        let c = circuit_through_two_edges(&prism, EdgeId(6), EdgeId(7)).unwrap();
        assert!(c.contains_edge(EdgeId(6)) && c.contains_edge(EdgeId(7)));

        assert!(matches!(
            circuit_through_two_edges(&k4, e01, e01),
            Err(CircuitError::NoSuchCircuit { .. })
        ));
        let path = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(circuit_through_two_edges(&path, EdgeId(0), EdgeId(1)).is_err());
    }

    #[test]
    fn attached_circuit_examples() {
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let (a, b, c) = (VertexId(0), VertexId(1), VertexId(2));
        let out = attached_circuit(&k4, a, b, c).unwrap();
        out.validate(&k4, a, b, c).unwrap();

        let theta = named_graph(&NamedGraph::Theta(3)).unwrap();
        let v = |l: &str| theta.vertex(l).unwrap();
        let (a, b, c) = (v("x_0_1"), v("x_1_1"), v("x_2_1"));
        let out = attached_circuit(&theta, a, b, c).unwrap();
        out.validate(&theta, a, b, c).unwrap();
        assert_eq!(out.circuit.len(), 6);
        assert_eq!(out.path.len(), 1);
        assert_eq!(theta.label(out.attach), "u");

        let c4 = graph(&["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")]);
        let out = attached_circuit(&c4, VertexId(0), VertexId(2), VertexId(1)).unwrap();
        assert_eq!(out.circuit.len(), 4);
        assert!(out.path.is_empty());
        assert_eq!(out.attach, VertexId(1));
    }

    #[test]
    fn attached_circuit_rejects_bad_input() {
        let bowtie = graph(
            &["a", "b", "c", "d", "v"],
            &[("a", "b"), ("b", "v"), ("v", "a"), ("c", "d"), ("d", "v"), ("v", "c")],
        );
        assert!(matches!(
            attached_circuit(&bowtie, VertexId(0), VertexId(1), VertexId(2)),
            Err(CircuitError::NotTwoConnected)
        ));
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        assert!(matches!(
            attached_circuit(&k4, VertexId(0), VertexId(0), VertexId(2)),
            Err(CircuitError::NotDistinct)
        ));
    }

    #[test]
    fn sampled_circuits_are_distinct_circuits() {
        let g = named_graph(&NamedGraph::Cube).unwrap();
        let sample = sample_circuits(&g, 20, 3);
        assert_eq!(sample.len(), 20);
        let distinct: HashSet<_> = sample.iter().cloned().collect();
        assert_eq!(distinct.len(), 20);
        for c in &sample {
            assert!(is_circuit(&g, c.edges()).unwrap());
        }
        assert_eq!(sample, sample_circuits(&g, 20, 3));
    }
}
