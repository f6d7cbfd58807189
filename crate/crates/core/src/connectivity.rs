//! Vertex connectivity, cutpoints and internally disjoint paths.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("no two internally disjoint paths join {a} and {b}")]
    NoTwoPaths { a: String, b: String },
    #[error("endpoints must be distinct and not forbidden")]
    BadEndpoints,
}

/// True iff `g` has more than `k` vertices and no set of fewer than `k`
/// vertices disconnects it.
///
/// Checks every vertex subset of size `k - 1`. If a smaller set separates
/// the graph it can be padded to size `k - 1` while keeping two sides
/// nonempty, so the larger subsets suffice.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return true;
    }
    if n <= k {
        return false;
    }
    g.vertices()
        .combinations(k - 1)
        .all(|removed| g.components_avoiding(&removed).len() == 1)
}

/// Largest `k` for which [`is_k_connected`] holds.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let mut k = 0;
    while is_k_connected(g, k + 1) {
        k += 1;
    }
    k
}

/// Vertices whose removal increases the number of components.
pub fn cutpoints(g: &Graph) -> BTreeSet<VertexId> {
    struct State {
        order: Vec<usize>,
        low: Vec<usize>,
        clock: usize,
        cuts: BTreeSet<VertexId>,
    }

    fn visit(g: &Graph, v: VertexId, parent_edge: Option<EdgeId>, st: &mut State) {
        st.clock += 1;
        st.order[v.0] = st.clock;
        st.low[v.0] = st.clock;
        let mut children = 0;
        for &(w, e) in g.neighbors(v) {
            if Some(e) == parent_edge {
                continue;
            }
            if st.order[w.0] == 0 {
                children += 1;
                visit(g, w, Some(e), st);
                st.low[v.0] = st.low[v.0].min(st.low[w.0]);
                if parent_edge.is_some() && st.low[w.0] >= st.order[v.0] {
                    st.cuts.insert(v);
                }
            } else {
                st.low[v.0] = st.low[v.0].min(st.order[w.0]);
            }
        }
        if parent_edge.is_none() && children > 1 {
            st.cuts.insert(v);
        }
    }

    let n = g.vertex_count();
    let mut st = State {
        order: vec![0; n],
        low: vec![0; n],
        clock: 0,
        cuts: BTreeSet::new(),
    };
    for v in g.vertices() {
        if st.order[v.0] == 0 {
            visit(g, v, None, &mut st);
        }
    }
    st.cuts
}

/// Two `a`–`b` paths sharing only `a` and `b`, avoiding `forbidden`.
///
/// The shorter path (then the lexicographically smaller vertex sequence)
/// comes first.
pub fn two_disjoint_paths(
    g: &Graph,
    a: VertexId,
    b: VertexId,
    forbidden: &[VertexId],
) -> Result<(Path, Path), ConnectivityError> {
    if a == b || forbidden.contains(&a) || forbidden.contains(&b) {
        return Err(ConnectivityError::BadEndpoints);
    }
    let mut paths = menger_paths(g, &[a], &[b], forbidden, &[], 2, 2);
    if paths.len() < 2 {
        return Err(ConnectivityError::NoTwoPaths {
            a: g.label(a).to_string(),
            b: g.label(b).to_string(),
        });
    }
    let second = paths.pop().expect("two paths");
    let first = paths.pop().expect("two paths");
    assert!(
        paths_internally_disjoint(&first, &second),
        "menger construction produced overlapping paths"
    );
    Ok((first, second))
}

fn paths_internally_disjoint(p: &Path, q: &Path) -> bool {
    let inner: BTreeSet<VertexId> = p.vertices()[1..p.vertices().len() - 1].iter().copied().collect();
    q.vertices()[1..q.vertices().len() - 1]
        .iter()
        .all(|v| !inner.contains(v))
        && p.start() == q.start()
        && p.end() == q.end()
        && p.edges() != q.edges()
}

/// Vertex-disjoint paths from the `sources` set to the `sinks` set.
///
/// Standard Menger construction: every vertex is split into an in/out pair
/// joined by a capacity-one arc (capacity `terminal_capacity` for sources and
/// sinks), every usable edge becomes two unit arcs, and augmenting paths are
/// found by breadth-first search in id order. Returns at most `want` paths,
/// sorted by (length, vertex sequence). A vertex lying in both sets yields a
/// zero-length path.
pub(crate) fn menger_paths(
    g: &Graph,
    sources: &[VertexId],
    sinks: &[VertexId],
    blocked_vertices: &[VertexId],
    blocked_edges: &[EdgeId],
    terminal_capacity: u32,
    want: usize,
) -> Vec<Path> {
    let n = g.vertex_count();
    let source_node = 2 * n;
    let sink_node = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);
    let blocked = |v: VertexId| blocked_vertices.contains(&v);
    let terminal = |v: VertexId| sources.contains(&v) || sinks.contains(&v);

    for &s in sources {
        net.add_arc(source_node, 2 * s.0, terminal_capacity);
    }
    for v in g.vertices() {
        if blocked(v) {
            continue;
        }
        let cap = if terminal(v) { terminal_capacity } else { 1 };
        net.add_arc(2 * v.0, 2 * v.0 + 1, cap);
    }
    for e in g.edge_ids() {
        if blocked_edges.contains(&e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        if blocked(u) || blocked(v) {
            continue;
        }
        net.add_arc(2 * u.0 + 1, 2 * v.0, 1);
        net.add_arc(2 * v.0 + 1, 2 * u.0, 1);
    }
    for &t in sinks {
        net.add_arc(2 * t.0 + 1, sink_node, terminal_capacity);
    }

    let mut flow = 0;
    while flow < want && net.augment(source_node, sink_node) {
        flow += 1;
    }

    let mut paths = Vec::with_capacity(flow);
    for _ in 0..flow {
        let nodes = net.take_flow_path(source_node, sink_node);
        let vertices: Vec<VertexId> = nodes
            .iter()
            .filter(|&&x| x < 2 * n && x % 2 == 0)
            .map(|&x| VertexId(x / 2))
            .collect();
        let path = Path::from_vertices(g, vertices).expect("flow decomposition yields a path");
        paths.push(path);
    }
    paths.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.vertices().cmp(q.vertices())));
    paths
}

struct Arc {
    to: usize,
    cap: u32,
    original: u32,
    rev: usize,
}

struct FlowNet {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            arcs: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            cap,
            original: cap,
            rev: rev_from,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            original: 0,
            rev: rev_to,
        });
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for (i, arc) in self.arcs[x].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    prev[arc.to] = Some((x, i));
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut x = t;
        while let Some((p, i)) = prev[x] {
            self.arcs[p][i].cap -= 1;
            let rev = self.arcs[p][i].rev;
            self.arcs[x][rev].cap += 1;
            x = p;
        }
        true
    }

    /// Follows one unit of flow from `s` to `t`, consuming it.
    fn take_flow_path(&mut self, s: usize, t: usize) -> Vec<usize> {
        let mut nodes = vec![s];
        let mut x = s;
        while x != t {
            let i = self.arcs[x]
                .iter()
                .position(|a| a.original > a.cap)
                .expect("flow conservation");
            // mark one unit as consumed by raising residual capacity back
            self.arcs[x][i].cap += 1;
            x = self.arcs[x][i].to;
            nodes.push(x);
        }
        nodes
    }
}
