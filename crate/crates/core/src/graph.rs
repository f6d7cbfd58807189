//! Finite simple undirected graphs with stable vertex labels and edge ids.
//!
//! Vertices are identified by string labels. Internally every vertex gets a
//! dense [`VertexId`] in sorted-label order, and every edge gets an
//! [`EdgeId`] equal to its position in the input edge list.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index. Ids follow sorted label order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Dense edge index, equal to the edge's position in the input list.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Identity of a constructed graph. Clones share it; independently built
/// graphs never do.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphId(u64);

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

impl GraphId {
    fn fresh() -> Self {
        GraphId(NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge {index} is a loop at vertex {vertex:?}")]
    LoopEdge { index: usize, vertex: String },
    #[error("edge {index} ({u:?}, {v:?}) duplicates an earlier edge")]
    DuplicateEdge { index: usize, u: String, v: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} is declared twice")]
    DuplicateVertex(String),
    #[error("edge set belongs to a different graph")]
    ForeignEdgeSet,
    #[error("edge id {0} out of range")]
    InvalidEdgeId(usize),
    #[error("vertex id {0} out of range")]
    InvalidVertexId(usize),
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A finite simple undirected graph.
///
/// Immutable after construction. Two graphs compare equal when they have the
/// same labels and the same edge list; the internal [`GraphId`] is ignored.
#[derive(Clone, Debug)]
pub struct Graph {
    id: GraphId,
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

fn ordered(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from vertex labels and endpoint-label pairs.
    ///
    /// Edge ids follow the order of `edges`; endpoint order within each pair
    /// is kept for serialization.
    pub fn build<V, E, S, T>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let index: HashMap<String, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), VertexId(i)))
            .collect();

        let mut graph = Graph {
            id: GraphId::fresh(),
            adjacency: vec![Vec::new(); labels.len()],
            labels,
            index,
            edges: Vec::new(),
            lookup: HashMap::new(),
        };
        for (i, (s, t)) in edges.into_iter().enumerate() {
            let u = graph.vertex(s.as_ref())?;
            let v = graph.vertex(t.as_ref())?;
            if u == v {
                return Err(GraphError::LoopEdge {
                    index: i,
                    vertex: s.as_ref().to_string(),
                });
            }
            let key = ordered(u, v);
            if graph.lookup.contains_key(&key) {
                return Err(GraphError::DuplicateEdge {
                    index: i,
                    u: s.as_ref().to_string(),
                    v: t.as_ref().to_string(),
                });
            }
            let e = EdgeId(graph.edges.len());
            graph.lookup.insert(key, e);
            graph.edges.push((u, v));
            graph.adjacency[u.0].push((v, e));
            graph.adjacency[v.0].push((u, e));
        }
        for nbrs in &mut graph.adjacency {
            nbrs.sort();
        }
        Ok(graph)
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + Clone {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + Clone {
        (0..self.edges.len()).map(EdgeId)
    }

    /// Labels in vertex id order (sorted).
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    /// Endpoints of `e` in the order they were declared.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn endpoint_labels(&self, e: EdgeId) -> (&str, &str) {
        let (u, v) = self.edges[e.0];
        (self.label(u), self.label(v))
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.edges[e.0];
        a == v || b == v
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.lookup.get(&ordered(u, v)).copied()
    }

    /// Neighbours of `v` with the connecting edge, sorted by neighbour id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.labels.len() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertexId(v.0))
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if e.0 < self.edges.len() {
            Ok(())
        } else {
            Err(GraphError::InvalidEdgeId(e.0))
        }
    }

    /// Builds an edge set on this graph, validating every id.
    pub fn edge_set<I: IntoIterator<Item = EdgeId>>(&self, ids: I) -> Result<EdgeSet, GraphError> {
        let members: BTreeSet<EdgeId> = ids.into_iter().collect();
        if let Some(bad) = members.iter().find(|e| e.0 >= self.edges.len()) {
            return Err(GraphError::InvalidEdgeId(bad.0));
        }
        Ok(EdgeSet { host: self.id, members })
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet {
            host: self.id,
            members: BTreeSet::new(),
        }
    }

    pub(crate) fn edge_set_unchecked<I: IntoIterator<Item = EdgeId>>(&self, ids: I) -> EdgeSet {
        EdgeSet {
            host: self.id,
            members: ids.into_iter().collect(),
        }
    }

    pub fn check_host(&self, set: &EdgeSet) -> Result<(), GraphError> {
        if set.host == self.id {
            Ok(())
        } else {
            Err(GraphError::ForeignEdgeSet)
        }
    }

    /// The star subgraph at `v`: every edge incident to `v`.
    pub fn star(&self, v: VertexId) -> Result<EdgeSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.edge_set_unchecked(self.adjacency[v.0].iter().map(|&(_, e)| e)))
    }

    /// Same vertex set, every edge outside `removed` kept.
    ///
    /// The second value maps new edge ids to the original ones.
    pub fn delete_edges(&self, removed: &EdgeSet) -> Result<(Graph, Vec<EdgeId>), GraphError> {
        self.check_host(removed)?;
        let kept: Vec<EdgeId> = self.edge_ids().filter(|e| !removed.contains(*e)).collect();
        let g = Graph::build(
            self.labels.iter().cloned(),
            kept.iter().map(|&e| self.endpoint_labels(e)),
        )?;
        Ok((g, kept))
    }

    /// Vertex partition into connected components. Each block is sorted and
    /// blocks are ordered by their least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_avoiding(&[])
    }

    /// Components of the graph with the `removed` vertices deleted.
    pub fn components_avoiding(&self, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for v in removed {
            seen[v.0] = true;
        }
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![VertexId(start)];
            let mut stack = vec![VertexId(start)];
            while let Some(v) = stack.pop() {
                for &(w, _) in self.neighbors(v) {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        block.push(w);
                        stack.push(w);
                    }
                }
            }
            block.sort();
            blocks.push(block);
        }
        blocks
    }

    /// Subgraph induced by `keep`, with the table from its edge ids to
    /// ours. Labels are shared, so vertices translate by label.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> (Graph, Vec<EdgeId>) {
        let mut inside = vec![false; self.vertex_count()];
        for v in keep {
            inside[v.0] = true;
        }
        let kept: Vec<EdgeId> = self
            .edge_ids()
            .filter(|&e| {
                let (u, v) = self.endpoints(e);
                inside[u.0] && inside[v.0]
            })
            .collect();
        let sub = Graph::build(
            keep.iter().map(|&v| self.label(v).to_string()),
            kept.iter().map(|&e| self.endpoint_labels(e)),
        )
        .expect("a subgraph of a simple graph is simple");
        (sub, kept)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Same graph with every label `l` replaced by `rename(l)`. Edge order is
    /// preserved.
    pub fn relabel<F: Fn(&str) -> String>(&self, rename: F) -> Result<Graph, GraphError> {
        let labels: Vec<String> = self.labels.iter().map(|l| rename(l)).collect();
        Graph::build(
            labels.iter().cloned(),
            self.edges.iter().map(|&(u, v)| (&labels[u.0], &labels[v.0])),
        )
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.label(u).to_string(), self.label(v).to_string()])
                .collect(),
        }
    }

    /// Pretty JSON, newline terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("graph JSON serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let raw: GraphJson = serde_json::from_str(text)?;
        raw.into_graph()
    }

    pub fn describe_edge(&self, e: EdgeId) -> String {
        let (a, b) = self.endpoint_labels(e);
        format!("({a}, {b})")
    }
}

/// On-disk graph format: `{"vertices": [...], "edges": [["u","v"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<Graph, GraphError> {
        Graph::build(self.vertices, self.edges.iter().map(|[u, v]| (u, v)))
    }
}

/// A set of edge ids tied to the graph it was built on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet {
    host: GraphId,
    members: BTreeSet<EdgeId>,
}

impl EdgeSet {
    pub fn host(&self) -> GraphId {
        self.host
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.members.contains(&e)
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = EdgeId> + '_ {
        self.members.iter().copied()
    }

    pub fn ids(&self) -> Vec<EdgeId> {
        self.members.iter().copied().collect()
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        debug_assert_eq!(self.host, other.host);
        EdgeSet {
            host: self.host,
            members: self.members.symmetric_difference(&other.members).copied().collect(),
        }
    }

    pub fn intersection_len(&self, other: &EdgeSet) -> usize {
        self.members.intersection(&other.members).count()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Vertices touched by the member edges, sorted.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .members
            .iter()
            .flat_map(|&e| {
                let (a, b) = g.endpoints(e);
                [a, b]
            })
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// True when no two member edges share an endpoint.
    pub fn is_independent(&self, g: &Graph) -> bool {
        let mut seen = BTreeSet::new();
        self.members.iter().all(|&e| {
            let (a, b) = g.endpoints(e);
            seen.insert(a) && seen.insert(b)
        })
    }
}

/// A path given as its vertex sequence and the edges between consecutive
/// vertices. A path with a single vertex and no edges is the empty path at
/// that vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// Builds the path through `vertices`; consecutive vertices must be
    /// adjacent and no vertex may repeat.
    pub fn from_vertices(g: &Graph, vertices: Vec<VertexId>) -> Result<Path, PathError> {
        if vertices.is_empty() {
            return Err(PathError::Empty);
        }
        for &v in &vertices {
            g.check_vertex(v).map_err(|_| PathError::UnknownVertex(v))?;
        }
        let mut edges = Vec::with_capacity(vertices.len() - 1);
        for w in vertices.windows(2) {
            let e = g.edge_between(w[0], w[1]).ok_or(PathError::NotAdjacent(w[0], w[1]))?;
            edges.push(e);
        }
        let path = Path { vertices, edges };
        path.validate(g)?;
        Ok(path)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), PathError> {
        if self.vertices.is_empty() || self.edges.len() + 1 != self.vertices.len() {
            return Err(PathError::Empty);
        }
        let mut seen = BTreeSet::new();
        for &v in &self.vertices {
            g.check_vertex(v).map_err(|_| PathError::UnknownVertex(v))?;
            if !seen.insert(v) {
                return Err(PathError::RepeatedVertex(v));
            }
        }
        for (i, &e) in self.edges.iter().enumerate() {
            g.check_edge(e).map_err(|_| PathError::UnknownEdge(e))?;
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            if ordered(a, b) != ordered(g.endpoints(e).0, g.endpoints(e).1) {
                return Err(PathError::NotAdjacent(a, b));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("paths have at least one vertex")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Path { vertices, edges }
    }

    /// The prefix ending at the first occurrence of `v`.
    pub fn prefix_to(&self, v: VertexId) -> Option<Path> {
        let k = self.vertices.iter().position(|&x| x == v)?;
        Some(Path {
            vertices: self.vertices[..=k].to_vec(),
            edges: self.edges[..k].to_vec(),
        })
    }

    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.vertices.iter().map(|&v| g.label(v)).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path has no vertices")]
    Empty,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("vertex {0} repeats")]
    RepeatedVertex(VertexId),
}
