//! One-to-one edge maps between graphs and everything that can be checked
//! or reconstructed from them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, EdgeSet, Graph, GraphError, VertexId};

mod reconstruct;
mod stars;
mod type_x;
mod verify;

pub use reconstruct::{
    reconstruct_unguarded, reconstruct_vertex_isomorphism, verify_induced, ReconstructError, VertexIso,
};
pub use stars::{
    classify_star_image, classify_star_preimage, decompose_by_star_preimage, DecomposeError, Decomposition,
    StarImageClass, ViolationWitness,
};
pub use type_x::{
    check_connector_images_nonadjacent, find_type_x_or_big_circuit, TypeXError, TypeXOutcome, TypeXWitness,
};
pub use verify::{is_circuit_injection, is_circuit_isomorphism, Mode, Verdict, VerifyError, Witness};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("edge map is not a bijection: {0}")]
    NotABijection(String),
    #[error("{graph} graph has no edge ({u}, {v})")]
    UnknownEdge { graph: &'static str, u: String, v: String },
    #[error("target vertex {0:?} is isolated")]
    IsolatedTargetVertex(String),
    #[error("vertex {0:?} is isolated")]
    IsolatedVertex(String),
    #[error("malformed map JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A bijection from the edges of `source` onto the edges of `target`.
///
/// The target may not have isolated vertices: an onto edge map leaves no
/// room for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMap {
    source: Graph,
    target: Graph,
    forward: Vec<EdgeId>,
    backward: Vec<EdgeId>,
}

impl EdgeMap {
    /// `assignment[i]` is the image of source edge `i`.
    pub fn new(source: Graph, target: Graph, assignment: Vec<EdgeId>) -> Result<EdgeMap, MapError> {
        if assignment.len() != source.edge_count() {
            return Err(MapError::NotABijection(format!(
                "{} images given for {} source edges",
                assignment.len(),
                source.edge_count()
            )));
        }
        if source.edge_count() != target.edge_count() {
            return Err(MapError::NotABijection(format!(
                "source has {} edges, target has {}",
                source.edge_count(),
                target.edge_count()
            )));
        }
        let mut backward: Vec<Option<EdgeId>> = vec![None; target.edge_count()];
        for (i, &img) in assignment.iter().enumerate() {
            target.check_edge(img)?;
            if let Some(prev) = backward[img.0] {
                return Err(MapError::NotABijection(format!(
                    "source edges {} and {} both map to target edge {}",
                    source.describe_edge(prev),
                    source.describe_edge(EdgeId(i)),
                    target.describe_edge(img)
                )));
            }
            backward[img.0] = Some(EdgeId(i));
        }
        if let Some(v) = target.vertices().find(|&v| target.degree(v) == 0) {
            return Err(MapError::IsolatedTargetVertex(target.label(v).to_string()));
        }
        Ok(EdgeMap {
            source,
            target,
            forward: assignment,
            backward: backward.into_iter().map(|e| e.expect("counts match")).collect(),
        })
    }

    pub fn identity(g: Graph) -> Result<EdgeMap, MapError> {
        let ids = g.edge_ids().collect();
        EdgeMap::new(g.clone(), g, ids)
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn assignment(&self) -> &[EdgeId] {
        &self.forward
    }

    pub fn image(&self, e: EdgeId) -> EdgeId {
        self.forward[e.0]
    }

    pub fn preimage(&self, e: EdgeId) -> EdgeId {
        self.backward[e.0]
    }

    /// Image of a source edge set, as an edge set of the target.
    pub fn image_set(&self, set: &EdgeSet) -> Result<EdgeSet, GraphError> {
        self.source.check_host(set)?;
        Ok(self.target.edge_set_unchecked(set.iter().map(|e| self.image(e))))
    }

    /// Preimage of a target edge set, as an edge set of the source.
    pub fn preimage_set(&self, set: &EdgeSet) -> Result<EdgeSet, GraphError> {
        self.target.check_host(set)?;
        Ok(self.source.edge_set_unchecked(set.iter().map(|e| self.preimage(e))))
    }

    /// The inverse map, from target onto source.
    pub fn inverse(&self) -> Result<EdgeMap, MapError> {
        EdgeMap::new(self.target.clone(), self.source.clone(), self.backward.clone())
    }

    /// Loads `{"map": [[["u","v"],["x","y"]], ...]}`. Endpoint order inside a
    /// pair does not matter.
    pub fn from_json(source: Graph, target: Graph, text: &str) -> Result<EdgeMap, MapError> {
        let raw: MapJson = serde_json::from_str(text)?;
        let resolve = |g: &Graph, name: &'static str, [u, v]: &[String; 2]| -> Result<EdgeId, MapError> {
            let unknown = || MapError::UnknownEdge {
                graph: name,
                u: u.clone(),
                v: v.clone(),
            };
            let a = g.vertex(u).map_err(|_| unknown())?;
            let b = g.vertex(v).map_err(|_| unknown())?;
            g.edge_between(a, b).ok_or_else(unknown)
        };
        let mut images: HashMap<EdgeId, EdgeId> = HashMap::new();
        for [from, to] in &raw.map {
            let e = resolve(&source, "source", from)?;
            let img = resolve(&target, "target", to)?;
            if images.insert(e, img).is_some() {
                return Err(MapError::NotABijection(format!(
                    "source edge {} listed twice",
                    source.describe_edge(e)
                )));
            }
        }
        let mut assignment = Vec::with_capacity(source.edge_count());
        for e in source.edge_ids() {
            match images.get(&e) {
                Some(&img) => assignment.push(img),
                None => {
                    return Err(MapError::NotABijection(format!(
                        "source edge {} has no image",
                        source.describe_edge(e)
                    )))
                }
            }
        }
        EdgeMap::new(source, target, assignment)
    }

    pub fn to_json_value(&self) -> MapJson {
        let pair = |g: &Graph, e: EdgeId| {
            let (a, b) = g.endpoint_labels(e);
            [a.to_string(), b.to_string()]
        };
        MapJson {
            map: self
                .source
                .edge_ids()
                .map(|e| [pair(&self.source, e), pair(&self.target, self.image(e))])
                .collect(),
        }
    }

    /// Pretty JSON in source edge order, newline terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("map JSON serialization cannot fail");
        s.push('\n');
        s
    }

    pub(crate) fn source_star(&self, v: VertexId) -> Result<EdgeSet, MapError> {
        let star = self.source.star(v)?;
        if star.is_empty() {
            return Err(MapError::IsolatedVertex(self.source.label(v).to_string()));
        }
        Ok(star)
    }

    pub(crate) fn target_star(&self, w: VertexId) -> Result<EdgeSet, MapError> {
        let star = self.target.star(w)?;
        if star.is_empty() {
            return Err(MapError::IsolatedVertex(self.target.label(w).to_string()));
        }
        Ok(star)
    }
}

/// On-disk edge map format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub map: Vec<[[String; 2]; 2]>,
}
