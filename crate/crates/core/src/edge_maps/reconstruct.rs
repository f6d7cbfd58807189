use std::collections::BTreeMap;

use thiserror::Error;

use super::stars::{classify_star_image, StarImageClass};
use super::{EdgeMap, MapError};
use crate::connectivity::is_k_connected;
use crate::graph::VertexId;

/// A vertex bijection from the source of an edge map onto its target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexIso {
    images: Vec<VertexId>,
}

impl VertexIso {
    /// `images[v]` is the image of source vertex `v`. Must be a permutation
    /// of `0..images.len()`.
    pub fn new(images: Vec<VertexId>) -> Option<VertexIso> {
        let mut seen = vec![false; images.len()];
        for v in &images {
            if v.0 >= images.len() || std::mem::replace(&mut seen[v.0], true) {
                return None;
            }
        }
        Some(VertexIso { images })
    }

    pub fn image(&self, v: VertexId) -> VertexId {
        self.images[v.0]
    }

    pub fn images(&self) -> &[VertexId] {
        &self.images
    }

    /// Source label to target label.
    pub fn to_label_map(&self, f: &EdgeMap) -> BTreeMap<String, String> {
        self.images
            .iter()
            .enumerate()
            .map(|(v, &w)| {
                (
                    f.source().label(VertexId(v)).to_string(),
                    f.target().label(w).to_string(),
                )
            })
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum ReconstructError {
    #[error("source graph is not 3-connected")]
    NotThreeConnected,
    #[error("star at {label:?} does not map onto a star ({class:?})")]
    NotInduced {
        vertex: VertexId,
        label: String,
        class: StarImageClass,
    },
    #[error("stars at {first:?} and {second:?} both map onto the star at {target:?}")]
    Collision {
        first: String,
        second: String,
        target: String,
    },
    #[error("source and target have different vertex counts")]
    VertexCountMismatch,
    #[error("vertex map built from stars does not induce the edge map")]
    InducedCheckFailed,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Recovers the vertex isomorphism inducing `f`, for a 3-connected source.
///
/// Every source star must map onto a full target star; the centre of that
/// star is the image vertex. A failure names the first vertex (in id order)
/// whose star does not, which certifies that `f` is not a circuit
/// injection.
pub fn reconstruct_vertex_isomorphism(f: &EdgeMap) -> Result<VertexIso, ReconstructError> {
    if !is_k_connected(f.source(), 3) {
        return Err(ReconstructError::NotThreeConnected);
    }
    reconstruct_unguarded(f)
}

/// [`reconstruct_vertex_isomorphism`] without the 3-connectivity check.
pub fn reconstruct_unguarded(f: &EdgeMap) -> Result<VertexIso, ReconstructError> {
    let (s, t) = (f.source(), f.target());
    let mut images = Vec::with_capacity(s.vertex_count());
    let mut owner: Vec<Option<VertexId>> = vec![None; t.vertex_count()];
    for v in s.vertices() {
        let w = match classify_star_image(f, v)? {
            StarImageClass::StarAt(w) => w,
            class => {
                return Err(ReconstructError::NotInduced {
                    vertex: v,
                    label: s.label(v).to_string(),
                    class,
                })
            }
        };
        if let Some(prev) = owner[w.0] {
            return Err(ReconstructError::Collision {
                first: s.label(prev).to_string(),
                second: s.label(v).to_string(),
                target: t.label(w).to_string(),
            });
        }
        owner[w.0] = Some(v);
        images.push(w);
    }
    if s.vertex_count() != t.vertex_count() {
        return Err(ReconstructError::VertexCountMismatch);
    }
    let iso = VertexIso::new(images).expect("injective on equal-size sets");
    if !verify_induced(f, &iso) {
        return Err(ReconstructError::InducedCheckFailed);
    }
    Ok(iso)
}

/// True iff `f` sends every source edge `(u, v)` to `(λ(u), λ(v))`.
pub fn verify_induced(f: &EdgeMap, iso: &VertexIso) -> bool {
    let (s, t) = (f.source(), f.target());
    if iso.images.len() != s.vertex_count() || s.vertex_count() != t.vertex_count() {
        return false;
    }
    s.edge_ids().all(|e| {
        let (u, v) = s.endpoints(e);
        t.edge_between(iso.image(u), iso.image(v)) == Some(f.image(e))
    })
}
