use thiserror::Error;

use super::{EdgeMap, MapError};
use crate::connectivity::is_k_connected;
use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};

/// What a star becomes under the map (or its inverse).
///
/// Vertex and edge ids refer to the graph the mapped set lives in: the
/// target for [`classify_star_image`], the source for
/// [`classify_star_preimage`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarImageClass {
    /// Exactly the star at this vertex.
    StarAt(VertexId),
    /// Pairwise nonadjacent edges.
    IndependentSet,
    Violation(ViolationWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationWitness {
    /// `adjacent` meet at `shared`; `straggler` is in the set but misses
    /// `shared`. Covers triangles and longer paths.
    Straggler {
        adjacent: (EdgeId, EdgeId),
        shared: VertexId,
        straggler: EdgeId,
    },
    /// Every edge meets `center`, but `extra` is at `center` and not in the
    /// set.
    PartialStar { center: VertexId, extra: EdgeId },
}

impl StarImageClass {
    pub fn is_violation(&self) -> bool {
        matches!(self, StarImageClass::Violation(_))
    }
}

/// Sorts `set` into one of the three classes.
pub(crate) fn classify_edge_set(g: &Graph, set: &EdgeSet) -> StarImageClass {
    let ids = set.ids();
    if set.is_independent(g) {
        // a lone edge is a full star only at an endpoint of degree one; an
        // isolated edge has two such endpoints and is left unresolved
        if let [e] = ids[..] {
            let (x, y) = g.endpoints(e);
            match (g.degree(x) == 1, g.degree(y) == 1) {
                (true, false) => return StarImageClass::StarAt(x),
                (false, true) => return StarImageClass::StarAt(y),
                _ => {}
            }
        }
        return StarImageClass::IndependentSet;
    }
    let (e1, e2, shared) = ids
        .iter()
        .enumerate()
        .find_map(|(i, &e1)| {
            ids[i + 1..].iter().find_map(|&e2| {
                let (a, b) = g.endpoints(e1);
                [a, b].into_iter().find(|&w| g.is_incident(e2, w)).map(|w| (e1, e2, w))
            })
        })
        .expect("a dependent set has two adjacent edges");
    if let Some(&straggler) = ids.iter().find(|&&e| !g.is_incident(e, shared)) {
        return StarImageClass::Violation(ViolationWitness::Straggler {
            adjacent: (e1, e2),
            shared,
            straggler,
        });
    }
    let star = g.star(shared).expect("shared vertex exists");
    let extra = star.iter().find(|&e| !set.contains(e));
    match extra {
        None => StarImageClass::StarAt(shared),
        Some(extra) => StarImageClass::Violation(ViolationWitness::PartialStar { center: shared, extra }),
    }
}

/// Classifies `f(S(v))` in the target.
pub fn classify_star_image(f: &EdgeMap, v: VertexId) -> Result<StarImageClass, MapError> {
    let star = f.source_star(v)?;
    let image = f.image_set(&star)?;
    Ok(classify_edge_set(f.target(), &image))
}

/// Classifies `f⁻¹(S(w))` in the source.
pub fn classify_star_preimage(f: &EdgeMap, w: VertexId) -> Result<StarImageClass, MapError> {
    let star = f.target_star(w)?;
    let preimage = f.preimage_set(&star)?;
    Ok(classify_edge_set(f.source(), &preimage))
}

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("preimage of the star is not an independent set ({0:?})")]
    NotIndependent(StarImageClass),
    #[error("source graph is not 2-connected")]
    NotTwoConnected,
    #[error("deleting the preimage leaves {components} components instead of two")]
    ComponentCount { components: usize },
    #[error("preimage edge {edge} does not cross between the two components")]
    NonCrossingEdge { edge: String },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Two sides of the source separated by the preimage of a target star.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Contains the least vertex of the source.
    pub first: Vec<VertexId>,
    pub second: Vec<VertexId>,
    /// The preimage edges; each has one end on each side.
    pub crossing: EdgeSet,
}

/// Splits the source along `f⁻¹(S(w))`.
///
/// Requires the preimage to be independent and the source 2-connected. For
/// a genuine circuit injection the deletion leaves exactly two components
/// with every preimage edge running between them; anything else is reported
/// as an error and means `f` does not preserve circuits.
pub fn decompose_by_star_preimage(f: &EdgeMap, w: VertexId) -> Result<Decomposition, DecomposeError> {
    let star = f.target_star(w)?;
    let crossing = f.preimage_set(&star).map_err(MapError::from)?;
    let class = classify_edge_set(f.source(), &crossing);
    if class != StarImageClass::IndependentSet {
        return Err(DecomposeError::NotIndependent(class));
    }
    let g = f.source();
    if !is_k_connected(g, 2) {
        return Err(DecomposeError::NotTwoConnected);
    }
    let (rest, _) = g.delete_edges(&crossing).map_err(MapError::from)?;
    let mut blocks = rest.components();
    if blocks.len() != 2 {
        return Err(DecomposeError::ComponentCount {
            components: blocks.len(),
        });
    }
    // `rest` shares labels with `g`, hence vertex ids too
    let second = blocks.pop().expect("two blocks");
    let first = blocks.pop().expect("two blocks");
    for e in crossing.iter() {
        let (a, b) = g.endpoints(e);
        let a_first = first.binary_search(&a).is_ok();
        let b_first = first.binary_search(&b).is_ok();
        if a_first == b_first {
            return Err(DecomposeError::NonCrossingEdge {
                edge: g.describe_edge(e),
            });
        }
    }
    Ok(Decomposition {
        first,
        second,
        crossing,
    })
}
