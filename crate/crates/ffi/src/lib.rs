//! C ABI for `circmap`.
//!
//! Graphs and edge maps live behind opaque handles (`CmGraph`, `CmEdgeMap`)
//! that the caller frees with the matching `*_free` function. Fallible calls
//! return a [`CmStatus`] and write results through out-pointers; on failure
//! [`cm_last_error_message`] describes the problem. Strings returned by the
//! library are NUL-terminated UTF-8 and must be released with
//! [`cm_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circmap::circuits::enumerate_circuits;
use circmap::connectivity::is_k_connected;
use circmap::edge_maps::{
    is_circuit_injection, is_circuit_isomorphism, reconstruct_unguarded, reconstruct_vertex_isomorphism, Mode,
    ReconstructError, Verdict, VerifyError, Witness,
};
use circmap::generators::{build_sanders_counterexample, named_graph, CounterexampleParams, NamedGraph};
use circmap::{CircuitError, EdgeMap, EdgeSet, Graph};
use serde_json::{json, Value};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    TooManyCircuits = 4,
    NotThreeConnected = 5,
    NotInduced = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct CmGraph(Graph);

/// Opaque edge-map handle; owns copies of its source and target.
pub struct CmEdgeMap(EdgeMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CmStatus, String);

impl Failure {
    fn input(e: impl ToString) -> Self {
        Failure(CmStatus::InvalidInput, e.to_string())
    }
}

fn record(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            CmStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            record(message);
            status
        }
        Err(_) => {
            record("internal panic".into());
            CmStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(CmStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(CmStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(CmStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn pairs(g: &Graph, set: &EdgeSet) -> Value {
    Value::Array(
        set.iter()
            .map(|e| {
                let (a, b) = g.endpoint_labels(e);
                json!([a, b])
            })
            .collect(),
    )
}

fn witness_json(f: &EdgeMap, w: &Witness) -> Value {
    match w {
        Witness::ImageNotCircuit { circuit, image } => json!({
            "direction": "forward",
            "circuit": pairs(f.source(), circuit.edges()),
            "image": pairs(f.target(), image),
        }),
        Witness::PreimageNotCircuit { circuit, preimage } => json!({
            "direction": "backward",
            "circuit": pairs(f.target(), circuit.edges()),
            "preimage": pairs(f.source(), preimage),
        }),
    }
}

/// Message for the last failed call on this thread, or NULL after a
/// successful call. Owned by the library; valid until the next call.
#[no_mangle]
pub extern "C" fn cm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from `{"vertices": [...], "edges": [[u, v], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_from_json(json: *const c_char, out: *mut *mut CmGraph) -> CmStatus {
    guard(|| {
        let g = Graph::from_json(text(json, "json")?).map_err(Failure::input)?;
        put(out, Box::into_raw(Box::new(CmGraph(g))))
    })
}

/// Builds a catalog graph: `K4`, `K3,3`, `W5`, `prism`, `cube`, `theta3`,
/// `double-bowtie`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_named(name: *const c_char, out: *mut *mut CmGraph) -> CmStatus {
    guard(|| {
        let which: NamedGraph = text(name, "name")?.parse().map_err(Failure::input)?;
        let g = named_graph(&which).map_err(Failure::input)?;
        put(out, Box::into_raw(Box::new(CmGraph(g))))
    })
}

/// Serializes a graph; free the result with [`cm_string_free`].
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_to_json(graph: *const CmGraph, out: *mut *mut c_char) -> CmStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        put(out, owned_string(g.0.to_json()))
    })
}

/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_free(graph: *mut CmGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices; 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_vertex_count(graph: *const CmGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Number of edges; 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_edge_count(graph: *const CmGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_is_k_connected(graph: *const CmGraph, k: usize, out: *mut bool) -> CmStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        put(out, is_k_connected(&g.0, k))
    })
}

/// Counts circuits, failing with `TOO_MANY_CIRCUITS` above `max_circuits`.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_circuit_count(
    graph: *const CmGraph,
    max_circuits: usize,
    out: *mut usize,
) -> CmStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        match enumerate_circuits(&g.0, max_circuits) {
            Ok(all) => put(out, all.len()),
            Err(e @ CircuitError::TooManyCircuits { .. }) => Err(Failure(CmStatus::TooManyCircuits, e.to_string())),
            Err(e) => Err(Failure::input(e)),
        }
    })
}

/// Parses `{"map": [[[u, v], [x, y]], ...]}` between copies of `source` and
/// `target`.
///
/// # Safety
/// Both graphs must be live handles; `json` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cm_edge_map_from_json(
    source: *const CmGraph,
    target: *const CmGraph,
    json: *const c_char,
    out: *mut *mut CmEdgeMap,
) -> CmStatus {
    guard(|| {
        let (s, t) = (borrow(source, "source")?, borrow(target, "target")?);
        let f = EdgeMap::from_json(s.0.clone(), t.0.clone(), text(json, "json")?).map_err(Failure::input)?;
        put(out, Box::into_raw(Box::new(CmEdgeMap(f))))
    })
}

/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_edge_map_to_json(map: *const CmEdgeMap, out: *mut *mut c_char) -> CmStatus {
    guard(|| {
        let f = borrow(map, "map")?;
        put(out, owned_string(f.0.to_json()))
    })
}

/// A new handle holding a copy of the map's source (`which_target` false)
/// or target graph.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_edge_map_graph(
    map: *const CmEdgeMap,
    which_target: bool,
    out: *mut *mut CmGraph,
) -> CmStatus {
    guard(|| {
        let f = borrow(map, "map")?;
        let g = if which_target { f.0.target() } else { f.0.source() };
        put(out, Box::into_raw(Box::new(CmGraph(g.clone()))))
    })
}

/// # Safety
/// `map` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cm_edge_map_free(map: *mut CmEdgeMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

unsafe fn report_verdict(
    f: &EdgeMap,
    verdict: Result<Verdict, VerifyError>,
    passed: *mut bool,
    witness: *mut *mut c_char,
) -> Result<(), Failure> {
    let verdict = verdict.map_err(|e| Failure(CmStatus::TooManyCircuits, e.to_string()))?;
    put(passed, verdict.is_pass())?;
    if !witness.is_null() {
        let text = verdict.witness().map(|w| witness_json(f, w).to_string());
        witness.write(text.map_or(ptr::null_mut(), owned_string));
    }
    Ok(())
}

/// Exhaustively checks that every source circuit maps to a circuit.
///
/// On a failed check `*passed` is false and, when `witness` is non-NULL, it
/// receives the offending circuit and image as endpoint pairs in JSON.
///
/// # Safety
/// `map` must be a live handle; `passed` writable; `witness` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn cm_verify_injection(
    map: *const CmEdgeMap,
    max_circuits: usize,
    passed: *mut bool,
    witness: *mut *mut c_char,
) -> CmStatus {
    guard(|| {
        let f = borrow(map, "map")?;
        report_verdict(
            &f.0,
            is_circuit_injection(&f.0, Mode::Exhaustive { max_circuits }),
            passed,
            witness,
        )
    })
}

/// As [`cm_verify_injection`], additionally checking preimages of target
/// circuits.
///
/// # Safety
/// `map` must be a live handle; `passed` writable; `witness` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn cm_verify_isomorphism(
    map: *const CmEdgeMap,
    max_circuits: usize,
    passed: *mut bool,
    witness: *mut *mut c_char,
) -> CmStatus {
    guard(|| {
        let f = borrow(map, "map")?;
        report_verdict(&f.0, is_circuit_isomorphism(&f.0, max_circuits), passed, witness)
    })
}

/// Recovers the inducing vertex map as a JSON object from source labels to
/// target labels. With `guarded` the source must be 3-connected.
///
/// # Safety
/// `map` must be a live handle; `lambda_json` writable.
#[no_mangle]
pub unsafe extern "C" fn cm_reconstruct(
    map: *const CmEdgeMap,
    guarded: bool,
    lambda_json: *mut *mut c_char,
) -> CmStatus {
    guard(|| {
        let f = borrow(map, "map")?;
        let result = if guarded {
            reconstruct_vertex_isomorphism(&f.0)
        } else {
            reconstruct_unguarded(&f.0)
        };
        match result {
            Ok(iso) => put(lambda_json, owned_string(json!(iso.to_label_map(&f.0)).to_string())),
            Err(ReconstructError::NotThreeConnected) => Err(Failure(
                CmStatus::NotThreeConnected,
                ReconstructError::NotThreeConnected.to_string(),
            )),
            Err(ReconstructError::Map(e)) => Err(Failure::input(e)),
            Err(e) => Err(Failure(CmStatus::NotInduced, e.to_string())),
        }
    })
}

/// The theta-graph to `K_{p,p}` circuit injection for an odd prime `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_theta_counterexample(p: u64, out: *mut *mut CmEdgeMap) -> CmStatus {
    guard(|| {
        let params = CounterexampleParams::new(p).map_err(Failure::input)?;
        let ce = build_sanders_counterexample(params).map_err(Failure::input)?;
        put(out, Box::into_raw(Box::new(CmEdgeMap(ce.map))))
    })
}
