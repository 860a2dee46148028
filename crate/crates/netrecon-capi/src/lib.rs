//! C ABI for the netrecon library.
//!
//! Conventions:
//! * Handles (`NrGraph`, `NrFitness`, `NrEnsemble`) are opaque pointers owned
//!   by the library; release them with the matching `nr_*_free` function.
//!   Freeing `NULL` is a no-op.
//! * Every fallible call returns an [`NrStatus`]; `NR_OK` is zero. On failure
//!   a human-readable message is available from [`nr_last_error`] until the
//!   next API call on the same thread.
//! * Out-parameters are written only on `NR_OK`.
//! * Panics never cross the boundary; they surface as `NR_ERR_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use netrecon::bootstrap::{
    reconstruct, BootstrapError, EstimateMethod, EstimationMode, PartialObservation,
};
use netrecon::ensemble::{
    calibrate_z, fit_configuration_model, EnsembleError, FitnessEnsemble,
    DEFAULT_CM_MAX_ITERATIONS, DEFAULT_CM_TOLERANCE,
};
use netrecon::graph::{FitnessVector, Graph};
use netrecon::io::{ingest_edge_list, ingest_fitness, IoError};
use netrecon::metrics::{metrics_report, MetricsError, Property};

/// Result code of every fallible API call. `NR_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[allow(non_camel_case_types)]
pub enum NrStatus {
    NR_OK = 0,
    /// A required pointer argument was NULL.
    NR_ERR_NULL = 1,
    /// An argument failed validation (range, shape, duplicates, ...).
    NR_ERR_INVALID = 2,
    /// A path or string was not valid UTF-8.
    NR_ERR_UTF8 = 3,
    /// The file could not be read or written.
    NR_ERR_IO = 4,
    /// The file was readable but malformed.
    NR_ERR_PARSE = 5,
    /// All observed degrees are zero; the coupling sits on the z = 0 boundary.
    NR_ERR_DEGENERATE = 6,
    /// The observed degree sum cannot be reached by any coupling.
    NR_ERR_INFEASIBLE = 7,
    /// An iterative solver ran out of iterations.
    NR_ERR_NO_CONVERGENCE = 8,
    /// The requested quantity is undefined for this input.
    NR_ERR_UNDEFINED = 9,
    /// Internal panic; treat the library state as poisoned.
    NR_ERR_PANIC = 10,
}

/// Exact structural metrics of a graph. `rich_club` is meaningful only when
/// `has_rich_club` is true (it is undefined for complete graphs).
#[repr(C)]
pub struct NrMetrics {
    pub density: f64,
    pub avg_neighbor_degree: f64,
    pub clustering: f64,
    pub rich_club: f64,
    pub has_rich_club: bool,
}

/// Global property selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum NrProperty {
    NR_PROPERTY_DENSITY = 0,
    NR_PROPERTY_KNN = 1,
    NR_PROPERTY_CLUSTERING = 2,
    NR_PROPERTY_RICH_CLUB = 3,
}

/// Estimation strategy for `nr_reconstruct`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum NrMode {
    /// Analytic where a closed form exists, sampling elsewhere.
    NR_MODE_AUTO = 0,
    NR_MODE_ANALYTIC = 1,
    NR_MODE_MC = 2,
}

/// One reconstructed property. `std` is meaningful only when `has_std` is
/// true; `samples` is 0 for analytic estimates; `z` is the calibrated
/// coupling behind the estimate. `method` is 0 for analytic, 1 for
/// Monte Carlo.
#[repr(C)]
pub struct NrEstimate {
    pub mean: f64,
    pub std: f64,
    pub has_std: bool,
    pub method: i32,
    pub samples: usize,
    pub z: f64,
}

/// Opaque undirected graph handle.
pub struct NrGraph {
    inner: Graph,
}

/// Opaque fitness-vector handle.
pub struct NrFitness {
    inner: FitnessVector,
}

/// Opaque handle for a fitness ensemble with a fixed coupling.
pub struct NrEnsemble {
    inner: FitnessEnsemble,
}

// ---------------------------------------------------------------------------
// error reporting

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).unwrap_or_default();
    });
}

fn fail(status: NrStatus, message: &str) -> NrStatus {
    set_error(message);
    status
}

/// Message describing the most recent failure on this thread. The pointer is
/// valid until the next netrecon call on the same thread. Never NULL.
#[no_mangle]
pub extern "C" fn nr_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn ensemble_status(e: &EnsembleError) -> NrStatus {
    match e {
        EnsembleError::DegenerateTarget | EnsembleError::AllZeroDegrees => NrStatus::NR_ERR_DEGENERATE,
        EnsembleError::InfeasibleTarget { .. } | EnsembleError::AllSaturatedDegrees => {
            NrStatus::NR_ERR_INFEASIBLE
        }
        EnsembleError::NoConvergence { .. } | EnsembleError::NoBracket => {
            NrStatus::NR_ERR_NO_CONVERGENCE
        }
        _ => NrStatus::NR_ERR_INVALID,
    }
}

fn metrics_status(e: &MetricsError) -> NrStatus {
    match e {
        MetricsError::RichClubUndefined => NrStatus::NR_ERR_UNDEFINED,
        _ => NrStatus::NR_ERR_INVALID,
    }
}

fn io_status(e: &IoError) -> NrStatus {
    match e {
        IoError::Read { .. } | IoError::Write(_) | IoError::CsvWrite(_) => NrStatus::NR_ERR_IO,
        _ => NrStatus::NR_ERR_PARSE,
    }
}

fn bootstrap_status(e: &BootstrapError) -> NrStatus {
    match e {
        BootstrapError::Calibration(inner) => ensemble_status(inner),
        BootstrapError::Metrics(inner) => metrics_status(inner),
        _ => NrStatus::NR_ERR_INVALID,
    }
}

fn guarded<F: FnOnce() -> NrStatus>(body: F) -> NrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(NrStatus::NR_ERR_PANIC, "internal panic"),
    }
}

unsafe fn read_path(path: *const c_char) -> Result<PathBuf, NrStatus> {
    if path.is_null() {
        return Err(fail(NrStatus::NR_ERR_NULL, "path is NULL"));
    }
    match CStr::from_ptr(path).to_str() {
        Ok(s) => Ok(PathBuf::from(s)),
        Err(_) => Err(fail(NrStatus::NR_ERR_UTF8, "path is not valid UTF-8")),
    }
}

// ---------------------------------------------------------------------------
// graphs

/// Read an undirected binary graph from a `src,dst,weight` edge-list CSV.
/// Positive weights become edges; rows of weight 0 only declare nodes.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_read_edge_list(
    path: *const c_char,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guarded(|| {
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        let path = match read_path(path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        match ingest_edge_list(&path) {
            Ok(weighted) => {
                let graph = weighted.binarize();
                *out = Box::into_raw(Box::new(NrGraph { inner: graph }));
                NrStatus::NR_OK
            }
            Err(e) => fail(io_status(&e), &e.to_string()),
        }
    })
}

/// Build a graph from a dense row-major 0/1 adjacency matrix of shape
/// `n_nodes * n_nodes`. The matrix must be symmetric with a zero diagonal.
///
/// # Safety
/// `adjacency` must point to `n_nodes * n_nodes` readable bytes and `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_from_dense(
    n_nodes: usize,
    adjacency: *const u8,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guarded(|| {
        if adjacency.is_null() || out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "adjacency or out is NULL");
        }
        let cells = std::slice::from_raw_parts(adjacency, n_nodes * n_nodes);
        if let Some(bad) = cells.iter().find(|&&c| c > 1) {
            return fail(
                NrStatus::NR_ERR_INVALID,
                &format!("adjacency entries must be 0 or 1, got {bad}"),
            );
        }
        let adj: Vec<bool> = cells.iter().map(|&c| c == 1).collect();
        match Graph::from_adjacency(n_nodes, adj) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(NrGraph { inner: graph }));
                NrStatus::NR_OK
            }
            Err(e) => fail(NrStatus::NR_ERR_INVALID, &e.to_string()),
        }
    })
}

/// Number of nodes, or 0 for a NULL handle.
///
/// # Safety
/// `graph` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_node_count(graph: *const NrGraph) -> usize {
    match graph.as_ref() {
        Some(g) => g.inner.n(),
        None => 0,
    }
}

/// Number of edges, or 0 for a NULL handle.
///
/// # Safety
/// `graph` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_edge_count(graph: *const NrGraph) -> usize {
    match graph.as_ref() {
        Some(g) => g.inner.edge_count(),
        None => 0,
    }
}

/// Whether nodes `i` and `j` are adjacent.
///
/// # Safety
/// `graph` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_has_edge(
    graph: *const NrGraph,
    i: usize,
    j: usize,
    out: *mut bool,
) -> NrStatus {
    guarded(|| {
        let Some(g) = graph.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "graph is NULL");
        };
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        let n = g.inner.n();
        if i >= n || j >= n {
            return fail(
                NrStatus::NR_ERR_INVALID,
                &format!("node index out of range for {n} nodes"),
            );
        }
        *out = g.inner.has_edge(i, j);
        NrStatus::NR_OK
    })
}

/// Copy all node degrees into `out`, which must hold `nr_graph_node_count`
/// entries.
///
/// # Safety
/// `graph` must be a live graph handle; `out` must point to enough writable
/// memory.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_degrees(graph: *const NrGraph, out: *mut usize) -> NrStatus {
    guarded(|| {
        let Some(g) = graph.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "graph is NULL");
        };
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        let degrees = g.inner.degrees();
        std::ptr::copy_nonoverlapping(degrees.as_ptr(), out, degrees.len());
        NrStatus::NR_OK
    })
}

/// Exact density, average neighbor degree, mean clustering, and rich-club
/// structure of the graph. Requires at least 3 nodes.
///
/// # Safety
/// `graph` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_metrics(graph: *const NrGraph, out: *mut NrMetrics) -> NrStatus {
    guarded(|| {
        let Some(g) = graph.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "graph is NULL");
        };
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        match metrics_report(&g.inner) {
            Ok(report) => {
                *out = NrMetrics {
                    density: report.density,
                    avg_neighbor_degree: report.knn,
                    clustering: report.clustering,
                    rich_club: report.rich_club.unwrap_or(0.0),
                    has_rich_club: report.rich_club.is_some(),
                };
                NrStatus::NR_OK
            }
            Err(e) => fail(metrics_status(&e), &e.to_string()),
        }
    })
}

/// Release a graph handle. NULL is ignored.
///
/// # Safety
/// `graph` must be NULL or a handle obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_free(graph: *mut NrGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

// ---------------------------------------------------------------------------
// fitness vectors

/// Wrap `len` positive finite values as a fitness vector.
///
/// # Safety
/// `values` must point to `len` readable doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nr_fitness_new(
    values: *const f64,
    len: usize,
    out: *mut *mut NrFitness,
) -> NrStatus {
    guarded(|| {
        if values.is_null() || out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "values or out is NULL");
        }
        let slice = std::slice::from_raw_parts(values, len);
        match FitnessVector::new(slice.to_vec()) {
            Ok(fitness) => {
                *out = Box::into_raw(Box::new(NrFitness { inner: fitness }));
                NrStatus::NR_OK
            }
            Err(e) => fail(NrStatus::NR_ERR_INVALID, &e.to_string()),
        }
    })
}

/// Read a `node,fitness` CSV; values keep the file's row order.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_fitness_read(
    path: *const c_char,
    out: *mut *mut NrFitness,
) -> NrStatus {
    guarded(|| {
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        let path = match read_path(path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        match ingest_fitness(&path, None) {
            Ok((fitness, _labels)) => {
                *out = Box::into_raw(Box::new(NrFitness { inner: fitness }));
                NrStatus::NR_OK
            }
            Err(e) => fail(io_status(&e), &e.to_string()),
        }
    })
}

/// Number of entries, or 0 for a NULL handle.
///
/// # Safety
/// `fitness` must be NULL or a live fitness handle.
#[no_mangle]
pub unsafe extern "C" fn nr_fitness_len(fitness: *const NrFitness) -> usize {
    match fitness.as_ref() {
        Some(f) => f.inner.len(),
        None => 0,
    }
}

/// Release a fitness handle. NULL is ignored.
///
/// # Safety
/// `fitness` must be NULL or a handle obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nr_fitness_free(fitness: *mut NrFitness) {
    if !fitness.is_null() {
        drop(Box::from_raw(fitness));
    }
}

// ---------------------------------------------------------------------------
// calibration, ensembles, fits

/// Solve for the coupling z that matches the expected degree sum over the
/// observed subset to the sum of the observed degrees. `subset` and
/// `degrees` are parallel arrays of length `len`; indices refer to positions
/// in the fitness vector.
///
/// # Safety
/// `fitness` must be a live handle; `subset` and `degrees` must point to
/// `len` readable entries; `out_z` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nr_calibrate_z(
    fitness: *const NrFitness,
    subset: *const usize,
    degrees: *const f64,
    len: usize,
    out_z: *mut f64,
) -> NrStatus {
    guarded(|| {
        let Some(f) = fitness.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "fitness is NULL");
        };
        if subset.is_null() || degrees.is_null() || out_z.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "subset, degrees, or out_z is NULL");
        }
        let subset = std::slice::from_raw_parts(subset, len);
        let degrees = std::slice::from_raw_parts(degrees, len);
        match calibrate_z(&f.inner, subset, degrees) {
            Ok(calibration) => {
                *out_z = calibration.z;
                NrStatus::NR_OK
            }
            Err(e) => fail(ensemble_status(&e), &e.to_string()),
        }
    })
}

/// Fit configuration-model multipliers x to a degree sequence: the fixed
/// point of k_i = sum_{j != i} x_i x_j / (1 + x_i x_j). Pass `tol <= 0` or
/// `max_iterations == 0` for the defaults (1e-8, 100000). `out_x` receives
/// `len` multipliers.
///
/// # Safety
/// `degrees` must point to `len` readable doubles and `out_x` to `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nr_cm_fit(
    degrees: *const f64,
    len: usize,
    tol: f64,
    max_iterations: usize,
    out_x: *mut f64,
) -> NrStatus {
    guarded(|| {
        if degrees.is_null() || out_x.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "degrees or out_x is NULL");
        }
        let degrees = std::slice::from_raw_parts(degrees, len);
        let tol = if tol > 0.0 { tol } else { DEFAULT_CM_TOLERANCE };
        let max_iterations = if max_iterations > 0 {
            max_iterations
        } else {
            DEFAULT_CM_MAX_ITERATIONS
        };
        match fit_configuration_model(degrees, tol, max_iterations) {
            Ok(fit) => {
                std::ptr::copy_nonoverlapping(fit.x.as_ptr(), out_x, len);
                NrStatus::NR_OK
            }
            Err(e) => fail(ensemble_status(&e), &e.to_string()),
        }
    })
}

/// Pair a fitness vector with a fixed coupling z > 0.
///
/// # Safety
/// `fitness` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_ensemble_new(
    fitness: *const NrFitness,
    z: f64,
    out: *mut *mut NrEnsemble,
) -> NrStatus {
    guarded(|| {
        let Some(f) = fitness.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "fitness is NULL");
        };
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        match FitnessEnsemble::new(f.inner.clone(), z) {
            Ok(ensemble) => {
                *out = Box::into_raw(Box::new(NrEnsemble { inner: ensemble }));
                NrStatus::NR_OK
            }
            Err(e) => fail(NrStatus::NR_ERR_INVALID, &e.to_string()),
        }
    })
}

/// Link probability p_ij = z y_i y_j / (1 + z y_i y_j) for distinct nodes.
///
/// # Safety
/// `ensemble` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_ensemble_link_probability(
    ensemble: *const NrEnsemble,
    i: usize,
    j: usize,
    out: *mut f64,
) -> NrStatus {
    guarded(|| {
        let Some(e) = ensemble.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "ensemble is NULL");
        };
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        match e.inner.link_probability(i, j) {
            Ok(p) => {
                *out = p;
                NrStatus::NR_OK
            }
            Err(err) => fail(ensemble_status(&err), &err.to_string()),
        }
    })
}

/// Copy all expected degrees into `out`, which must hold as many entries as
/// the fitness vector.
///
/// # Safety
/// `ensemble` must be a live handle; `out` must point to enough writable
/// memory.
#[no_mangle]
pub unsafe extern "C" fn nr_ensemble_expected_degrees(
    ensemble: *const NrEnsemble,
    out: *mut f64,
) -> NrStatus {
    guarded(|| {
        let Some(e) = ensemble.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "ensemble is NULL");
        };
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        let expected = e.inner.expected_degrees();
        std::ptr::copy_nonoverlapping(expected.as_ptr(), out, expected.len());
        NrStatus::NR_OK
    })
}

/// Draw one graph from the ensemble; identical seeds give identical graphs.
///
/// # Safety
/// `ensemble` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_ensemble_sample(
    ensemble: *const NrEnsemble,
    seed: u64,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guarded(|| {
        let Some(e) = ensemble.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "ensemble is NULL");
        };
        if out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "out is NULL");
        }
        let graph = e.inner.sample(seed);
        *out = Box::into_raw(Box::new(NrGraph { inner: graph }));
        NrStatus::NR_OK
    })
}

/// Release an ensemble handle. NULL is ignored.
///
/// # Safety
/// `ensemble` must be NULL or a handle obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nr_ensemble_free(ensemble: *mut NrEnsemble) {
    if !ensemble.is_null() {
        drop(Box::from_raw(ensemble));
    }
}

// ---------------------------------------------------------------------------
// reconstruction

/// Estimate one global property of the full network from fitness values plus
/// the degrees of an observed subset. `subset` and `degrees` are parallel
/// arrays of length `len`. `samples` and `seed` matter only when sampling is
/// used. Returns `NR_ERR_UNDEFINED` when the property (rich-club on a
/// complete reconstruction) has no defined value.
///
/// # Safety
/// `fitness` must be a live handle; `subset` and `degrees` must point to
/// `len` readable entries; `out` must be valid.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn nr_reconstruct(
    fitness: *const NrFitness,
    subset: *const usize,
    degrees: *const f64,
    len: usize,
    property: NrProperty,
    mode: NrMode,
    samples: usize,
    seed: u64,
    out: *mut NrEstimate,
) -> NrStatus {
    guarded(|| {
        let Some(f) = fitness.as_ref() else {
            return fail(NrStatus::NR_ERR_NULL, "fitness is NULL");
        };
        if subset.is_null() || degrees.is_null() || out.is_null() {
            return fail(NrStatus::NR_ERR_NULL, "subset, degrees, or out is NULL");
        }
        let subset = std::slice::from_raw_parts(subset, len).to_vec();
        let degrees = std::slice::from_raw_parts(degrees, len).to_vec();
        let observation = match PartialObservation::new(f.inner.len(), subset, degrees) {
            Ok(obs) => obs,
            Err(e) => return fail(bootstrap_status(&e), &e.to_string()),
        };
        let property = match property {
            NrProperty::NR_PROPERTY_DENSITY => Property::Density,
            NrProperty::NR_PROPERTY_KNN => Property::Knn,
            NrProperty::NR_PROPERTY_CLUSTERING => Property::Clustering,
            NrProperty::NR_PROPERTY_RICH_CLUB => Property::RichClub,
        };
        let mode = match mode {
            NrMode::NR_MODE_AUTO => EstimationMode::Auto,
            NrMode::NR_MODE_ANALYTIC => EstimationMode::Analytic,
            NrMode::NR_MODE_MC => EstimationMode::MonteCarlo,
        };
        match reconstruct(&f.inner, &observation, &[property], mode, samples, seed) {
            Ok(estimates) => match estimates.first() {
                Some(estimate) => {
                    *out = NrEstimate {
                        mean: estimate.mean,
                        std: estimate.std.unwrap_or(0.0),
                        has_std: estimate.std.is_some(),
                        method: match estimate.method {
                            EstimateMethod::AnalyticPlugin => 0,
                            EstimateMethod::MonteCarlo => 1,
                        },
                        samples: estimate.samples,
                        z: estimate.z,
                    };
                    NrStatus::NR_OK
                }
                None => fail(
                    NrStatus::NR_ERR_UNDEFINED,
                    "property is undefined for this reconstruction",
                ),
            },
            Err(e) => fail(bootstrap_status(&e), &e.to_string()),
        }
    })
}
