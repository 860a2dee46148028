/* netrecon C API. Link against the netrecon_capi static or shared library. */

#ifndef NETRECON_H
#define NETRECON_H

/* Generated by cbindgen from the netrecon-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible API call. `NR_OK` is zero.
typedef enum NrStatus {
  NR_OK = 0,
  // A required pointer argument was NULL.
  NR_ERR_NULL = 1,
  // An argument failed validation (range, shape, duplicates, ...).
  NR_ERR_INVALID = 2,
  // A path or string was not valid UTF-8.
  NR_ERR_UTF8 = 3,
  // The file could not be read or written.
  NR_ERR_IO = 4,
  // The file was readable but malformed.
  NR_ERR_PARSE = 5,
  // All observed degrees are zero; the coupling sits on the z = 0 boundary.
  NR_ERR_DEGENERATE = 6,
  // The observed degree sum cannot be reached by any coupling.
  NR_ERR_INFEASIBLE = 7,
  // An iterative solver ran out of iterations.
  NR_ERR_NO_CONVERGENCE = 8,
  // The requested quantity is undefined for this input.
  NR_ERR_UNDEFINED = 9,
  // Internal panic; treat the library state as poisoned.
  NR_ERR_PANIC = 10,
} NrStatus;

// Global property selector.
typedef enum NrProperty {
  NR_PROPERTY_DENSITY = 0,
  NR_PROPERTY_KNN = 1,
  NR_PROPERTY_CLUSTERING = 2,
  NR_PROPERTY_RICH_CLUB = 3,
} NrProperty;

// Estimation strategy for `nr_reconstruct`.
typedef enum NrMode {
  // Analytic where a closed form exists, sampling elsewhere.
  NR_MODE_AUTO = 0,
  NR_MODE_ANALYTIC = 1,
  NR_MODE_MC = 2,
} NrMode;

// Opaque handle for a fitness ensemble with a fixed coupling.
typedef struct NrEnsemble NrEnsemble;

// Opaque fitness-vector handle.
typedef struct NrFitness NrFitness;

// Opaque undirected graph handle.
typedef struct NrGraph NrGraph;

// Exact structural metrics of a graph. `rich_club` is meaningful only when
// `has_rich_club` is true (it is undefined for complete graphs).
typedef struct NrMetrics {
  double density;
  double avg_neighbor_degree;
  double clustering;
  double rich_club;
  bool has_rich_club;
} NrMetrics;

// One reconstructed property. `std` is meaningful only when `has_std` is
// true; `samples` is 0 for analytic estimates; `z` is the calibrated
// coupling behind the estimate. `method` is 0 for analytic, 1 for
// Monte Carlo.
typedef struct NrEstimate {
  double mean;
  double std;
  bool has_std;
  int32_t method;
  size_t samples;
  double z;
} NrEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. The pointer is
// valid until the next netrecon call on the same thread. Never NULL.
const char *nr_last_error(void);

// Library version as a static NUL-terminated string.
const char *nr_version(void);

// Read an undirected binary graph from a `src,dst,weight` edge-list CSV.
// Positive weights become edges; rows of weight 0 only declare nodes.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum NrStatus nr_graph_read_edge_list(const char *path, struct NrGraph **out);

// Build a graph from a dense row-major 0/1 adjacency matrix of shape
// `n_nodes * n_nodes`. The matrix must be symmetric with a zero diagonal.
//
// # Safety
// `adjacency` must point to `n_nodes * n_nodes` readable bytes and `out`
// must be a valid pointer.
enum NrStatus nr_graph_from_dense(size_t n_nodes, const uint8_t *adjacency, struct NrGraph **out);

// Number of nodes, or 0 for a NULL handle.
//
// # Safety
// `graph` must be NULL or a live graph handle.
size_t nr_graph_node_count(const struct NrGraph *graph);

// Number of edges, or 0 for a NULL handle.
//
// # Safety
// `graph` must be NULL or a live graph handle.
size_t nr_graph_edge_count(const struct NrGraph *graph);

// Whether nodes `i` and `j` are adjacent.
//
// # Safety
// `graph` must be a live graph handle and `out` a valid pointer.
enum NrStatus nr_graph_has_edge(const struct NrGraph *graph, size_t i, size_t j, bool *out);

// Copy all node degrees into `out`, which must hold `nr_graph_node_count`
// entries.
//
// # Safety
// `graph` must be a live graph handle; `out` must point to enough writable
// memory.
enum NrStatus nr_graph_degrees(const struct NrGraph *graph, size_t *out);

// Exact density, average neighbor degree, mean clustering, and rich-club
// structure of the graph. Requires at least 3 nodes.
//
// # Safety
// `graph` must be a live graph handle and `out` a valid pointer.
enum NrStatus nr_graph_metrics(const struct NrGraph *graph, struct NrMetrics *out);

// Release a graph handle. NULL is ignored.
//
// # Safety
// `graph` must be NULL or a handle obtained from this library, freed once.
void nr_graph_free(struct NrGraph *graph);

// Wrap `len` positive finite values as a fitness vector.
//
// # Safety
// `values` must point to `len` readable doubles and `out` must be valid.
enum NrStatus nr_fitness_new(const double *values, size_t len, struct NrFitness **out);

// Read a `node,fitness` CSV; values keep the file's row order.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum NrStatus nr_fitness_read(const char *path, struct NrFitness **out);

// Number of entries, or 0 for a NULL handle.
//
// # Safety
// `fitness` must be NULL or a live fitness handle.
size_t nr_fitness_len(const struct NrFitness *fitness);

// Release a fitness handle. NULL is ignored.
//
// # Safety
// `fitness` must be NULL or a handle obtained from this library, freed once.
void nr_fitness_free(struct NrFitness *fitness);

// Solve for the coupling z that matches the expected degree sum over the
// observed subset to the sum of the observed degrees. `subset` and
// `degrees` are parallel arrays of length `len`; indices refer to positions
// in the fitness vector.
//
// # Safety
// `fitness` must be a live handle; `subset` and `degrees` must point to
// `len` readable entries; `out_z` must be valid.
enum NrStatus nr_calibrate_z(const struct NrFitness *fitness,
                             const size_t *subset,
                             const double *degrees,
                             size_t len,
                             double *out_z);

// Fit configuration-model multipliers x to a degree sequence: the fixed
// point of k_i = sum_{j != i} x_i x_j / (1 + x_i x_j). Pass `tol <= 0` or
// `max_iterations == 0` for the defaults (1e-8, 100000). `out_x` receives
// `len` multipliers.
//
// # Safety
// `degrees` must point to `len` readable doubles and `out_x` to `len`
// writable doubles.
enum NrStatus nr_cm_fit(const double *degrees,
                        size_t len,
                        double tol,
                        size_t max_iterations,
                        double *out_x);

// Pair a fitness vector with a fixed coupling z > 0.
//
// # Safety
// `fitness` must be a live handle and `out` a valid pointer.
enum NrStatus nr_ensemble_new(const struct NrFitness *fitness, double z, struct NrEnsemble **out);

// Link probability p_ij = z y_i y_j / (1 + z y_i y_j) for distinct nodes.
//
// # Safety
// `ensemble` must be a live handle and `out` a valid pointer.
enum NrStatus nr_ensemble_link_probability(const struct NrEnsemble *ensemble,
                                           size_t i,
                                           size_t j,
                                           double *out);

// Copy all expected degrees into `out`, which must hold as many entries as
// the fitness vector.
//
// # Safety
// `ensemble` must be a live handle; `out` must point to enough writable
// memory.
enum NrStatus nr_ensemble_expected_degrees(const struct NrEnsemble *ensemble, double *out);

// Draw one graph from the ensemble; identical seeds give identical graphs.
//
// # Safety
// `ensemble` must be a live handle and `out` a valid pointer.
enum NrStatus nr_ensemble_sample(const struct NrEnsemble *ensemble,
                                 uint64_t seed,
                                 struct NrGraph **out);

// Release an ensemble handle. NULL is ignored.
//
// # Safety
// `ensemble` must be NULL or a handle obtained from this library, freed once.
void nr_ensemble_free(struct NrEnsemble *ensemble);

// Estimate one global property of the full network from fitness values plus
// the degrees of an observed subset. `subset` and `degrees` are parallel
// arrays of length `len`. `samples` and `seed` matter only when sampling is
// used. Returns `NR_ERR_UNDEFINED` when the property (rich-club on a
// complete reconstruction) has no defined value.
//
// # Safety
// `fitness` must be a live handle; `subset` and `degrees` must point to
// `len` readable entries; `out` must be valid.
enum NrStatus nr_reconstruct(const struct NrFitness *fitness,
                             const size_t *subset,
                             const double *degrees,
                             size_t len,
                             enum NrProperty property,
                             enum NrMode mode,
                             size_t samples,
                             uint64_t seed,
                             struct NrEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETRECON_H */
