//! Reconstruction of global network properties from node fitness values
//! and partial degree information.
//!
//! Given an intrinsic fitness value y_i for every node and the degrees of
//! only a subset of nodes, the library calibrates a maximum-entropy graph
//! ensemble with link probabilities p_ij = z y_i y_j / (1 + z y_i y_j):
//! the single coupling z is fixed by matching the expected degree sum of
//! the observed subset to its measured value. Global topological
//! properties of the unknown graph — density, average nearest-neighbor
//! degree, mean clustering, and the average rich-club coefficient — are
//! then estimated as ensemble means with uncertainties, either through
//! plug-in expectations or Monte Carlo sampling.
//!
//! Modules:
//! - [`graph`]: weighted input data, binary graphs, fitness vectors;
//! - [`metrics`]: the four properties, exact / plug-in / Monte Carlo;
//! - [`ensemble`]: link probabilities, z calibration, sampling, and the
//!   full configuration-model multiplier fit;
//! - [`bootstrap`]: the end-to-end partial-information reconstruction;
//! - [`bench`]: error-versus-information benchmark harness;
//! - [`io`], [`report`], [`manifest`]: file formats and run metadata.
//!
//! Everything randomized is seeded explicitly and reproducible bit for
//! bit, independent of the worker-thread count.

pub mod bench;
pub mod bootstrap;
pub mod ensemble;
pub mod graph;
pub mod io;
pub mod manifest;
pub mod metrics;
pub mod report;

pub use bench::{
    run_real_benchmark, run_synthetic_benchmark, BenchError, BenchmarkConfig, BenchmarkResult,
};
pub use bootstrap::{
    reconstruct, BootstrapError, EstimationMode, PartialObservation, ReconstructionEstimate,
};
pub use ensemble::{
    calibrate_z, fit_configuration_model, Calibration, ConfigurationModelFit, EnsembleError,
    FitnessEnsemble,
};
pub use graph::{FitnessVector, Graph, GraphError, WeightedDigraph};
pub use metrics::{
    expected_metrics, metrics_report, monte_carlo_metrics, MetricsError, MetricsReport,
    ProbabilityMatrix, Property,
};
