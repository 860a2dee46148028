//! Benchmark harness: how well does the reconstruction do as a function of
//! the number of observed nodes?
//!
//! A run sweeps a grid of subset sizes n; for each n it draws M random
//! subsets, calibrates the ensemble from the subset's degrees, estimates
//! every property, and aggregates the M estimates into a relative RMSE
//! against one or two references:
//!
//! - synthetic mode: a ground-truth graph G0 is sampled from a fitness
//!   ensemble whose coupling hits a target density; errors are reported
//!   against both the realization X(G0) (flavor `r0`) and the ensemble
//!   expectation under the full-degree calibration (flavor `r_omega0`);
//! - real mode: the caller supplies G0 and errors are reported against
//!   X(G0) only (flavor `r_real`).
//!
//! Every random choice is derived from the master seed, so a run is
//! reproducible bit for bit, independent of the worker count.

use crate::ensemble::{calibrate_z, EnsembleError, FitnessEnsemble};
use crate::graph::{FitnessVector, Graph};
use crate::metrics::{
    expected_metrics, metrics_report, monte_carlo_metrics, MetricsError, MetricsReport, Property,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, LogNormal, Pareto};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {}", violations.join("; "))]
    InvalidConfig { violations: Vec<String> },
    #[error("reference vanishes; rRMSE undefined")]
    VanishingReference,
    #[error("no estimates supplied")]
    NoEstimates,
    #[error("gave up on subset sampling at n = {n}, subset {alpha}: {attempts} consecutive infeasible degree sums")]
    TooManyInfeasible { n: usize, alpha: usize, attempts: usize },
    #[error("ground-truth construction failed: {0}")]
    GroundTruth(#[source] EnsembleError),
    #[error(transparent)]
    Calibration(#[from] EnsembleError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("fitness generator: {message}")]
    BadGenerator { message: String },
}

/// A subset size given either directly or as a fraction of N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubsetSpec {
    Count(usize),
    Fraction(f64),
}

impl SubsetSpec {
    /// Fractions resolve to max(1, round(f * N)).
    pub fn resolve(self, n_nodes: usize) -> usize {
        match self {
            SubsetSpec::Count(c) => c,
            SubsetSpec::Fraction(f) => ((f * n_nodes as f64).round() as usize).max(1),
        }
    }
}

impl Serialize for SubsetSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SubsetSpec::Count(c) => s.serialize_u64(*c as u64),
            SubsetSpec::Fraction(f) => s.serialize_f64(*f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMode {
    Synthetic,
    Real,
}

impl fmt::Display for BenchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchMode::Synthetic => "synthetic",
            BenchMode::Real => "real",
        })
    }
}

/// How the per-subset estimates X_alpha are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BenchEstimator {
    /// Plug-in expected value on the calibrated ensemble (deterministic).
    #[serde(rename = "plugin")]
    PlugIn,
    /// Monte Carlo mean over `samples` draws.
    #[serde(rename = "mc")]
    MonteCarlo,
}

/// Which reference the rRMSE is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// X(G0), the single synthetic realization.
    #[serde(rename = "r0")]
    SingleRealization,
    /// The ensemble expectation under the full-degree calibration.
    #[serde(rename = "r_omega0")]
    EnsembleExpectation,
    /// X measured on a user-supplied real network.
    #[serde(rename = "r_real")]
    RealNetwork,
}

impl Flavor {
    pub fn token(self) -> &'static str {
        match self {
            Flavor::SingleRealization => "r0",
            Flavor::EnsembleExpectation => "r_omega0",
            Flavor::RealNetwork => "r_real",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkConfig {
    pub mode: BenchMode,
    pub n_values: Vec<SubsetSpec>,
    /// M: subsets drawn per grid point.
    pub subsets_per_n: usize,
    /// S: Monte Carlo samples per estimate (MonteCarlo estimator only).
    pub samples: usize,
    pub seed: u64,
    pub estimator: BenchEstimator,
    pub properties: Vec<Property>,
    /// Target mean density for the synthetic ground truth.
    pub target_density: Option<f64>,
}

/// Scalar reference values of the four properties.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReferenceReport {
    pub density: f64,
    pub knn: f64,
    pub clustering: f64,
    pub rich_club: Option<f64>,
}

impl ReferenceReport {
    fn from_metrics(r: &MetricsReport) -> Self {
        Self {
            density: r.density,
            knn: r.knn,
            clustering: r.clustering,
            rich_club: r.rich_club,
        }
    }

    pub fn get(&self, property: Property) -> Option<f64> {
        match property {
            Property::Density => Some(self.density),
            Property::Knn => Some(self.knn),
            Property::Clustering => Some(self.clustering),
            Property::RichClub => self.rich_club,
        }
    }
}

/// One aggregated error value.
#[derive(Debug, Clone, Serialize)]
pub struct RrmseCell {
    pub property: Property,
    pub n: usize,
    pub flavor: Flavor,
    pub rrmse: f64,
}

/// The M raw per-subset estimates behind one (n, property) pair.
#[derive(Debug, Clone, Serialize)]
pub struct RawEstimates {
    pub n: usize,
    pub property: Property,
    /// Subset-index order; `None` marks an estimate that was undefined.
    pub estimates: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkResult {
    pub mode: BenchMode,
    pub n_nodes: usize,
    pub subsets_per_n: usize,
    pub seed: u64,
    pub estimator: BenchEstimator,
    pub resolved_n: Vec<usize>,
    /// Coupling that generated G0 from the target density (synthetic only).
    pub generator_z: Option<f64>,
    /// Coupling calibrated on G0's full degree sequence (synthetic only);
    /// the `r_omega0` reference ensemble.
    pub full_info_z: Option<f64>,
    /// X(G0): the realization (synthetic) or real-network reference.
    pub reference_graph: ReferenceReport,
    /// Plug-in values on the full-degree ensemble (synthetic only).
    pub reference_ensemble: Option<ReferenceReport>,
    pub rrmse: Vec<RrmseCell>,
    pub raw: Vec<RawEstimates>,
    /// Total infeasible subsets that were redrawn.
    pub resampled_subsets: usize,
    /// Human-readable notes about skipped cells.
    pub notices: Vec<String>,
}

/// Relative root-mean-square error of estimates against a nonzero
/// reference: sqrt(mean((X_alpha / X0 - 1)^2)).
pub fn rrmse(estimates: &[f64], reference: f64) -> Result<f64, BenchError> {
    if estimates.is_empty() {
        return Err(BenchError::NoEstimates);
    }
    if reference == 0.0 {
        return Err(BenchError::VanishingReference);
    }
    let sum: f64 = estimates
        .iter()
        .map(|&x| {
            let r = x / reference - 1.0;
            r * r
        })
        .sum();
    Ok((sum / estimates.len() as f64).sqrt())
}

const SALT_GROUND_TRUTH: u64 = 0xA1;
const SALT_SUBSET: u64 = 0xB2;
const SALT_MC: u64 = 0xC3;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable seed derivation for independent substreams: the master seed
/// folded with a purpose salt and up to three coordinates.
fn derive_seed(master: u64, salt: u64, a: u64, b: u64, c: u64) -> u64 {
    let mut s = master;
    for w in [salt, a, b, c] {
        s = mix64(s.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(w));
    }
    s
}

/// Uniform random subset of `n` distinct node indices, ascending.
fn draw_subset(n_nodes: usize, n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut subset = rand::seq::index::sample(&mut rng, n_nodes, n).into_vec();
    subset.sort_unstable();
    subset
}

/// Log-normal fitness values (parameters of the underlying normal).
pub fn lognormal_fitness(
    count: usize,
    mu: f64,
    sigma: f64,
    seed: u64,
) -> Result<FitnessVector, BenchError> {
    if count == 0 {
        return Err(BenchError::BadGenerator {
            message: "node count must be positive".into(),
        });
    }
    if !(mu.is_finite() && sigma.is_finite() && sigma >= 0.0) {
        return Err(BenchError::BadGenerator {
            message: format!(
                "lognormal(mu = {mu}, sigma = {sigma}): parameters must be finite with sigma >= 0"
            ),
        });
    }
    let dist = LogNormal::new(mu, sigma).map_err(|e| BenchError::BadGenerator {
        message: format!("lognormal(mu = {mu}, sigma = {sigma}): {e}"),
    })?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let y: Vec<f64> = (0..count).map(|_| dist.sample(&mut rng)).collect();
    FitnessVector::new(y).map_err(|e| BenchError::BadGenerator {
        message: e.to_string(),
    })
}

/// Pareto (power-law) fitness values with tail exponent `alpha` and scale
/// `xmin`.
pub fn pareto_fitness(
    count: usize,
    alpha: f64,
    xmin: f64,
    seed: u64,
) -> Result<FitnessVector, BenchError> {
    if count == 0 {
        return Err(BenchError::BadGenerator {
            message: "node count must be positive".into(),
        });
    }
    let dist = Pareto::new(xmin, alpha).map_err(|e| BenchError::BadGenerator {
        message: format!("powerlaw(alpha = {alpha}, xmin = {xmin}): {e}"),
    })?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let y: Vec<f64> = (0..count).map(|_| dist.sample(&mut rng)).collect();
    FitnessVector::new(y).map_err(|e| BenchError::BadGenerator {
        message: e.to_string(),
    })
}

fn selected_properties(requested: &[Property]) -> Vec<Property> {
    Property::ALL
        .into_iter()
        .filter(|p| requested.contains(p))
        .collect()
}

fn validate(
    cfg: &BenchmarkConfig,
    n_nodes: usize,
    expected_mode: BenchMode,
) -> Result<Vec<usize>, BenchError> {
    let mut violations = Vec::new();
    if cfg.mode != expected_mode {
        violations.push(format!(
            "config mode is {} but the {} runner was invoked",
            cfg.mode, expected_mode
        ));
    }
    if n_nodes < 3 {
        violations.push(format!(
            "benchmark needs at least 3 nodes for the metric set, got {n_nodes}"
        ));
    }
    if cfg.subsets_per_n == 0 {
        violations.push("subsets per grid point (M) must be at least 1".into());
    }
    if cfg.n_values.is_empty() {
        violations.push("subset-size grid is empty".into());
    }
    if cfg.properties.is_empty() {
        violations.push("property set is empty".into());
    }
    if cfg.estimator == BenchEstimator::MonteCarlo && cfg.samples < 2 {
        violations.push(format!(
            "Monte Carlo estimator needs at least 2 samples, got {}",
            cfg.samples
        ));
    }
    let resolved: Vec<usize> = cfg.n_values.iter().map(|s| s.resolve(n_nodes)).collect();
    for (spec, &n) in cfg.n_values.iter().zip(&resolved) {
        if n < 1 || n > n_nodes {
            violations.push(format!(
                "subset size {spec:?} resolves to {n}, outside 1..={n_nodes}"
            ));
        }
    }
    if expected_mode == BenchMode::Synthetic {
        match cfg.target_density {
            None => violations.push("synthetic mode requires a target density".into()),
            Some(d) if !(d.is_finite() && 0.0 < d && d < 1.0) => {
                violations.push(format!("target density must lie in (0, 1), got {d}"))
            }
            _ => {}
        }
    }
    if violations.is_empty() {
        Ok(resolved)
    } else {
        Err(BenchError::InvalidConfig { violations })
    }
}

/// Solves for the coupling that meets the target density, then samples the
/// synthetic ground-truth graph G0. Exposed so that a real-mode run can be
/// replayed on exactly the ground truth a synthetic run used.
pub fn sample_ground_truth(
    y: &FitnessVector,
    target_density: f64,
    seed: u64,
) -> Result<(f64, Graph), BenchError> {
    let n = y.len();
    let subset: Vec<usize> = (0..n).collect();
    let per_node = target_density * (n - 1) as f64;
    let targets = vec![per_node; n];
    let cal = calibrate_z(y, &subset, &targets).map_err(BenchError::GroundTruth)?;
    let ensemble = FitnessEnsemble::new(y.clone(), cal.z).map_err(BenchError::GroundTruth)?;
    let g0 = ensemble.sample(derive_seed(seed, SALT_GROUND_TRUTH, 0, 0, 0));
    Ok((cal.z, g0))
}

struct CellOutcome {
    estimates: Vec<Option<f64>>,
    attempts: usize,
}

fn estimate_cell(
    y: &FitnessVector,
    g0: &Graph,
    properties: &[Property],
    cfg: &BenchmarkConfig,
    n: usize,
    alpha: usize,
) -> Result<CellOutcome, BenchError> {
    let n_nodes = g0.n();
    let max_attempts = 10 * cfg.subsets_per_n;
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        let seed = derive_seed(cfg.seed, SALT_SUBSET, n as u64, alpha as u64, attempts as u64 - 1);
        let subset = draw_subset(n_nodes, n, seed);
        let degrees: Vec<f64> = subset.iter().map(|&i| g0.degree(i) as f64).collect();
        match calibrate_z(y, &subset, &degrees) {
            Ok(cal) => {
                let ensemble = FitnessEnsemble::new(y.clone(), cal.z)?;
                let p = ensemble.probability_matrix();
                let estimates = match cfg.estimator {
                    BenchEstimator::PlugIn => {
                        let report = expected_metrics(&p)?;
                        properties.iter().map(|&pr| report.get(pr)).collect()
                    }
                    BenchEstimator::MonteCarlo => {
                        let mc_seed = derive_seed(cfg.seed, SALT_MC, n as u64, alpha as u64, 0);
                        let mc = monte_carlo_metrics(&p, cfg.samples, mc_seed)?;
                        properties
                            .iter()
                            .map(|&pr| mc.get(pr).map(|e| e.mean))
                            .collect()
                    }
                };
                return Ok(CellOutcome { estimates, attempts });
            }
            Err(EnsembleError::DegenerateTarget) | Err(EnsembleError::InfeasibleTarget { .. }) => {
                if attempts >= max_attempts {
                    return Err(BenchError::TooManyInfeasible { n, alpha, attempts });
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
}

fn aggregate(
    resolved_n: &[usize],
    properties: &[Property],
    outcomes: Vec<Vec<CellOutcome>>,
    references: &[(Flavor, ReferenceReport)],
) -> (Vec<RrmseCell>, Vec<RawEstimates>, usize, Vec<String>) {
    let mut cells = Vec::new();
    let mut raw = Vec::new();
    let mut notices = Vec::new();
    let mut resampled = 0usize;
    for (grid_idx, &n) in resolved_n.iter().enumerate() {
        let per_alpha = &outcomes[grid_idx];
        resampled += per_alpha.iter().map(|o| o.attempts - 1).sum::<usize>();
        for (prop_idx, &property) in properties.iter().enumerate() {
            let estimates: Vec<Option<f64>> =
                per_alpha.iter().map(|o| o.estimates[prop_idx]).collect();
            let defined: Vec<f64> = estimates.iter().filter_map(|&v| v).collect();
            let all_defined = defined.len() == estimates.len();
            raw.push(RawEstimates {
                n,
                property,
                estimates,
            });
            for &(flavor, ref reference) in references {
                let x0 = match reference.get(property) {
                    Some(v) => v,
                    None => {
                        notices.push(format!(
                            "skipped {property} {flavor} at n = {n}: reference undefined"
                        ));
                        continue;
                    }
                };
                if x0 == 0.0 {
                    notices.push(format!(
                        "skipped {property} {flavor} at n = {n}: reference is 0, rRMSE undefined"
                    ));
                    continue;
                }
                if !all_defined {
                    notices.push(format!(
                        "skipped {property} {flavor} at n = {n}: estimate undefined in {} of {} subsets",
                        per_alpha.len() - defined.len(),
                        per_alpha.len()
                    ));
                    continue;
                }
                let value = rrmse(&defined, x0).expect("nonzero reference, nonempty estimates");
                cells.push(RrmseCell {
                    property,
                    n,
                    flavor,
                    rrmse: value,
                });
            }
        }
    }
    (cells, raw, resampled, notices)
}

fn run_grid(
    y: &FitnessVector,
    g0: &Graph,
    cfg: &BenchmarkConfig,
    resolved_n: &[usize],
    properties: &[Property],
) -> Result<Vec<Vec<CellOutcome>>, BenchError> {
    resolved_n
        .iter()
        .map(|&n| {
            (0..cfg.subsets_per_n)
                .into_par_iter()
                .map(|alpha| estimate_cell(y, g0, properties, cfg, n, alpha))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

/// Synthetic protocol: build G0 from the target density, recalibrate on its
/// full degree sequence for the ensemble reference, then sweep the grid.
pub fn run_synthetic_benchmark(
    y: &FitnessVector,
    cfg: &BenchmarkConfig,
) -> Result<BenchmarkResult, BenchError> {
    let n_nodes = y.len();
    let resolved_n = validate(cfg, n_nodes, BenchMode::Synthetic)?;
    let properties = selected_properties(&cfg.properties);

    let target_density = cfg.target_density.expect("validated above");
    let (generator_z, g0) = sample_ground_truth(y, target_density, cfg.seed)?;

    // Ground-truth coupling: the full-information calibration on G0. At
    // n = N every subset reproduces this calibration exactly, which is what
    // drives r_omega0 to zero in the full-information limit.
    let all: Vec<usize> = (0..n_nodes).collect();
    let full_degrees: Vec<f64> = g0.degrees().iter().map(|&k| k as f64).collect();
    let full_cal = calibrate_z(y, &all, &full_degrees).map_err(BenchError::GroundTruth)?;
    let reference_ensemble = expected_metrics(
        &FitnessEnsemble::new(y.clone(), full_cal.z)
            .map_err(BenchError::GroundTruth)?
            .probability_matrix(),
    )?;
    let reference_graph = metrics_report(&g0)?;

    let outcomes = run_grid(y, &g0, cfg, &resolved_n, &properties)?;
    let references = [
        (
            Flavor::SingleRealization,
            ReferenceReport::from_metrics(&reference_graph),
        ),
        (
            Flavor::EnsembleExpectation,
            ReferenceReport::from_metrics(&reference_ensemble),
        ),
    ];
    let (rrmse, raw, resampled_subsets, notices) =
        aggregate(&resolved_n, &properties, outcomes, &references);

    Ok(BenchmarkResult {
        mode: BenchMode::Synthetic,
        n_nodes,
        subsets_per_n: cfg.subsets_per_n,
        seed: cfg.seed,
        estimator: cfg.estimator,
        resolved_n,
        generator_z: Some(generator_z),
        full_info_z: Some(full_cal.z),
        reference_graph: ReferenceReport::from_metrics(&reference_graph),
        reference_ensemble: Some(ReferenceReport::from_metrics(&reference_ensemble)),
        rrmse,
        raw,
        resampled_subsets,
        notices,
    })
}

/// Real-network protocol: identical subset machinery, but the reference is
/// the supplied graph itself.
pub fn run_real_benchmark(
    g0: &Graph,
    y: &FitnessVector,
    cfg: &BenchmarkConfig,
) -> Result<BenchmarkResult, BenchError> {
    if y.len() != g0.n() {
        return Err(BenchError::InvalidConfig {
            violations: vec![format!(
                "fitness has {} entries but the graph has {} nodes",
                y.len(),
                g0.n()
            )],
        });
    }
    let n_nodes = g0.n();
    let resolved_n = validate(cfg, n_nodes, BenchMode::Real)?;
    let properties = selected_properties(&cfg.properties);
    let reference_graph = metrics_report(g0)?;

    let outcomes = run_grid(y, g0, cfg, &resolved_n, &properties)?;
    let references = [(
        Flavor::RealNetwork,
        ReferenceReport::from_metrics(&reference_graph),
    )];
    let (rrmse, raw, resampled_subsets, notices) =
        aggregate(&resolved_n, &properties, outcomes, &references);

    Ok(BenchmarkResult {
        mode: BenchMode::Real,
        n_nodes,
        subsets_per_n: cfg.subsets_per_n,
        seed: cfg.seed,
        estimator: cfg.estimator,
        resolved_n,
        generator_z: None,
        full_info_z: None,
        reference_graph: ReferenceReport::from_metrics(&reference_graph),
        reference_ensemble: None,
        rrmse,
        raw,
        resampled_subsets,
        notices,
    })
}
