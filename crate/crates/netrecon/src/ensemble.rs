//! The fitness-parameterized exponential random graph ensemble: linking
//! probabilities p_ij = z y_i y_j / (1 + z y_i y_j), calibration of the
//! coupling z against a (partial) degree sum, graph sampling, and the full
//! configuration-model multiplier fit.

use crate::graph::{FitnessVector, Graph};
use crate::metrics::ProbabilityMatrix;
use thiserror::Error;

pub const DEFAULT_CM_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_CM_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Error)]
pub enum EnsembleError {
    #[error("coupling z must be positive and finite, got {value}")]
    BadCoupling { value: f64 },
    #[error("link probability requires two distinct nodes, got i = j = {i}")]
    SelfPair { i: usize },
    #[error("subset of observed nodes is empty")]
    EmptySubset,
    #[error("subset has {subset} indices but {observed} observed degrees")]
    SubsetMismatch { subset: usize, observed: usize },
    #[error("subset index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subset index {index} appears more than once")]
    DuplicateIndex { index: usize },
    #[error("observed degree for node {index} must be finite and nonnegative, got {value}")]
    BadTarget { index: usize, value: f64 },
    #[error("degenerate target: total observed degree is 0, the solution sits on the z = 0 boundary")]
    DegenerateTarget,
    #[error("infeasible degree sum: target {target} reaches or exceeds the saturation limit {saturation}")]
    InfeasibleTarget { target: f64, saturation: f64 },
    #[error("internal error: failed to bracket the calibration root")]
    NoBracket,
    #[error("degree {value} at node {index} outside [0, {max}]")]
    DegreeOutOfRange { index: usize, value: f64, max: f64 },
    #[error("all target degrees are zero; multipliers are identically zero and the fit is vacuous")]
    AllZeroDegrees,
    #[error("all target degrees equal N-1; the multipliers diverge on a complete graph")]
    AllSaturatedDegrees,
    #[error("configuration-model fit did not converge: residual {residual} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("degree sequence needs at least 2 nodes, got {got}")]
    TooFewNodes { got: usize },
}

/// Fitness vector plus calibrated coupling z; induces the link-probability
/// matrix p_ij = z y_i y_j / (1 + z y_i y_j).
#[derive(Debug, Clone)]
pub struct FitnessEnsemble {
    y: FitnessVector,
    z: f64,
}

impl FitnessEnsemble {
    pub fn new(y: FitnessVector, z: f64) -> Result<Self, EnsembleError> {
        if !z.is_finite() || z <= 0.0 {
            return Err(EnsembleError::BadCoupling { value: z });
        }
        Ok(Self { y, z })
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn fitness(&self) -> &FitnessVector {
        &self.y
    }

    /// p_ij for one pair; symmetric, saturates to 1 if z y_i y_j overflows.
    pub fn link_probability(&self, i: usize, j: usize) -> Result<f64, EnsembleError> {
        let n = self.n();
        if i >= n {
            return Err(EnsembleError::IndexOutOfRange { index: i, n });
        }
        if j >= n {
            return Err(EnsembleError::IndexOutOfRange { index: j, n });
        }
        if i == j {
            return Err(EnsembleError::SelfPair { i });
        }
        Ok(pair_probability(self.z, self.y.get(i), self.y.get(j)))
    }

    pub fn probability_matrix(&self) -> ProbabilityMatrix {
        let n = self.n();
        let mut p = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = pair_probability(self.z, self.y.get(i), self.y.get(j));
                p[i * n + j] = v;
                p[j * n + i] = v;
            }
        }
        ProbabilityMatrix::new(n, p).expect("induced probabilities are valid by construction")
    }

    /// <k_i> = sum_{j != i} p_ij.
    pub fn expected_degrees(&self) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| pair_probability(self.z, self.y.get(i), self.y.get(j)))
                    .sum()
            })
            .collect()
    }

    /// Draws one member of the ensemble; see [`ProbabilityMatrix::sample`].
    pub fn sample(&self, seed: u64) -> Graph {
        self.probability_matrix().sample(seed)
    }
}

fn pair_probability(z: f64, yi: f64, yj: f64) -> f64 {
    let t = z * yi * yj;
    if t.is_infinite() {
        1.0
    } else {
        t / (1.0 + t)
    }
}

/// Outcome of solving the degree-sum equation for z.
#[derive(Debug, Clone, Copy)]
pub struct Calibration {
    pub z: f64,
    /// |sum_{i in I} <k_i>(z) - sum_{i in I} k_i*| at the returned z.
    pub residual: f64,
    pub target_sum: f64,
    /// Number of objective evaluations spent bracketing and bisecting.
    pub evaluations: usize,
}

/// Solves sum_{i in I} sum_{j != i} p_ij(z) = sum_{i in I} k_i* for z.
///
/// The left side is strictly increasing in z, from 0 to |I|(N-1), so a
/// geometric bracket expansion from z = 1 (factor 10 per step) followed by
/// bisection on log z converges unconditionally. The bracket is narrowed to
/// relative width 1e-12; the residual then satisfies
/// |residual| <= 1e-9 * target (the slope d/d(log z) never exceeds the
/// target itself). Fitnesses are rescaled by their maximum internally, so
/// arbitrarily large or small units cannot overflow the bracket search.
pub fn calibrate_z(
    y: &FitnessVector,
    subset: &[usize],
    observed: &[f64],
) -> Result<Calibration, EnsembleError> {
    let n = y.len();
    if subset.is_empty() {
        return Err(EnsembleError::EmptySubset);
    }
    if subset.len() != observed.len() {
        return Err(EnsembleError::SubsetMismatch {
            subset: subset.len(),
            observed: observed.len(),
        });
    }
    let mut seen = vec![false; n];
    for (&i, &k) in subset.iter().zip(observed) {
        if i >= n {
            return Err(EnsembleError::IndexOutOfRange { index: i, n });
        }
        if seen[i] {
            return Err(EnsembleError::DuplicateIndex { index: i });
        }
        seen[i] = true;
        if !k.is_finite() || k < 0.0 {
            return Err(EnsembleError::BadTarget { index: i, value: k });
        }
    }

    let target: f64 = observed.iter().sum();
    let saturation = subset.len() as f64 * (n - 1) as f64;
    if target <= 0.0 {
        return Err(EnsembleError::DegenerateTarget);
    }
    if target >= saturation {
        return Err(EnsembleError::InfeasibleTarget { target, saturation });
    }

    // Work with unit-normalized fitnesses; z in original units is z' / s^2.
    let scale = y
        .values()
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let ys: Vec<f64> = y.values().iter().map(|v| v / scale).collect();

    let mut evaluations = 0usize;
    let mut objective = |z: f64| -> f64 {
        evaluations += 1;
        let mut sum = 0.0;
        for &i in subset {
            for j in 0..n {
                if j != i {
                    sum += pair_probability(z, ys[i], ys[j]);
                }
            }
        }
        sum
    };

    let mut lo = 1.0f64;
    let mut hi = 1.0f64;
    let f1 = objective(1.0);
    if f1 < target {
        let mut f = f1;
        while f < target {
            hi *= 10.0;
            if !hi.is_finite() {
                return Err(EnsembleError::NoBracket);
            }
            f = objective(hi);
        }
        lo = hi / 10.0;
    } else if f1 > target {
        let mut f = f1;
        while f > target {
            lo /= 10.0;
            if lo == 0.0 {
                return Err(EnsembleError::NoBracket);
            }
            f = objective(lo);
        }
        hi = lo * 10.0;
    }

    // Geometric bisection: midpoint in log z, stop at relative width 1e-12.
    let mut z = (lo * hi).sqrt();
    while hi - lo > 1e-12 * lo {
        z = (lo * hi).sqrt();
        if z <= lo || z >= hi {
            break; // interval exhausted at floating resolution
        }
        let f = objective(z);
        if f < target {
            lo = z;
        } else if f > target {
            hi = z;
        } else {
            lo = z;
            hi = z;
        }
    }
    let residual = (objective(z) - target).abs();
    Ok(Calibration {
        z: z / (scale * scale),
        residual,
        target_sum: target,
        evaluations,
    })
}

/// Absolute residual tolerance for the calibration equation at a given
/// target degree sum: 1e-9 relative, floored at 1e-12.
pub fn calibration_tolerance(target_sum: f64) -> f64 {
    (1e-9 * target_sum).max(1e-12)
}

/// Per-node configuration-model multipliers fitted to a full degree
/// sequence, with the final residual and iteration count.
#[derive(Debug, Clone)]
pub struct ConfigurationModelFit {
    pub x: Vec<f64>,
    /// max_i |<k_i> - k_i*| at the fitted multipliers.
    pub residual: f64,
    pub iterations: usize,
}

impl ConfigurationModelFit {
    /// <k_i> = sum_{j != i} x_i x_j / (1 + x_i x_j).
    pub fn expected_degrees(&self) -> Vec<f64> {
        expected_degrees_of(&self.x)
    }

    /// Induced linking probabilities p_ij = x_i x_j / (1 + x_i x_j).
    pub fn probability_matrix(&self) -> ProbabilityMatrix {
        let n = self.x.len();
        let mut p = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = pair_probability(1.0, self.x[i], self.x[j]);
                p[i * n + j] = v;
                p[j * n + i] = v;
            }
        }
        ProbabilityMatrix::new(n, p).expect("induced probabilities are valid by construction")
    }
}

fn expected_degrees_of(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| pair_probability(1.0, x[i], x[j]))
                .sum()
        })
        .collect()
}

/// Solves the N coupled maximum-likelihood equations
/// k_i* = sum_{j != i} x_i x_j / (1 + x_i x_j)
/// by damped fixed-point iteration x_i <- k_i* / sum_{j != i} x_j/(1 + x_i x_j),
/// with in-place (Gauss-Seidel) updates in fixed node order for
/// deterministic, faster convergence. Initialized at x_i = k_i*/sqrt(sum k*).
pub fn fit_configuration_model(
    observed: &[f64],
    tolerance: f64,
    max_iterations: usize,
) -> Result<ConfigurationModelFit, EnsembleError> {
    let n = observed.len();
    if n < 2 {
        return Err(EnsembleError::TooFewNodes { got: n });
    }
    let max_degree = (n - 1) as f64;
    for (index, &value) in observed.iter().enumerate() {
        if !value.is_finite() || value < 0.0 || value > max_degree {
            return Err(EnsembleError::DegreeOutOfRange {
                index,
                value,
                max: max_degree,
            });
        }
    }
    let total: f64 = observed.iter().sum();
    if total == 0.0 {
        return Err(EnsembleError::AllZeroDegrees);
    }
    if observed.iter().all(|&k| k == max_degree) {
        return Err(EnsembleError::AllSaturatedDegrees);
    }

    let mut x: Vec<f64> = observed.iter().map(|&k| k / total.sqrt()).collect();
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iterations {
        for i in 0..n {
            if observed[i] == 0.0 {
                x[i] = 0.0;
                continue;
            }
            let mut denom = 0.0;
            for j in 0..n {
                if j != i {
                    denom += x[j] / (1.0 + x[i] * x[j]);
                }
            }
            if denom > 0.0 && denom.is_finite() {
                x[i] = observed[i] / denom;
            }
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(EnsembleError::NoConvergence {
                residual: f64::INFINITY,
                iterations: iteration,
            });
        }
        residual = expected_degrees_of(&x)
            .iter()
            .zip(observed)
            .map(|(e, k)| (e - k).abs())
            .fold(0.0, f64::max);
        if residual <= tolerance {
            return Ok(ConfigurationModelFit {
                x,
                residual,
                iterations: iteration,
            });
        }
    }
    Err(EnsembleError::NoConvergence {
        residual,
        iterations: max_iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::expected_density;

    fn fv(v: &[f64]) -> FitnessVector {
        FitnessVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn link_probability_values() {
        let e = FitnessEnsemble::new(fv(&[1.0, 1.0]), 1.0).unwrap();
        assert_eq!(e.link_probability(0, 1).unwrap(), 0.5);

        let e = FitnessEnsemble::new(fv(&[1.0, 1.0]), 1e-15).unwrap();
        assert!(e.link_probability(0, 1).unwrap() < 1e-14);

        let e = FitnessEnsemble::new(fv(&[2.0, 3.0]), 0.5).unwrap();
        assert!((e.link_probability(0, 1).unwrap() - 0.75).abs() < 1e-15);

        assert!(matches!(
            e.link_probability(1, 1),
            Err(EnsembleError::SelfPair { i: 1 })
        ));
    }

    #[test]
    fn probability_matrix_three_nodes() {
        let e = FitnessEnsemble::new(fv(&[1.0, 2.0, 3.0]), 0.1).unwrap();
        let p = e.probability_matrix();
        assert!((p.get(0, 1) - 1.0 / 6.0).abs() < 1e-15);
        assert!((p.get(0, 2) - 3.0 / 13.0).abs() < 1e-15);
        assert!((p.get(1, 2) - 3.0 / 8.0).abs() < 1e-15);
        assert_eq!(p.get(1, 0), p.get(0, 1));
    }

    #[test]
    fn probability_monotone_in_z() {
        let y = fv(&[1.0, 2.0, 3.0]);
        let lo = FitnessEnsemble::new(y.clone(), 0.1).unwrap().probability_matrix();
        let hi = FitnessEnsemble::new(y, 0.3).unwrap().probability_matrix();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(hi.get(i, j) > lo.get(i, j));
                }
            }
        }
    }

    #[test]
    fn expected_degrees_cases() {
        let e = FitnessEnsemble::new(fv(&[1.0; 5]), 1.0).unwrap();
        for k in e.expected_degrees() {
            assert!((k - 2.0).abs() < 1e-12);
        }

        let e = FitnessEnsemble::new(fv(&[1.0; 4]), 1e12).unwrap();
        for k in e.expected_degrees() {
            assert!(k > 3.0 - 1e-9);
        }

        let e = FitnessEnsemble::new(fv(&[1.0, 2.0, 3.0]), 0.1).unwrap();
        let k = e.expected_degrees();
        assert!((k[0] - 31.0 / 78.0).abs() < 1e-14);
        assert!((k[1] - 13.0 / 24.0).abs() < 1e-14);
        assert!((k[2] - 63.0 / 104.0).abs() < 1e-14);
    }

    #[test]
    fn calibrate_homogeneous_exact() {
        let y = fv(&[1.0, 1.0, 1.0]);
        let cal = calibrate_z(&y, &[0, 1, 2], &[1.0, 1.0, 1.0]).unwrap();
        assert!((cal.z - 1.0).abs() < 1e-9);
        assert!(cal.residual <= calibration_tolerance(cal.target_sum));
    }

    #[test]
    fn calibrate_scale_invariance() {
        let y1 = fv(&[1.0, 2.0, 3.0, 4.0]);
        let y2 = fv(&[2.0, 4.0, 6.0, 8.0]);
        let targets = [1.0, 1.5, 2.0, 2.5];
        let subset = [0, 1, 2, 3];
        let c1 = calibrate_z(&y1, &subset, &targets).unwrap();
        let c2 = calibrate_z(&y2, &subset, &targets).unwrap();
        assert!((c2.z - c1.z / 4.0).abs() <= 1e-10 * c1.z / 4.0);
        let p1 = FitnessEnsemble::new(y1, c1.z).unwrap().probability_matrix();
        let p2 = FitnessEnsemble::new(y2, c2.z).unwrap().probability_matrix();
        for i in 0..4 {
            for j in 0..4 {
                assert!((p1.get(i, j) - p2.get(i, j)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn calibrate_consistency_against_expected_degrees() {
        let y = fv(&[0.5, 1.0, 2.0, 4.0, 8.0, 1.3]);
        let z0 = 0.037;
        let e = FitnessEnsemble::new(y.clone(), z0).unwrap();
        let targets = e.expected_degrees();
        let subset: Vec<usize> = (0..y.len()).collect();
        let cal = calibrate_z(&y, &subset, &targets).unwrap();
        assert!((cal.z - z0).abs() <= 1e-10 * z0);
    }

    #[test]
    fn calibrate_on_subset_only() {
        let y = fv(&[0.5, 1.0, 2.0, 4.0, 8.0, 1.3]);
        let z0 = 0.037;
        let e = FitnessEnsemble::new(y.clone(), z0).unwrap();
        let all = e.expected_degrees();
        let subset = vec![1usize, 4];
        let targets: Vec<f64> = subset.iter().map(|&i| all[i]).collect();
        let cal = calibrate_z(&y, &subset, &targets).unwrap();
        assert!((cal.z - z0).abs() <= 1e-9 * z0);
    }

    #[test]
    fn calibrate_residual_on_sampled_graph() {
        let y = fv(&(1..=30).map(|i| 0.2 * i as f64).collect::<Vec<_>>());
        let e = FitnessEnsemble::new(y.clone(), 0.05).unwrap();
        let g = e.sample(123);
        let subset: Vec<usize> = (0..30).collect();
        let degrees: Vec<f64> = g.degrees().iter().map(|&k| k as f64).collect();
        let cal = calibrate_z(&y, &subset, &degrees).unwrap();
        assert!(cal.residual <= calibration_tolerance(cal.target_sum));
    }

    #[test]
    fn calibrate_degenerate_and_infeasible() {
        let y = fv(&[1.0, 1.0, 1.0]);
        assert!(matches!(
            calibrate_z(&y, &[0, 1], &[0.0, 0.0]),
            Err(EnsembleError::DegenerateTarget)
        ));
        assert!(matches!(
            calibrate_z(&y, &[0, 1], &[2.0, 2.0]),
            Err(EnsembleError::InfeasibleTarget { .. })
        ));
    }

    #[test]
    fn calibrate_extreme_fitness_units() {
        // GDP-like magnitudes: the internal rescale keeps bracketing sane.
        let y = fv(&[3.0e11, 8.0e12, 4.5e13, 2.0e12]);
        let subset = [0usize, 1, 2, 3];
        let cal = calibrate_z(&y, &subset, &[1.0, 2.0, 2.5, 1.5]).unwrap();
        assert!(cal.residual <= calibration_tolerance(cal.target_sum));
        assert!(cal.z > 0.0 && cal.z.is_finite());
    }

    #[test]
    fn cm_fit_regular_sequence() {
        let n = 8;
        let k = 3.0;
        let fit = fit_configuration_model(&vec![k; n], 1e-10, 10_000).unwrap();
        let r = k / (n - 1) as f64;
        let expected_x = (r / (1.0 - r)).sqrt();
        for &xi in &fit.x {
            assert!((xi - expected_x).abs() < 1e-8);
        }
    }

    #[test]
    fn cm_fit_zero_degree_gives_zero_multiplier() {
        // 5-cycle plus an isolated node: the active nodes form a 2-regular
        // problem whose solution is x = sqrt(r/(1-r)) = 1 at r = 2/4.
        let fit =
            fit_configuration_model(&[2.0, 2.0, 2.0, 2.0, 2.0, 0.0], 1e-10, 10_000).unwrap();
        assert_eq!(fit.x[5], 0.0);
        for &xi in &fit.x[..5] {
            assert!((xi - 1.0).abs() < 1e-8, "x = {xi}");
        }
    }

    #[test]
    fn cm_fit_reproduces_sampled_degrees() {
        let y = fv(&(1..=20).map(|i| i as f64).collect::<Vec<_>>());
        let e = FitnessEnsemble::new(y, 0.01).unwrap();
        let g = e.sample(7);
        let degrees: Vec<f64> = g.degrees().iter().map(|&k| k as f64).collect();
        if degrees.iter().sum::<f64>() == 0.0 {
            panic!("degenerate sample; pick another seed");
        }
        let fit = fit_configuration_model(&degrees, 1e-8, 100_000).unwrap();
        assert!(fit.residual <= 1e-8);
        for (e, k) in fit.expected_degrees().iter().zip(&degrees) {
            assert!((e - k).abs() <= 1e-8);
        }
        // Induced probability matrix tells the same story.
        let p = fit.probability_matrix();
        let mean_degree: f64 = degrees.iter().sum::<f64>() / 20.0;
        let d = expected_density(&p).unwrap();
        assert!((d - mean_degree / 19.0).abs() < 1e-8);
    }

    #[test]
    fn cm_fit_rejections() {
        assert!(matches!(
            fit_configuration_model(&[0.0, 0.0, 0.0], 1e-8, 100),
            Err(EnsembleError::AllZeroDegrees)
        ));
        assert!(matches!(
            fit_configuration_model(&[2.0, 2.0, 2.0], 1e-8, 100),
            Err(EnsembleError::AllSaturatedDegrees)
        ));
        assert!(matches!(
            fit_configuration_model(&[1.0, 5.0], 1e-8, 100),
            Err(EnsembleError::DegreeOutOfRange { .. })
        ));
        // Unmatchable positive degree: fixed point stalls, reported with
        // residual and iteration count.
        assert!(matches!(
            fit_configuration_model(&[2.0, 0.0, 0.0], 1e-8, 50),
            Err(EnsembleError::NoConvergence { .. })
        ));
    }

    #[test]
    fn rejects_bad_coupling() {
        assert!(FitnessEnsemble::new(fv(&[1.0]), 0.0).is_err());
        assert!(FitnessEnsemble::new(fv(&[1.0]), -1.0).is_err());
        assert!(FitnessEnsemble::new(fv(&[1.0]), f64::NAN).is_err());
    }
}
