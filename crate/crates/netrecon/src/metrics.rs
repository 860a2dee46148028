//! The four global topological properties — density, average
//! nearest-neighbor degree, mean clustering, and the average rich-club
//! coefficient — computed exactly on a [`Graph`], as plug-in expectations on
//! a [`ProbabilityMatrix`] (every a_ij replaced by p_ij), or as Monte Carlo
//! ensemble averages.

use crate::graph::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("metric requires at least {needed} nodes, got {got}")]
    TooFewNodes { needed: usize, got: usize },
    #[error("rich-club undefined at density 1 (complete graph): normalization (psi - D)/(1 - D) degenerates")]
    RichClubUndefined,
    #[error("expected {expected} matrix entries for {n} nodes, got {got}")]
    BadShape { n: usize, expected: usize, got: usize },
    #[error("probability at ({i}, {j}) must lie in [0, 1], got {value}")]
    BadProbability { i: usize, j: usize, value: f64 },
    #[error("probability matrix must be symmetric with zero diagonal: mismatch at ({i}, {j})")]
    BadSymmetry { i: usize, j: usize },
    #[error("Monte Carlo estimation needs at least 2 samples, got {got}")]
    TooFewSamples { got: usize },
    #[error("unknown property {name:?}; valid names: density, knn, clustering, rich_club")]
    UnknownProperty { name: String },
}

/// Selector for the four reconstructed properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Density,
    Knn,
    Clustering,
    RichClub,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Density,
        Property::Knn,
        Property::Clustering,
        Property::RichClub,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Density => "density",
            Property::Knn => "knn",
            Property::Clustering => "clustering",
            Property::RichClub => "rich_club",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "density" => Ok(Property::Density),
            "knn" => Ok(Property::Knn),
            "clustering" => Ok(Property::Clustering),
            "rich_club" => Ok(Property::RichClub),
            other => Err(MetricsError::UnknownProperty {
                name: other.to_string(),
            }),
        }
    }
}

/// Symmetric matrix of link probabilities p_ij with zero diagonal.
///
/// Entries may equal 1 exactly so that a 0/1-valued matrix can stand in for
/// an adjacency matrix; ensemble-induced probabilities stay strictly below 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    n: usize,
    p: Vec<f64>,
}

impl ProbabilityMatrix {
    pub fn new(n: usize, p: Vec<f64>) -> Result<Self, MetricsError> {
        if n == 0 {
            return Err(MetricsError::TooFewNodes { needed: 1, got: 0 });
        }
        if p.len() != n * n {
            return Err(MetricsError::BadShape {
                n,
                expected: n * n,
                got: p.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = p[i * n + j];
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(MetricsError::BadProbability { i, j, value: v });
                }
            }
        }
        for i in 0..n {
            if p[i * n + i] != 0.0 {
                return Err(MetricsError::BadSymmetry { i, j: i });
            }
            for j in (i + 1)..n {
                if p[i * n + j] != p[j * n + i] {
                    return Err(MetricsError::BadSymmetry { i, j });
                }
            }
        }
        Ok(Self { n, p })
    }

    /// 0/1 matrix mirroring a graph's adjacency.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut p = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if g.has_edge(i, j) {
                    p[i * n + j] = 1.0;
                }
            }
        }
        Self { n, p }
    }

    /// Constant off-diagonal probability q.
    pub fn uniform(n: usize, q: f64) -> Result<Self, MetricsError> {
        let mut p = vec![q; n * n];
        for i in 0..n {
            p[i * n + i] = 0.0;
        }
        Self::new(n, p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.p[i * self.n..(i + 1) * self.n]
    }

    /// Expected degrees <k_i> = sum_j p_ij.
    pub fn expected_degrees(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Draws one graph with each unordered pair linked independently with
    /// probability p_ij. Deterministic per seed; pairs are visited in
    /// row-major upper-triangle order, one uniform draw each.
    pub fn sample(&self, seed: u64) -> Graph {
        let n = self.n;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut adj = vec![false; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let u: f64 = rng.random();
                if u < self.get(i, j) {
                    adj[i * n + j] = true;
                    adj[j * n + i] = true;
                }
            }
        }
        Graph::from_adjacency(n, adj).expect("sampled adjacency is symmetric by construction")
    }
}

/// The four properties of one graph or ensemble, plus per-node detail.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub density: f64,
    pub knn: f64,
    pub clustering: f64,
    /// `None` exactly when the graph (or plug-in density) is complete.
    pub rich_club: Option<f64>,
    pub knn_per_node: Vec<f64>,
    pub clustering_per_node: Vec<f64>,
}

impl MetricsReport {
    pub fn get(&self, property: Property) -> Option<f64> {
        match property {
            Property::Density => Some(self.density),
            Property::Knn => Some(self.knn),
            Property::Clustering => Some(self.clustering),
            Property::RichClub => self.rich_club,
        }
    }
}

/// Link density D = 2L / (N(N-1)).
pub fn density(g: &Graph) -> Result<f64, MetricsError> {
    let n = g.n();
    if n < 2 {
        return Err(MetricsError::TooFewNodes { needed: 2, got: n });
    }
    Ok(2.0 * g.edge_count() as f64 / (n as f64 * (n - 1) as f64))
}

fn knn_per_node(g: &Graph) -> Vec<f64> {
    let degrees = g.degrees();
    (0..g.n())
        .map(|i| {
            if degrees[i] == 0 {
                0.0
            } else {
                let s: usize = g.neighbors(i).map(|j| degrees[j]).sum();
                s as f64 / degrees[i] as f64
            }
        })
        .collect()
}

/// Mean over nodes of the average degree of each node's neighbors.
/// Isolated nodes contribute 0.
pub fn avg_nn_degree(g: &Graph) -> Result<f64, MetricsError> {
    let n = g.n();
    if n < 2 {
        return Err(MetricsError::TooFewNodes { needed: 2, got: n });
    }
    Ok(knn_per_node(g).iter().sum::<f64>() / n as f64)
}

fn clustering_per_node(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let degrees = g.degrees();
    (0..n)
        .map(|i| {
            let k = degrees[i];
            if k < 2 {
                return 0.0;
            }
            let neighbors: Vec<usize> = g.neighbors(i).collect();
            let mut triangles = 0usize; // unordered neighbor pairs that are linked
            for (a, &j) in neighbors.iter().enumerate() {
                for &l in &neighbors[a + 1..] {
                    if g.has_edge(j, l) {
                        triangles += 1;
                    }
                }
            }
            // Ordered pairs in both numerator and denominator: 2T / (k(k-1)).
            2.0 * triangles as f64 / (k as f64 * (k - 1) as f64)
        })
        .collect()
}

/// Mean local clustering: triangle-to-wedge ratio per node, averaged over
/// all N nodes with degree-<2 nodes contributing 0.
pub fn mean_clustering(g: &Graph) -> Result<f64, MetricsError> {
    let n = g.n();
    if n < 3 {
        return Err(MetricsError::TooFewNodes { needed: 3, got: n });
    }
    Ok(clustering_per_node(g).iter().sum::<f64>() / n as f64)
}

/// Average rich-club coefficient: sum over degree values k present in the
/// graph of P(k) * (psi(k) - D)/(1 - D), where psi(k) is the link density of
/// the subgraph over nodes with degree strictly above k (0 when fewer than
/// two such nodes exist).
pub fn rich_club(g: &Graph) -> Result<f64, MetricsError> {
    let n = g.n();
    if n < 2 {
        return Err(MetricsError::TooFewNodes { needed: 2, got: n });
    }
    let d = density(g)?;
    if d >= 1.0 {
        return Err(MetricsError::RichClubUndefined);
    }
    let degrees = g.degrees();

    // Nodes in descending degree order; thresholds are the distinct degree
    // values, also visited descending so the >k set grows incrementally.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));

    let mut total = 0.0;
    let mut in_set = vec![false; n];
    let mut set_size = 0usize;
    let mut set_edges = 0usize;
    let mut pos = 0usize;
    while pos < n {
        let k = degrees[order[pos]];
        let mut count = 0usize;
        while pos < n && degrees[order[pos]] == k {
            count += 1;
            pos += 1;
        }
        // Current set holds exactly the nodes with degree > k.
        let psi = if set_size >= 2 {
            2.0 * set_edges as f64 / (set_size as f64 * (set_size - 1) as f64)
        } else {
            0.0
        };
        let p_k = count as f64 / n as f64;
        total += p_k * (psi - d) / (1.0 - d);
        // Absorb this degree class before moving to the next threshold.
        for &v in &order[pos - count..pos] {
            set_edges += g.neighbors(v).filter(|&u| in_set[u]).count();
            in_set[v] = true;
            set_size += 1;
        }
    }
    Ok(total)
}

/// All four exact metrics on one graph. Requires N >= 3; the rich-club
/// entry is `None` for a complete graph.
pub fn metrics_report(g: &Graph) -> Result<MetricsReport, MetricsError> {
    let n = g.n();
    if n < 3 {
        return Err(MetricsError::TooFewNodes { needed: 3, got: n });
    }
    let d = density(g)?;
    let knn_vec = knn_per_node(g);
    let c_vec = clustering_per_node(g);
    let rc = match rich_club(g) {
        Ok(v) => Some(v),
        Err(MetricsError::RichClubUndefined) => None,
        Err(e) => return Err(e),
    };
    Ok(MetricsReport {
        density: d,
        knn: knn_vec.iter().sum::<f64>() / n as f64,
        clustering: c_vec.iter().sum::<f64>() / n as f64,
        rich_club: rc,
        knn_per_node: knn_vec,
        clustering_per_node: c_vec,
    })
}

/// Plug-in expected density: sum of p_ij over unordered pairs divided by
/// N(N-1)/2. Equals the exact ensemble mean of D by linearity.
pub fn expected_density(p: &ProbabilityMatrix) -> Result<f64, MetricsError> {
    let n = p.n();
    if n < 2 {
        return Err(MetricsError::TooFewNodes { needed: 2, got: n });
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += p.get(i, j);
        }
    }
    Ok(2.0 * sum / (n as f64 * (n - 1) as f64))
}

fn plug_in_knn_per_node(p: &ProbabilityMatrix, expected: &[f64]) -> Vec<f64> {
    let n = p.n();
    (0..n)
        .map(|i| {
            if expected[i] <= 0.0 {
                0.0
            } else {
                let s: f64 = (0..n).map(|j| p.get(i, j) * expected[j]).sum();
                s / expected[i]
            }
        })
        .collect()
}

fn plug_in_clustering_per_node(p: &ProbabilityMatrix, expected: &[f64]) -> Vec<f64> {
    let n = p.n();
    // (P^3)_ii via one dense product: P2 = P*P, then diag(P2 * P).
    let mut p2 = vec![0.0; n * n];
    for i in 0..n {
        for l in 0..n {
            let pil = p.get(i, l);
            if pil == 0.0 {
                continue;
            }
            let row_l = p.row(l);
            for j in 0..n {
                p2[i * n + j] += pil * row_l[j];
            }
        }
    }
    (0..n)
        .map(|i| {
            let cube_ii: f64 = (0..n).map(|j| p2[i * n + j] * p.get(j, i)).sum();
            let sq: f64 = p.row(i).iter().map(|v| v * v).sum();
            let wedges = expected[i] * expected[i] - sq;
            if wedges <= 0.0 {
                0.0
            } else {
                cube_ii / wedges
            }
        })
        .collect()
}

fn plug_in_rich_club(p: &ProbabilityMatrix, expected: &[f64], d: f64) -> Result<f64, MetricsError> {
    if d >= 1.0 {
        return Err(MetricsError::RichClubUndefined);
    }
    let n = p.n();
    // Thresholds are the distinct expected-degree values (ties at floating
    // equality grouped), visited in descending order so the >k set grows
    // one degree class at a time.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        expected[b]
            .partial_cmp(&expected[a])
            .expect("expected degrees are finite")
            .then(a.cmp(&b))
    });

    let mut total = 0.0;
    let mut members: Vec<usize> = Vec::with_capacity(n);
    let mut set_edges = 0.0; // sum of p_uv over unordered pairs inside the set
    let mut pos = 0usize;
    while pos < n {
        let k = expected[order[pos]];
        let mut count = 0usize;
        while pos < n && expected[order[pos]] == k {
            count += 1;
            pos += 1;
        }
        let m = members.len();
        let psi = if m >= 2 {
            2.0 * set_edges / (m as f64 * (m - 1) as f64)
        } else {
            0.0
        };
        let p_k = count as f64 / n as f64;
        total += p_k * (psi - d) / (1.0 - d);
        for &v in &order[pos - count..pos] {
            for &u in &members {
                set_edges += p.get(u, v);
            }
            members.push(v);
        }
    }
    Ok(total)
}

/// Plug-in expectations of all four metrics: every a_ij in the exact
/// formulas replaced by p_ij, with rich-club thresholds taken over the
/// distinct expected degrees. Requires N >= 3; the rich-club entry is
/// `None` when the plug-in density reaches 1.
pub fn expected_metrics(p: &ProbabilityMatrix) -> Result<MetricsReport, MetricsError> {
    let n = p.n();
    if n < 3 {
        return Err(MetricsError::TooFewNodes { needed: 3, got: n });
    }
    let d = expected_density(p)?;
    let expected = p.expected_degrees();
    let knn_vec = plug_in_knn_per_node(p, &expected);
    let c_vec = plug_in_clustering_per_node(p, &expected);
    let rc = match plug_in_rich_club(p, &expected, d) {
        Ok(v) => Some(v),
        Err(MetricsError::RichClubUndefined) => None,
        Err(e) => return Err(e),
    };
    Ok(MetricsReport {
        density: d,
        knn: knn_vec.iter().sum::<f64>() / n as f64,
        clustering: c_vec.iter().sum::<f64>() / n as f64,
        rich_club: rc,
        knn_per_node: knn_vec,
        clustering_per_node: c_vec,
    })
}

/// Sample mean and sample standard deviation of one property.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PropertyEstimate {
    pub mean: f64,
    pub std: f64,
    /// Number of samples on which the property was defined.
    pub samples: usize,
}

fn estimate(values: &[f64]) -> PropertyEstimate {
    let m = values.len();
    let mean = values.iter().sum::<f64>() / m as f64;
    let std = if m < 2 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (m - 1) as f64).sqrt()
    };
    PropertyEstimate {
        mean,
        std,
        samples: m,
    }
}

/// Monte Carlo means and standard deviations of the four metrics.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloMetrics {
    pub density: PropertyEstimate,
    pub knn: PropertyEstimate,
    pub clustering: PropertyEstimate,
    /// `None` when every sampled graph was complete (rich-club undefined);
    /// otherwise aggregated over the samples where it was defined.
    pub rich_club: Option<PropertyEstimate>,
    pub samples: usize,
}

impl MonteCarloMetrics {
    pub fn get(&self, property: Property) -> Option<PropertyEstimate> {
        match property {
            Property::Density => Some(self.density),
            Property::Knn => Some(self.knn),
            Property::Clustering => Some(self.clustering),
            Property::RichClub => self.rich_club,
        }
    }
}

/// Draws `samples` independent graphs (edge i-j present with probability
/// p_ij), computes the exact metrics on each, and aggregates. Sample s uses
/// substream seed `seed ^ s`; results are bitwise independent of the worker
/// count because per-sample values are reduced in sample order.
pub fn monte_carlo_metrics(
    p: &ProbabilityMatrix,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloMetrics, MetricsError> {
    let n = p.n();
    if n < 3 {
        return Err(MetricsError::TooFewNodes { needed: 3, got: n });
    }
    if samples < 2 {
        return Err(MetricsError::TooFewSamples { got: samples });
    }
    let max_edges = n * (n - 1) / 2;
    let per_sample: Vec<(f64, f64, f64, Option<f64>)> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let g = p.sample(seed ^ s as u64);
            let d = density(&g).expect("n >= 3");
            let knn = avg_nn_degree(&g).expect("n >= 3");
            let c = mean_clustering(&g).expect("n >= 3");
            let rc = if g.edge_count() == max_edges {
                None
            } else {
                Some(rich_club(&g).expect("incomplete graph"))
            };
            (d, knn, c, rc)
        })
        .collect();

    let d_vals: Vec<f64> = per_sample.iter().map(|t| t.0).collect();
    let knn_vals: Vec<f64> = per_sample.iter().map(|t| t.1).collect();
    let c_vals: Vec<f64> = per_sample.iter().map(|t| t.2).collect();
    let rc_vals: Vec<f64> = per_sample.iter().filter_map(|t| t.3).collect();
    Ok(MonteCarloMetrics {
        density: estimate(&d_vals),
        knn: estimate(&knn_vals),
        clustering: estimate(&c_vals),
        rich_club: if rc_vals.is_empty() {
            None
        } else {
            Some(estimate(&rc_vals))
        },
        samples,
    })
}
