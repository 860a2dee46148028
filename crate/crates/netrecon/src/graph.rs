//! Core graph representations: weighted directed input data, the binary
//! undirected graphs that reconstruction targets, and per-node fitness values.
//!
//! All types are immutable after construction and safe to share across
//! threads. Adjacency is stored densely; the intended scale (up to a few
//! thousand nodes) keeps the O(N^2) footprint acceptable.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("node count must be at least 1")]
    NoNodes,
    #[error("expected {expected} matrix entries for {n} nodes, got {got}")]
    BadShape { n: usize, expected: usize, got: usize },
    #[error("weight at ({i}, {j}) must be finite and nonnegative, got {value}")]
    BadWeight { i: usize, j: usize, value: f64 },
    #[error("{count} labels provided for {n} nodes")]
    BadLabelCount { n: usize, count: usize },
    #[error("adjacency must be symmetric with zero diagonal: mismatch at ({i}, {j})")]
    BadAdjacency { i: usize, j: usize },
    #[error("edge ({i}, {j}) out of range for {n} nodes")]
    EdgeOutOfRange { i: usize, j: usize, n: usize },
    #[error("self-loop on node {node} is not allowed")]
    SelfLoop { node: usize },
    #[error("node {node} has zero strength; prune zero-strength nodes before using strengths as fitness")]
    ZeroStrength { node: String },
    #[error("fitness at index {index} must be positive and finite, got {value}")]
    BadFitness { index: usize, value: f64 },
}

/// Which row/column sums define a node's strength when deriving fitness
/// from directed weights. `Out` is the default (total lending / export).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrengthKind {
    #[default]
    Out,
    /// In-strength plus out-strength.
    Total,
}

/// Raw directed weighted data: `n` nodes and nonnegative weights `w_ij`.
/// Diagonal entries are stored but ignored by every downstream operation.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    n: usize,
    weights: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl WeightedDigraph {
    /// Builds from a dense row-major weight matrix. Every entry must be
    /// finite and nonnegative.
    pub fn new(n: usize, weights: Vec<f64>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        if weights.len() != n * n {
            return Err(GraphError::BadShape {
                n,
                expected: n * n,
                got: weights.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights[i * n + j];
                if !w.is_finite() || w < 0.0 {
                    return Err(GraphError::BadWeight { i, j, value: w });
                }
            }
        }
        Ok(Self {
            n,
            weights,
            labels: None,
        })
    }

    /// Builds from (src, dst, weight) triples; duplicate pairs are summed.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        let mut weights = vec![0.0; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(GraphError::EdgeOutOfRange { i, j, n });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(GraphError::BadWeight { i, j, value: w });
            }
            weights[i * n + j] += w;
        }
        Ok(Self {
            n,
            weights,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::BadLabelCount {
                n: self.n,
                count: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    fn label_of(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Binary undirected projection: an edge i-j exists iff w_ij + w_ji > 0
    /// (strict; exact zero does not link). The diagonal is ignored.
    pub fn binarize(&self) -> Graph {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                if self.weight(i, j) + self.weight(j, i) > 0.0 {
                    adj[i * n + j] = true;
                    adj[j * n + i] = true;
                }
            }
        }
        Graph::from_adjacency(n, adj).expect("binarized adjacency is symmetric by construction")
    }

    /// Node strengths as fitness, out-strength by default. Rejects nodes
    /// whose strength is zero: the linking probability of such a node would
    /// be frozen at 0 and the coupling calibration would ignore it.
    pub fn strengths(&self) -> Result<FitnessVector, GraphError> {
        self.strengths_with(StrengthKind::Out)
    }

    pub fn strengths_with(&self, kind: StrengthKind) -> Result<FitnessVector, GraphError> {
        let n = self.n;
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                if j == i {
                    continue;
                }
                s += self.weight(i, j);
                if kind == StrengthKind::Total {
                    s += self.weight(j, i);
                }
            }
            if s <= 0.0 {
                return Err(GraphError::ZeroStrength {
                    node: self.label_of(i),
                });
            }
            y.push(s);
        }
        FitnessVector::new(y)
    }
}

/// Binary undirected simple graph with cached degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds from a dense row-major adjacency; must be symmetric with a
    /// zero diagonal.
    pub fn from_adjacency(n: usize, adj: Vec<bool>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        if adj.len() != n * n {
            return Err(GraphError::BadShape {
                n,
                expected: n * n,
                got: adj.len(),
            });
        }
        for i in 0..n {
            if adj[i * n + i] {
                return Err(GraphError::BadAdjacency { i, j: i });
            }
            for j in (i + 1)..n {
                if adj[i * n + j] != adj[j * n + i] {
                    return Err(GraphError::BadAdjacency { i, j });
                }
            }
        }
        let degrees = (0..n)
            .map(|i| adj[i * n..(i + 1) * n].iter().filter(|&&a| a).count())
            .collect();
        Ok(Self { n, adj, degrees })
    }

    /// Builds from undirected edge pairs (each pair listed once, any order).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        let mut adj = vec![false; n * n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(GraphError::EdgeOutOfRange { i, j, n });
            }
            if i == j {
                return Err(GraphError::SelfLoop { node: i });
            }
            adj[i * n + j] = true;
            adj[j * n + i] = true;
        }
        Self::from_adjacency(n, adj)
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        let mut adj = vec![true; n * n];
        for i in 0..n {
            adj[i * n + i] = false;
        }
        Self::from_adjacency(n, adj)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Adjacency row of node `i`.
    pub fn row(&self, i: usize) -> &[bool] {
        &self.adj[i * self.n..(i + 1) * self.n]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Cached degree sequence k_i = sum_j a_ij.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Number of undirected links L.
    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    /// Iterates unordered edges (i, j) with i < j.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n).filter_map(move |j| self.has_edge(i, j).then_some((i, j)))
        })
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter_map(|(j, &a)| a.then_some(j))
    }
}

/// Per-node fitness values, strictly positive and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FitnessVector {
    y: Vec<f64>,
}

impl FitnessVector {
    pub fn new(y: Vec<f64>) -> Result<Self, GraphError> {
        if y.is_empty() {
            return Err(GraphError::NoNodes);
        }
        for (index, &value) in y.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(GraphError::BadFitness { index, value });
            }
        }
        Ok(Self { y })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn get(&self, i: usize) -> f64 {
        self.y[i]
    }
}
