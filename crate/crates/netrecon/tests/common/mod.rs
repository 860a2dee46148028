//! Independent brute-force implementations of the structural metrics.
//!
//! Everything here is written as literally as possible — nested loops
//! straight from the defining formulas, no shared code with the library —
//! so the two implementations can serve as oracles for each other.
#![allow(clippy::needless_range_loop)] // index loops mirror the formulas on purpose

use netrecon::graph::Graph;
use rand::Rng;

/// Dense symmetric adjacency as nested Vecs, the clumsiest honest format.
pub type Adj = Vec<Vec<bool>>;

pub fn to_graph(adj: &Adj) -> Graph {
    let n = adj.len();
    let flat: Vec<bool> = (0..n).flat_map(|i| adj[i].iter().copied()).collect();
    Graph::from_adjacency(n, flat).expect("oracle adjacency is well-formed")
}

pub fn random_adjacency<R: Rng>(n: usize, density: f64, rng: &mut R) -> Adj {
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < density {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    adj
}

fn degree(adj: &Adj, i: usize) -> usize {
    adj[i].iter().filter(|&&a| a).count()
}

/// D = 2L / (N(N-1)).
pub fn brute_density(adj: &Adj) -> f64 {
    let n = adj.len();
    let mut directed_links = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j && adj[i][j] {
                directed_links += 1.0;
            }
        }
    }
    directed_links / (n as f64 * (n as f64 - 1.0))
}

/// Mean over all nodes of k_nn,i = (sum_j a_ij k_j) / k_i, with 0 for
/// isolated nodes.
pub fn brute_avg_nn_degree(adj: &Adj) -> f64 {
    let n = adj.len();
    let mut total = 0.0;
    for i in 0..n {
        let k_i = degree(adj, i);
        if k_i == 0 {
            continue;
        }
        let mut neighbor_degrees = 0.0;
        for j in 0..n {
            if j != i && adj[i][j] {
                neighbor_degrees += degree(adj, j) as f64;
            }
        }
        total += neighbor_degrees / k_i as f64;
    }
    total / n as f64
}

/// Mean over all nodes of the triangle-to-wedge ratio
/// c_i = (sum_{j != i} sum_{l != i,j} a_ij a_il a_jl)
///     / (sum_{j != i} sum_{l != i,j} a_ij a_il), with 0 when k_i < 2.
pub fn brute_mean_clustering(adj: &Adj) -> f64 {
    let n = adj.len();
    let mut total = 0.0;
    for i in 0..n {
        let mut triangles = 0.0;
        let mut wedges = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            for l in 0..n {
                if l == i || l == j {
                    continue;
                }
                if adj[i][j] && adj[i][l] {
                    wedges += 1.0;
                    if adj[j][l] {
                        triangles += 1.0;
                    }
                }
            }
        }
        if wedges > 0.0 {
            total += triangles / wedges;
        }
    }
    total / n as f64
}

/// phi = sum over degree values k present of P(k) (psi(k) - D) / (1 - D),
/// where psi(k) is the density among nodes of degree strictly above k.
/// None when D = 1 (normalization vanishes).
pub fn brute_rich_club(adj: &Adj) -> Option<f64> {
    let n = adj.len();
    let d = brute_density(adj);
    if d >= 1.0 {
        return None;
    }
    let degrees: Vec<usize> = (0..n).map(|i| degree(adj, i)).collect();
    let mut values = degrees.clone();
    values.sort_unstable();
    values.dedup();

    let mut phi = 0.0;
    for &k in &values {
        let club: Vec<usize> = (0..n).filter(|&i| degrees[i] > k).collect();
        let m = club.len();
        let psi = if m >= 2 {
            let mut edges = 0.0;
            for a in 0..m {
                for b in (a + 1)..m {
                    if adj[club[a]][club[b]] {
                        edges += 1.0;
                    }
                }
            }
            2.0 * edges / (m as f64 * (m as f64 - 1.0))
        } else {
            0.0
        };
        let p_k = degrees.iter().filter(|&&x| x == k).count() as f64 / n as f64;
        phi += p_k * (psi - d) / (1.0 - d);
    }
    Some(phi)
}

/// Ensemble mean of the density by exhaustive enumeration: every subset of
/// the N(N-1)/2 possible links, weighted by prod p^a (1-p)^(1-a). Only
/// feasible for tiny N.
pub fn enumerated_expected_density(n: usize, p: &dyn Fn(usize, usize) -> f64) -> f64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let m = pairs.len();
    assert!(m <= 20, "enumeration oracle is for tiny graphs only");

    let mut total = 0.0;
    for mask in 0u32..(1u32 << m) {
        let mut weight = 1.0;
        let mut links = 0.0;
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            let present = (mask >> bit) & 1 == 1;
            let p_ij = p(i, j);
            weight *= if present { p_ij } else { 1.0 - p_ij };
            if present {
                links += 1.0;
            }
        }
        total += weight * 2.0 * links / (n as f64 * (n as f64 - 1.0));
    }
    total
}
