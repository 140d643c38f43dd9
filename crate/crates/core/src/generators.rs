//! Small graph families and seeded random graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn build(n: usize, edges: Vec<(usize, usize, f64)>) -> Graph {
    Graph::new(n, edges).expect("generator produced an invalid edge set")
}

/// Path `0 − 1 − … − (n−1)` with unit weights.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i, 1.0)).collect())
}

/// Cycle on `n ≥ 3` nodes with unit weights.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    build(n, (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect())
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, 1.0));
        }
    }
    build(n, edges)
}

/// `rows × cols` lattice, node `r·cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1, 1.0));
            }
            if r + 1 < rows {
                edges.push((v, v + cols, 1.0));
            }
        }
    }
    build(rows * cols, edges)
}

/// Two cliques `K_k` (nodes `0..k` and `k..2k`) joined by the edge `(k−1, k)`.
pub fn barbell(k: usize) -> Graph {
    let mut edges = Vec::new();
    for offset in [0, k] {
        for i in 0..k {
            for j in (i + 1)..k {
                edges.push((offset + i, offset + j, 1.0));
            }
        }
    }
    edges.push((k - 1, k, 1.0));
    build(2 * k, edges)
}

/// Connected random graph: a random spanning tree plus each remaining pair
/// with probability `p`. Weights are uniform in `[0.5, 2)`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut present = vec![false; n * n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v, rng.random_range(0.5..2.0)));
        present[u * n + v] = true;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present[i * n + j] && rng.random_bool(p) {
                edges.push((i, j, rng.random_range(0.5..2.0)));
            }
        }
    }
    build(n, edges)
}

/// Random non-empty subset of `0..n` of the given size, sorted.
pub fn random_subset(n: usize, size: usize, seed: u64) -> Vec<usize> {
    assert!(size >= 1 && size <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rand::seq::index::sample(&mut rng, n, size)
        .into_iter()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}
