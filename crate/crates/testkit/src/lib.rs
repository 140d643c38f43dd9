//! Reference routines for tests.
//!
//! Everything here works on plain `Vec<Vec<f64>>` matrices and raw edge
//! lists so that it shares no code path with `graph-slepian`. The routines are
//! deliberately naive (cyclic Jacobi, explicit triple products) and only meant
//! for small inputs.

#![allow(clippy::needless_range_loop)]

pub type Dense = Vec<Vec<f64>>;

pub fn zeros(rows: usize, cols: usize) -> Dense {
    vec![vec![0.0; cols]; rows]
}

pub fn transpose(a: &Dense) -> Dense {
    if a.is_empty() {
        return Vec::new();
    }
    let (r, c) = (a.len(), a[0].len());
    let mut t = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            t[j][i] = a[i][j];
        }
    }
    t
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(r, c);
    for i in 0..r {
        assert_eq!(a[i].len(), k);
        for j in 0..c {
            let mut s = 0.0;
            for l in 0..k {
                s += a[i][l] * b[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Dense Laplacian from an undirected edge list `(i, j, w)`.
pub fn dense_laplacian(n: usize, edges: &[(usize, usize, f64)], normalized: bool) -> Dense {
    let mut a = zeros(n, n);
    for &(i, j, w) in edges {
        a[i][j] += w;
        a[j][i] += w;
    }
    let deg: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let mut l = zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let comb = if i == j { deg[i] - a[i][i] } else { -a[i][j] };
            l[i][j] = if normalized {
                comb / (deg[i].sqrt() * deg[j].sqrt())
            } else {
                comb
            };
        }
    }
    l
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues ascending and the matching eigenvectors as columns.
pub fn jacobi_eigen(a: &Dense) -> (Vec<f64>, Dense) {
    let n = a.len();
    let mut m = a.clone();
    let mut v = zeros(n, n);
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += m[i][j] * m[i][j];
                }
            }
        }
        if off.sqrt() < 1e-15 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x][x].total_cmp(&m[y][y]));
    let values = order.iter().map(|&k| m[k][k]).collect();
    let mut vecs = zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vecs[i][col] = v[i][k];
        }
    }
    (values, vecs)
}

/// Both Slepian designs computed by explicit dense products:
/// `C = Wᵀ Uᵀ S U W` and `C_emb = Λ_W^{1/2} C Λ_W^{1/2}`.
pub struct DenseSlepian {
    /// Eigenvalues of `C`, ascending.
    pub mu: Vec<f64>,
    /// Node-domain vectors `U W ŝ` for `mu`, as columns.
    pub mu_vectors: Dense,
    /// Eigenvalues of `C_emb`, ascending.
    pub xi: Vec<f64>,
    pub xi_vectors: Dense,
}

pub fn dense_slepian(
    n: usize,
    edges: &[(usize, usize, f64)],
    normalized: bool,
    subset: &[usize],
    n_w: usize,
) -> DenseSlepian {
    let l = dense_laplacian(n, edges, normalized);
    let (lambda, u) = jacobi_eigen(&l);
    let mut w = zeros(n, n_w);
    for (k, row) in w.iter_mut().enumerate().take(n_w) {
        row[k] = 1.0;
    }
    let mut s = zeros(n, n);
    for &i in subset {
        s[i][i] = 1.0;
    }
    let uw = matmul(&u, &w);
    let c = matmul(&matmul(&transpose(&uw), &s), &uw);
    let mut half = zeros(n_w, n_w);
    for k in 0..n_w {
        // The null eigenvalue may come out as ±1e-16.
        half[k][k] = if lambda[k] < 1e-12 {
            0.0
        } else {
            lambda[k].sqrt()
        };
    }
    let c_emb = matmul(&matmul(&half, &c), &half);
    let (mu, mu_coeffs) = jacobi_eigen(&c);
    let (xi, xi_coeffs) = jacobi_eigen(&c_emb);
    DenseSlepian {
        mu,
        mu_vectors: matmul(&uw, &mu_coeffs),
        xi,
        xi_vectors: matmul(&uw, &xi_coeffs),
    }
}

/// Columns `cols` of `m`.
pub fn columns(m: &Dense, cols: std::ops::Range<usize>) -> Dense {
    m.iter().map(|row| row[cols.clone()].to_vec()).collect()
}

/// Largest entry of `|P_a − P_b|` where `P_x = X Xᵀ` for orthonormal columns.
/// Zero iff the column spaces coincide.
pub fn projector_distance(a: &Dense, b: &Dense) -> f64 {
    let pa = matmul(a, &transpose(a));
    let pb = matmul(b, &transpose(b));
    let mut worst: f64 = 0.0;
    for i in 0..pa.len() {
        for j in 0..pa.len() {
            worst = worst.max((pa[i][j] - pb[i][j]).abs());
        }
    }
    worst
}

/// Exhaustive minimum weighted cut over all bipartitions with the given side size.
/// Returns `(cut weight, members of the side containing node 0)`.
pub fn min_cut_with_side(
    n: usize,
    edges: &[(usize, usize, f64)],
    side: usize,
) -> (f64, Vec<usize>) {
    assert!(n <= 24);
    let mut best = (f64::INFINITY, Vec::new());
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 || mask.count_ones() as usize != side {
            continue;
        }
        let cut: f64 = edges
            .iter()
            .filter(|&&(i, j, _)| ((mask >> i) & 1) != ((mask >> j) & 1))
            .map(|e| e.2)
            .sum();
        if cut < best.0 {
            best = (cut, (0..n).filter(|&i| (mask >> i) & 1 == 1).collect());
        }
    }
    best
}
