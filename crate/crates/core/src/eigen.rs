//! Dense symmetric eigensolver (cyclic Jacobi) and Ky Fan partial eigenvalue sums.
//!
//! The solver is deliberately deterministic: no randomized pivoting, fixed sweep
//! order, stable descending sort. Two runs on the same matrix produce bitwise
//! identical spectra, which the certificate and search layers rely on.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("matrix must have order >= 1")]
    EmptyMatrix,
    #[error("rows do not form a square matrix of order {expected}")]
    NotSquare { expected: usize },
    #[error("matrix is not symmetric as stored at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("jacobi sweep cap {cap} exceeded, off-diagonal norm {off:e}")]
    NonConvergence { cap: usize, off: f64 },
    #[error("rank {r} out of range 1..={n}")]
    RankOutOfRange { r: usize, n: usize },
}

/// Every tolerance used across the crate, in one place, so tests pin exact
/// values instead of scattering magic numbers.
#[derive(Debug, Clone, Serialize)]
pub struct ToleranceProfile {
    /// Jacobi stops once the off-diagonal Frobenius norm drops below this
    /// factor times the Frobenius norm of the input.
    pub jacobi_offdiag_factor: f64,
    /// Hard cap on Jacobi sweeps; exceeding it signals a solver bug.
    pub jacobi_sweep_cap: usize,
    /// Pairwise inner products of an orthonormal basis vs Kronecker delta.
    pub orthonormality: f64,
    /// Per-column residual norm of A v - lambda v.
    pub eigen_residual: f64,
    /// Max-entry error of V diag(w) V^T against the input.
    pub reconstruction: f64,
    /// Max-entry bound on |Q^2 - Q| for a valid projection.
    pub projection_idempotency: f64,
    /// |tr Q - r| for a valid rank-r projection.
    pub projection_trace: f64,
    /// Diagonal entries of a projection may dip this far below zero.
    pub projection_diag_floor: f64,
    /// Projection eigenvalues must sit within this distance of {0, 1}.
    pub eigenvalue_cluster: f64,
    /// Certified inequalities pass when slack >= -certificate_slack.
    pub certificate_slack: f64,
    /// A bound is only reported violated when slack < -bound_slack.
    pub bound_slack: f64,
    /// |slack| below this counts as equality in a BoundReport.
    pub equality: f64,
    /// Alternating ascent stops when a step improves by less than this.
    pub ascent_improvement: f64,
    /// Window used to collect ties before the lexicographic tie-break in
    /// exhaustive searches.
    pub tie_window: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            jacobi_offdiag_factor: 1e-13,
            jacobi_sweep_cap: 100,
            orthonormality: 1e-10,
            eigen_residual: 1e-8,
            reconstruction: 1e-8,
            projection_idempotency: 1e-9,
            projection_trace: 1e-9,
            projection_diag_floor: 1e-12,
            eigenvalue_cluster: 1e-8,
            certificate_slack: 1e-9,
            bound_slack: 1e-7,
            equality: 1e-7,
            ascent_improvement: 1e-12,
            tie_window: 1e-9,
        }
    }
}

/// Dense real symmetric matrix, stored row-major with both triangles filled.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    /// Builds the matrix from `f(i, j)` evaluated only for `i <= j`, so the
    /// result is symmetric by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.entries[i * n + j] = v;
                m.entries[j * n + i] = v;
            }
        }
        m
    }

    /// Validates squareness and exact symmetry of the supplied rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, EigenError> {
        let n = rows.len();
        if n == 0 {
            return Err(EigenError::EmptyMatrix);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(EigenError::NotSquare { expected: n });
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, other) in rows.iter().enumerate().skip(i + 1) {
                if row[j] != other[i] {
                    return Err(EigenError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self {
            n,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Sets entry (i, j) and its mirror (j, i).
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.n + j] = v;
        self.entries[j * self.n + i] = v;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Eigenvalues in non-increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// k-th largest eigenvalue, 1-based: `nth_largest(1)` is the top value.
    pub fn nth_largest(&self, k: usize) -> f64 {
        assert!(k >= 1 && k <= self.values.len(), "index out of range");
        self.values[k - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Orthonormal eigenvector columns; column j pairs with the j-th spectrum value.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    n: usize,
    // column-major: column j occupies cols[j*n..(j+1)*n]
    cols: Vec<f64>,
}

impl OrthonormalBasis {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.cols[j * self.n..(j + 1) * self.n]
    }
}

/// Sum of the r smallest eigenvalues.
pub fn kyfan_bottom_sum(s: &Spectrum, r: usize) -> Result<f64, EigenError> {
    let n = s.len();
    if r < 1 || r > n {
        return Err(EigenError::RankOutOfRange { r, n });
    }
    Ok(s.values[n - r..].iter().sum())
}

/// Sum of the r largest eigenvalues.
pub fn kyfan_top_sum(s: &Spectrum, r: usize) -> Result<f64, EigenError> {
    let n = s.len();
    if r < 1 || r > n {
        return Err(EigenError::RankOutOfRange { r, n });
    }
    Ok(s.values[..r].iter().sum())
}

pub fn eigenvalues(a: &SymmetricMatrix) -> Result<Spectrum, EigenError> {
    eigenvalues_with(a, &ToleranceProfile::default())
}

pub fn eigenvalues_with(
    a: &SymmetricMatrix,
    profile: &ToleranceProfile,
) -> Result<Spectrum, EigenError> {
    let mut buf = a.entries.clone();
    let mut vals = vec![0.0; a.n];
    jacobi_in_place(&mut buf, a.n, None, profile)?;
    for i in 0..a.n {
        vals[i] = buf[i * a.n + i];
    }
    sort_descending(&mut vals);
    Ok(Spectrum { values: vals })
}

pub fn eigenpairs(a: &SymmetricMatrix) -> Result<(Spectrum, OrthonormalBasis), EigenError> {
    eigenpairs_with(a, &ToleranceProfile::default())
}

pub fn eigenpairs_with(
    a: &SymmetricMatrix,
    profile: &ToleranceProfile,
) -> Result<(Spectrum, OrthonormalBasis), EigenError> {
    let n = a.n;
    let mut buf = a.entries.clone();
    let mut v = vec![0.0; n * n];
    jacobi_in_place(&mut buf, n, Some(&mut v), profile)?;

    // stable descending order; ties keep solver order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        buf[j * n + j]
            .partial_cmp(&buf[i * n + i])
            .expect("eigenvalues are finite")
    });

    let mut vals = Vec::with_capacity(n);
    let mut cols = vec![0.0; n * n];
    for (dst, &src) in order.iter().enumerate() {
        vals.push(buf[src * n + src]);
        for row in 0..n {
            // v is row-major with eigenvectors as columns
            cols[dst * n + row] = v[row * n + src];
        }
    }
    Ok((Spectrum { values: vals }, OrthonormalBasis { n, cols }))
}

/// Eigenvalues of the row-major symmetric matrix in `buf`, written in
/// descending order into `out`. `buf` is destroyed. Allocation-free so the
/// exhaustive scanners can reuse thread-local scratch.
pub(crate) fn eigenvalues_scratch(
    buf: &mut [f64],
    n: usize,
    out: &mut Vec<f64>,
    profile: &ToleranceProfile,
) -> Result<(), EigenError> {
    jacobi_in_place(buf, n, None, profile)?;
    out.clear();
    for i in 0..n {
        out.push(buf[i * n + i]);
    }
    sort_descending(out);
    Ok(())
}

fn sort_descending(vals: &mut [f64]) {
    vals.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
}

/// Cyclic Jacobi with the classic Numerical-Recipes rotation. Diagonalizes
/// `a` (row-major, order n) in place; if `v` is provided it accumulates the
/// rotations so its columns end up as eigenvectors.
fn jacobi_in_place(
    a: &mut [f64],
    n: usize,
    v: Option<&mut [f64]>,
    profile: &ToleranceProfile,
) -> Result<(), EigenError> {
    debug_assert_eq!(a.len(), n * n);
    let accumulate = v.is_some();
    let v = v.unwrap_or(&mut []);
    if accumulate {
        v.fill(0.0);
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
    }
    if n == 1 {
        return Ok(());
    }

    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = profile.jacobi_offdiag_factor * norm;

    for _sweep in 0..profile.jacobi_sweep_cap {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= threshold {
            return Ok(());
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let h = a[q * n + q] - a[p * n + p];
                let t = if apq.abs() * 100.0 + h.abs() == h.abs() {
                    // rotation angle is tiny; avoid overflow in theta^2
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let delta = t * apq;

                a[p * n + p] -= delta;
                a[q * n + q] += delta;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for j in 0..p {
                    let g = a[j * n + p];
                    let hh = a[j * n + q];
                    a[j * n + p] = g - s * (hh + g * tau);
                    a[j * n + q] = hh + s * (g - hh * tau);
                    a[p * n + j] = a[j * n + p];
                    a[q * n + j] = a[j * n + q];
                }
                for j in (p + 1)..q {
                    let g = a[p * n + j];
                    let hh = a[j * n + q];
                    a[p * n + j] = g - s * (hh + g * tau);
                    a[j * n + q] = hh + s * (g - hh * tau);
                    a[j * n + p] = a[p * n + j];
                    a[q * n + j] = a[j * n + q];
                }
                for j in (q + 1)..n {
                    let g = a[p * n + j];
                    let hh = a[q * n + j];
                    a[p * n + j] = g - s * (hh + g * tau);
                    a[q * n + j] = hh + s * (g - hh * tau);
                    a[j * n + p] = a[p * n + j];
                    a[j * n + q] = a[q * n + j];
                }
                if accumulate {
                    for j in 0..n {
                        let g = v[j * n + p];
                        let hh = v[j * n + q];
                        v[j * n + p] = g - s * (hh + g * tau);
                        v[j * n + q] = hh + s * (g - hh * tau);
                    }
                }
            }
        }
    }

    let mut off = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            off += 2.0 * a[p * n + q] * a[p * n + q];
        }
    }
    Err(EigenError::NonConvergence {
        cap: profile.jacobi_sweep_cap,
        off: off.sqrt(),
    })
}
