//! Rank-r orthogonal projections, the Ky Fan variational identity, and the
//! entrywise certificate chain behind the eigenvalue-sum lower bound.
//!
//! The certificate verifies, on a concrete pair (A, Q) with A entrywise in
//! [0, 1] off the diagonal and Q a rank-r projection, each step of
//!
//! ```text
//! tr(AQ) >= 2 sum_{i<j} min(q_ij, 0) >= -(mu_r / 2) n
//! ```
//!
//! with explicit slacks. Floating-point projections are never exactly
//! idempotent, so validity is tolerance-based and every report carries the
//! measured residuals rather than bare booleans.

use crate::eigen::{
    self, eigenpairs_with, EigenError, Spectrum, SymmetricMatrix, ToleranceProfile,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KyFanError {
    #[error("rank {r} out of range 1..={n}")]
    RankOutOfRange { r: usize, n: usize },
    #[error("order mismatch: matrix has order {a}, projection order {q}")]
    OrderMismatch { a: usize, q: usize },
    #[error("matrix violates the entrywise hypotheses at ({i},{j}): {value}")]
    EntryOutOfRange { i: usize, j: usize, value: f64 },
    #[error("projection fails validation: {0}")]
    InvalidProjection(String),
    #[error("degenerate random draw persisted after {attempts} attempts")]
    DegenerateDraw { attempts: usize },
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Rank-r orthogonal projection, stored dense and exactly symmetric.
#[derive(Debug, Clone)]
pub struct ProjectionMatrix {
    n: usize,
    rank: usize,
    entries: Vec<f64>,
}

impl ProjectionMatrix {
    /// Q = V V^T from r orthonormal columns of length n, passed column-major.
    pub(crate) fn from_orthonormal_columns(n: usize, rank: usize, cols: &[f64]) -> Self {
        debug_assert_eq!(cols.len(), n * rank);
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for c in 0..rank {
                    acc += cols[c * n + i] * cols[c * n + j];
                }
                entries[i * n + j] = acc;
                entries[j * n + i] = acc;
            }
        }
        Self { n, rank, entries }
    }

    pub(crate) fn from_entries_unchecked(n: usize, rank: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, rank, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn to_symmetric(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.n, |i, j| self.get(i, j))
    }
}

/// Measured residuals of the projection axioms, plus the pass verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionValidation {
    pub order: usize,
    pub rank: usize,
    pub idempotency_residual: f64,
    pub trace_deviation: f64,
    pub min_diagonal: f64,
    /// Largest distance from any eigenvalue to the nearer of {0, 1}.
    pub cluster_residual: f64,
    /// Number of eigenvalues within the cluster tolerance of 1.
    pub near_one_count: usize,
    pub passes: bool,
}

pub fn validate_projection(q: &ProjectionMatrix) -> ProjectionValidation {
    validate_projection_with(q, &ToleranceProfile::default())
}

pub fn validate_projection_with(
    q: &ProjectionMatrix,
    profile: &ToleranceProfile,
) -> ProjectionValidation {
    let n = q.n;
    let mut idem = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += q.get(i, k) * q.get(k, j);
            }
            idem = idem.max((acc - q.get(i, j)).abs());
        }
    }
    let trace_deviation = (q.trace() - q.rank as f64).abs();
    let min_diagonal = (0..n).map(|i| q.get(i, i)).fold(f64::INFINITY, f64::min);

    let (cluster_residual, near_one_count) =
        match eigen::eigenvalues_with(&q.to_symmetric(), profile) {
            Ok(s) => {
                let mut worst = 0.0f64;
                let mut ones = 0usize;
                for &v in s.values() {
                    let d0 = v.abs();
                    let d1 = (v - 1.0).abs();
                    worst = worst.max(d0.min(d1));
                    if d1 <= profile.eigenvalue_cluster {
                        ones += 1;
                    }
                }
                (worst, ones)
            }
            Err(_) => (f64::INFINITY, 0),
        };

    let passes = idem <= profile.projection_idempotency
        && trace_deviation <= profile.projection_trace
        && min_diagonal >= -profile.projection_diag_floor
        && cluster_residual <= profile.eigenvalue_cluster
        && near_one_count == q.rank;

    ProjectionValidation {
        order: n,
        rank: q.rank,
        idempotency_residual: idem,
        trace_deviation,
        min_diagonal,
        cluster_residual,
        near_one_count,
        passes,
    }
}

/// Projection onto the invariant subspace of the r smallest eigenvalues, so
/// tr(AQ) realizes the Ky Fan minimum.
pub fn bottom_projection(a: &SymmetricMatrix, r: usize) -> Result<ProjectionMatrix, KyFanError> {
    bottom_projection_with(a, r, &ToleranceProfile::default())
}

pub fn bottom_projection_with(
    a: &SymmetricMatrix,
    r: usize,
    profile: &ToleranceProfile,
) -> Result<ProjectionMatrix, KyFanError> {
    let n = a.order();
    if r < 1 || r > n {
        return Err(KyFanError::RankOutOfRange { r, n });
    }
    let (_, basis) = eigenpairs_with(a, profile)?;
    // spectrum is descending, so the bottom eigenvectors are the last r columns
    let mut cols = Vec::with_capacity(n * r);
    for j in (n - r)..n {
        cols.extend_from_slice(basis.column(j));
    }
    Ok(ProjectionMatrix::from_orthonormal_columns(n, r, &cols))
}

/// tr(AQ) expanded entrywise as sum a_ij q_ij.
pub fn trace_product(a: &SymmetricMatrix, q: &ProjectionMatrix) -> Result<f64, KyFanError> {
    let n = a.order();
    if n != q.order() {
        return Err(KyFanError::OrderMismatch { a: n, q: q.order() });
    }
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a.get(i, j) * q.get(i, j);
        }
    }
    Ok(acc)
}

/// One certified inequality: `ok` iff `slack >= -certificate_slack`.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityCheck {
    pub slack: f64,
    pub ok: bool,
}

impl InequalityCheck {
    fn of(slack: f64, tol: f64) -> Self {
        Self {
            slack,
            ok: slack >= -tol,
        }
    }
}

/// Entrywise certificate for one (A, Q) pair.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    /// tr(AQ)
    pub trace_product: f64,
    /// sum_{i<j} min(q_ij, 0)
    pub negative_mass_bound: f64,
    /// sum_{i<j} |q_ij|
    pub offdiag_abs_sum: f64,
    /// sum_{i<j} q_ij
    pub offdiag_sum: f64,
    /// (i) sum_{i<j}|q_ij| = (sum_ij |q_ij| - tr Q) / 2, an identity once
    /// the diagonal is nonnegative; slack is minus the absolute defect.
    pub abs_split_identity: InequalityCheck,
    /// (ii) sum_{i<j} q_ij >= -r/2, from 1^T Q 1 >= 0.
    pub offdiag_sum_bound: InequalityCheck,
    /// (ii') the literal form 1^T Q 1 >= 0.
    pub quadratic_form_nonneg: InequalityCheck,
    /// (iii) tr(AQ) >= 2 sum_{i<j} min(q_ij, 0).
    pub trace_lower_bound: InequalityCheck,
}

impl ChainReport {
    pub fn all_ok(&self) -> bool {
        self.abs_split_identity.ok
            && self.offdiag_sum_bound.ok
            && self.quadratic_form_nonneg.ok
            && self.trace_lower_bound.ok
    }
}

/// Verifies the proof steps on a concrete pair. `a` must satisfy the
/// entrywise hypotheses (off-diagonal in [0,1], diagonal nonnegative) and
/// `q` must validate as a projection.
pub fn entrywise_certificate(
    a: &SymmetricMatrix,
    q: &ProjectionMatrix,
) -> Result<ChainReport, KyFanError> {
    entrywise_certificate_with(a, q, &ToleranceProfile::default())
}

pub fn entrywise_certificate_with(
    a: &SymmetricMatrix,
    q: &ProjectionMatrix,
    profile: &ToleranceProfile,
) -> Result<ChainReport, KyFanError> {
    let n = a.order();
    if n != q.order() {
        return Err(KyFanError::OrderMismatch { a: n, q: q.order() });
    }
    for i in 0..n {
        let d = a.get(i, i);
        if d < 0.0 {
            return Err(KyFanError::EntryOutOfRange { i, j: i, value: d });
        }
        for j in (i + 1)..n {
            let v = a.get(i, j);
            if !(0.0..=1.0).contains(&v) {
                return Err(KyFanError::EntryOutOfRange { i, j, value: v });
            }
        }
    }
    let validation = validate_projection_with(q, profile);
    if !validation.passes {
        return Err(KyFanError::InvalidProjection(format!(
            "idempotency {:.3e}, trace deviation {:.3e}, min diagonal {:.3e}, cluster {:.3e}",
            validation.idempotency_residual,
            validation.trace_deviation,
            validation.min_diagonal,
            validation.cluster_residual,
        )));
    }

    let r = q.rank as f64;
    let tol = profile.certificate_slack;

    let mut offdiag_abs_sum = 0.0;
    let mut offdiag_sum = 0.0;
    let mut negative_mass = 0.0;
    let mut full_abs_sum = 0.0;
    let mut ones_quadratic = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = q.get(i, j);
            full_abs_sum += v.abs();
            ones_quadratic += v;
            if i < j {
                offdiag_abs_sum += v.abs();
                offdiag_sum += v;
                negative_mass += v.min(0.0);
            }
        }
    }
    let trace_product = trace_product(a, q)?;

    let identity_defect = (offdiag_abs_sum - (full_abs_sum - q.trace()) / 2.0).abs();
    let abs_split_identity = InequalityCheck::of(-identity_defect, tol);
    let offdiag_sum_bound = InequalityCheck::of(offdiag_sum + r / 2.0, tol);
    let quadratic_form_nonneg = InequalityCheck::of(ones_quadratic, tol);
    let trace_lower_bound = InequalityCheck::of(trace_product - 2.0 * negative_mass, tol);

    Ok(ChainReport {
        trace_product,
        negative_mass_bound: negative_mass,
        offdiag_abs_sum,
        offdiag_sum,
        abs_split_identity,
        offdiag_sum_bound,
        quadratic_form_nonneg,
        trace_lower_bound,
    })
}

/// Seeded random rank-r projection: r standard-normal vectors orthonormalized
/// by modified Gram-Schmidt. Deterministic per seed.
pub fn random_projection(n: usize, r: usize, seed: u64) -> Result<ProjectionMatrix, KyFanError> {
    if r < 1 || r > n {
        return Err(KyFanError::RankOutOfRange { r, n });
    }
    const MAX_ATTEMPTS: usize = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols = vec![0.0f64; n * r];
    let mut attempts = 0usize;
    let mut c = 0usize;
    while c < r {
        let (head, current) = cols.split_at_mut(c * n);
        let current = &mut current[..n];
        for x in current.iter_mut() {
            *x = StandardNormal.sample(&mut rng);
        }
        for prev in head.chunks_exact(n) {
            let dot: f64 = prev.iter().zip(current.iter()).map(|(a, b)| a * b).sum();
            for (x, p) in current.iter_mut().zip(prev) {
                *x -= dot * p;
            }
        }
        let norm: f64 = current.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            attempts += 1;
            if attempts >= MAX_ATTEMPTS {
                return Err(KyFanError::DegenerateDraw { attempts });
            }
            continue; // redraw this vector
        }
        for x in current.iter_mut() {
            *x /= norm;
        }
        c += 1;
    }
    Ok(ProjectionMatrix::from_orthonormal_columns(n, r, &cols))
}

/// Convenience: spectrum of the matrix a projection was built from, reused by
/// callers that already paid for the eigensolve.
pub fn bottom_sum_of(a: &SymmetricMatrix, r: usize) -> Result<(Spectrum, f64), KyFanError> {
    let s = eigen::eigenvalues(a)?;
    let sum = eigen::kyfan_bottom_sum(&s, r)?;
    Ok((s, sum))
}
