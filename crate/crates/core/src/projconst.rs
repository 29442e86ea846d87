//! Quasimaximal projection constants mu(r, N), their witnesses, and the
//! closed-form bounds that cap them.
//!
//! mu(r, N) is the maximum of (1/N) sum_ij |q_ij| over rank-r orthogonal
//! projections Q of order N. The solvers work through a sign-pattern
//! reformulation:
//!
//! 1. For fixed Q with nonnegative diagonal, sum_ij |q_ij| equals the maximum
//!    of tr(SQ) over symmetric +-1 matrices S with unit diagonal (choose
//!    s_ij = sign(q_ij); the diagonal signs are forced).
//! 2. For fixed S, the maximum of tr(SQ) over rank-r projections is the sum
//!    of the r largest eigenvalues of S, by the Ky Fan maximum principle.
//!
//! Hence N mu(r, N) = max over sign patterns S of the top-r eigenvalue sum,
//! which `mu_exhaustive` enumerates exactly, and the pair of partial
//! maximizations is exactly block-coordinate ascent on the bilinear form
//! tr(SQ), which `mu_alternating` runs from random starts.

use crate::eigen::{self, eigenpairs_with, EigenError, SymmetricMatrix, ToleranceProfile};
use crate::kyfan::{random_projection, validate_projection_with, KyFanError, ProjectionMatrix};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

/// Enumeration cap for `mu_exhaustive`: at most this many off-diagonal sign
/// bits, i.e. N(N-1)/2 <= 22 (about 4.2M patterns).
pub const ENUMERATION_CAP_BITS: usize = 22;

#[derive(Debug, Error)]
pub enum ProjConstError {
    #[error("rank {r} out of range 1..={n}")]
    RankOutOfRange { r: usize, n: usize },
    #[error("order {n} needs {bits} sign bits, above the enumeration cap {cap}")]
    CapExceeded { n: usize, bits: usize, cap: usize },
    #[error("frame columns are not orthonormal: residual {residual:e}")]
    InvalidFrame { residual: f64 },
    #[error(transparent)]
    KyFan(#[from] KyFanError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Symmetric sign matrix with unit diagonal, the dual object of the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    n: usize,
    signs: Vec<i8>, // row-major, +-1, diagonal +1
}

impl SignPattern {
    pub fn all_plus(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            n,
            signs: vec![1; n * n],
        }
    }

    /// 2I - J: every off-diagonal entry -1.
    pub fn all_minus_offdiag(n: usize) -> Self {
        let mut p = Self::all_plus(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    p.signs[i * n + j] = -1;
                }
            }
        }
        p
    }

    /// Pattern from a bit mask; pair k (row-major upper triangle) reads bit
    /// (bits - 1 - k), so ascending masks enumerate bit strings in
    /// lexicographic order. Bit 1 means +1, bit 0 means -1.
    fn from_mask(n: usize, mask: u64) -> Self {
        let bits = n * (n - 1) / 2;
        let mut p = Self::all_plus(n);
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if (mask >> (bits - 1 - k)) & 1 == 0 {
                    p.signs[i * n + j] = -1;
                    p.signs[j * n + i] = -1;
                }
                k += 1;
            }
        }
        p
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.signs[i * self.n + j]
    }

    /// Row-major upper-triangle bit string; '1' is +1, '0' is -1.
    pub fn offdiag_bits(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                s.push(if self.get(i, j) > 0 { '1' } else { '0' });
            }
        }
        s
    }

    pub fn to_symmetric(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.n, |i, j| f64::from(self.get(i, j)))
    }
}

/// N frame vectors as the rows of an N x r matrix with orthonormal columns,
/// so the Gram matrix U U^T is a rank-r projection.
#[derive(Debug, Clone)]
pub struct FrameMatrix {
    n_vectors: usize,
    dim: usize,
    rows: Vec<f64>, // row-major N x r
}

impl FrameMatrix {
    pub fn new(n_vectors: usize, dim: usize, rows: Vec<f64>) -> Self {
        assert_eq!(rows.len(), n_vectors * dim);
        Self {
            n_vectors,
            dim,
            rows,
        }
    }

    pub fn n_vectors(&self) -> usize {
        self.n_vectors
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.dim..(i + 1) * self.dim]
    }

    /// Max-entry residual of U^T U against the identity.
    pub fn tightness_residual(&self) -> f64 {
        let r = self.dim;
        let mut worst = 0.0f64;
        for a in 0..r {
            for b in 0..r {
                let mut acc = 0.0;
                for i in 0..self.n_vectors {
                    acc += self.row(i)[a] * self.row(i)[b];
                }
                let expect = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((acc - expect).abs());
            }
        }
        worst
    }
}

/// Gram matrix U U^T of a validated tight frame.
pub fn gram(u: &FrameMatrix) -> Result<ProjectionMatrix, ProjConstError> {
    gram_with(u, &ToleranceProfile::default())
}

pub fn gram_with(
    u: &FrameMatrix,
    profile: &ToleranceProfile,
) -> Result<ProjectionMatrix, ProjConstError> {
    let residual = u.tightness_residual();
    if residual > profile.orthonormality {
        return Err(ProjConstError::InvalidFrame { residual });
    }
    let n = u.n_vectors;
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let dot: f64 = u.row(i).iter().zip(u.row(j)).map(|(a, b)| a * b).sum();
            entries[i * n + j] = dot;
            entries[j * n + i] = dot;
        }
    }
    Ok(ProjectionMatrix::from_entries_unchecked(n, u.dim, entries))
}

/// Three vectors in the plane at mutual angle 120 degrees, scaled so the
/// columns are orthonormal (row norms squared 2/3).
pub fn etf_simplex2() -> FrameMatrix {
    let s = (2.0f64 / 3.0).sqrt();
    let half = 0.5 * s;
    let high = 0.75f64.sqrt() * s; // sqrt(3)/2 * s
    FrameMatrix::new(3, 2, vec![s, 0.0, -half, high, -half, -high])
}

/// Six vectors in dimension 3, one per antipodal vertex pair of the regular
/// icosahedron: the cyclic shifts of (0, +-1, phi) with phi the golden ratio,
/// each normalized, then column-orthonormalized. Fixed row order below.
pub fn etf_icosa3() -> FrameMatrix {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let raw: [[f64; 3]; 6] = [
        [0.0, 1.0, phi],
        [0.0, -1.0, phi],
        [1.0, phi, 0.0],
        [-1.0, phi, 0.0],
        [phi, 0.0, 1.0],
        [phi, 0.0, -1.0],
    ];
    let norm = (1.0 + phi * phi).sqrt();
    let mut rows = Vec::with_capacity(18);
    for v in raw {
        for x in v {
            rows.push(x / norm);
        }
    }
    let u0 = FrameMatrix::new(6, 3, rows);
    column_orthonormalize(&u0)
}

/// U (U^T U)^{-1/2}, computed through the eigensolver. For a frame whose
/// frame operator is already a multiple of the identity this is a uniform
/// rescale, but the general form keeps the construction self-correcting.
fn column_orthonormalize(u: &FrameMatrix) -> FrameMatrix {
    let r = u.dim;
    let n = u.n_vectors;
    let s = SymmetricMatrix::from_fn(r, |a, b| (0..n).map(|i| u.row(i)[a] * u.row(i)[b]).sum());
    let (vals, basis) = eigen::eigenpairs(&s).expect("gram operator of a frame");
    // inv_sqrt = P diag(1/sqrt(vals)) P^T
    let mut inv_sqrt = vec![0.0; r * r];
    for a in 0..r {
        for b in 0..r {
            let mut acc = 0.0;
            for k in 0..r {
                acc += basis.column(k)[a] * basis.column(k)[b] / vals.values()[k].sqrt();
            }
            inv_sqrt[a * r + b] = acc;
        }
    }
    let mut rows = vec![0.0; n * r];
    for i in 0..n {
        for b in 0..r {
            let mut acc = 0.0;
            for a in 0..r {
                acc += u.row(i)[a] * inv_sqrt[a * r + b];
            }
            rows[i * r + b] = acc;
        }
    }
    FrameMatrix::new(n, r, rows)
}

/// The normalized absolute entry sum (1/N) sum_ij |q_ij| of a validated
/// projection; the quantity all of this module maximizes.
pub fn objective(q: &ProjectionMatrix) -> Result<f64, ProjConstError> {
    objective_with(q, &ToleranceProfile::default())
}

pub fn objective_with(
    q: &ProjectionMatrix,
    profile: &ToleranceProfile,
) -> Result<f64, ProjConstError> {
    let v = validate_projection_with(q, profile);
    if !v.passes {
        return Err(ProjConstError::KyFan(KyFanError::InvalidProjection(format!(
            "idempotency {:.3e}, trace deviation {:.3e}",
            v.idempotency_residual, v.trace_deviation
        ))));
    }
    Ok(abs_sum(q) / q.order() as f64)
}

fn abs_sum(q: &ProjectionMatrix) -> f64 {
    q.entries().iter().map(|v| v.abs()).sum()
}

/// Entrywise signs of a validated projection; zeros map to +1 and the
/// diagonal is forced +1, so trajectories are deterministic.
pub fn signpattern(q: &ProjectionMatrix) -> Result<SignPattern, ProjConstError> {
    let v = validate_projection_with(q, &ToleranceProfile::default());
    if !v.passes {
        return Err(ProjConstError::KyFan(KyFanError::InvalidProjection(
            "sign pattern of an invalid projection".into(),
        )));
    }
    Ok(signpattern_unchecked(q))
}

fn signpattern_unchecked(q: &ProjectionMatrix) -> SignPattern {
    let n = q.order();
    let mut p = SignPattern::all_plus(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && q.get(i, j) < 0.0 {
                p.signs[i * n + j] = -1;
            }
        }
    }
    p
}

/// Maximizes tr(SQ) over rank-r projections: Q spans the top-r eigenvectors
/// of S and the value is the top-r eigenvalue sum.
pub fn best_projection_for_sign(
    s: &SignPattern,
    r: usize,
) -> Result<(ProjectionMatrix, f64), ProjConstError> {
    let n = s.order();
    if r < 1 || r > n {
        return Err(ProjConstError::RankOutOfRange { r, n });
    }
    let profile = ToleranceProfile::default();
    let (vals, basis) = eigenpairs_with(&s.to_symmetric(), &profile)?;
    let mut cols = Vec::with_capacity(n * r);
    for j in 0..r {
        cols.extend_from_slice(basis.column(j));
    }
    let value = eigen::kyfan_top_sum(&vals, r)?;
    Ok((
        ProjectionMatrix::from_orthonormal_columns(n, r, &cols),
        value,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuMethod {
    Exhaustive,
    Alternating,
}

impl MuMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            MuMethod::Exhaustive => "exhaustive",
            MuMethod::Alternating => "alternating",
        }
    }
}

/// Certified value or interval for mu(r, N) with its witness projection.
#[derive(Debug, Clone)]
pub struct MuEstimate {
    pub r: usize,
    pub n: usize,
    /// Certified by the witness projection: objective(witness) = lower.
    pub lower: f64,
    /// Best closed-form cap; equals `lower` in exact mode.
    pub upper: Option<f64>,
    pub exact: bool,
    pub method: MuMethod,
    pub witness: ProjectionMatrix,
    pub sign_pattern: SignPattern,
}

impl Serialize for MuEstimate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MuEstimate", 8)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("lower", &self.lower)?;
        st.serialize_field("upper", &self.upper)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("method", self.method.as_str())?;
        st.serialize_field("witness", self.witness.entries())?;
        st.serialize_field("sign_pattern", &self.sign_pattern.offdiag_bits())?;
        st.end()
    }
}

/// Exact mu(r, N) by enumerating all 2^{N(N-1)/2} sign patterns. Two passes:
/// the first finds the maximum top-r eigenvalue sum, the second picks the
/// lexicographically smallest pattern within the tie window. Both reductions
/// are associative, so the result is independent of worker scheduling.
pub fn mu_exhaustive(r: usize, n: usize) -> Result<MuEstimate, ProjConstError> {
    mu_exhaustive_with(r, n, &ToleranceProfile::default())
}

pub fn mu_exhaustive_with(
    r: usize,
    n: usize,
    profile: &ToleranceProfile,
) -> Result<MuEstimate, ProjConstError> {
    if r < 1 || r > n {
        return Err(ProjConstError::RankOutOfRange { r, n });
    }
    let bits = n * (n - 1) / 2;
    if bits > ENUMERATION_CAP_BITS {
        return Err(ProjConstError::CapExceeded {
            n,
            bits,
            cap: ENUMERATION_CAP_BITS,
        });
    }
    let total: u64 = 1u64 << bits;

    let top_sum = |mask: u64, buf: &mut Vec<f64>, evals: &mut Vec<f64>| -> f64 {
        fill_sign_matrix(buf, n, mask, bits);
        eigen::eigenvalues_scratch(buf, n, evals, profile).expect("sign matrix eigensolve");
        evals[..r].iter().sum()
    };

    let best = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0.0f64; n * n], Vec::with_capacity(n)),
            |(buf, evals), mask| top_sum(mask, buf, evals),
        )
        .reduce(|| f64::NEG_INFINITY, f64::max);

    let argmax = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0.0f64; n * n], Vec::with_capacity(n)),
            |(buf, evals), mask| {
                if top_sum(mask, buf, evals) >= best - profile.tie_window {
                    mask
                } else {
                    u64::MAX
                }
            },
        )
        .reduce(|| u64::MAX, u64::min);
    debug_assert_ne!(argmax, u64::MAX);

    let pattern = SignPattern::from_mask(n, argmax);
    let (witness, _) = best_projection_for_sign(&pattern, r)?;
    let lower = best / n as f64;
    Ok(MuEstimate {
        r,
        n,
        lower,
        upper: Some(lower),
        exact: true,
        method: MuMethod::Exhaustive,
        witness,
        sign_pattern: pattern,
    })
}

fn fill_sign_matrix(buf: &mut [f64], n: usize, mask: u64, bits: usize) {
    let mut k = 0;
    for i in 0..n {
        buf[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let v = if (mask >> (bits - 1 - k)) & 1 == 1 {
                1.0
            } else {
                -1.0
            };
            buf[i * n + j] = v;
            buf[j * n + i] = v;
            k += 1;
        }
    }
}

/// Heuristic lower bound on mu(r, N) by block-coordinate ascent on tr(SQ):
/// alternate S <- signpattern(Q) and Q <- top-r eigenprojection of S until
/// the objective stalls or a pattern repeats. Starts run independently with
/// per-start seeds; the reported upper bound is the best closed-form cap.
pub fn mu_alternating(
    r: usize,
    n: usize,
    starts: usize,
    seed: u64,
) -> Result<MuEstimate, ProjConstError> {
    mu_alternating_with(r, n, starts, seed, &ToleranceProfile::default())
}

pub fn mu_alternating_with(
    r: usize,
    n: usize,
    starts: usize,
    seed: u64,
    profile: &ToleranceProfile,
) -> Result<MuEstimate, ProjConstError> {
    if r < 1 || r > n {
        return Err(ProjConstError::RankOutOfRange { r, n });
    }
    assert!(starts >= 1, "at least one start is required");

    let runs: Result<Vec<(f64, String, ProjectionMatrix)>, ProjConstError> = (0..starts)
        .into_par_iter()
        .map(|i| {
            let q0 = random_projection(n, r, seed.wrapping_add(i as u64))?;
            let (q, obj) = ascend(q0, r, profile)?;
            Ok((obj, signpattern_unchecked(&q).offdiag_bits(), q))
        })
        .collect();
    let mut runs = runs?;

    // max objective, ties to the lexicographically smallest sign pattern;
    // deterministic regardless of scheduling
    runs.sort_by(|a, b| {
        b.0
            .partial_cmp(&a.0)
            .expect("objectives are finite")
            .then_with(|| a.1.cmp(&b.1))
    });
    let (lower, _, witness) = runs.into_iter().next().expect("starts >= 1");
    let pattern = signpattern_unchecked(&witness);
    let upper = ledger_upper_bound(r, n);
    // when the witness attains a tight cap, accumulation noise can push the
    // certified objective a few ulps past it; keep the interval ordered
    let lower = lower.min(upper);

    Ok(MuEstimate {
        r,
        n,
        lower,
        upper: Some(upper),
        exact: false,
        method: MuMethod::Alternating,
        witness,
        sign_pattern: pattern,
    })
}

fn ascend(
    mut q: ProjectionMatrix,
    r: usize,
    profile: &ToleranceProfile,
) -> Result<(ProjectionMatrix, f64), ProjConstError> {
    let n = q.order();
    let mut obj = abs_sum(&q) / n as f64;
    let mut seen = std::collections::HashSet::new();
    loop {
        let pattern = signpattern_unchecked(&q);
        if !seen.insert(pattern.offdiag_bits()) {
            break; // fixed point of the ascent map
        }
        let (next, _) = best_projection_for_sign(&pattern, r)?;
        let next_obj = abs_sum(&next) / n as f64;
        if next_obj > obj {
            q = next;
        }
        if next_obj - obj < profile.ascent_improvement {
            obj = obj.max(next_obj);
            break;
        }
        obj = next_obj;
    }
    Ok((q, obj))
}

/// Best closed-form cap available for mu(r, N): the trivial bound r, the
/// Kadec-Snobar bound sqrt(r), and delta(r, N') over N' from N up to the
/// maximal-ETF order r(r+1)/2.
pub fn ledger_upper_bound(r: usize, n: usize) -> f64 {
    let mut upper = (r as f64).min((r as f64).sqrt());
    for m in n..=(r * (r + 1) / 2).max(n) {
        upper = upper.min(delta(r, m));
    }
    upper
}

/// delta(r, N) = (r/N) (1 + sqrt((N-1)(N-r)/r)), the closed-form cap on
/// projection constants, tight at the real maximal ETF orders.
pub fn delta(r: usize, n: usize) -> f64 {
    assert!(r >= 1 && r <= n, "need 1 <= r <= N");
    let (rf, nf) = (r as f64, n as f64);
    rf / nf * (1.0 + ((nf - 1.0) * (nf - rf) / rf).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownLambdaSource {
    /// Value known exactly.
    Exact,
    /// delta(r, r(r+1)/2) upper bound.
    DeltaBound,
    /// Kadec-Snobar sqrt(r) upper bound.
    KadecSnobar,
}

/// Known value of (or upper bound on) the rank-r maximal absolute projection
/// constant.
#[derive(Debug, Clone, Copy)]
pub struct KnownLambda {
    pub value: f64,
    pub exact: bool,
    pub source: KnownLambdaSource,
}

pub fn known_lambda(r: usize) -> KnownLambda {
    assert!(r >= 1, "rank must be positive");
    match r {
        1 => KnownLambda {
            value: 1.0,
            exact: true,
            source: KnownLambdaSource::Exact,
        },
        2 => KnownLambda {
            value: 4.0 / 3.0,
            exact: true,
            source: KnownLambdaSource::Exact,
        },
        3 => KnownLambda {
            value: (1.0 + 5.0f64.sqrt()) / 2.0,
            exact: true,
            source: KnownLambdaSource::Exact,
        },
        4 => KnownLambda {
            value: (2.0 + 3.0 * 6.0f64.sqrt()) / 5.0,
            exact: false,
            source: KnownLambdaSource::DeltaBound,
        },
        _ => {
            let ks = (r as f64).sqrt();
            let dl = delta(r, r * (r + 1) / 2);
            if dl <= ks {
                KnownLambda {
                    value: dl,
                    exact: false,
                    source: KnownLambdaSource::DeltaBound,
                }
            } else {
                KnownLambda {
                    value: ks,
                    exact: false,
                    source: KnownLambdaSource::KadecSnobar,
                }
            }
        }
    }
}
