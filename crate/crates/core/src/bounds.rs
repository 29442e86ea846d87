//! Evaluation of the eigenvalue bounds against concrete graphs, plus a
//! brute-force M_k(n) oracle for tiny n.
//!
//! The central bound is lambda_k(G) <= c * n - 1 with the coefficient c
//! drawn from one of three sources: the known projection-constant table,
//! the generic 1/(2 sqrt(k-1)) coefficient, or the closed-form
//! ((k-2) sqrt(k+1) + 2) / (2k(k-1)). A reported violation is a first-class
//! signal (solver or constant-table bug), never clamped away.

use crate::eigen::{self, EigenError, ToleranceProfile};
use crate::graph::{to_graph6, Graph};
use crate::projconst::{delta, known_lambda};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest order accepted by [`brute_force_m`]: 2^21 graphs at n = 7.
pub const BRUTE_FORCE_CAP: usize = 7;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("need 2 <= k <= n, got k={k}, n={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("brute force order {n} above the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Which coefficient multiplies n in the bound c * n - 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstantSource {
    /// known_lambda(k-1) / (2(k-1))
    KnownLambda,
    /// 1 / (2 sqrt(k-1))
    Nikiforov,
    /// ((k-2) sqrt(k+1) + 2) / (2k(k-1))
    Sivashankar,
    /// caller-supplied value for lambda(k-1)
    Custom(f64),
}

impl ConstantSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstantSource::KnownLambda => "known_lambda",
            ConstantSource::Nikiforov => "nikiforov",
            ConstantSource::Sivashankar => "sivashankar",
            ConstantSource::Custom(_) => "custom",
        }
    }
}

impl Serialize for ConstantSource {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Certified comparison of lambda_k(G) against a bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub k: usize,
    pub n: usize,
    pub lambda_k: f64,
    pub bound_value: f64,
    /// bound_value - lambda_k; negative beyond tolerance means violation.
    pub slack: f64,
    pub equality: bool,
    pub constant_source: ConstantSource,
}

impl BoundReport {
    /// True when the bound failed beyond the tolerance; surfaced as a
    /// nonzero exit in the CLI.
    pub fn violated(&self, tol: f64) -> bool {
        self.slack < -tol
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BoundReport", 7)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("lambda_k", &self.lambda_k)?;
        st.serialize_field("bound_value", &self.bound_value)?;
        st.serialize_field("slack", &self.slack)?;
        st.serialize_field("equality", &self.equality)?;
        st.serialize_field("constant_source", &self.constant_source)?;
        st.end()
    }
}

/// Result of an exhaustive M_k(n) scan.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub max_lambda_k: f64,
    /// graph6 encoding of the maximizer (lexicographically smallest
    /// adjacency bit string among ties).
    pub witness: String,
    pub graphs_scanned: u64,
}

/// The bound value c * n - 1 for the requested coefficient source.
pub fn eigenvalue_bound(k: usize, n: usize, source: ConstantSource) -> Result<f64, BoundsError> {
    if k < 2 || n < k {
        return Err(BoundsError::KOutOfRange { k, n });
    }
    let r = (k - 1) as f64;
    let coefficient = match source {
        ConstantSource::KnownLambda => known_lambda(k - 1).value / (2.0 * r),
        ConstantSource::Nikiforov => 1.0 / (2.0 * r.sqrt()),
        ConstantSource::Sivashankar => sivashankar_coefficient(k),
        ConstantSource::Custom(lambda) => lambda / (2.0 * r),
    };
    Ok(coefficient * n as f64 - 1.0)
}

fn sivashankar_coefficient(k: usize) -> f64 {
    let kf = k as f64;
    ((kf - 2.0) * (kf + 1.0).sqrt() + 2.0) / (2.0 * kf * (kf - 1.0))
}

pub fn check_graph(g: &Graph, k: usize, source: ConstantSource) -> Result<BoundReport, BoundsError> {
    check_graph_with(g, k, source, &ToleranceProfile::default())
}

pub fn check_graph_with(
    g: &Graph,
    k: usize,
    source: ConstantSource,
    profile: &ToleranceProfile,
) -> Result<BoundReport, BoundsError> {
    let n = g.order();
    if k < 2 || n < k {
        return Err(BoundsError::KOutOfRange { k, n });
    }
    let spectrum = eigen::eigenvalues_with(&g.adjacency_matrix(), profile)?;
    let lambda_k = spectrum.nth_largest(k);
    let bound_value = eigenvalue_bound(k, n, source)?;
    let slack = bound_value - lambda_k;
    Ok(BoundReport {
        k,
        n,
        lambda_k,
        bound_value,
        slack,
        equality: slack.abs() <= profile.equality,
        constant_source: source,
    })
}

/// The two expressions for the coefficient at a given k that must agree:
/// delta(k-1, (k-1)k/2) / (2(k-1)) and ((k-2) sqrt(k+1) + 2) / (2k(k-1)).
pub fn consistency_sivashankar(k: usize) -> (f64, f64) {
    assert!(k >= 3, "the comparison needs k >= 3");
    let r = k - 1;
    let via_delta = delta(r, r * k / 2) / (2.0 * r as f64);
    (via_delta, sivashankar_coefficient(k))
}

/// Exact M_k(n) over all 2^{n(n-1)/2} labeled graphs (labeled enumeration is
/// correct because lambda_k is isomorphism-invariant). Two passes: max value,
/// then the lexicographically smallest adjacency bit string within the tie
/// window. `edge_filter` restricts the scan to graphs with at most that many
/// edges.
pub fn brute_force_m(
    n: usize,
    k: usize,
    edge_filter: Option<usize>,
) -> Result<SearchResult, BoundsError> {
    brute_force_m_with(n, k, edge_filter, &ToleranceProfile::default())
}

pub fn brute_force_m_with(
    n: usize,
    k: usize,
    edge_filter: Option<usize>,
    profile: &ToleranceProfile,
) -> Result<SearchResult, BoundsError> {
    if n > BRUTE_FORCE_CAP {
        return Err(BoundsError::CapExceeded {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if k < 2 || n < k {
        return Err(BoundsError::KOutOfRange { k, n });
    }
    let bits = n * (n - 1) / 2;
    let total: u64 = 1u64 << bits;
    let max_edges = edge_filter.unwrap_or(bits);

    let lambda_k = |mask: u64, buf: &mut Vec<f64>, evals: &mut Vec<f64>| -> f64 {
        fill_adjacency(buf, n, mask, bits);
        eigen::eigenvalues_scratch(buf, n, evals, profile).expect("adjacency eigensolve");
        evals[k - 1]
    };

    let scanned = std::sync::atomic::AtomicU64::new(0);
    let best = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0.0f64; n * n], Vec::with_capacity(n)),
            |(buf, evals), mask| {
                if (mask.count_ones() as usize) > max_edges {
                    return f64::NEG_INFINITY;
                }
                scanned.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                lambda_k(mask, buf, evals)
            },
        )
        .reduce(|| f64::NEG_INFINITY, f64::max);

    let argmax = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0.0f64; n * n], Vec::with_capacity(n)),
            |(buf, evals), mask| {
                if (mask.count_ones() as usize) <= max_edges
                    && lambda_k(mask, buf, evals) >= best - profile.tie_window
                {
                    mask
                } else {
                    u64::MAX
                }
            },
        )
        .reduce(|| u64::MAX, u64::min);
    debug_assert_ne!(argmax, u64::MAX);

    let witness_graph = graph_from_mask(n, argmax);
    Ok(SearchResult {
        n,
        k,
        max_lambda_k: best,
        witness: to_graph6(&witness_graph).expect("witness order is <= 7"),
        graphs_scanned: scanned.into_inner(),
    })
}

/// Adjacency bits use the graph6 pair order ((0,1), (0,2), (1,2), (0,3), ...)
/// with pair j at bit (bits - 1 - j), so ascending masks enumerate adjacency
/// bit strings lexicographically and the witness tie-break is a plain min.
fn fill_adjacency(buf: &mut [f64], n: usize, mask: u64, bits: usize) {
    buf.fill(0.0);
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if (mask >> (bits - 1 - bit)) & 1 == 1 {
                buf[i * n + j] = 1.0;
                buf[j * n + i] = 1.0;
            }
            bit += 1;
        }
    }
}

pub(crate) fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let bits = n * (n - 1) / 2;
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if (mask >> (bits - 1 - bit)) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edge_list(n, &edges).expect("mask describes a simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{icosahedron, paley9, parse_graph6, union_cliques};
    use approx::assert_abs_diff_eq;

    #[test]
    fn bound_values() {
        let b = eigenvalue_bound(3, 12, ConstantSource::KnownLambda).unwrap();
        assert_abs_diff_eq!(b, 3.0, epsilon = 1e-12);
        let b = eigenvalue_bound(4, 12, ConstantSource::KnownLambda).unwrap();
        assert_abs_diff_eq!(b, 5f64.sqrt(), epsilon = 1e-12);
        let b = eigenvalue_bound(5, 40, ConstantSource::KnownLambda).unwrap();
        assert_abs_diff_eq!(b, 1.0 + 3.0 * 6f64.sqrt(), epsilon = 1e-12);

        assert!(eigenvalue_bound(3, 2, ConstantSource::KnownLambda).is_err());
        assert!(eigenvalue_bound(1, 5, ConstantSource::KnownLambda).is_err());
    }

    #[test]
    fn check_graph_sharp_families() {
        let rep = check_graph(&union_cliques(3, 4), 3, ConstantSource::KnownLambda).unwrap();
        assert!(rep.equality);
        assert_abs_diff_eq!(rep.lambda_k, 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(rep.bound_value, 3.0, epsilon = 1e-9);
        assert!(!rep.violated(1e-7));

        let rep = check_graph(&icosahedron(), 4, ConstantSource::KnownLambda).unwrap();
        assert!(rep.equality);
        assert_abs_diff_eq!(rep.lambda_k, 5f64.sqrt(), epsilon = 1e-9);

        let rep = check_graph(&paley9().closed_blowup(2), 5, ConstantSource::KnownLambda).unwrap();
        assert!(!rep.equality);
        assert!(rep.slack > 0.0);
        assert_abs_diff_eq!(rep.lambda_k, 3.0, epsilon = 1e-9);
        let expect_bound = (2.0 + 3.0 * 6f64.sqrt()) / 40.0 * 18.0 - 1.0;
        assert_abs_diff_eq!(rep.bound_value, expect_bound, epsilon = 1e-12);
    }

    #[test]
    fn blowup_equality_scaling() {
        for t in 1..=3 {
            let rep = check_graph(
                &icosahedron().closed_blowup(t),
                4,
                ConstantSource::KnownLambda,
            )
            .unwrap();
            assert!(rep.equality, "t={t}: slack {}", rep.slack);
        }
    }

    #[test]
    fn source_ordering() {
        // known constants dominate the closed form which dominates generic
        for k in [3usize, 4, 5] {
            for n in [k, 10, 25, 60] {
                let kl = eigenvalue_bound(k, n, ConstantSource::KnownLambda).unwrap();
                let sv = eigenvalue_bound(k, n, ConstantSource::Sivashankar).unwrap();
                let nk = eigenvalue_bound(k, n, ConstantSource::Nikiforov).unwrap();
                assert!(kl <= sv + 1e-9, "k={k} n={n}");
                assert!(sv <= nk + 1e-9, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn custom_source() {
        let c = eigenvalue_bound(3, 12, ConstantSource::Custom(4.0 / 3.0)).unwrap();
        let kl = eigenvalue_bound(3, 12, ConstantSource::KnownLambda).unwrap();
        assert_abs_diff_eq!(c, kl, epsilon = 1e-15);
        assert_eq!(ConstantSource::Custom(2.0).as_str(), "custom");
    }

    #[test]
    fn sivashankar_consistency() {
        for k in 3..=10 {
            let (a, b) = consistency_sivashankar(k);
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
        let (a, _) = consistency_sivashankar(4);
        assert_abs_diff_eq!(a, (1.0 + 5f64.sqrt()) / 12.0, epsilon = 1e-12);
        let (a, _) = consistency_sivashankar(5);
        assert_abs_diff_eq!(a, (2.0 + 3.0 * 6f64.sqrt()) / 40.0, epsilon = 1e-12);
        let (a, _) = consistency_sivashankar(3);
        assert_abs_diff_eq!(a, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn brute_force_small_values() {
        // frozen against an independent scan
        let r = brute_force_m(3, 3, None).unwrap();
        assert_abs_diff_eq!(r.max_lambda_k, 0.0, epsilon = 1e-9);
        assert_eq!(r.graphs_scanned, 8);

        let r = brute_force_m(4, 2, None).unwrap();
        assert_abs_diff_eq!(r.max_lambda_k, 1.0, epsilon = 1e-9);
        let w = parse_graph6(&r.witness).unwrap();
        assert_eq!(w.edges(), vec![(0, 3), (1, 2)]); // a 2K2 labeling

        let r = brute_force_m(5, 3, None).unwrap();
        assert_abs_diff_eq!(r.max_lambda_k, (5f64.sqrt() - 1.0) / 2.0, epsilon = 1e-9);

        let r = brute_force_m(6, 3, None).unwrap();
        assert_abs_diff_eq!(r.max_lambda_k, 1.0, epsilon = 1e-9);
        let w = parse_graph6(&r.witness).unwrap();
        // perfect matching = 3K2 up to isomorphism
        assert_eq!(w.edge_count(), 3);
        for v in 0..6 {
            assert_eq!(w.degree(v), 1);
        }
        assert_eq!(w.edges(), vec![(0, 5), (1, 4), (2, 3)]);
    }

    #[test]
    fn brute_force_respects_edge_filter() {
        let r = brute_force_m(4, 2, Some(0)).unwrap();
        assert_eq!(r.graphs_scanned, 1);
        assert_abs_diff_eq!(r.max_lambda_k, 0.0, epsilon = 1e-12);

        let full = brute_force_m(4, 2, None).unwrap();
        assert_eq!(full.graphs_scanned, 64);
    }

    #[test]
    fn brute_force_errors() {
        assert!(matches!(
            brute_force_m(8, 3, None),
            Err(BoundsError::CapExceeded { .. })
        ));
        assert!(matches!(
            brute_force_m(4, 5, None),
            Err(BoundsError::KOutOfRange { .. })
        ));
        assert!(matches!(
            brute_force_m(4, 1, None),
            Err(BoundsError::KOutOfRange { .. })
        ));
    }

    #[test]
    fn brute_force_below_bound() {
        for n in 3..=6 {
            for k in 3..=n {
                let r = brute_force_m(n, k, None).unwrap();
                let b = eigenvalue_bound(k, n, ConstantSource::KnownLambda).unwrap();
                assert!(
                    r.max_lambda_k <= b + 1e-7,
                    "M_{k}({n}) = {} above bound {b}",
                    r.max_lambda_k
                );
            }
        }
    }

    #[test]
    fn witness_lambda_matches_reported_max() {
        let r = brute_force_m(5, 2, None).unwrap();
        let g = parse_graph6(&r.witness).unwrap();
        let s = eigen::eigenvalues(&g.adjacency_matrix()).unwrap();
        assert_abs_diff_eq!(s.nth_largest(2), r.max_lambda_k, epsilon = 1e-9);
    }
}
