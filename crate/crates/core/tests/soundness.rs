//! Cross-module soundness sweeps: every bound source against a large random
//! corpus, and the eigenvalue-sum lower bound instantiated with the known
//! constants on the named families.

use eigenbound::bounds::{check_graph, ConstantSource};
use eigenbound::eigen;
use eigenbound::graph::{icosahedron, paley9, union_cliques, Graph};
use eigenbound::projconst::known_lambda;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family_corpus() -> Vec<Graph> {
    let mut corpus = Vec::new();
    for base in [
        union_cliques(3, 4),
        union_cliques(4, 3),
        union_cliques(5, 2),
        union_cliques(2, 6),
        icosahedron(),
        paley9(),
    ] {
        for t in 1..=3usize {
            corpus.push(base.closed_blowup(t));
        }
    }
    corpus
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

#[test]
fn universal_soundness_sweep() {
    let sources = [
        ConstantSource::KnownLambda,
        ConstantSource::Sivashankar,
        ConstantSource::Nikiforov,
    ];

    for g in family_corpus() {
        for k in 3..=5usize {
            for source in sources {
                let rep = check_graph(&g, k, source).unwrap();
                assert!(
                    rep.slack >= -1e-7,
                    "family graph n={} k={k} {}: slack {}",
                    g.order(),
                    source.as_str(),
                    rep.slack
                );
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    for _ in 0..1000 {
        let n = rng.gen_range(5..=20);
        let g = random_graph(n, &mut rng);
        for k in 3..=5usize {
            for source in sources {
                let rep = check_graph(&g, k, source).unwrap();
                assert!(
                    rep.slack >= -1e-7,
                    "random graph n={n} k={k} {}: slack {}",
                    source.as_str(),
                    rep.slack
                );
            }
        }
    }
}

#[test]
fn instance_level_master_inequality() {
    // bottom-r eigenvalue sum of the complement adjacency is bounded below
    // by -(mu_r / 2) n with the known constants
    for g in family_corpus() {
        let n = g.order() as f64;
        let spectrum = eigen::eigenvalues(&g.complement().adjacency_matrix()).unwrap();
        for r in 1..=4usize {
            let bottom = eigen::kyfan_bottom_sum(&spectrum, r).unwrap();
            let mu = known_lambda(r).value;
            assert!(
                bottom >= -(mu / 2.0) * n - 1e-6,
                "n={n} r={r}: bottom sum {bottom} below -{mu}/2 * n"
            );
        }
    }
}

#[test]
fn bound_ordering_over_orders() {
    use eigenbound::bounds::eigenvalue_bound;
    for k in 3..=5usize {
        for n in k..=80 {
            let kl = eigenvalue_bound(k, n, ConstantSource::KnownLambda).unwrap();
            let sv = eigenvalue_bound(k, n, ConstantSource::Sivashankar).unwrap();
            let nk = eigenvalue_bound(k, n, ConstantSource::Nikiforov).unwrap();
            assert!(kl <= sv + 1e-9 && sv <= nk + 1e-9, "k={k} n={n}");
            if k == 4 || k == 5 {
                assert!((kl - sv).abs() <= 1e-9, "coefficients must agree at k={k}");
            }
        }
    }
}
