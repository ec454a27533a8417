//! Structural and spectral invariants over sampled and named graphs.

use nbcolor_core::corpus;
use nbcolor_core::deformed::{
    default_psd_tol, is_psd, lambda_min, smallest_real_eig_b, EigMode, RootMethod, ScanOptions,
};
use nbcolor_core::nb::{nb_matvec, perron, period};
use nbcolor_core::{classify, sample_er, DirectedEdgeIndex, Graph};
use proptest::prelude::*;

fn er_graph() -> impl Strategy<Value = Graph> {
    (4usize..40, 1.0f64..4.5, any::<u64>()).prop_map(|(n, d, seed)| sample_er(n, d.min(n as f64 - 1.0), seed).unwrap())
}

/// Largest connected component of the 2-core.
fn core_component(g: &Graph) -> Graph {
    let core = g.two_core().graph;
    let comps = core.components();
    match comps.into_iter().max_by_key(Vec::len) {
        Some(c) => core.induced(&c).graph,
        None => core,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sampled_graphs_are_simple(g in er_graph()) {
        prop_assert!(g.check_invariants());
        let deg_sum: usize = g.degrees().iter().sum();
        prop_assert_eq!(deg_sum, 2 * g.edge_count());
    }

    #[test]
    fn two_core_is_idempotent_and_keeps_girth(g in er_graph()) {
        let once = g.two_core().graph;
        let twice = once.two_core().graph;
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.n() == 0 || once.min_degree() >= 2);
        prop_assert_eq!(once.girth(), g.girth());
    }

    #[test]
    fn bipartite_matches_signless_laplacian(g in er_graph()) {
        // L(-1) = D + A, singular exactly on bipartite components.
        for comp in g.components() {
            let h = g.induced(&comp).graph;
            let lam = lambda_min(&h, -1.0f64, EigMode::Dense).unwrap();
            prop_assert_eq!(h.is_bipartite(), lam.abs() < 1e-9, "lambda_min {}", lam);
        }
        let all = g.components().iter().all(|c| g.induced(c).graph.is_bipartite());
        prop_assert_eq!(g.is_bipartite(), all);
        if let Some(side) = g.bipartition() {
            prop_assert!(g.edges().all(|(i, j)| side[i] != side[j]));
        }
    }

    #[test]
    fn matvec_preserves_sign_and_contracts(g in er_graph(), scale in 0.1f64..10.0) {
        let idx = DirectedEdgeIndex::new(&g);
        prop_assume!(!idx.is_empty());
        let x: Vec<f64> = (0..idx.len()).map(|a| scale * ((a * 7919 % 13) as f64)).collect();
        let mut y = vec![0.0; idx.len()];
        nb_matvec(&idx, &x, &mut y).unwrap();
        prop_assert!(y.iter().all(|&v| v >= 0.0));
        let l1 = |v: &[f64]| v.iter().sum::<f64>();
        let bound = (g.max_degree() as f64 - 1.0) * l1(&x);
        prop_assert!(l1(&y) <= bound * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn perron_data_satisfies_its_identities(g in er_graph()) {
        let core = core_component(&g);
        prop_assume!(classify(&core).eligible());
        let idx = DirectedEdgeIndex::new(&core);
        let p = perron(&core, &idx, 1e-11f64).unwrap();
        prop_assert!(p.phi.iter().all(|&v| v > 0.0));
        prop_assert!((p.phi_vertex.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.eigen_residual(&idx) <= 1e-9);
        prop_assert!(p.vertex_identity_residual(&idx) <= 1e-9);
        prop_assert!(p.rho > 1.0 && p.rho <= core.max_degree() as f64 - 1.0 + 1e-9);
    }

    #[test]
    fn diagonal_dominance_start_is_positive(g in er_graph()) {
        prop_assume!(g.edge_count() > 0);
        let z = -(1.0 + g.max_degree() as f64);
        prop_assert!(lambda_min(&g, z, EigMode::Dense).unwrap() > 0.0);
    }
}

fn eligible_corpus() -> Vec<(&'static str, Graph)> {
    corpus::named().into_iter().filter(|(_, g)| classify(g).eligible()).collect()
}

#[test]
fn smallest_real_eigenvalue_ladder() {
    let graphs = eligible_corpus();
    assert!(graphs.len() >= 8);
    for (name, g) in graphs {
        let loc = smallest_real_eig_b::<f64>(&g, &ScanOptions::default()).unwrap();
        assert!(loc.r_star <= -1.0, "{name}");
        for eps in [1e-3, 1e-2, 0.1, 1.0] {
            assert!(is_psd(&g, loc.r_star - eps, None), "{name}: not PSD at r_star - {eps}");
        }
        if loc.method == RootMethod::BisectionCrossing {
            let lam = lambda_min(&g, loc.r_star, EigMode::Dense).unwrap();
            let tol = default_psd_tol(&g, loc.r_star);
            assert!(lam.abs() <= 10.0 * tol, "{name}: lambda_min {lam} at the crossing");
            assert!(!is_psd(&g, loc.r_star + 1e-4, None), "{name}");
        }
    }
}

#[test]
fn crossing_on_k44_plus_edge() {
    let g = corpus::near_bipartite(4, 4);
    let loc = smallest_real_eig_b::<f64>(&g, &ScanOptions::default()).unwrap();
    assert_eq!(loc.method, RootMethod::BisectionCrossing);
    // Real root of z^5 - 6z^3 - 4z^2 - 27z - 36.
    assert!((loc.r_star - -2.532_573_747_3).abs() < 1e-7, "{}", loc.r_star);
}

#[test]
fn regular_graphs_have_rho_d_minus_one() {
    for (g, d) in [
        (corpus::complete(4), 3.0f64),
        (corpus::complete(5), 4.0),
        (corpus::petersen(), 3.0),
        (corpus::dodecahedron(), 3.0),
        (corpus::mcgee(), 3.0),
    ] {
        let idx = DirectedEdgeIndex::new(&g);
        let tol = 1e-10;
        let p = perron(&g, &idx, tol).unwrap();
        assert!((p.rho - (d - 1.0)).abs() <= 10.0 * tol * d, "{}", p.rho);
    }
}

#[test]
fn period_and_bipartite_classification() {
    for p in 2..=5 {
        let g = corpus::subdivide(&corpus::complete(4), p);
        let rep = classify(&g);
        assert_eq!(rep.period, Some(p));
        assert!(!rep.eligible());
    }
    for k in 3..=9 {
        let rep = classify(&corpus::cycle(k));
        assert!(rep.is_cycle && !rep.eligible());
        assert_eq!(rep.period, Some(k));
    }
    for (name, g) in corpus::named() {
        let rep = classify(&g);
        if let (true, Some(p)) = (rep.is_bipartite, rep.period) {
            assert_eq!(p % 2, 0, "{name}");
        }
        let core = g.two_core().graph;
        if core.edge_count() > 0 && core.is_connected() {
            let idx = DirectedEdgeIndex::new(&core);
            assert_eq!(period(&core, &idx).unwrap().period, rep.period.unwrap(), "{name}");
        }
    }
    assert!(classify(&corpus::heawood()).is_bipartite);
    assert!(classify(&corpus::petersen()).eligible());
    assert!(!classify(&corpus::path(5)).eligible());
}
