use std::collections::BTreeSet;

use bipcert::constructor::peel_bipartize;
use bipcert::extremal::{zarankiewicz_with, SearchOptions};
use bipcert::forbidden::{cycle_spectrum, find_cycle_exact, find_cycle_exact_with, find_kst, find_kst_with, girth, Pattern};
use bipcert::graph::{components, read_graph, two_coloring, write_graph, Graph};
use bipcert::lemmas::{bipartize, check_bipartization, derive_constants, robust_reach, ReachOptions};
use bipcert::par::Exec;
use bipcert::{generators, rng, Extent};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=3 * n).prop_map(move |pairs| {
            let mut g = Graph::new(n).unwrap();
            for (a, b) in pairs {
                if a != b {
                    g.add_edge(a, b).unwrap();
                }
            }
            g
        })
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_map(|mut g| {
        let comps = components(&g);
        for w in comps.windows(2) {
            g.add_edge(w[0][0], w[1][0]).unwrap();
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn text_format_round_trips(g in graph(14)) {
        prop_assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn json_round_trips(g in graph(14)) {
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), g);
    }

    #[test]
    fn bipartize_keeps_half_of_every_degree(g in connected_graph(16)) {
        let b = bipartize(&g).unwrap();
        prop_assert_eq!(check_bipartization(&g, &b), Ok(()));
        prop_assert!(two_coloring(&b.graph).is_some());
    }

    #[test]
    fn located_cycles_are_real(g in graph(10), len in 3usize..=8) {
        if let Some(w) = find_cycle_exact(&g, len).unwrap() {
            prop_assert_eq!(w.vertices.len(), len);
            prop_assert_eq!(w.validate(&g), Ok(()));
        }
    }

    #[test]
    fn spectrum_starts_at_girth_and_matches_search(g in graph(9)) {
        let spectrum = cycle_spectrum(&g, 9).unwrap();
        match girth(&g) {
            Extent::Finite(gi) => prop_assert_eq!(spectrum.first().copied(), Some(gi)),
            Extent::Infinite => prop_assert!(spectrum.is_empty()),
        }
        for len in 3..=9 {
            prop_assert_eq!(spectrum.contains(&len), find_cycle_exact(&g, len).unwrap().is_some());
        }
    }

    #[test]
    fn bipartite_graphs_have_no_odd_cycles(g in graph(12)) {
        if two_coloring(&g).is_some() {
            let spectrum = cycle_spectrum(&g, 12).unwrap();
            prop_assert!(spectrum.iter().all(|l| l % 2 == 0));
        }
    }

    #[test]
    fn kst_witnesses_validate(g in graph(10), s in 1usize..=3, t in 1usize..=3) {
        if s <= t {
            if let Some(w) = find_kst(&g, s, t).unwrap() {
                prop_assert_eq!(w.pattern, Pattern::CompleteBipartite { s, t });
                prop_assert_eq!(w.validate(&g), Ok(()));
            }
        }
    }

    #[test]
    fn execution_mode_does_not_change_results(g in graph(10), len in 3usize..=7) {
        prop_assert_eq!(
            find_cycle_exact_with(&g, len, Exec::Sequential).unwrap(),
            find_cycle_exact_with(&g, len, Exec::Parallel).unwrap()
        );
        prop_assert_eq!(
            find_kst_with(&g, 2, 2, Exec::Sequential).unwrap(),
            find_kst_with(&g, 2, 2, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn reach_families_respect_the_cap(g in connected_graph(14), ell in 1usize..=4, cap in 1usize..=4) {
        let root = g.n() - 1;
        let f = robust_reach(&g, root, &ReachOptions { cap: Some(cap), ..ReachOptions::new(ell) }).unwrap();
        prop_assert_eq!(f.validate(&g), Ok(()));
        prop_assert!(f.max_usage() <= cap);
        prop_assert!(f.paths.iter().all(|p| p.len() - 1 <= ell));
        prop_assert!(f.maximal);
    }

    #[test]
    fn peeling_leaves_high_minimum_degree(g in graph(16), delta in 0.1f64..1.5) {
        let r = peel_bipartize(&g, delta, 1.5).unwrap();
        prop_assert!(r.inequality_holds);
        prop_assert_eq!(r.edges_before - r.edges_after, r.removed_edges);
        let removed: BTreeSet<usize> = r.removed.iter().copied().collect();
        for v in (0..g.n()).filter(|v| !removed.contains(v)) {
            prop_assert!(r.h.degree(v) as f64 >= r.threshold);
        }
        prop_assert!(removed.iter().all(|&v| r.h.degree(v) == 0));
    }

    #[test]
    fn derived_constants_are_consistent(
        alpha in 1.05f64..1.95,
        beta_frac in 0.0f64..0.9,
        rho in 0.1f64..10.0,
        delta in 0.05f64..4.0,
    ) {
        let beta = 1.0 + beta_frac * (alpha - 1.0);
        let c = match derive_constants(alpha, beta, rho, delta) {
            Ok(c) => c,
            Err(e) => {
                prop_assert!(matches!(e, bipcert::Error::Overflow(_)), "{e}");
                return Ok(());
            }
        };
        prop_assert_eq!(c.validate(), Ok(()));
        prop_assert_eq!(c.big_l % c.ell0 as u64, 0);
        prop_assert!(c.gamma > 0.0 && c.mu > 0.0 && c.mu <= c.gamma / c.ell0 as f64 * (1.0 + 1e-12));
    }

    #[test]
    fn seeded_generators_are_deterministic(n in 1usize..30, p in 0.0f64..1.0, seed in any::<u64>()) {
        let a = generators::random_gnp(n, p, &mut rng::seeded(seed)).unwrap();
        let b = generators::random_gnp(n, p, &mut rng::seeded(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn incidence_graphs_are_k22_free_with_girth_six() {
    for q in [2, 3, 4, 5, 7] {
        let g = generators::incidence_graph(generators::PrimePower::new(q).unwrap()).unwrap();
        assert_eq!(g.n(), 2 * (q * q + q + 1));
        assert!((0..g.n()).all(|v| g.degree(v) == q + 1));
        assert!(find_kst(&g, 2, 2).unwrap().is_none());
        assert_eq!(girth(&g), Extent::Finite(6));
    }
}

#[test]
fn zarankiewicz_is_independent_of_execution_mode() {
    let f = bipcert::forbidden::FamilySpec::single(Pattern::CompleteBipartite { s: 2, t: 2 }).unwrap();
    for (m, n) in [(3, 4), (4, 4), (4, 5)] {
        let seq = SearchOptions { exec: Exec::Sequential, ..SearchOptions::default() };
        let par = SearchOptions { exec: Exec::Parallel, ..SearchOptions::default() };
        assert_eq!(zarankiewicz_with(m, n, &f, &seq).unwrap(), zarankiewicz_with(m, n, &f, &par).unwrap());
    }
}
