use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigidity_core::connectivity::{
    branch_and_bound_cover, build_pairing_bipartite, build_pairing_general, essential_separators,
    is_critically_k_connected, is_k_biconnected, is_k_connected, is_vertex_cover, konig_cover, local_connectivity,
    maximum_matching, min_vertex_cover, sparse_local_certificate, tau_bound_chain, tau_bound_report,
    vertex_connectivity, SeparatorMode, TauBranch, DEFAULT_SEARCH_CAP,
};
use rigidity_core::graphs::{complete_bipartite, critical_family, random_bipartite, random_graph, SemisimpleGraph, Side};

mod common;
use common::*;

#[test]
fn menger_agrees_with_brute_force_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(n, rng.gen_range(0.2..0.9), &mut rng);
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(local_connectivity(&g, u, v), brute_local_connectivity(&g, u, v), "{u} {v} in {:?}", g.edges());
            }
        }
        let brute = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .map(|(u, v)| brute_local_connectivity(&g, u, v))
            .min()
            .unwrap_or(n - 1);
        assert_eq!(vertex_connectivity(&g), brute);
    }
}

#[test]
fn konig_agrees_with_branch_and_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let (a, b) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let g = random_bipartite(a, b, rng.gen_range(0.1..0.8), &mut rng);
        let cover = konig_cover(&g);
        let set: BTreeSet<usize> = cover.iter().copied().collect();
        assert!(is_vertex_cover(g.as_semisimple(), &set));
        assert_eq!(cover.len(), maximum_matching(&g).len());
        assert_eq!(cover.len(), branch_and_bound_cover(g.as_semisimple()).len());
        assert_eq!(min_vertex_cover((&g).into()), cover);
    }
}

#[test]
fn branch_and_bound_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let n = rng.gen_range(1..=11);
        let mut g = random_graph(n, rng.gen_range(0.1..0.7), &mut rng);
        if rng.gen_bool(0.3) {
            g = g.with_edge(0, 0).unwrap();
        }
        let cover = branch_and_bound_cover(&g);
        assert!(is_vertex_cover(&g, &cover.iter().copied().collect()));
        assert_eq!(cover.len(), brute_cover_size(&g));
    }
}

#[test]
fn biconnectivity_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let g = random_bipartite(a, b, rng.gen_range(0.4..1.0), &mut rng);
        for k in 1..=3 {
            let r = is_k_biconnected(&g, k).unwrap();
            assert_eq!(r.biconnected, brute_k_biconnected(&g, k));
            if let Some(w) = r.witness {
                let w: BTreeSet<usize> = w.into_iter().collect();
                assert!(!brute_connected(g.as_semisimple(), &w));
            }
        }
    }
}

#[test]
fn highly_connected_bipartite_graphs_are_biconnected() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut seen = 0;
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
        let g = random_bipartite(a, b, rng.gen_range(0.6..1.0), &mut rng);
        for k in 1..=3 {
            if g.size_a() >= k && g.size_b() >= k && vertex_connectivity(g.as_semisimple()) >= 2 * k - 1 && g.as_semisimple().is_connected() {
                seen += 1;
                assert!(brute_k_biconnected(&g, k));
            }
        }
    }
    assert!(seen > 50);
}

#[test]
fn critical_family_connectivity() {
    for k in 2..=3 {
        for p in 2..=6 {
            let g = critical_family(k, p).unwrap();
            let n = g.vertex_count();
            assert_eq!(n, k * (p + 1));
            let tau = min_vertex_cover((&g).into()).len();
            assert!(tau <= k + p);
            assert!(tau as f64 <= n as f64 / k as f64 + (k - 1) as f64);
            assert!(tau as f64 >= n as f64 / (k + 1) as f64);
            if p <= 5 {
                assert!(is_critically_k_connected(g.as_semisimple(), k));
            }
        }
    }
}

#[test]
fn critical_family_is_not_biconnected() {
    // deleting the merged vertex and the shared block separates the copies
    for k in 2..=3 {
        for p in 2..=5 {
            let g = critical_family(k, p).unwrap();
            let r = is_k_biconnected(&g, k).unwrap();
            assert!(!r.biconnected);
            let w: BTreeSet<usize> = r.witness.unwrap().into_iter().collect();
            assert!(w.iter().filter(|&&v| g.side(v) == Side::A).count() < k);
            assert!(w.iter().filter(|&&v| g.side(v) == Side::B).count() < k);
            assert!(!brute_connected(g.as_semisimple(), &w));
        }
    }
}

#[test]
fn pairings_on_critical_family() {
    let g = critical_family(3, 4).unwrap();
    let cover = min_vertex_cover((&g).into());
    let x: BTreeSet<usize> = (0..g.vertex_count()).filter(|v| !cover.contains(v)).collect();
    let p = build_pairing_bipartite(&g, 3, &x, DEFAULT_SEARCH_CAP).unwrap();
    assert_eq!(p.edge_count(), x.len());
    assert!(p.disjoint_from(g.as_semisimple()));
    assert!(p.max_multiplicity() <= 3);
    let q = build_pairing_general(g.as_semisimple(), 3, &x, DEFAULT_SEARCH_CAP).unwrap();
    assert!(q.is_simple());
    assert!(q.pairs_are_neighbours(g.as_semisimple()));
    for e in &q.entries {
        assert!(e.separator.contains(&e.x));
    }
}

#[test]
fn essential_separators_are_essential() {
    let g = critical_family(2, 3).unwrap();
    for mode in [SeparatorMode::Bipartite, SeparatorMode::General] {
        let seps = essential_separators((&g).into(), 2, mode, DEFAULT_SEARCH_CAP).unwrap();
        assert!(!seps.is_empty());
        for s in seps {
            assert!(s.components.len() >= 2);
            for &v in &s.separator {
                for c in &s.components {
                    assert!(c.iter().any(|w| g.as_semisimple().has_edge(v, *w)));
                }
            }
        }
    }
}

#[test]
fn sparse_certificates_preserve_connectivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..30 {
        let n = rng.gen_range(2..=10);
        let g = random_graph(n, rng.gen_range(0.3..1.0), &mut rng);
        for k in 1..=4 {
            let c = sparse_local_certificate(&g, k);
            assert!(c.within_bound, "{:?}", c);
            assert!(c.preserves_connectivity);
            let h = SemisimpleGraph::from_edges(n, c.edges.iter().copied()).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    assert!(local_connectivity(&h, u, v) >= local_connectivity(&g, u, v).min(k));
                }
            }
        }
    }
}

#[test]
fn tau_report_general_mode() {
    let g = critical_family(3, 4).unwrap();
    let r = tau_bound_report(g.as_semisimple().into(), 3, SeparatorMode::General, DEFAULT_SEARCH_CAP).unwrap();
    assert_eq!(r.branch, TauBranch::Pipeline);
    assert!(r.all_hold, "{:?}", r.inequalities);
    assert!(r.tau as f64 >= 15.0 / 4.0);
    assert_eq!(r.support_in_certificate, Some(true));
}

#[test]
fn tau_report_bipartite_mode() {
    let g = critical_family(3, 4).unwrap();
    assert!(tau_bound_report((&g).into(), 3, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP).is_err());
    let r = tau_bound_chain((&g).into(), 3, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP).unwrap();
    assert!(r.all_hold, "{:?}", r.inequalities);
    assert!(r.tau as f64 >= 15.0 / 18.0);
    for k in 1..=3 {
        let kk = complete_bipartite(k, k);
        let r = tau_bound_report((&kk).into(), k, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(r.branch, TauBranch::CompleteBipartite);
        assert_eq!(r.tau, k);
    }
}

#[test]
fn k_connectivity_basics() {
    let g = critical_family(2, 3).unwrap();
    assert!(is_k_connected(g.as_semisimple(), 2));
    assert!(!is_k_connected(g.as_semisimple(), 3));
}
