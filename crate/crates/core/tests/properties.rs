use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rigidity_core::extensions::{apply_any, random_step, simple_variant_allowed, VariantName};
use rigidity_core::graphs::{
    complete_bipartite, complete_graph, complete_semisimple, random_bipartite, random_semisimple, BipartiteGraph,
    GraphDocument, SemisimpleGraph,
};
use rigidity_core::linalg::{DenseMatrix, Echelon, PrimeField, DEFAULT_PRIME};
use rigidity_core::matroids::{
    closure, cycle_matroid_rank, even_cycle_rank, generic_rank, is_independent, is_rigid, rank_formula,
    MatroidKind, RankQueryConfig,
};
use rigidity_core::seeds::{greedy_closure, is_seed, reachability_by_enumeration};

fn cfg(seed: u64) -> RankQueryConfig {
    RankQueryConfig::seeded(seed)
}

fn semisimple(max_n: usize) -> impl Strategy<Value = SemisimpleGraph> {
    (1..=max_n, any::<u64>(), 0.1f64..0.9, 0.0f64..0.6)
        .prop_map(|(n, seed, p, lp)| random_semisimple(n, p, lp, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn loopless(max_n: usize) -> impl Strategy<Value = SemisimpleGraph> {
    (1..=max_n, any::<u64>(), 0.1f64..0.9)
        .prop_map(|(n, seed, p)| random_semisimple(n, p, 0.0, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn bipartite(max_side: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_side, 1..=max_side, any::<u64>(), 0.2f64..0.9)
        .prop_map(|(a, b, seed, p)| random_bipartite(a, b, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn echelon_rank_matches_elimination(rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let field = PrimeField::new(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = DenseMatrix::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                // small entries make dependencies likely
                let x = field.from_i64(rand::Rng::gen_range(&mut rng, -1..=1));
                m.set(r, c, x);
            }
        }
        let mut ech = Echelon::new(field, cols);
        for r in 0..rows {
            ech.insert(m.row(r));
        }
        prop_assert_eq!(ech.rank(), m.rank());
        prop_assert_eq!(m.row_basis().len(), m.rank());
        prop_assert!(m.rank() <= rows.min(cols));
    }

    #[test]
    fn graph_text_round_trip(g in semisimple(8)) {
        let doc = GraphDocument::new(g.clone());
        let back = GraphDocument::parse(&doc.serialize()).unwrap();
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn rank_is_bounded(g in semisimple(7), d in 1usize..4) {
        let kind = MatroidKind::SymCompletion(d);
        let r = generic_rank(&g, kind, &cfg(1)).unwrap();
        prop_assert!(r <= g.edge_count());
        prop_assert!(r <= rank_formula(kind, &[g.vertex_count()]).unwrap());
    }

    #[test]
    fn rank_is_monotone(g in loopless(7), d in 1usize..4, u in 0usize..7, v in 0usize..7) {
        let n = g.vertex_count();
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v && !g.has_edge(u, v));
        let kind = MatroidKind::Hyperconnectivity(d);
        let r = generic_rank(&g, kind, &cfg(2)).unwrap();
        let r2 = generic_rank(&g.with_edge(u, v).unwrap(), kind, &cfg(2)).unwrap();
        prop_assert!(r <= r2 && r2 <= r + 1);
    }

    #[test]
    fn dimension_one_oracles(g in semisimple(8)) {
        prop_assert_eq!(generic_rank(&g, MatroidKind::SymCompletion(1), &cfg(3)).unwrap(), even_cycle_rank(&g));
        let simple = g.edges().into_iter().filter(|&(a, b)| a != b);
        let simple = SemisimpleGraph::from_edges(g.vertex_count(), simple).unwrap();
        prop_assert_eq!(generic_rank(&simple, MatroidKind::Hyperconnectivity(1), &cfg(3)).unwrap(), cycle_matroid_rank(&simple));
    }

    #[test]
    fn bipartite_dimension_one_is_graphic(g in bipartite(5)) {
        prop_assert_eq!(
            generic_rank(&g, MatroidKind::Birigidity(1), &cfg(4)).unwrap(),
            cycle_matroid_rank(g.as_semisimple())
        );
        prop_assert_eq!(
            generic_rank(&g, MatroidKind::BirigidityAB(1, 1), &cfg(4)).unwrap(),
            cycle_matroid_rank(g.as_semisimple())
        );
    }

    #[test]
    fn bipartite_rank_below_formula(g in bipartite(6), d in 1usize..4) {
        let kind = MatroidKind::Birigidity(d);
        let r = generic_rank(&g, kind, &cfg(5)).unwrap();
        prop_assert!(r <= rank_formula(kind, &[g.size_a(), g.size_b()]).unwrap());
    }

    #[test]
    fn closure_is_a_fixpoint(g in loopless(6), d in 1usize..3) {
        let kind = MatroidKind::Hyperconnectivity(d);
        let c = closure(&g, kind, &cfg(6)).unwrap();
        let r = generic_rank(&g, kind, &cfg(6)).unwrap();
        prop_assert_eq!(generic_rank(c.base(), kind, &cfg(6)).unwrap(), r);
        let cc = closure(c.base(), kind, &cfg(6)).unwrap();
        prop_assert_eq!(cc.base(), c.base());
    }

    #[test]
    fn greedy_closure_matches_quantifier_form(g in semisimple(5), d in 1usize..3, mask in any::<u8>()) {
        let start: BTreeSet<usize> = (0..g.vertex_count()).filter(|v| mask >> v & 1 == 1).collect();
        let reaches = greedy_closure(&g, d, &start).len() == g.vertex_count();
        prop_assert_eq!(reaches, reachability_by_enumeration(&g, d, &start));
    }

    #[test]
    fn seed_certificates_replay(n in 4usize..8, d in 1usize..3, mask in any::<u8>()) {
        let g = complete_graph(n);
        let kind = MatroidKind::Hyperconnectivity(d);
        let start: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if let Some(cert) = is_seed(&g, kind, &start, &cfg(7)).unwrap() {
            let replay = SemisimpleGraph::from_edges(n, cert.replay_edges()).unwrap();
            prop_assert!(is_independent(&replay, kind, &cfg(7)).unwrap());
            prop_assert_eq!(replay.edge_count(), cert.rank);
            prop_assert_eq!(cert.rank, cert.seed_rank + d * (n - start.len()));
        }
    }

    #[test]
    fn allowed_extensions_preserve_independence(seed in any::<u64>(), d in 1usize..4, which in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = MatroidKind::SymCompletion(d);
        let g = random_semisimple(d + 3, 0.5, 0.3, &mut rng);
        let variant = [VariantName::Zero, VariantName::DoubleOne, VariantName::LoopedOne][which];
        let Some(step) = random_step(&g, kind, variant, &mut rng) else { return Ok(()); };
        prop_assume!(simple_variant_allowed(&step, kind, &g));
        let h = apply_any(&g, &step).unwrap();
        if is_independent(&g, kind, &cfg(8)).unwrap() {
            prop_assert!(is_independent(h.base(), kind, &cfg(8)).unwrap());
        }
        if is_rigid(&g, kind, &cfg(8)).unwrap() {
            prop_assert!(is_rigid(h.base(), kind, &cfg(8)).unwrap());
        }
    }
}

#[test]
fn complete_graphs_are_rigid() {
    for d in 1..4 {
        for n in 1..7 {
            assert!(is_rigid(&complete_semisimple(n), MatroidKind::SymCompletion(d), &cfg(9)).unwrap());
            assert!(is_rigid(&complete_graph(n), MatroidKind::Hyperconnectivity(d), &cfg(9)).unwrap());
            assert!(is_rigid(&complete_bipartite(n, 3), MatroidKind::Birigidity(d), &cfg(9)).unwrap());
        }
    }
}
