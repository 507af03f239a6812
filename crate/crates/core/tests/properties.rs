//! Invariants as property tests.

use hamorient::decomposition::reverse_for_embedding;
use hamorient::embedding::{
    check_embedding, embed_with_classes, exact_embed, tt_embed_path, tt_validates, EmbedParams, OracleOptions,
    OracleResult, PatternRef, PipelineCase,
};
use hamorient::generators::{gen_bipartite_extremal, gen_blowup_tt, gen_random_min_degree, part_labels};
use hamorient::io::{parse_edge_list, write_edge_list};
use hamorient::pattern::CaseSplit;
use hamorient::workbench::balanced_sizes;
use hamorient::{CyclePattern, Digraph, PathPattern, VertexSet};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| Digraph::from_fn(n, |u, v| u != v && bits[u * n + v]))
    })
}

fn cycle(min: usize, max: usize) -> impl Strategy<Value = CyclePattern> {
    proptest::collection::vec(any::<bool>(), min..=max).prop_map(|o| CyclePattern::new(o).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn edge_list_round_trip(g in digraph(20)) {
        let back = parse_edge_list(&write_edge_list(&g, Some("x"))).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn degree_sums(g in digraph(20)) {
        let out: usize = (0..g.n()).map(|v| g.out_degree(v)).sum();
        let inn: usize = (0..g.n()).map(|v| g.in_degree(v)).sum();
        prop_assert_eq!(out, g.edge_count());
        prop_assert_eq!(inn, g.edge_count());
        let a = VertexSet::from_iter(g.n(), (0..g.n()).filter(|v| v % 2 == 0));
        let b = a.complement();
        prop_assert_eq!(g.e_plus(&a, &b), g.reversed().e_plus(&b, &a));
    }

    #[test]
    fn scc_partition_in_topological_order(g in digraph(16)) {
        let comps = g.strongly_connected_components();
        let total: usize = comps.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.n());
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                prop_assert!(a.is_disjoint(b));
                prop_assert_eq!(g.e_plus(b, a), 0);
            }
        }
        prop_assert_eq!(comps.len() == 1, g.is_strongly_connected());
    }

    #[test]
    fn switches_come_in_pairs(c in cycle(3, 40)) {
        prop_assert_eq!(c.switches().len() % 2, 0);
    }

    #[test]
    fn canonical_is_rotation_invariant(c in cycle(3, 24), k in 0usize..24) {
        let r = c.rotate(k % c.len());
        prop_assert_eq!(c.canonical().0, r.canonical().0);
        prop_assert_eq!(c.necklace(), r.necklace());
        let (p, rot) = c.canonical();
        for i in 0..c.len() {
            prop_assert_eq!(p.forward(i), c.forward((rot + i) % c.len()));
        }
    }

    #[test]
    fn framing_preserves_edges(c in cycle(3, 24), origin in 0usize..24, reflect in any::<bool>()) {
        let n = c.len();
        let (f, back) = c.framed(origin % n, reflect);
        let arcs = |p: &CyclePattern| PatternRef::Cycle(p).arcs();
        let mut mapped: Vec<(usize, usize)> = arcs(&f).iter().map(|&(a, b)| (back[a], back[b])).collect();
        let mut orig = arcs(&c);
        mapped.sort();
        orig.sort();
        prop_assert_eq!(mapped, orig);
    }

    #[test]
    fn dichotomy_of_directed_segments(c in cycle(6, 40), beta in 0.05f64..0.6) {
        let n = c.len();
        let w = (beta * n as f64).floor() as usize;
        match c.classify_case(beta) {
            CaseSplit::Case1 { ell, .. } => prop_assert!(ell >= w.max(1)),
            CaseSplit::Case2 => prop_assert!(w >= 2 && c.every_window_has_switch(w)),
        }
    }

    #[test]
    fn tournament_paths(orient in proptest::collection::vec(any::<bool>(), 0..20), extra in 0usize..5) {
        let p = PathPattern::new(orient);
        let size = p.vertices() + extra;
        let ranks = tt_embed_path(&p, size).unwrap();
        prop_assert!(tt_validates(&p, &ranks, size));
    }

    #[test]
    fn checker_agrees_with_direct_test(g in digraph(9), orient in proptest::collection::vec(any::<bool>(), 3..9),
                                       perm_seed in any::<u64>()) {
        let c = CyclePattern::new(orient.clone()).unwrap();
        prop_assume!(c.len() <= g.n());
        let mut map: Vec<usize> = (0..g.n()).collect();
        let mut s = perm_seed;
        for i in (1..map.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            map.swap(i, (s >> 33) as usize % (i + 1));
        }
        map.truncate(c.len());
        let direct = (0..c.len()).all(|i| {
            let (a, b) = (map[i], map[(i + 1) % c.len()]);
            if orient[i] { g.has_edge(a, b) } else { g.has_edge(b, a) }
        });
        prop_assert_eq!(check_embedding(&g, PatternRef::Cycle(&c), &map, false).valid, direct);
    }

    #[test]
    fn oracle_positives_pass_the_checker(g in digraph(9), c in cycle(3, 9)) {
        prop_assume!(c.len() <= g.n());
        if let OracleResult::Found(e) = exact_embed(&g, PatternRef::Cycle(&c), &[], &OracleOptions::sequential()).unwrap() {
            prop_assert!(check_embedding(&g, PatternRef::Cycle(&c), &e.map, false).valid);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plans_conserve_budget(seed in 0u64..1000, t in 2usize..=3, c in cycle(60, 60)) {
        let sizes = vec![60 / t; t];
        let g = gen_blowup_tt(&sizes, 0.95, 0.001, seed);
        let labels = part_labels(&sizes);
        let mut classes: Vec<VertexSet> =
            (0..t).map(|j| VertexSet::from_iter(60, (0..60).filter(|&v| labels[v] == j))).collect();
        classes.reverse();
        prop_assume!(!c.is_directed());
        let p = EmbedParams { oracle_cap: 0, seed, ..EmbedParams::default() };
        let out = embed_with_classes(&g, &classes, &c, &p).unwrap();
        prop_assert!(out.check.valid);
        let plan = out.plan.unwrap();
        prop_assert!(plan.budget_conserved());
        prop_assert!(plan.connectors_consistent());
        for (j, cl) in classes.iter().enumerate() {
            prop_assert_eq!(plan.class_of.iter().filter(|&&x| x == j).count(), cl.len());
            prop_assert!(out.embedding.map.iter().enumerate().all(|(i, &v)| plan.class_of[i] != j || cl.contains(v)));
        }
        if let PipelineCase::Case2 { overshoots } = &plan.case {
            let beta_n = p.beta * 60.0;
            for b in &plan.boundaries {
                prop_assert_eq!(b.gadgets.len() + b.handoff.map_or(0, |h| h.1), overshoots[b.s]);
                prop_assert_eq!(b.overshoot, overshoots[b.s]);
                if b.literal_spacing {
                    let mut k = b.gadgets.clone();
                    k.sort();
                    prop_assert!(k.windows(2).all(|w| (w[1] - w[0]) as f64 >= beta_n));
                }
            }
        }
    }
}

#[test]
fn blowup_degree_formula() {
    for k in 1..=5 {
        for n in (k + 1)..=60 {
            let g = gen_blowup_tt(&balanced_sizes(n, k), 1.0, 0.0, 0);
            assert_eq!(g.min_degree() + 2, n + n / (k + 1), "n={n} k={k}");
        }
    }
}

#[test]
fn bipartite_extremal_degree() {
    for n in 4..=40 {
        assert_eq!(gen_bipartite_extremal(n).min_degree(), 2 * (n.div_ceil(2) - 1), "n={n}");
    }
}

#[test]
fn seeded_generators_reproduce() {
    for seed in 0..5 {
        assert_eq!(gen_random_min_degree(15, 20, seed).graph, gen_random_min_degree(15, 20, seed).graph);
        assert_eq!(gen_blowup_tt(&[5, 6], 0.9, 0.05, seed), gen_blowup_tt(&[5, 6], 0.9, 0.05, seed));
    }
}

#[test]
fn reversal_is_an_involution() {
    use hamorient::decomposition::{decompose, DecompositionParams};
    let g = gen_blowup_tt(&[12, 12], 0.95, 0.0, 1);
    let sp = decompose(&g, &DecompositionParams::desk(2)).unwrap();
    let rr = reverse_for_embedding(&reverse_for_embedding(&sp));
    assert_eq!(rr.classes, sp.classes);
}
