//! Brute-force cross-checks: every fast routine against a naive one.

use hamorient::embedding::{check_embedding, exact_embed, OracleOptions, OracleResult, PatternRef};
use hamorient::expansion::{certify_expander, exact_cut, ExpansionParams};
use hamorient::generators::{gen_random_min_degree, gen_tournament, rng, TournamentKind};
use hamorient::pattern::path_classes;
use hamorient::{CyclePattern, Digraph, PathPattern, VertexSet};
use rand::Rng;

fn random_digraph(n: usize, p: f64, seed: u64) -> Digraph {
    let mut r = rng(seed);
    Digraph::from_fn(n, |u, v| u != v && r.gen::<f64>() < p)
}

/// Edges of the pattern as (tail, head) positions.
fn arcs(orient: &[bool], cycle: bool) -> Vec<(usize, usize)> {
    let m = if cycle { orient.len() } else { orient.len() + 1 };
    orient
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let j = (i + 1) % m;
            if f {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect()
}

/// Tries every injective sequence of `m` host vertices.
fn brute_contains(g: &Digraph, m: usize, arcs: &[(usize, usize)]) -> bool {
    fn rec(g: &Digraph, m: usize, arcs: &[(usize, usize)], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == m {
            return arcs.iter().all(|&(a, b)| g.has_edge(map[a], map[b]));
        }
        for v in 0..g.n() {
            if used[v] {
                continue;
            }
            map.push(v);
            used[v] = true;
            // only arcs between already placed positions
            let ok = arcs.iter().filter(|&&(a, b)| a.max(b) == i).all(|&(a, b)| g.has_edge(map[a], map[b]));
            if ok && rec(g, m, arcs, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }
    rec(g, m, arcs, &mut Vec::new(), &mut vec![false; g.n()])
}

#[test]
fn oracle_matches_permutation_sweep_cycles() {
    let opts = OracleOptions::sequential();
    let mut r = rng(1);
    let mut found = 0;
    let mut none = 0;
    for trial in 0..300u64 {
        let n = r.gen_range(3..=8);
        let p = [0.3, 0.5, 0.7][trial as usize % 3];
        let g = random_digraph(n, p, trial);
        let m = r.gen_range(3..=n);
        let orient: Vec<bool> = (0..m).map(|_| r.gen()).collect();
        let c = CyclePattern::new(orient.clone()).unwrap();
        let want = brute_contains(&g, m, &arcs(&orient, true));
        match exact_embed(&g, PatternRef::Cycle(&c), &[], &opts).unwrap() {
            OracleResult::Found(e) => {
                assert!(want, "oracle found a copy the sweep missed");
                assert!(check_embedding(&g, PatternRef::Cycle(&c), &e.map, false).valid);
                found += 1;
            }
            OracleResult::None => {
                assert!(!want, "trial {trial}: oracle says none, sweep found {c} in n={n}");
                none += 1;
            }
            OracleResult::Timeout => panic!("timeout at n={n}"),
        }
    }
    assert!(found > 50 && none > 50, "found {found}, none {none}");
}

#[test]
fn oracle_matches_permutation_sweep_paths() {
    let opts = OracleOptions::sequential();
    let mut r = rng(2);
    for trial in 0..300u64 {
        let n = r.gen_range(2..=8);
        let g = random_digraph(n, 0.35, 100 + trial);
        let m = r.gen_range(2..=n);
        let orient: Vec<bool> = (0..m - 1).map(|_| r.gen()).collect();
        let p = PathPattern::new(orient.clone());
        let want = brute_contains(&g, m, &arcs(&orient, false));
        let got = exact_embed(&g, PatternRef::Path(&p), &[], &opts).unwrap();
        assert_eq!(got.is_found(), want, "trial {trial}");
        assert!(!matches!(got, OracleResult::Timeout));
    }
}

#[test]
fn pinned_search_matches_sweep() {
    let opts = OracleOptions::sequential();
    let mut r = rng(3);
    for trial in 0..150u64 {
        let n = r.gen_range(4..=7);
        let g = random_digraph(n, 0.55, 500 + trial);
        let orient: Vec<bool> = (0..n).map(|_| r.gen()).collect();
        let c = CyclePattern::new(orient.clone()).unwrap();
        let (pos, v) = (r.gen_range(0..n), r.gen_range(0..n));
        // pin by relabelling: brute force over sequences that put v at pos
        let all = arcs(&orient, true);
        let mut want = false;
        let mut perm: Vec<usize> = (0..n).collect();
        permutohedron(&mut perm, &mut |map| {
            if map[pos] == v && all.iter().all(|&(a, b)| g.has_edge(map[a], map[b])) {
                want = true;
            }
        });
        let got = exact_embed(&g, PatternRef::Cycle(&c), &[(pos, v)], &opts).unwrap();
        assert_eq!(got.is_found(), want, "trial {trial}");
        if let OracleResult::Found(e) = got {
            assert_eq!(e.map[pos], v);
        }
    }
}

/// Heap's algorithm.
fn permutohedron(a: &mut [usize], f: &mut impl FnMut(&[usize])) {
    let n = a.len();
    let mut c = vec![0; n];
    f(a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn tournament_exceptions_lack_antidirected_path() {
    let opts = OracleOptions::sequential();
    for (n, gens) in [(3usize, vec![1usize]), (5, vec![1, 2]), (7, vec![1, 2, 4])] {
        let t = Digraph::from_fn(n, |u, v| gens.contains(&((v + n - u) % n)));
        let anti = PathPattern::new((0..n - 1).map(|i| i % 2 == 0).collect());
        assert!(exact_embed(&t, PatternRef::Path(&anti), &[], &opts).unwrap().is_none(), "n={n}");
        let other = PathPattern::directed(n);
        assert!(exact_embed(&t, PatternRef::Path(&other), &[], &opts).unwrap().is_found());
    }
}

#[test]
fn tournaments_on_eight_contain_every_hamilton_path() {
    let opts = OracleOptions::sequential();
    let classes = path_classes(8);
    for seed in 0..12 {
        let t = gen_tournament(8, TournamentKind::Random { seed });
        for p in &classes {
            match exact_embed(&t, PatternRef::Path(p), &[], &opts).unwrap() {
                OracleResult::Found(e) => assert!(check_embedding(&t, PatternRef::Path(p), &e.map, true).valid),
                other => panic!("seed {seed}: {p} gave {other:?}"),
            }
        }
    }
}

fn brute_is_expander(g: &Digraph, nu: f64, tau: f64) -> bool {
    let n = g.n();
    let thr = (nu * n as f64 - 1e-9).ceil() as usize;
    let lo = (tau * n as f64 - 1e-9).ceil() as usize;
    let hi = ((1.0 - tau) * n as f64 + 1e-9).floor() as usize;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < lo || size > hi {
            continue;
        }
        let rn = (0..n)
            .filter(|&v| (0..n).filter(|&u| mask >> u & 1 == 1 && g.has_edge(u, v)).count() >= thr)
            .count();
        if (rn as f64) < size as f64 + nu * n as f64 - 1e-9 {
            return false;
        }
    }
    true
}

#[test]
fn expander_certificates_match_subset_sweep() {
    let mut agree = [0, 0];
    for seed in 0..120u64 {
        let n = 5 + (seed as usize % 6);
        let delta = n + (seed as usize % (n - 1));
        let g = gen_random_min_degree(n, delta, seed).graph;
        let (nu, tau) = (0.1 + 0.05 * (seed % 3) as f64, 0.2);
        let v = certify_expander(&g, &ExpansionParams::exact(nu, tau).unwrap()).unwrap();
        let want = brute_is_expander(&g, nu, tau);
        assert_eq!(v.is_expander(), want, "seed {seed}");
        assert_eq!(v.is_violator(), !want);
        agree[usize::from(want)] += 1;
    }
    assert!(agree[0] > 5 && agree[1] > 5, "{agree:?}");
}

#[test]
fn sparsest_cut_matches_subset_sweep() {
    for seed in 0..60u64 {
        let n = 3 + (seed as usize % 8);
        let g = random_digraph(n, 0.6, seed);
        let mut best = f64::INFINITY;
        for mask in 1u32..(1 << n) - 1 {
            let x1 = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            let x2 = x1.complement();
            let e = (0..n)
                .filter(|&u| x1.contains(u))
                .map(|u| (0..n).filter(|&v| x2.contains(v) && g.has_edge(u, v)).count())
                .sum::<usize>();
            best = best.min(e as f64 / (x1.len() * x2.len()) as f64);
        }
        let c = exact_cut(&g);
        assert!((c.alpha_achieved - best).abs() < 1e-12, "seed {seed}: {} vs {best}", c.alpha_achieved);
        assert_eq!(c.e_forward, g.e_plus(&c.x1, &c.x2));
    }
}
