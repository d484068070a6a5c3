//! Cross-checks against deliberately naive reimplementations.

use cocrit::canon::{all_graphs, random_gnm, random_relabel};
use cocrit::construction::{self, build, ConstructionParams, RoleLayout};
use cocrit::percolation::{run, Mode, RunOptions};
use cocrit::search::BRUTE_FORCE_EDGE_CAP;
use cocrit::stable::{clique_core, stable_family_stats};
use cocrit::verify::{critical_structure_check, is_cocritical, min_cocritical_search};
use cocrit::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Red `K_t`-free and every blue component below `k` vertices, by plain
/// union-find and subset scanning.
fn naive_is_critical(n: usize, edges: &[(usize, usize)], blue_mask: u32, t: usize, k: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut red = vec![vec![false; n]; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if blue_mask >> i & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        } else {
            red[u][v] = true;
            red[v][u] = true;
        }
    }
    let mut sizes = vec![0; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        sizes[r] += 1;
    }
    if sizes.iter().any(|&s| s >= k) {
        return false;
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != t {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| red[a][b])) {
            return false;
        }
    }
    true
}

fn naive_count(g: &Graph, t: usize, k: usize) -> usize {
    let edges = g.edges();
    (0u32..(1 << edges.len())).filter(|&m| naive_is_critical(g.order(), &edges, m, t, k)).count()
}

fn naive_max_red(g: &Graph, t: usize, k: usize) -> Option<usize> {
    let edges = g.edges();
    (0u32..(1 << edges.len()))
        .filter(|&m| naive_is_critical(g.order(), &edges, m, t, k))
        .map(|m| edges.len() - m.count_ones() as usize)
        .max()
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs))
    })
    .prop_map(|(n, bits)| {
        let pairs: Vec<_> = Graph::complete(n).edges().into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
        Graph::from_edges(n, &pairs).unwrap()
    })
    .prop_filter("brute force needs few edges", |g| g.edge_count() <= 13)
}

fn tk() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((3, 3)), Just((3, 4)), Just((4, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_matches_naive_count(g in small_graph(), (t, k) in tk()) {
        let e = enumerate_critical_colorings(&g, t, k, SearchBudget::default()).unwrap();
        prop_assert!(!e.truncated && !e.budget_exceeded);
        prop_assert_eq!(e.colorings.len(), naive_count(&g, t, k));
        for c in &e.colorings {
            prop_assert!(c.is_critical(t, k));
        }
    }

    #[test]
    fn search_matches_brute_force(g in small_graph(), (t, k) in tk()) {
        let fast = exists_critical_coloring(&g, t, k, SearchBudget::default()).unwrap();
        prop_assert_eq!(fast.status == SearchStatus::Found, brute_force_exists(&g, t, k).unwrap());
        if let Some(w) = fast.witness {
            prop_assert!(partition_to_coloring(&g, &w).unwrap().is_critical(t, k));
        }
    }

    #[test]
    fn max_red_matches_naive(g in small_graph(), (t, k) in tk()) {
        let best = max_red_critical_coloring(&g, t, k, SearchBudget::default()).unwrap();
        prop_assert_eq!(best.as_ref().map(|c| c.red_count()), naive_max_red(&g, t, k));
        if let Some(c) = best {
            prop_assert!(c.is_critical(t, k));
        }
    }

    #[test]
    fn witness_is_preserved_by_relabelling(g in small_graph(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_relabel(&mut rng, &g);
        for (t, k) in [(3, 3), (4, 3)] {
            let a = exists_critical_coloring(&g, t, k, SearchBudget::default()).unwrap().status;
            let b = exists_critical_coloring(&h, t, k, SearchBudget::default()).unwrap().status;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn percolation_invariants_hold_on_random_graphs(seed in any::<u64>(), q in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(5..=14);
        let m = rng.gen_range(n..=n * (n - 1) / 2);
        let g = random_gnm(&mut rng, n, m);
        prop_assume!(g.min_degree() >= q);
        let blocks = BlockPartition::singletons(n);
        let out = run(&g, &blocks, q, None, RunOptions { mode: Mode::Exploratory, verbose: true }).unwrap();
        prop_assert!(out.certificate.holds);
        prop_assert!(out.certificate.edges >= q * (n - out.certificate.r_final));
        prop_assert_eq!(out.trace.len(), out.certificate.iterations + 1);
    }
}

#[test]
fn clique_core_agrees_with_stable_family_on_all_small_graphs() {
    for n in 1..=7 {
        for g in all_graphs(n).unwrap() {
            let omega = g.clique_number();
            let direct = g.cliques(omega).into_iter().fold(g.vertices(), |a, c| a.intersection(c));
            assert_eq!(clique_core(&g, omega).unwrap(), direct);
            assert_eq!(stable_family_stats(&g.complement()).unwrap().intersection, direct);
        }
    }
}

#[test]
fn cocritical_spot_checks_by_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    for n in 5..=7 {
        for g in all_graphs(n).unwrap() {
            let r = is_cocritical(&g, 3, 3, SearchBudget::default()).unwrap();
            if !r.is_cocritical {
                continue;
            }
            seen += 1;
            assert!(!g.is_complete());
            assert!(n >= construction::ramsey_number(3, 3));
            let non_edges = g.non_edges();
            for _ in 0..3 {
                let (u, v) = non_edges[rng.gen_range(0..non_edges.len())];
                if g.edge_count() < BRUTE_FORCE_EDGE_CAP {
                    assert!(!brute_force_exists(&g.with_edge(u, v), 3, 3).unwrap());
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn min_search_witnesses_survive_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 5..=6 {
        let found = min_cocritical_search(3, 3, n, SearchBudget::default()).unwrap();
        for w in &found.witnesses {
            let h = random_relabel(&mut rng, w);
            assert!(is_cocritical(&h, 3, 3, SearchBudget::default()).unwrap().is_cocritical);
            let base = is_cocritical(w, 3, 3, SearchBudget::default()).unwrap().base_witness.unwrap();
            let c = partition_to_coloring(w, &base).unwrap();
            assert!(critical_structure_check(w, &c, 3, 3).unwrap().is_empty());
        }
    }
}

#[test]
fn every_coloring_of_the_small_construction_has_the_same_shape() {
    let p = ConstructionParams::new(4, 3, 13).unwrap();
    let (g, _) = build(&p).unwrap();
    let shape = RoleLayout::new(&p).distinguished_blocks().size_multiset();
    let all = enumerate_critical_colorings(&g, 4, 3, SearchBudget::default()).unwrap();
    assert!(!all.truncated && !all.budget_exceeded);
    assert!(!all.colorings.is_empty());
    for c in &all.colorings {
        assert_eq!(c.blue_blocks().size_multiset(), shape);
    }
}
