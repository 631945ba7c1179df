mod common;

use std::collections::{BTreeMap, BTreeSet};

use chargraph::arith::{factorize, prime_divisors, zsigmondy};
use chargraph::classify::{self, Case};
use chargraph::degrees::{cd_direct_product, graph_psl2, GroupModel};
use chargraph::shapes::{eval_shape, parse_shape, render_shape};
use chargraph::{graph_from_cd, CharGraph, DegreeSet, GraphExpr};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape_strategy() -> impl Strategy<Value = GraphExpr> {
    let leaf = prop_oneof![
        (0usize..=3).prop_map(GraphExpr::Complete),
        (3usize..=4).prop_map(GraphExpr::Cycle),
    ];
    leaf.prop_recursive(3, 7, 3, |inner| {
        prop_oneof![
            inner
                .clone()
                .prop_filter("single complement", |e| !matches!(e, GraphExpr::Complement(_)))
                .prop_map(GraphExpr::complement),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(GraphExpr::Union),
            prop::collection::vec(inner, 2..=3).prop_map(GraphExpr::Join),
        ]
    })
}

fn graph_strategy(max_vertices: usize) -> impl Strategy<Value = CharGraph> {
    (0..=max_vertices, any::<u64>(), 0.0f64..1.0)
        .prop_map(|(n, seed, p)| common::random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p))
}

fn relabel(g: &CharGraph, seed: u64) -> (CharGraph, BTreeMap<u64, u64>) {
    let old: Vec<u64> = g.vertices().collect();
    let mut fresh: Vec<u64> = (2u64..).filter(|&v| chargraph::is_prime(v)).take(old.len() + 5).collect();
    fresh.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let map: BTreeMap<u64, u64> = old.iter().copied().zip(fresh).collect();
    let h = CharGraph::new(map.values().copied(), g.edges().map(|(a, b)| (map[&a], map[&b]))).unwrap();
    (h, map)
}

#[test]
fn factorization_matches_trial_division_up_to_a_million() {
    for n in 1..=1_000_000u64 {
        let f = factorize(n).unwrap();
        assert_eq!(f.product(), n);
        let mut oracle = BTreeSet::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                oracle.insert(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            oracle.insert(m);
        }
        assert_eq!(f.primes(), oracle, "n = {n}");
    }
}

#[test]
fn zsigmondy_base_two_exhaustive() {
    for n in 1..=40u32 {
        match zsigmondy(2, n).unwrap() {
            None => assert!(n == 1 || n == 6, "n = {n}"),
            Some(p) => {
                assert_eq!(((1u64 << n) - 1) % p, 0);
                assert!((1..n).all(|k| !((1u64 << k) - 1).is_multiple_of(p)));
            }
        }
    }
}

proptest! {
    #[test]
    fn factorization_invariants(n in 1u64..) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.product(), n);
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(f.factors().iter().all(|&(p, e)| chargraph::is_prime(p) && e >= 1));
    }

    #[test]
    fn product_join_duality(seed in any::<u64>()) {
        let (a, b) = common::random_disjoint_pair(&mut ChaCha8Rng::seed_from_u64(seed));
        let prod = cd_direct_product(&[
            GroupModel::Solvable { degrees: a.clone() },
            GroupModel::Solvable { degrees: b.clone() },
        ]).unwrap();
        let joined = graph_from_cd(&a).unwrap().join(&graph_from_cd(&b).unwrap()).unwrap();
        prop_assert_eq!(graph_from_cd(&prod).unwrap(), joined);
    }

    #[test]
    fn complement_and_induced_identities(g in graph_strategy(12)) {
        prop_assert_eq!(&g.complement().complement(), &g);
        prop_assert_eq!(&g.induced(&g.vertex_set()).unwrap(), &g);
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), g.vertex_count() * g.vertex_count().saturating_sub(1) / 2);
    }

    #[test]
    fn kn_free_is_monotone(g in graph_strategy(10), mask in any::<u16>(), n in 2usize..6) {
        let subset: BTreeSet<u64> = g.vertices().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).collect();
        if g.is_kn_free(n).unwrap() {
            prop_assert!(g.induced(&subset).unwrap().is_kn_free(n).unwrap());
        }
    }

    #[test]
    fn isomorphism_survives_relabeling(g in graph_strategy(9), seed in any::<u64>()) {
        let (h, _) = relabel(&g, seed);
        let map = g.isomorphism_to(&h).unwrap();
        prop_assert!(map.is_some());
        let map = map.unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                prop_assert_eq!(g.has_edge(a, b), h.has_edge(map[&a], map[&b]));
            }
        }
    }

    #[test]
    fn isomorphism_matches_permutation_search(a in graph_strategy(6), b in graph_strategy(6)) {
        let found = a.isomorphism_to(&b).unwrap().is_some();
        let exhaustive = brute_isomorphic(&a, &b);
        prop_assert_eq!(found, exhaustive);
    }

    #[test]
    fn odd_triples_force_non_bipartite_complement(g in graph_strategy(10)) {
        if !g.odd_cycle_triples().is_empty() {
            prop_assert!(!g.complement().is_bipartite());
        }
        prop_assert_eq!(classify::check_palfy(&g), g.odd_cycle_triples().is_empty());
    }

    #[test]
    fn shape_round_trip(e in shape_strategy()) {
        let text = render_shape(&e);
        prop_assert_eq!(parse_shape(&text).unwrap(), e.clone());
        prop_assert_eq!(eval_shape(&e).vertex_count(), e.vertex_count());
    }

    #[test]
    fn complement_of_union_is_join_of_complements(a in shape_strategy(), b in shape_strategy()) {
        prop_assume!(a.vertex_count() + b.vertex_count() <= 10);
        let lhs = eval_shape(&GraphExpr::complement(GraphExpr::Union(vec![a.clone(), b.clone()])));
        let rhs = eval_shape(&GraphExpr::Join(vec![GraphExpr::complement(a), GraphExpr::complement(b)]));
        prop_assert!(lhs.isomorphism_to(&rhs).unwrap().is_some());
    }

    #[test]
    fn direct_product_commutes_and_associates(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let pool = [2u64, 3, 5, 7];
        let m = |s| GroupModel::Solvable {
            degrees: common::random_degree_set(&mut ChaCha8Rng::seed_from_u64(s), &pool),
        };
        let (a, b, c) = (m(s1), m(s2), m(s3));
        prop_assert_eq!(cd_direct_product(&[a.clone(), b.clone()]).unwrap(), cd_direct_product(&[b.clone(), a.clone()]).unwrap());
        let ab = GroupModel::Product { factors: vec![a.clone(), b.clone()] };
        let bc = GroupModel::Product { factors: vec![b, c.clone()] };
        prop_assert_eq!(cd_direct_product(&[ab, c]).unwrap(), cd_direct_product(&[a, bc]).unwrap());
    }
}

fn brute_isomorphic(a: &CharGraph, b: &CharGraph) -> bool {
    let va: Vec<u64> = a.vertices().collect();
    let vb: Vec<u64> = b.vertices().collect();
    if va.len() != vb.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..vb.len()).collect();
    loop {
        let ok = (0..va.len())
            .all(|i| (0..va.len()).all(|j| a.has_edge(va[i], va[j]) == b.has_edge(vb[perm[i]], vb[perm[j]])));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[test]
fn even_q_graph_has_three_components() {
    for f in 2..=40u32 {
        let q = 1u64 << f;
        let g = graph_psl2(q).unwrap();
        let expected = vec![
            BTreeSet::from([2]),
            prime_divisors(q - 1).unwrap(),
            prime_divisors(q + 1).unwrap(),
        ];
        let mut got = g.connected_components();
        got.sort_by_key(|c| (c.contains(&2), *c.first().unwrap()));
        let mut want = expected;
        want.sort_by_key(|c| (c.contains(&2), *c.first().unwrap()));
        assert_eq!(got, want, "f = {f}");
        assert!(!classify::check_palfy(&g), "f = {f}");
    }
}

#[test]
fn every_case_bearing_f_verifies() {
    let mut seen = BTreeMap::new();
    for f in 2..=40u32 {
        let report = classify::classify_f(f).unwrap();
        if report.case == Case::None {
            continue;
        }
        let radical = classify::synthetic_radical(f).unwrap();
        let verified = classify::verify_main(f, &radical).unwrap();
        assert!(verified.verified, "f = {f}");
        let checks = verified.checks.unwrap();
        let expected_split = match report.case {
            Case::I => (3, 4),
            Case::II => (5, 2),
            Case::III => (7, 0),
            Case::None => unreachable!(),
        };
        assert_eq!((checks.socle_vertices, checks.radical_vertices), expected_split, "f = {f}");
        seen.insert(f, report.case);
    }
    // table computed independently with sympy.primefactors
    assert_eq!(
        seen,
        BTreeMap::from([
            (2, Case::I),
            (3, Case::I),
            (6, Case::II),
            (9, Case::II),
            (11, Case::II),
            (14, Case::III),
            (15, Case::III),
            (21, Case::III),
            (23, Case::II),
            (27, Case::III),
            (29, Case::III),
        ])
    );
}

#[test]
fn scanners_have_no_counterexamples_over_full_ranges() {
    let interest = classify::scan_lemma_interest(classify::MAX_F).unwrap();
    assert!(interest.iter().all(|h| h.clause.is_some()));
    let evenfive = classify::scan_lemma_evenfive(classify::MAX_F).unwrap();
    assert!(evenfive.iter().all(|h| h.conforming));
    let oddfour = classify::scan_lemma_oddfour(classify::MAX_ODD_Q).unwrap();
    assert!(oddfour.iter().all(|h| h.clause.is_some()));
}

#[test]
fn scan_results_are_sorted_and_deterministic() {
    let a = classify::scan_lemma_oddfour(20_000).unwrap();
    let b = classify::scan_lemma_oddfour(20_000).unwrap();
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0].q < w[1].q));
}

#[test]
fn degree_sets_from_json() {
    let d: DegreeSet = serde_json::from_str(r#"{"degrees":[1,5,11]}"#).unwrap();
    assert_eq!(graph_from_cd(&d).unwrap().vertex_count(), 2);
}
