//! Seeded generators shared by the property and acceptance suites.

#![allow(dead_code)]

use std::collections::BTreeSet;

use chargraph::{CharGraph, DegreeSet, GraphExpr};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SMALL_PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// A random shape with at most `budget` vertices and depth at most
/// `depth`. Unions and joins always get two or more operands, so rendering
/// round-trips.
pub fn random_shape<R: Rng>(rng: &mut R, budget: usize, depth: usize) -> GraphExpr {
    let leaf = |rng: &mut R| {
        if budget >= 3 && rng.gen_bool(0.3) {
            GraphExpr::Cycle(rng.gen_range(3..=budget.min(5)))
        } else {
            GraphExpr::Complete(rng.gen_range(1..=budget.clamp(1, 4)))
        }
    };
    if depth <= 1 || budget < 2 {
        return leaf(rng);
    }
    match rng.gen_range(0..4) {
        0 => leaf(rng),
        1 => {
            let inner = random_shape(rng, budget, depth - 1);
            if matches!(inner, GraphExpr::Complement(_)) {
                inner
            } else {
                GraphExpr::complement(inner)
            }
        }
        kind => {
            let parts = rng.gen_range(2..=budget.min(3));
            let mut remaining = budget;
            let mut children = Vec::with_capacity(parts);
            for i in 0..parts {
                let left_for_rest = parts - i - 1;
                let share = if left_for_rest == 0 {
                    remaining
                } else {
                    rng.gen_range(1..=remaining - left_for_rest)
                };
                let child = random_shape(rng, share, depth - 1);
                remaining -= child.vertex_count();
                children.push(child);
            }
            if kind == 2 {
                GraphExpr::Union(children)
            } else {
                GraphExpr::Join(children)
            }
        }
    }
}

/// A random degree set whose primes all come from `pool`.
pub fn random_degree_set<R: Rng>(rng: &mut R, pool: &[u64]) -> DegreeSet {
    let mut degrees = BTreeSet::from([1u64]);
    if pool.is_empty() {
        return DegreeSet::new(degrees).unwrap();
    }
    for _ in 0..rng.gen_range(0..=4) {
        let k = rng.gen_range(1..=pool.len().min(3));
        let d = pool
            .choose_multiple(rng, k)
            .map(|&p| p.pow(rng.gen_range(1..=2)))
            .product();
        degrees.insert(d);
    }
    DegreeSet::new(degrees).unwrap()
}

/// Two degree sets over disjoint prime pools.
pub fn random_disjoint_pair<R: Rng>(rng: &mut R) -> (DegreeSet, DegreeSet) {
    let mut primes = SMALL_PRIMES.to_vec();
    primes.shuffle(rng);
    let split = rng.gen_range(0..=primes.len());
    let (left, right) = primes.split_at(split);
    let take_l = rng.gen_range(0..=left.len().min(4));
    let take_r = rng.gen_range(0..=right.len().min(4));
    (
        random_degree_set(rng, &left[..take_l]),
        random_degree_set(rng, &right[..take_r]),
    )
}

/// Random graph on the first `n` primes with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> CharGraph {
    let vs: Vec<u64> = (2u64..).filter(|&v| chargraph::is_prime(v)).take(n).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((vs[i], vs[j]));
            }
        }
    }
    CharGraph::new(vs, edges).unwrap()
}
