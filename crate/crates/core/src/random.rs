//! Seeded random instances for the verifier and property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coabelian::CoabelianSpec;
use crate::fpcheck::Character;
use crate::gog::{GogEdge, GogVertex, GraphOfFiniteGroups};
use crate::graph::{SimplicialGraph, VertexSet};

/// Erdős–Rényi graph on `n` vertices with edge probability `density`.
pub fn graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> SimplicialGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    SimplicialGraph::with_numbered_vertices(n, &edges).expect("random graph")
}

/// Nonempty random support, returned as a 0/1 character.
pub fn indicator<R: Rng>(rng: &mut R, p: u64, n: usize) -> Character {
    assert!(n > 0);
    let mut support: VertexSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if support.is_empty() {
        support.insert(rng.gen_range(0..n));
    }
    Character::indicator(p, n, &support).expect("prime checked by caller")
}

/// A nonzero integer in `[-bound, bound]`, p-divisible with probability 1/3.
pub fn nonzero_value<R: Rng>(rng: &mut R, p: u64, bound: i64) -> i64 {
    let base = loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            break x;
        }
    };
    if rng.gen_ratio(1, 3) {
        base * p as i64
    } else {
        base
    }
}

/// Same zero pattern as `chi`, fresh nonzero values.
pub fn reweight<R: Rng>(rng: &mut R, chi: &Character, bound: i64) -> Character {
    let p = chi.prime();
    let values = chi.values().iter().map(|&x| if x == 0 { 0 } else { nonzero_value(rng, p, bound) }).collect();
    Character::new(p, values).expect("prime unchanged")
}

pub fn matrix<R: Rng>(rng: &mut R, p: u64, rows: usize, cols: usize, bound: i64) -> CoabelianSpec {
    let rows = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    CoabelianSpec::new(p, rows).expect("prime checked by caller")
}

const ORDERS: [u64; 6] = [1, 2, 3, 4, 6, 8];

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Random connected graph of finite groups: a random spanning tree plus a
/// few extra edges and loops. With probability `proper_bias` each edge
/// order is a proper divisor of its endpoint orders when one exists.
pub fn graph_of_groups<R: Rng>(rng: &mut R, max_vertices: usize, proper_bias: f64) -> GraphOfFiniteGroups {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let vertices: Vec<GogVertex> =
        (0..n).map(|i| GogVertex { id: format!("v{i}"), order: *ORDERS.choose(rng).expect("nonempty") }).collect();
    let mut ends: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=n.min(3));
    for _ in 0..extra {
        ends.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    if n == 1 && ends.is_empty() && rng.gen_bool(0.7) {
        ends.push((0, 0));
    }
    let edges = ends
        .into_iter()
        .enumerate()
        .map(|(i, (d0, d1))| {
            let g = num_integer::gcd(vertices[d0].order, vertices[d1].order);
            let all = divisors(g);
            let proper: Vec<u64> = all
                .iter()
                .copied()
                .filter(|&d| d0 == d1 || (d != vertices[d0].order && d != vertices[d1].order))
                .collect();
            let pool = if !proper.is_empty() && rng.gen_bool(proper_bias) { proper } else { all };
            GogEdge { id: format!("e{i}"), d0, d1, order: *pool.choose(rng).expect("1 divides") }
        })
        .collect();
    GraphOfFiniteGroups::new(vertices, edges).expect("generator keeps divisibility and connectivity")
}
