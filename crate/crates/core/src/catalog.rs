//! Isomorphism classes of small graphs.
//!
//! Graphs on `n + 1` vertices are produced from the classes on `n` vertices
//! by adding one vertex with every possible neighbourhood, then deduplicated
//! by a canonical form (the largest upper-triangle bit
//! string over all vertex permutations). Fine for `n ≤ 7`.

use std::collections::BTreeSet;

use crate::graph::SimplicialGraph;

/// Upper-triangle adjacency bits in the order (0,1),(0,2),(1,2),(0,3),...
fn code(n: usize, adj: &[Vec<bool>], perm: &[usize]) -> u64 {
    let mut bits = 0u64;
    let mut k = 0;
    for b in 1..n {
        for a in 0..b {
            if adj[perm[a]][perm[b]] {
                bits |= 1 << k;
            }
            k += 1;
        }
    }
    bits
}

fn canonical(n: usize, adj: &[Vec<bool>]) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = code(n, adj, &perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.max(code(n, adj, &perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn decode(n: usize, bits: u64) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    let mut k = 0;
    for b in 1..n {
        for a in 0..b {
            if bits >> k & 1 == 1 {
                adj[a][b] = true;
                adj[b][a] = true;
            }
            k += 1;
        }
    }
    adj
}

fn to_graph(n: usize, adj: &[Vec<bool>]) -> SimplicialGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if adj[a][b] {
                edges.push((a, b));
            }
        }
    }
    SimplicialGraph::with_numbered_vertices(n, &edges).expect("catalog graph")
}

/// One representative per isomorphism class of graphs on exactly `n` vertices.
pub fn all_graphs(n: usize) -> Vec<SimplicialGraph> {
    assert!(n <= 8, "catalog enumeration is limited to 8 vertices");
    let mut classes: BTreeSet<u64> = BTreeSet::new();
    classes.insert(0);
    for size in 1..n {
        let mut next = BTreeSet::new();
        for &bits in &classes {
            let base = decode(size, bits);
            for nbhd in 0u32..(1 << size) {
                let mut adj = base.clone();
                for row in adj.iter_mut() {
                    row.push(false);
                }
                adj.push(vec![false; size + 1]);
                for v in 0..size {
                    if nbhd >> v & 1 == 1 {
                        adj[v][size] = true;
                        adj[size][v] = true;
                    }
                }
                next.insert(canonical(size + 1, &adj));
            }
        }
        classes = next;
    }
    if n == 0 {
        return vec![SimplicialGraph::with_numbered_vertices(0, &[]).expect("empty graph")];
    }
    classes.into_iter().map(|bits| to_graph(n, &decode(n, bits))).collect()
}

/// Connected graphs on `1..=max_vertices` vertices, up to isomorphism.
pub fn connected_graphs(max_vertices: usize) -> Vec<SimplicialGraph> {
    (1..=max_vertices)
        .flat_map(all_graphs)
        .filter(SimplicialGraph::is_connected)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // OEIS A000088 and A001349
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> =
            (1..=6).map(|n| all_graphs(n).into_iter().filter(SimplicialGraph::is_connected).count()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }
}
