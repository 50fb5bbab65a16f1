//! All graphs on a few vertices, one per isomorphism class.
//!
//! Graphs on `n` vertices are built by adding a vertex to every class on
//! `n - 1` vertices with every possible neighbourhood. Each candidate is
//! reduced to a canonical code, the smallest edge bitmask over all vertex
//! permutations, and kept once.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub const MAX_ENUMERATE: usize = 7;

/// Bit index of the pair `u < v` in an edge mask.
fn bit(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

fn adjacency(n: usize, code: u32) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        for u in 0..v {
            if code >> bit(u, v) & 1 == 1 {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    adj
}

/// Smallest edge mask over all relabellings.
pub fn canonical_code(n: usize, code: u32) -> u32 {
    let adj = adjacency(n, code);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    permute(&adj, &mut perm, 0, &mut best);
    best
}

fn permute(adj: &[Vec<bool>], perm: &mut [usize], k: usize, best: &mut u32) {
    let n = perm.len();
    if k == n {
        let mut code = 0u32;
        for v in 1..n {
            for u in 0..v {
                if adj[perm[u]][perm[v]] {
                    code |= 1 << bit(u, v);
                }
            }
        }
        *best = (*best).min(code);
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(adj, perm, k + 1, best);
        perm.swap(k, i);
    }
}

fn to_graph(n: usize, code: u32) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        for u in 0..v {
            if code >> bit(u, v) & 1 == 1 {
                g.add_edge(VertexId(u as u32), VertexId(v as u32)).expect("distinct");
            }
        }
    }
    g
}

/// Canonical codes of all graphs on `n` vertices, ascending.
pub fn codes(n: usize) -> Result<Vec<u32>> {
    if n > MAX_ENUMERATE {
        return Err(Error::usage(format!("enumeration covers at most {MAX_ENUMERATE} vertices")));
    }
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    for m in 1..n {
        let mut next = BTreeSet::new();
        for &code in &level {
            for nbrs in 0u32..1 << m {
                let mut c = code;
                for u in 0..m {
                    if nbrs >> u & 1 == 1 {
                        c |= 1 << bit(u, m);
                    }
                }
                next.insert(canonical_code(m + 1, c));
            }
        }
        level = next;
    }
    Ok(if n == 0 { Vec::new() } else { level.into_iter().collect() })
}

/// One graph per isomorphism class on `n` vertices.
pub fn graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(codes(n)?.into_iter().map(|c| to_graph(n, c)).collect())
}

/// One connected graph per isomorphism class on `n` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs(n)?.into_iter().filter(|g| g.is_connected()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_codes_ignore_labels() {
        // Paths 0-1-2 and 1-0-2.
        let a = 1 << bit(0, 1) | 1 << bit(1, 2);
        let b = 1 << bit(0, 1) | 1 << bit(0, 2);
        assert_eq!(canonical_code(3, a), canonical_code(3, b));
        assert_ne!(canonical_code(3, a), canonical_code(3, 0));
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11]);
        assert!(codes(8).is_err());
    }
}
