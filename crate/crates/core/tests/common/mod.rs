//! Test-side oracles and corpora, written without the library's solvers.
#![allow(dead_code)]

use listcol::detect::{find_induced_containing, Pattern};
use listcol::gen::{generate, random_lists, rng, GenParams};
use listcol::solver::Target;
use listcol::{Colouring, ColourSet, Graph, VertexId};
use rand::Rng;

/// Backtracking list colouring that always branches on the vertex with the
/// fewest remaining colours.
pub fn brute(g: &Graph, lists: &[ColourSet]) -> Option<Vec<(VertexId, u8)>> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut col: Vec<u8> = vec![0; g.id_bound()];
    fn avail(g: &Graph, lists: &[ColourSet], col: &[u8], v: VertexId) -> Vec<u8> {
        lists[v.index()]
            .iter()
            .filter(|&c| g.neighbours(v).iter().all(|w| col[w.index()] != c))
            .collect()
    }
    fn rec(g: &Graph, lists: &[ColourSet], vs: &[VertexId], col: &mut [u8], left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let mut best: Option<(VertexId, Vec<u8>)> = None;
        for &v in vs {
            if col[v.index()] != 0 {
                continue;
            }
            let a = avail(g, lists, col, v);
            if best.as_ref().map_or(true, |(_, b)| a.len() < b.len()) {
                let done = a.is_empty();
                best = Some((v, a));
                if done {
                    break;
                }
            }
        }
        let (v, a) = best.unwrap();
        for c in a {
            col[v.index()] = c;
            if rec(g, lists, vs, col, left - 1) {
                return true;
            }
        }
        col[v.index()] = 0;
        false
    }
    if rec(g, lists, &vs, &mut col, vs.len()) {
        Some(vs.iter().map(|&v| (v, col[v.index()])).collect())
    } else {
        None
    }
}

pub fn colourable(g: &Graph, lists: &[ColourSet]) -> bool {
    brute(g, lists).is_some()
}

/// Every vertex coloured from its list, every edge bichromatic.
pub fn certificate_ok(g: &Graph, lists: &[ColourSet], col: &Colouring) -> bool {
    g.vertices()
        .all(|v| col.get(v).is_some_and(|c| lists[v.index()].contains(c)))
        && g.edges().all(|(u, v)| col.get(u) != col.get(v))
}

/// A `P7` on `0..7`, then each new vertex joins the path with probability
/// `pp` per path vertex and the rest with `pe`, resampled until no pattern
/// appears and the vertex has a neighbour.
pub fn sparse_anchor(seed: u64, n: usize, pp: f64, pe: f64, forbid: &[Pattern]) -> Option<Graph> {
    let mut r = rng(seed);
    let mut g = Graph::path(7);
    while g.vertex_count() < n {
        let v = g.add_vertex();
        let mut placed = false;
        for _ in 0..2000 {
            for u in 0..v.0 {
                let p = if u < 7 { pp } else { pe };
                if r.gen_bool(p) {
                    g.add_edge(VertexId(u), v).unwrap();
                }
            }
            let free = forbid
                .iter()
                .all(|p| find_induced_containing(&g, p, v).unwrap().is_none());
            if free && g.degree(v) > 0 {
                placed = true;
                break;
            }
            for u in 0..v.0 {
                g.remove_edge(VertexId(u), v);
            }
        }
        if !placed {
            return None;
        }
    }
    Some(g)
}

pub struct Case {
    pub target: Target,
    pub seed: u64,
    pub graph: Graph,
    pub lists: Vec<ColourSet>,
}

/// Connected `H`-free graphs on 10 to 16 vertices with an induced `P7` and
/// random lists: `count` from the rejection sampler, then `sparse` built
/// around a sparsely attached anchor.
pub fn mid_corpus(target: Target, count: usize, sparse: usize) -> Vec<Case> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        seed += 1;
        let n = 10 + (seed % 7) as usize;
        let density = [0.15, 0.25, 0.35, 0.5][(seed / 7 % 4) as usize];
        let forbid = if seed % 4 == 0 {
            vec![target.pattern()]
        } else {
            vec![Pattern::k4(), target.pattern()]
        };
        let mut params = GenParams::new(n, density, forbid, true, seed);
        params.attempts = 1_000_000;
        let Ok(g) = generate(&params) else { continue };
        if !g.is_connected() {
            continue;
        }
        let mut r = rng(seed ^ 0x5eed);
        let lists = random_lists(&g, 3, 2 + (seed % 2) as usize, &mut r);
        out.push(Case { target, seed, graph: g, lists });
    }
    let forbid = vec![Pattern::k4(), target.pattern()];
    let mut made = 0;
    while made < sparse {
        seed += 1;
        let n = 14 + (seed % 3) as usize;
        let Some(g) = sparse_anchor(seed, n, 0.08, 0.4, &forbid) else { continue };
        if !g.is_connected() {
            continue;
        }
        let mut r = rng(seed ^ 0x5eed);
        let lists = g
            .vertices()
            .map(|_| {
                if r.gen_bool(0.8) {
                    ColourSet::full(3)
                } else {
                    ColourSet::full(3).without(r.gen_range(1..=3))
                }
            })
            .collect();
        out.push(Case { target, seed, graph: g, lists });
        made += 1;
    }
    out
}
