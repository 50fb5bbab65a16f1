//! Seeded random graphs avoiding forbidden induced subgraphs.
//!
//! Vertices are added one at a time. Each new vertex draws its edges to the
//! earlier vertices independently; a draw that creates a forbidden pattern
//! through the new vertex is rejected and redrawn. With `require_p7` the
//! first seven vertices form an induced path. The result is relabelled by a
//! random permutation so the path does not sit at fixed ids.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colour::ColourSet;
use crate::detect::{find_induced_containing, find_induced_path, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub const MAX_VERTICES: usize = 10_000;

#[derive(Clone, Debug)]
pub struct GenParams {
    pub n: usize,
    /// Edge probability for each pair.
    pub density: f64,
    pub forbid: Vec<Pattern>,
    pub require_p7: bool,
    pub seed: u64,
    /// Redraws allowed across the whole run.
    pub attempts: usize,
}

impl GenParams {
    pub fn new(n: usize, density: f64, forbid: Vec<Pattern>, require_p7: bool, seed: u64) -> Self {
        GenParams {
            n,
            density,
            forbid,
            require_p7,
            seed,
            attempts: 100_000,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn creates_pattern(g: &Graph, forbid: &[Pattern], v: VertexId) -> Result<bool> {
    for p in forbid {
        if find_induced_containing(g, p, v)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Sample a graph as described in the module docs.
pub fn generate(params: &GenParams) -> Result<Graph> {
    let mut r = rng(params.seed);
    generate_with(params, &mut r)
}

pub fn generate_with<R: Rng>(params: &GenParams, rng: &mut R) -> Result<Graph> {
    if params.n > MAX_VERTICES {
        return Err(Error::usage(format!("at most {MAX_VERTICES} vertices")));
    }
    if !(0.0..=1.0).contains(&params.density) {
        return Err(Error::usage("density must lie in [0, 1]"));
    }
    if params.require_p7 && params.n < 7 {
        return Err(Error::usage("an induced P7 needs at least 7 vertices"));
    }
    let seeded = if params.require_p7 { 7 } else { 0 };
    let mut g = if params.require_p7 { Graph::path(7) } else { Graph::new(0) };
    let mut spent = 0;
    for v in 0..seeded {
        if creates_pattern(&g, &params.forbid, VertexId(v))? {
            return Err(Error::usage("the forbidden patterns exclude P7"));
        }
    }
    while g.vertex_count() < params.n {
        let v = g.add_vertex();
        loop {
            spent += 1;
            if spent > params.attempts {
                return Err(Error::SamplingExhausted(spent - 1));
            }
            for u in 0..v.0 {
                if rng.gen_bool(params.density) {
                    g.add_edge(VertexId(u), v)?;
                }
            }
            if !creates_pattern(&g, &params.forbid, v)? {
                break;
            }
            for u in 0..v.0 {
                g.remove_edge(VertexId(u), v);
            }
        }
    }
    let mut perm: Vec<u32> = (0..params.n as u32).collect();
    perm.shuffle(rng);
    let edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (perm[u.index()], perm[v.index()])).collect();
    let out = Graph::from_edges(params.n, &edges);
    debug_assert!(!params.require_p7 || find_induced_path(&out, 7).is_some());
    Ok(out)
}

/// Independent random lists: each non-empty subset of `{1..k}` with size at
/// least `min_size`, uniformly.
pub fn random_lists<R: Rng>(g: &Graph, k: u8, min_size: usize, rng: &mut R) -> Vec<ColourSet> {
    let choices: Vec<ColourSet> = (1..1u8 << k)
        .map(ColourSet::from_bits)
        .filter(|s| s.len() >= min_size.max(1))
        .collect();
    let mut lists = vec![ColourSet::EMPTY; g.id_bound()];
    for v in g.vertices() {
        lists[v.index()] = *choices.choose(rng).expect("some subset qualifies");
    }
    lists
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{is_free_of, Pattern};

    #[test]
    fn deterministic_and_free() {
        let forbid = vec![Pattern::k4(), Pattern::p3p4()];
        let p = GenParams::new(14, 0.3, forbid.clone(), true, 1);
        let a = generate(&p).unwrap();
        let b = generate(&p).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert!(is_free_of(&a, &forbid).unwrap());
        assert!(find_induced_path(&a, 7).is_some());
    }

    #[test]
    fn forbidding_an_edge_gives_edgeless_graphs() {
        let p = GenParams::new(12, 0.5, vec![Pattern::path(2)], false, 3);
        assert_eq!(generate(&p).unwrap().edge_count(), 0);
    }

    #[test]
    fn budget_and_usage_errors() {
        let mut p = GenParams::new(10, 1.0, vec![Pattern::complete(3)], false, 0);
        p.attempts = 5;
        assert!(matches!(generate(&p), Err(Error::SamplingExhausted(5))));
        let p = GenParams::new(5, 0.5, vec![], true, 0);
        assert!(generate(&p).is_err());
    }

    #[test]
    fn list_sizes_respected() {
        let g = Graph::cycle(30);
        let lists = random_lists(&g, 3, 2, &mut rng(9));
        assert!(lists.iter().all(|l| (2..=3).contains(&l.len())));
    }
}
