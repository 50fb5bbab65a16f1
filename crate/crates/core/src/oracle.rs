//! Exact list colouring by backtracking, and a brute-force NAE-3SAT solver.
//!
//! The oracle makes no structural assumptions about its input. It keeps a
//! domain per vertex, removes an assigned colour from every uncoloured
//! neighbour (forward checking) and backtracks on the first empty domain.

use std::time::{Duration, Instant};

use crate::colour::{Colour, ColourSet};
use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::gadget::NaeFormula;
use crate::graph::{Graph, VertexId};

/// Node and wall-clock limits for one oracle call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 10_000_000,
            time: Duration::from_secs(60),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            nodes: u64::MAX,
            time: Duration::MAX,
        }
    }
}

/// Variable selection strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Order {
    /// Smallest remaining domain first, ties by vertex id.
    #[default]
    SmallestDomain,
    /// Static order by decreasing degree, ties by vertex id.
    MaxDegree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(Colouring),
    No,
    Exhausted,
}

impl OracleAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleAnswer::Yes(_))
    }

    /// `Some(true)` for yes, `Some(false)` for no, `None` when exhausted.
    pub fn decided(&self) -> Option<bool> {
        match self {
            OracleAnswer::Yes(_) => Some(true),
            OracleAnswer::No => Some(false),
            OracleAnswer::Exhausted => None,
        }
    }

    /// Turn `Exhausted` into an error.
    pub fn into_result(self) -> Result<Option<Colouring>> {
        match self {
            OracleAnswer::Yes(c) => Ok(Some(c)),
            OracleAnswer::No => Ok(None),
            OracleAnswer::Exhausted => Err(Error::OracleExhausted),
        }
    }
}

/// Decide whether `g` has a colouring respecting `lists` (indexed by id).
pub fn list_colour(g: &Graph, lists: &[ColourSet], budget: Budget) -> OracleAnswer {
    list_colour_with(g, lists, budget, Order::SmallestDomain)
}

pub fn list_colour_with(
    g: &Graph,
    lists: &[ColourSet],
    budget: Budget,
    order: Order,
) -> OracleAnswer {
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut index = vec![usize::MAX; g.id_bound()];
    for (i, v) in verts.iter().enumerate() {
        index[v.index()] = i;
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| g.neighbours(v).iter().map(|w| index[w.index()]).collect())
        .collect();
    let domains: Vec<u8> = verts.iter().map(|v| lists[v.index()].bits()).collect();
    let static_order = match order {
        Order::SmallestDomain => None,
        Order::MaxDegree => {
            let mut o: Vec<usize> = (0..verts.len()).collect();
            o.sort_by_key(|&i| (std::cmp::Reverse(adj[i].len()), i));
            Some(o)
        }
    };
    let mut search = Search {
        adj,
        domains,
        assigned: vec![0; verts.len()],
        trail: Vec::new(),
        nodes: 0,
        budget,
        started: Instant::now(),
        static_order,
        exhausted: false,
    };
    if search.domains.iter().any(|&d| d == 0) {
        return OracleAnswer::No;
    }
    if search.run(0) {
        OracleAnswer::Yes(
            verts
                .iter()
                .zip(&search.assigned)
                .map(|(&v, &c)| (v, c))
                .collect(),
        )
    } else if search.exhausted {
        OracleAnswer::Exhausted
    } else {
        OracleAnswer::No
    }
}

struct Search {
    adj: Vec<Vec<usize>>,
    domains: Vec<u8>,
    assigned: Vec<Colour>,
    /// `(vertex, previous domain)` pairs to undo.
    trail: Vec<(usize, u8)>,
    nodes: u64,
    budget: Budget,
    started: Instant,
    static_order: Option<Vec<usize>>,
    exhausted: bool,
}

impl Search {
    fn pick(&self, depth: usize) -> Option<usize> {
        match &self.static_order {
            Some(order) => order.get(depth).copied(),
            None => (0..self.domains.len())
                .filter(|&i| self.assigned[i] == 0)
                .min_by_key(|&i| (self.domains[i].count_ones(), i)),
        }
    }

    fn over_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.nodes
            || (self.nodes % 1024 == 0 && self.started.elapsed() > self.budget.time)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn run(&mut self, depth: usize) -> bool {
        let Some(v) = self.pick(depth) else {
            return true;
        };
        for c in ColourSet::from_bits(self.domains[v]).iter() {
            if self.over_budget() {
                return false;
            }
            let mark = self.trail.len();
            let bit = 1u8 << (c - 1);
            let mut ok = true;
            for &w in &self.adj[v] {
                if self.assigned[w] == 0 && self.domains[w] & bit != 0 {
                    self.trail.push((w, self.domains[w]));
                    self.domains[w] &= !bit;
                    if self.domains[w] == 0 {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.assigned[v] = c;
                if self.run(depth + 1) {
                    return true;
                }
                self.assigned[v] = 0;
            }
            while self.trail.len() > mark {
                let (w, d) = self.trail.pop().unwrap();
                self.domains[w] = d;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Largest formula `nae_brute` accepts.
pub const NAE_MAX_VARS: usize = 24;

/// Exhaustive not-all-equal search. Variables are `1..=n`; the returned
/// assignment is indexed by `i - 1`.
pub fn nae_brute(f: &NaeFormula) -> Result<Option<Vec<bool>>> {
    if f.vars() > NAE_MAX_VARS {
        return Err(Error::usage(format!(
            "{} variables exceeds the limit of {NAE_MAX_VARS}",
            f.vars()
        )));
    }
    let masks: Vec<[u32; 3]> = f
        .clauses()
        .iter()
        .map(|c| c.map(|x| 1u32 << (x - 1)))
        .collect();
    for bits in 0u32..(1u32 << f.vars()) {
        let ok = masks.iter().all(|m| {
            let t = m.iter().filter(|&&b| bits & b != 0).count();
            t != 0 && t != 3
        });
        if ok {
            return Ok(Some((0..f.vars()).map(|i| bits >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(g: &Graph, k: u8) -> Vec<ColourSet> {
        vec![ColourSet::full(k); g.id_bound()]
    }

    #[test]
    fn classic_graphs() {
        let k4 = Graph::complete(4);
        assert_eq!(list_colour(&k4, &full(&k4, 3), Budget::default()), OracleAnswer::No);
        let p = Graph::petersen();
        for order in [Order::SmallestDomain, Order::MaxDegree] {
            let ans = list_colour_with(&p, &full(&p, 3), Budget::default(), order);
            let OracleAnswer::Yes(c) = ans else { panic!() };
            c.verify(&p, &full(&p, 3)).unwrap();
            assert!(!list_colour_with(&p, &full(&p, 2), Budget::default(), order).is_yes());
        }
        let c5 = Graph::cycle(5);
        assert!(!list_colour(&c5, &full(&c5, 2), Budget::default()).is_yes());
        assert!(list_colour(&Graph::star(4), &full(&Graph::star(4), 2), Budget::default()).is_yes());
    }

    #[test]
    fn budget_is_reported() {
        // K_9 with three colours needs a full refutation; one node is not enough.
        let g = Graph::complete(9);
        let tiny = Budget {
            nodes: 1,
            time: Duration::from_secs(60),
        };
        assert_eq!(list_colour(&g, &full(&g, 3), tiny), OracleAnswer::Exhausted);
    }

    #[test]
    fn nae_examples() {
        let one = NaeFormula::new(3, vec![[1, 2, 3]]).unwrap();
        let a = nae_brute(&one).unwrap().unwrap();
        assert!(one.nae_satisfied(&a));
        let triple = NaeFormula::new(1, vec![[1, 1, 1]]).unwrap();
        assert_eq!(nae_brute(&triple).unwrap(), None);
        let big = NaeFormula::new(25, vec![]).unwrap();
        assert!(nae_brute(&big).is_err());
    }
}
