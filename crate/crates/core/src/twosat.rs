//! 2-List Colouring through 2-satisfiability.
//!
//! Each vertex gets one boolean variable meaning "takes the first colour of
//! its list". An edge whose endpoints share a colour `c` yields the clause
//! "not both take `c`". Satisfiability is decided on the implication graph
//! with an iterative Tarjan SCC pass, so the whole solve is linear in the
//! size of the instance.

use crate::colour::ColourSet;
use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A 2-CNF formula over variables `0..n`. Literal `2x` is `x`, `2x + 1` is `¬x`.
#[derive(Clone, Debug)]
pub struct TwoSat {
    n: usize,
    clauses: Vec<(usize, usize)>,
}

pub fn lit(var: usize, value: bool) -> usize {
    2 * var + usize::from(!value)
}

impl TwoSat {
    pub fn new(n: usize) -> Self {
        TwoSat {
            n,
            clauses: Vec::new(),
        }
    }

    /// Add `a ∨ b`.
    pub fn clause(&mut self, a: usize, b: usize) {
        self.clauses.push((a, b));
    }

    /// A satisfying assignment, or `None`.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let m = 2 * self.n;
        // Implication graph in CSR form: ¬a → b and ¬b → a.
        let mut deg = vec![0u32; m + 1];
        for &(a, b) in &self.clauses {
            deg[a ^ 1] += 1;
            deg[b ^ 1] += 1;
        }
        let mut start = vec![0usize; m + 1];
        for i in 0..m {
            start[i + 1] = start[i] + deg[i] as usize;
        }
        let mut fill = start.clone();
        let mut targets = vec![0usize; start[m]];
        for &(a, b) in &self.clauses {
            targets[fill[a ^ 1]] = b;
            fill[a ^ 1] += 1;
            targets[fill[b ^ 1]] = a;
            fill[b ^ 1] += 1;
        }
        let comp = tarjan(m, &start, &targets);
        (0..self.n)
            .map(|x| {
                let (t, f) = (comp[2 * x], comp[2 * x + 1]);
                // Tarjan numbers components in reverse topological order.
                (t != f).then_some(t < f)
            })
            .collect()
    }
}

fn tarjan(m: usize, start: &[usize], targets: &[usize]) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; m];
    let mut low = vec![0; m];
    let mut comp = vec![NONE; m];
    let mut on_stack = vec![false; m];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..m {
        if index[root] != NONE {
            continue;
        }
        call.push((root, start[root]));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge < start[v + 1] {
                let w = targets[*edge];
                *edge += 1;
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, start[w]));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Decide a list colouring where every list has at most two colours.
/// `lists` is indexed by vertex id.
pub fn two_list_solve(g: &Graph, lists: &[ColourSet]) -> Result<Option<Colouring>> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut var = vec![usize::MAX; g.id_bound()];
    for (i, &v) in verts.iter().enumerate() {
        let l = lists[v.index()];
        if l.len() > 2 {
            return Err(Error::usage(format!(
                "vertex {v} has list {l} with more than two colours"
            )));
        }
        if l.is_empty() {
            return Ok(None);
        }
        var[v.index()] = i;
    }
    let mut sat = TwoSat::new(verts.len());
    for (i, &v) in verts.iter().enumerate() {
        if lists[v.index()].len() == 1 {
            sat.clause(lit(i, true), lit(i, true));
        }
    }
    for (u, v) in g.edges() {
        let (lu, lv) = (lists[u.index()], lists[v.index()]);
        for c in lu.intersection(lv).iter() {
            let a = lit(var[u.index()], lu.min() == Some(c));
            let b = lit(var[v.index()], lv.min() == Some(c));
            sat.clause(a ^ 1, b ^ 1);
        }
    }
    Ok(sat.solve().map(|assignment| {
        verts
            .iter()
            .zip(assignment)
            .map(|(&v, first)| {
                let l = lists[v.index()];
                let c = if first { l.min() } else { l.max() };
                (v, c.unwrap())
            })
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &Graph, lists: &[ColourSet]) -> bool {
        let verts: Vec<VertexId> = g.vertices().collect();
        let mut col = vec![0u8; g.id_bound()];
        fn rec(i: usize, verts: &[VertexId], g: &Graph, lists: &[ColourSet], col: &mut [u8]) -> bool {
            if i == verts.len() {
                return true;
            }
            let v = verts[i];
            for c in lists[v.index()].iter() {
                if g.neighbours(v).iter().all(|n| col[n.index()] != c) {
                    col[v.index()] = c;
                    if rec(i + 1, verts, g, lists, col) {
                        return true;
                    }
                    col[v.index()] = 0;
                }
            }
            false
        }
        rec(0, &verts, g, lists, &mut col)
    }

    #[test]
    fn small_examples() {
        let l12 = ColourSet::from_colours([1, 2]);
        assert!(two_list_solve(&Graph::complete(3), &[l12; 3]).unwrap().is_none());
        let c4 = Graph::cycle(4);
        let col = two_list_solve(&c4, &[l12; 4]).unwrap().unwrap();
        col.verify(&c4, &[l12; 4]).unwrap();
        assert_ne!(col.get(VertexId(0)), col.get(VertexId(1)));
        assert!(two_list_solve(&c4, &[ColourSet::full(3); 4]).is_err());
        assert!(two_list_solve(&c4, &[ColourSet::EMPTY; 4]).unwrap().is_none());
        assert!(two_list_solve(&Graph::new(0), &[]).unwrap().is_some());
    }

    #[test]
    fn raw_formula() {
        // (x ∨ y) ∧ (¬x ∨ y) ∧ (¬y ∨ ¬x)  ⇒  y, ¬x
        let mut s = TwoSat::new(2);
        s.clause(lit(0, true), lit(1, true));
        s.clause(lit(0, false), lit(1, true));
        s.clause(lit(1, false), lit(0, false));
        assert_eq!(s.solve(), Some(vec![false, true]));
        s.clause(lit(1, false), lit(1, false));
        assert_eq!(s.solve(), None);
    }

    #[test]
    fn agrees_with_brute_force() {
        let pairs = [
            ColourSet::from_colours([1, 2]),
            ColourSet::from_colours([1, 3]),
            ColourSet::from_colours([2, 3]),
            ColourSet::single(1),
            ColourSet::single(2),
            ColourSet::single(3),
        ];
        let mut s = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        for _ in 0..3000 {
            let n = 1 + (next() % 7) as usize;
            let mut g = Graph::new(n);
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if next() % 2 == 0 {
                        g.add_edge(VertexId(u), VertexId(v)).unwrap();
                    }
                }
            }
            let lists: Vec<ColourSet> = (0..n).map(|_| pairs[(next() % 6) as usize]).collect();
            let got = two_list_solve(&g, &lists).unwrap();
            assert_eq!(got.is_some(), brute(&g, &lists));
            if let Some(c) = got {
                c.verify(&g, &lists).unwrap();
            }
        }
    }
}
