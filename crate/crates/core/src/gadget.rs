//! Reduction from positive NAE-3SAT to list colouring and 5-colouring.
//!
//! Vertex ids are laid out in blocks: `x_i, x̄_i` for each variable, then
//! `C_j, C'_j` for each clause, then the six `a`-type vertices of each clause
//! (positions 1..3, unprimed then primed), then `k_1..k_5` when built with the
//! clique.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::colour::{Colour, ColourSet};
use crate::colouring::Colouring;
use crate::detect::{find_induced, InducedWitness, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracle::{self, Budget, OracleAnswer};

/// A positive NAE-3SAT formula over variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaeFormula {
    n: usize,
    clauses: Vec<[u32; 3]>,
}

impl NaeFormula {
    pub fn new(n: usize, clauses: Vec<[u32; 3]>) -> Result<Self> {
        for c in &clauses {
            if c.iter().any(|&x| x == 0 || x as usize > n) {
                return Err(Error::usage(format!("clause {c:?} mentions a variable outside 1..={n}")));
            }
        }
        Ok(NaeFormula { n, clauses })
    }

    /// `m` clauses of three distinct variables, each sorted ascending.
    pub fn random<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Self> {
        if m > 0 && n < 3 {
            return Err(Error::usage("need at least three variables for a clause"));
        }
        let vars: Vec<u32> = (1..=n as u32).collect();
        let clauses = (0..m)
            .map(|_| {
                let mut c: Vec<u32> = vars.choose_multiple(rng, 3).copied().collect();
                c.sort_unstable();
                [c[0], c[1], c[2]]
            })
            .collect();
        NaeFormula::new(n, clauses)
    }

    /// Every formula with `m` ordered clauses of distinct variables.
    pub fn all(n: usize, m: usize) -> Vec<NaeFormula> {
        let mut triples = Vec::new();
        for a in 1..=n as u32 {
            for b in 1..=n as u32 {
                for c in 1..=n as u32 {
                    if a != b && b != c && a != c {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<[u32; 3]>| {
                    triples.iter().map(move |&t| {
                        let mut p = prefix.clone();
                        p.push(t);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|clauses| NaeFormula { n, clauses })
            .collect()
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[[u32; 3]] {
        &self.clauses
    }

    /// Whether every clause has a true and a false literal. `assignment` is
    /// indexed by variable minus one.
    pub fn nae_satisfied(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            let t = c.iter().filter(|&&x| assignment[x as usize - 1]).count();
            t != 0 && t != 3
        })
    }
}

impl fmt::Display for NaeFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v {}", self.n)?;
        for c in &self.clauses {
            writeln!(f, "c {} {} {}", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// What a gadget vertex stands for. Variables and clauses are 1-based;
/// `pos` is the literal position 1..=3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    X(u32),
    XBar(u32),
    C(u32),
    CPrime(u32),
    A { var: u32, clause: u32, pos: u8, primed: bool },
    K(u8),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::X(i) => write!(f, "x{i}"),
            Role::XBar(i) => write!(f, "~x{i}"),
            Role::C(j) => write!(f, "C{j}"),
            Role::CPrime(j) => write!(f, "C'{j}"),
            Role::A { var, clause, primed, .. } => {
                write!(f, "a{}{var},{clause}", if primed { "'" } else { "" })
            }
            Role::K(l) => write!(f, "k{l}"),
        }
    }
}

/// The constructed graph, its lists and vertex roles (all indexed by id).
#[derive(Clone, Debug)]
pub struct Gadget {
    pub graph: Graph,
    pub lists: Vec<ColourSet>,
    pub roles: Vec<Role>,
    n: usize,
    m: usize,
    prime: bool,
}

impl Gadget {
    pub fn x(&self, i: u32) -> VertexId {
        VertexId(2 * (i - 1))
    }

    pub fn x_bar(&self, i: u32) -> VertexId {
        VertexId(2 * (i - 1) + 1)
    }

    pub fn c(&self, j: u32) -> VertexId {
        VertexId((2 * self.n) as u32 + 2 * (j - 1))
    }

    pub fn c_prime(&self, j: u32) -> VertexId {
        VertexId((2 * self.n) as u32 + 2 * (j - 1) + 1)
    }

    /// `a`-type vertex of clause `j` at literal position `pos` (1..=3).
    pub fn a(&self, j: u32, pos: u8, primed: bool) -> VertexId {
        let base = (2 * self.n + 2 * self.m) as u32;
        VertexId(base + 6 * (j - 1) + 2 * (pos as u32 - 1) + u32::from(primed))
    }

    /// `k_ℓ`, present only in the primed build.
    pub fn k(&self, l: u8) -> Option<VertexId> {
        self.prime
            .then(|| VertexId((2 * self.n + 8 * self.m) as u32 + (l as u32 - 1)))
    }

    pub fn is_prime(&self) -> bool {
        self.prime
    }

    /// Number of vertices with each role kind: x, C, a, k.
    pub fn role_counts(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for r in &self.roles {
            out[match r {
                Role::X(_) | Role::XBar(_) => 0,
                Role::C(_) | Role::CPrime(_) => 1,
                Role::A { .. } => 2,
                Role::K(_) => 3,
            }] += 1;
        }
        out
    }
}

/// `G` with its lists.
pub fn build_g(f: &NaeFormula) -> Gadget {
    let (n, m) = (f.vars(), f.clauses().len());
    let total = 2 * n + 8 * m;
    let mut g = Graph::new(total);
    let mut lists = vec![ColourSet::EMPTY; total];
    let mut roles = Vec::with_capacity(total);
    let xl = ColourSet::from_colours([4, 5]);
    let cl = ColourSet::from_colours([1, 2, 3]);
    for i in 1..=n as u32 {
        roles.push(Role::X(i));
        roles.push(Role::XBar(i));
    }
    for j in 1..=m as u32 {
        roles.push(Role::C(j));
        roles.push(Role::CPrime(j));
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        for (p, &var) in clause.iter().enumerate() {
            for primed in [false, true] {
                roles.push(Role::A {
                    var,
                    clause: j as u32 + 1,
                    pos: p as u8 + 1,
                    primed,
                });
            }
        }
    }
    let gadget = Gadget {
        graph: Graph::new(0),
        lists: Vec::new(),
        roles,
        n,
        m,
        prime: false,
    };
    let e = |g: &mut Graph, a: VertexId, b: VertexId| g.add_edge(a, b).expect("gadget edge");
    for i in 1..=n as u32 {
        let (x, xb) = (gadget.x(i), gadget.x_bar(i));
        lists[x.index()] = xl;
        lists[xb.index()] = xl;
        e(&mut g, x, xb);
        for j in 1..=m as u32 {
            for t in [x, xb] {
                e(&mut g, t, gadget.c(j));
                e(&mut g, t, gadget.c_prime(j));
            }
        }
    }
    for (j0, clause) in f.clauses().iter().enumerate() {
        let j = j0 as u32 + 1;
        lists[gadget.c(j).index()] = cl;
        lists[gadget.c_prime(j).index()] = cl;
        for (p0, &var) in clause.iter().enumerate() {
            let pos = p0 as u8 + 1;
            let list = ColourSet::from_colours([pos, 4]);
            let (a, ap) = (gadget.a(j, pos, false), gadget.a(j, pos, true));
            lists[a.index()] = list;
            lists[ap.index()] = list;
            e(&mut g, gadget.x(var), a);
            e(&mut g, a, gadget.c(j));
            e(&mut g, gadget.x_bar(var), ap);
            e(&mut g, ap, gadget.c_prime(j));
        }
    }
    Gadget {
        graph: g,
        lists,
        ..gadget
    }
}

/// `G'`: `G` plus a `K_5` whose `k_ℓ` sees every vertex lacking `ℓ` in its
/// list. All lists become the full palette `{1..5}`.
pub fn build_g_prime(f: &NaeFormula) -> Gadget {
    let mut gd = build_g(f);
    let base = gd.graph.id_bound();
    let ks: Vec<VertexId> = (0..5).map(|_| gd.graph.add_vertex()).collect();
    for a in 0..5 {
        for b in a + 1..5 {
            gd.graph.add_edge(ks[a], ks[b]).unwrap();
        }
    }
    for u in 0..base {
        let list = gd.lists[u];
        for l in 1..=5u8 {
            if !list.contains(l) {
                gd.graph.add_edge(ks[l as usize - 1], VertexId(u as u32)).unwrap();
            }
        }
    }
    gd.roles.extend((1..=5).map(Role::K));
    gd.lists = vec![ColourSet::full(5); gd.graph.id_bound()];
    gd.prime = true;
    gd
}

/// The colouring of `G` used in the forward direction of the list lemma.
pub fn colouring_from_assignment(f: &NaeFormula, gd: &Gadget, tau: &[bool]) -> Colouring {
    let mut col = Colouring::new();
    for i in 1..=f.vars() as u32 {
        let t = tau[i as usize - 1];
        col.set(gd.x(i), if t { 4 } else { 5 });
        col.set(gd.x_bar(i), if t { 5 } else { 4 });
    }
    for (j0, clause) in f.clauses().iter().enumerate() {
        let j = j0 as u32 + 1;
        for (p0, &var) in clause.iter().enumerate() {
            let pos = p0 as u8 + 1;
            let t = tau[var as usize - 1];
            col.set(gd.a(j, pos, false), if t { pos } else { 4 });
            col.set(gd.a(j, pos, true), if t { 4 } else { pos });
        }
        // C_j may reuse the colour of any position whose a-vertex took 4.
        let first = |want: bool| -> Colour {
            clause
                .iter()
                .position(|&x| tau[x as usize - 1] == want)
                .map_or(1, |p| p as Colour + 1)
        };
        col.set(gd.c(j), first(false));
        col.set(gd.c_prime(j), first(true));
    }
    col
}

/// Read a truth assignment off a colouring: `x_i` true iff coloured 4.
pub fn decode_assignment(f: &NaeFormula, gd: &Gadget, col: &Colouring) -> Vec<bool> {
    (1..=f.vars() as u32)
        .map(|i| col.get(gd.x(i)) == Some(4))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    Refuted(String),
    /// The oracle ran out of budget.
    Inconclusive,
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }
}

/// NAE-satisfiable iff `G` has a colouring respecting its lists; also checks
/// the explicit colouring for every satisfying assignment and the decoding
/// of the oracle's colouring.
pub fn verify_lemma11(f: &NaeFormula, budget: Budget) -> Result<Verdict> {
    let sat = oracle::nae_brute(f)?;
    let gd = build_g(f);
    let answer = oracle::list_colour(&gd.graph, &gd.lists, budget);
    let colourable = match &answer {
        OracleAnswer::Exhausted => return Ok(Verdict::Inconclusive),
        a => a.is_yes(),
    };
    if sat.is_some() != colourable {
        return Ok(Verdict::Refuted(format!(
            "formula satisfiable: {}, gadget colourable: {colourable}",
            sat.is_some()
        )));
    }
    if f.vars() <= 16 {
        for bits in 0u32..(1 << f.vars()) {
            let tau: Vec<bool> = (0..f.vars()).map(|i| bits >> i & 1 == 1).collect();
            if !f.nae_satisfied(&tau) {
                continue;
            }
            let col = colouring_from_assignment(f, &gd, &tau);
            if let Err(v) = col.verify(&gd.graph, &gd.lists) {
                return Ok(Verdict::Refuted(format!("assignment {tau:?} gives a bad colouring: {v}")));
            }
        }
    }
    if let OracleAnswer::Yes(col) = answer {
        let tau = decode_assignment(f, &gd, &col);
        if !f.nae_satisfied(&tau) {
            return Ok(Verdict::Refuted(format!("decoded assignment {tau:?} is not NAE")));
        }
    }
    Ok(Verdict::Confirmed)
}

/// NAE-satisfiable iff `G'` is 5-colourable, decided with `k_ℓ` pinned to
/// `ℓ`. With `unpinned`, the raw 5-colouring question is also solved and
/// must agree.
pub fn verify_lemma12(f: &NaeFormula, budget: Budget, unpinned: bool) -> Result<Verdict> {
    let sat = oracle::nae_brute(f)?.is_some();
    let gd = build_g_prime(f);
    let mut pinned = gd.lists.clone();
    for l in 1..=5u8 {
        pinned[gd.k(l).unwrap().index()] = ColourSet::single(l);
    }
    let answer = oracle::list_colour(&gd.graph, &pinned, budget);
    let Some(colourable) = answer.decided() else {
        return Ok(Verdict::Inconclusive);
    };
    if colourable != sat {
        return Ok(Verdict::Refuted(format!(
            "formula satisfiable: {sat}, pinned G' colourable: {colourable}"
        )));
    }
    if let OracleAnswer::Yes(col) = &answer {
        let tau = decode_assignment(f, &gd, col);
        if !f.nae_satisfied(&tau) {
            return Ok(Verdict::Refuted(format!("decoded assignment {tau:?} is not NAE")));
        }
    }
    if unpinned {
        let raw = oracle::list_colour(&gd.graph, &gd.lists, budget);
        match raw.decided() {
            None => return Ok(Verdict::Inconclusive),
            Some(r) if r != colourable => {
                return Ok(Verdict::Refuted(format!(
                    "pinned answer {colourable} differs from unpinned answer {r}"
                )))
            }
            _ => {}
        }
    }
    Ok(Verdict::Confirmed)
}

/// `G'` has no induced `P_3 + P_5`.
pub fn verify_lemma13(f: &NaeFormula) -> Result<Verdict> {
    let gd = build_g_prime(f);
    Ok(match find_induced(&gd.graph, &Pattern::p3p5())? {
        None => Verdict::Confirmed,
        Some(w) => Verdict::Refuted(describe(&gd, &w)),
    })
}

fn describe(gd: &Gadget, w: &InducedWitness) -> String {
    w.vertices
        .iter()
        .map(|v| gd.roles[v.index()].to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes() {
        let f = NaeFormula::new(1, vec![]).unwrap();
        let g = build_g(&f);
        assert_eq!(g.graph.vertex_count(), 2);
        assert_eq!(g.graph.edge_count(), 1);
        assert_eq!(g.lists, vec![ColourSet::from_colours([4, 5]); 2]);
        let f = NaeFormula::new(3, vec![[1, 2, 3]]).unwrap();
        assert_eq!(build_g(&f).graph.vertex_count(), 14);
        assert_eq!(build_g_prime(&f).graph.vertex_count(), 19);
    }

    fn kind(r: Role) -> usize {
        match r {
            Role::X(_) | Role::XBar(_) => 0,
            Role::C(_) | Role::CPrime(_) => 1,
            Role::A { .. } => 2,
            Role::K(_) => 3,
        }
    }

    /// Edge counts of G' per unordered pair of role kinds (x, C, a, k).
    fn role_edge_counts(gd: &Gadget) -> [[usize; 4]; 4] {
        let mut out = [[0; 4]; 4];
        for (u, v) in gd.graph.edges() {
            let (a, b) = (kind(gd.roles[u.index()]), kind(gd.roles[v.index()]));
            out[a.min(b)][a.max(b)] += 1;
        }
        out
    }

    #[test]
    fn edge_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let n = rng.gen_range(3..7);
            let m = rng.gen_range(0..6);
            let f = NaeFormula::random(n, m, &mut rng).unwrap();
            let gd = build_g_prime(&f);
            let c = role_edge_counts(&gd);
            assert_eq!(c[0][0], n);
            assert_eq!(c[0][1], 4 * n * m);
            assert_eq!(c[0][2] + c[1][2], 12 * m);
            assert_eq!(c[3][3], 10);
            assert_eq!(c[0][3], 6 * n);
            assert_eq!(c[1][3], 4 * m);
            assert_eq!(c[2][3], 18 * m);
            assert_eq!(c[1][1] + c[2][2], 0);
            let total: usize = c.iter().flatten().sum();
            assert_eq!(total, 7 * n + 4 * n * m + 34 * m + 10);
            assert_eq!(gd.graph.edge_count(), total);
            assert_eq!(gd.role_counts(), [2 * n, 2 * m, 6 * m, 5]);
        }
    }

    #[test]
    fn k_neighbourhoods() {
        let f = NaeFormula::new(3, vec![[1, 2, 3]]).unwrap();
        let gd = build_g_prime(&f);
        let ks = |v: VertexId| -> Vec<u8> {
            (1..=5).filter(|&l| gd.graph.has_edge(gd.k(l).unwrap(), v)).collect()
        };
        assert_eq!(ks(gd.x(1)), vec![1, 2, 3]);
        assert_eq!(ks(gd.c(1)), vec![4, 5]);
        assert_eq!(ks(gd.a(1, 2, true)), vec![1, 3, 5]);
    }

    #[test]
    fn lemmas_on_small_formulas() {
        let one = NaeFormula::new(3, vec![[1, 2, 3]]).unwrap();
        assert!(verify_lemma11(&one, Budget::default()).unwrap().is_confirmed());
        assert!(verify_lemma12(&one, Budget::default(), true).unwrap().is_confirmed());
        assert!(verify_lemma13(&one).unwrap().is_confirmed());
        let triple = NaeFormula::new(1, vec![[1, 1, 1]]).unwrap();
        assert!(verify_lemma11(&triple, Budget::default()).unwrap().is_confirmed());
        assert!(verify_lemma12(&triple, Budget::default(), true).unwrap().is_confirmed());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(NaeFormula::all(3, 2).len(), 36);
        assert_eq!(NaeFormula::all(2, 1).len(), 0);
        assert_eq!(NaeFormula::all(2, 0).len(), 1);
    }
}
