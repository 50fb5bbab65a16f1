//! List 3-colouring for `(P2+P5)`-free and `(P3+P4)`-free graphs.
//!
//! The pipeline splits the input into components, rejects components with a
//! `K4`, hands `P7`-free components to the exact oracle and runs the phased
//! branching on the rest. Each branch is a cloned [`Instance`]; the first
//! branch that reaches a colouring wins.

mod active;
mod checks;
mod phases;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::colour::{Colour, ColourSet};
use crate::colouring::Colouring;
use crate::detect::{contains_k4, find_induced, find_induced_path, Pattern};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::instance::Instance;
use crate::oracle::{self, Budget};
use crate::rules::{Quiet, Rule, RuleObserver, Step};

pub use active::{ActiveState, PAIRS};
pub use checks::Check;

/// The forbidden pattern the input is promised to avoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    P2P5,
    P3P4,
}

impl Target {
    pub fn pattern(self) -> Pattern {
        match self {
            Target::P2P5 => Pattern::p2p5(),
            Target::P3P4 => Pattern::p3p4(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::P2P5 => "p2p5",
            Target::P3P4 => "p3p4",
        })
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('+', "").as_str() {
            "p2p5" => Ok(Target::P2P5),
            "p3p4" => Ok(Target::P3P4),
            other => Err(Error::usage(format!("unknown target class {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Forbidden pattern; detected from the input when absent.
    pub target: Option<Target>,
    /// Reject inputs containing the pattern and treat broken structural
    /// invariants as errors. When off, such branches are settled by the oracle.
    pub verify: bool,
    /// Evaluate the first branching level on the rayon pool.
    pub parallel: bool,
    /// Record one line per branching event.
    pub trace: bool,
    /// Budget for every oracle call.
    pub budget: Budget,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            target: None,
            verify: true,
            parallel: false,
            trace: false,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes(Colouring),
    No,
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes(_))
    }
}

/// Branching events are numbered I to VII.
pub const BRANCHINGS: usize = 7;

pub fn roman(b: usize) -> &'static str {
    ["I", "II", "III", "IV", "V", "VI", "VII"][b]
}

/// Counters collected during one solve.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Branching events per branching (index 0 is Branching I).
    pub events: [u64; BRANCHINGS],
    /// Children created per branching.
    pub children: [u64; BRANCHINGS],
    /// Branch instances entering Phases 1 to 4.
    pub phase_entries: [u64; 4],
    /// Largest child count of a single Branching I event.
    pub max_anchor_children: u64,
    /// Deepest recursion of Branching VI.
    pub max_recursion: u64,
    /// Firings per rule (index 0 is Rule 1).
    pub rule_firings: [u64; 13],
    /// Components answered by the oracle because they have no induced `P7`.
    pub oracle_components: u64,
    /// Branches handed to the oracle after a failed check.
    pub oracle_fallbacks: u64,
    /// Evaluations and failures per structural check, indexed like [`Check::ALL`].
    pub checks: [u64; Check::ALL.len()],
    pub violations: [u64; Check::ALL.len()],
}

impl Stats {
    pub fn total_violations(&self) -> u64 {
        self.violations.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub answer: Answer,
    pub target: Target,
    pub stats: Stats,
    /// Branching events as `B<roman> parent=<id> children=<k>`.
    pub trace: Vec<String>,
}

#[derive(Default)]
struct Counters {
    events: [AtomicU64; BRANCHINGS],
    children: [AtomicU64; BRANCHINGS],
    phase_entries: [AtomicU64; 4],
    max_anchor_children: AtomicU64,
    max_recursion: AtomicU64,
    rule_firings: [AtomicU64; 13],
    oracle_components: AtomicU64,
    oracle_fallbacks: AtomicU64,
    checks: [AtomicU64; Check::ALL.len()],
    violations: [AtomicU64; Check::ALL.len()],
}

fn load<const N: usize>(a: &[AtomicU64; N]) -> [u64; N] {
    std::array::from_fn(|i| a[i].load(Ordering::Relaxed))
}

impl Counters {
    fn snapshot(&self) -> Stats {
        Stats {
            events: load(&self.events),
            children: load(&self.children),
            phase_entries: load(&self.phase_entries),
            max_anchor_children: self.max_anchor_children.load(Ordering::Relaxed),
            max_recursion: self.max_recursion.load(Ordering::Relaxed),
            rule_firings: load(&self.rule_firings),
            oracle_components: self.oracle_components.load(Ordering::Relaxed),
            oracle_fallbacks: self.oracle_fallbacks.load(Ordering::Relaxed),
            checks: load(&self.checks),
            violations: load(&self.violations),
        }
    }
}

/// A branch result: a colouring of the branch instance's roots, or none.
type Found = Option<Colouring>;

/// State shared by all branches of one solve.
struct Ctx<'a> {
    target: Target,
    opts: SolveOptions,
    observer: &'a dyn RuleObserver,
    counters: Counters,
    next_node: AtomicU64,
    trace: Mutex<Vec<String>>,
}

impl RuleObserver for Ctx<'_> {
    fn wants(&self, rule: Rule) -> bool {
        self.observer.wants(rule)
    }

    fn observe(&self, rule: Rule, before: &Instance, step: &Step, after: &Instance) {
        self.observer.observe(rule, before, step, after);
    }

    fn fired(&self, rule: Rule) {
        self.counters.rule_firings[rule.number() as usize - 1].fetch_add(1, Ordering::Relaxed);
        self.observer.fired(rule);
    }
}

impl Ctx<'_> {
    fn enter(&self, phase: usize) {
        self.counters.phase_entries[phase - 1].fetch_add(1, Ordering::Relaxed);
    }

    fn node(&self) -> u64 {
        self.next_node.fetch_add(1, Ordering::Relaxed)
    }

    /// Record a branching event at `parent` and number its children.
    fn branch(&self, b: usize, parent: u64, children: usize) -> Vec<u64> {
        self.counters.events[b].fetch_add(1, Ordering::Relaxed);
        self.counters.children[b].fetch_add(children as u64, Ordering::Relaxed);
        if self.opts.trace {
            let line = format!("B{} parent={parent} children={children}", roman(b));
            self.trace.lock().unwrap().push(line);
        }
        (0..children).map(|_| self.node()).collect()
    }

    /// Count an evaluation of `check`; on failure return the diagnostic.
    fn check<T>(&self, check: Check, outcome: std::result::Result<T, String>) -> std::result::Result<T, String> {
        let i = check as usize;
        self.counters.checks[i].fetch_add(1, Ordering::Relaxed);
        outcome.map_err(|msg| {
            self.counters.violations[i].fetch_add(1, Ordering::Relaxed);
            format!("{check}: {msg}")
        })
    }

    /// Settle a branch whose structure contradicts a check.
    fn fallback(&self, inst: &Instance, msg: String) -> Result<Found> {
        if self.opts.verify {
            return Err(Error::Claim(msg));
        }
        self.counters.oracle_fallbacks.fetch_add(1, Ordering::Relaxed);
        self.oracle(inst)
    }

    fn oracle(&self, inst: &Instance) -> Result<Found> {
        match oracle::list_colour(inst.graph(), inst.lists(), self.opts.budget).into_result()? {
            Some(col) => Ok(Some(inst.lift(&col)?)),
            None => Ok(None),
        }
    }
}

/// Decide `inst` with default options.
pub fn solve(inst: &Instance) -> Result<Answer> {
    Ok(solve_with(inst, &SolveOptions::default(), &Quiet)?.answer)
}

/// Decide `inst`, reporting statistics and optionally a trace.
pub fn solve_with(inst: &Instance, opts: &SolveOptions, observer: &dyn RuleObserver) -> Result<Report> {
    if inst.k() != 3 {
        return Err(Error::usage(format!(
            "the solver needs a 3-colour palette, got k = {}",
            inst.k()
        )));
    }
    let g = inst.graph();
    let target = match opts.target {
        Some(t) => {
            if opts.verify {
                if let Some(w) = find_induced(g, &t.pattern())? {
                    return Err(not_free(&t.pattern(), &w.vertices));
                }
            }
            t
        }
        None => {
            if find_induced(g, &Pattern::p2p5())?.is_none() {
                Target::P2P5
            } else if let Some(w) = find_induced(g, &Pattern::p3p4())? {
                if opts.verify {
                    return Err(not_free(&Pattern::p3p4(), &w.vertices));
                }
                Target::P3P4
            } else {
                Target::P3P4
            }
        }
    };
    let ctx = Ctx {
        target,
        opts: *opts,
        observer,
        counters: Counters::default(),
        next_node: AtomicU64::new(0),
        trace: Mutex::new(Vec::new()),
    };
    let mut merged = Colouring::new();
    let mut yes = true;
    for comp in g.components() {
        let sub = inst.induced(&comp);
        match solve_component(&ctx, sub)? {
            Some(col) => merged.extend(&col),
            None => {
                yes = false;
                break;
            }
        }
    }
    let answer = if yes {
        merged
            .verify(g, inst.lists())
            .map_err(|v| Error::Reconstruction(format!("certificate does not verify: {v}")))?;
        Answer::Yes(inst.lift(&merged)?)
    } else {
        Answer::No
    };
    Ok(Report {
        answer,
        target,
        stats: ctx.counters.snapshot(),
        trace: ctx.trace.into_inner().unwrap(),
    })
}

fn not_free(p: &Pattern, vertices: &[VertexId]) -> Error {
    let witness = vertices
        .iter()
        .map(|v| (v.0 + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ");
    Error::NotFree {
        pattern: p.name().to_string(),
        witness,
    }
}

fn solve_component(ctx: &Ctx<'_>, mut inst: Instance) -> Result<Found> {
    let root = ctx.node();
    if contains_k4(inst.graph()).is_some() {
        return Ok(None);
    }
    let Some(path) = find_induced_path(inst.graph(), 7) else {
        ctx.counters.oracle_components.fetch_add(1, Ordering::Relaxed);
        return ctx.oracle(&inst);
    };
    let p: [VertexId; 7] = path.vertices.try_into().expect("path of length 7");
    inst.set_n0(p)?;
    phases::anchor(ctx, inst, root)
}

/// Proper colourings of `g[vertices]` from `lists`, in lexicographic order
/// with colours ascending.
pub fn list_colourings(
    inst: &Instance,
    vertices: &[VertexId],
    lists: impl Fn(VertexId) -> ColourSet,
) -> Vec<Vec<Colour>> {
    fn rec(
        i: usize,
        inst: &Instance,
        vs: &[VertexId],
        lists: &dyn Fn(VertexId) -> ColourSet,
        cur: &mut Vec<Colour>,
        out: &mut Vec<Vec<Colour>>,
    ) {
        if i == vs.len() {
            out.push(cur.clone());
            return;
        }
        for c in lists(vs[i]).iter() {
            let clash = (0..i).any(|j| cur[j] == c && inst.graph().has_edge(vs[i], vs[j]));
            if !clash {
                cur.push(c);
                rec(i + 1, inst, vs, lists, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, inst, vertices, &lists, &mut Vec::new(), &mut out);
    out
}

/// The Branching I children of an anchored instance: proper list colourings
/// of the anchor path.
pub fn anchor_colourings(inst: &Instance) -> Result<Vec<[Colour; 7]>> {
    let p = *inst
        .n0()
        .ok_or_else(|| Error::usage("instance has no anchored path"))?;
    Ok(list_colourings(inst, &p, |v| inst.list(v))
        .into_iter()
        .map(|c| c.try_into().unwrap())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn anchor_colouring_counts() {
        let mut inst = Instance::new(Graph::path(7), 3).unwrap();
        inst.set_n0(std::array::from_fn(|i| VertexId(i as u32))).unwrap();
        assert_eq!(anchor_colourings(&inst).unwrap().len(), 192);
        for i in 0..7 {
            inst.colour(VertexId(i), 1);
        }
        assert!(anchor_colourings(&inst).unwrap().is_empty());
    }

    #[test]
    fn simple_answers() {
        assert!(!solve(&Instance::new(Graph::complete(4), 3).unwrap()).unwrap().is_yes());
        assert!(solve(&Instance::new(Graph::cycle(5), 3).unwrap()).unwrap().is_yes());
        assert!(solve(&Instance::new(Graph::new(0), 3).unwrap()).unwrap().is_yes());
        assert!(solve(&Instance::new(Graph::path(3), 2).unwrap()).is_err());
    }

    #[test]
    fn rejects_pattern_when_verifying() {
        let g = Graph::path(3).disjoint_union(&Graph::path(4));
        let inst = Instance::new(g, 3).unwrap();
        let opts = SolveOptions {
            target: Some(Target::P3P4),
            ..SolveOptions::default()
        };
        assert!(matches!(solve_with(&inst, &opts, &Quiet), Err(Error::NotFree { .. })));
        let lenient = SolveOptions {
            verify: false,
            ..opts
        };
        assert!(solve_with(&inst, &lenient, &Quiet).unwrap().answer.is_yes());
    }
}
