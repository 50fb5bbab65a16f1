//! The thirteen propagation rules and the fixpoint driver.
//!
//! Each rule is split into a read-only `find` that locates the first place it
//! applies (scanning vertices in ascending id order) and an `apply` that
//! performs the change. Rules 11–13 carry extra guards that make them safe on
//! any instance, not only on the instances the solver hands them.

use std::fmt;

use crate::colour::{Colour, ColourSet};
use crate::colouring::Colouring;
use crate::detect::k4_through;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{self, Budget};
use crate::twosat::two_list_solve;
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    EmptyList = 1,
    TwoList,
    Connected,
    Coloured,
    SingleColour,
    Diamond,
    Twin,
    Triangle,
    FreeColour,
    SmallDegree,
    N3Reduction,
    Identify,
    A2Reduction,
}

impl Rule {
    pub const ALL: [Rule; 13] = [
        Rule::EmptyList,
        Rule::TwoList,
        Rule::Connected,
        Rule::Coloured,
        Rule::SingleColour,
        Rule::Diamond,
        Rule::Twin,
        Rule::Triangle,
        Rule::FreeColour,
        Rule::SmallDegree,
        Rule::N3Reduction,
        Rule::Identify,
        Rule::A2Reduction,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Rule> {
        Rule::ALL.get((n as usize).wrapping_sub(1)).copied()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.number())
    }
}

/// A set of rules, as a bitmask over rule numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSet(u16);

impl RuleSet {
    /// Rules 1–10.
    pub const BASIC: RuleSet = RuleSet(0b111_1111_1110);
    /// Rules 1–11.
    pub const PHASE1: RuleSet = RuleSet(0b1111_1111_1110);
    /// Rules 1–13.
    pub const ALL: RuleSet = RuleSet(0b11_1111_1111_1110);

    pub fn of(rules: &[Rule]) -> Self {
        RuleSet(rules.iter().fold(0, |acc, r| acc | 1 << r.number()))
    }

    pub fn contains(self, r: Rule) -> bool {
        self.0 & 1 << r.number() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Rule> {
        Rule::ALL.into_iter().filter(move |&r| self.contains(r))
    }

    fn contains_all(self, other: RuleSet) -> bool {
        self.0 & other.0 == other.0
    }
}

/// Phase information the later rules depend on.
#[derive(Clone, Copy, Debug, Default)]
pub struct RuleContext {
    /// The colour missing from every `A_1` list; enables Rules 12 and 13.
    pub third: Option<Colour>,
    /// Budget for the oracle calls of Rule 3.
    pub budget: Budget,
}

impl RuleContext {
    pub fn phase4(third: Colour, budget: Budget) -> Self {
        RuleContext {
            third: Some(third),
            budget,
        }
    }
}

/// Result of one rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    NoChange,
    Changed,
    No,
    /// A colouring of the instance's root vertices.
    Yes(Colouring),
}

/// Result of exhaustive propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    No,
    Yes(Colouring),
    Fixpoint,
}

/// Hook called on every rule firing.
pub trait RuleObserver: Sync {
    fn wants(&self, _rule: Rule) -> bool {
        false
    }

    /// Called after a firing with a snapshot from just before it.
    fn observe(&self, _rule: Rule, _before: &Instance, _step: &Step, _after: &Instance) {}

    /// Called on every firing, whether or not `wants` asked for snapshots.
    fn fired(&self, _rule: Rule) {}
}

/// Observer that ignores everything.
pub struct Quiet;

impl RuleObserver for Quiet {}

#[derive(Clone, Debug)]
enum Action {
    No,
    SolveTwoList,
    SolveComponents(Vec<Vec<VertexId>>),
    Delete(Vec<VertexId>),
    SetLists(Vec<(VertexId, ColourSet)>),
    Identify {
        common: Vec<VertexId>,
        removed: VertexId,
    },
}

fn check_k(inst: &Instance) -> Result<()> {
    if inst.k() != 3 {
        return Err(Error::usage(format!(
            "propagation rules need a 3-colour palette, got k = {}",
            inst.k()
        )));
    }
    Ok(())
}

fn check_context(rule: Rule, inst: &Instance, ctx: &RuleContext) -> Result<()> {
    match rule {
        Rule::N3Reduction if inst.n0().is_none() => {
            Err(Error::usage("Rule 11 needs an anchored P7"))
        }
        Rule::Identify | Rule::A2Reduction if ctx.third.is_none() || inst.n0().is_none() => {
            Err(Error::usage(format!("{rule} is only available in the final phase")))
        }
        _ => Ok(()),
    }
}

/// Apply `rule` once at the first place it fits.
pub fn apply_rule(rule: Rule, inst: &mut Instance, ctx: &RuleContext) -> Result<Step> {
    check_k(inst)?;
    check_context(rule, inst, ctx)?;
    if rule == Rule::N3Reduction {
        for r in RuleSet::BASIC.iter() {
            if find(r, inst, ctx).is_some() {
                return Err(Error::usage(format!(
                    "Rule 11 applied while {r} is still applicable"
                )));
            }
        }
    }
    match find(rule, inst, ctx) {
        None => Ok(Step::NoChange),
        Some(action) => perform(inst, action, ctx),
    }
}

/// Apply the rules of `set` until none fits.
///
/// Rules 1–10 run round-robin, each repeatedly, until a full pass changes
/// nothing; then one application of the first of 11, 12, 13 that fits, and
/// the cycle restarts.
pub fn propagate(
    inst: &mut Instance,
    set: RuleSet,
    ctx: &RuleContext,
    observer: &dyn RuleObserver,
) -> Result<Propagation> {
    check_k(inst)?;
    if set.contains(Rule::N3Reduction) {
        if !set.contains_all(RuleSet::BASIC) {
            return Err(Error::usage("Rule 11 needs Rules 1-10 alongside it"));
        }
        check_context(Rule::N3Reduction, inst, ctx)?;
    }
    for r in [Rule::Identify, Rule::A2Reduction] {
        if set.contains(r) {
            if !set.contains_all(RuleSet::PHASE1) {
                return Err(Error::usage(format!("{r} needs Rules 1-11 alongside it")));
            }
            check_context(r, inst, ctx)?;
        }
    }
    loop {
        loop {
            let mut changed = false;
            for rule in set.iter().filter(|r| r.number() <= 10) {
                loop {
                    match fire(rule, inst, ctx, observer)? {
                        Step::NoChange => break,
                        Step::Changed => changed = true,
                        Step::No => return Ok(Propagation::No),
                        Step::Yes(c) => return Ok(Propagation::Yes(c)),
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut fired = false;
        for rule in set.iter().filter(|r| r.number() > 10) {
            match fire(rule, inst, ctx, observer)? {
                Step::NoChange => continue,
                Step::Changed => {
                    fired = true;
                    break;
                }
                Step::No => return Ok(Propagation::No),
                Step::Yes(c) => return Ok(Propagation::Yes(c)),
            }
        }
        if !fired {
            return Ok(Propagation::Fixpoint);
        }
    }
}

fn fire(
    rule: Rule,
    inst: &mut Instance,
    ctx: &RuleContext,
    observer: &dyn RuleObserver,
) -> Result<Step> {
    let Some(action) = find(rule, inst, ctx) else {
        return Ok(Step::NoChange);
    };
    observer.fired(rule);
    if observer.wants(rule) {
        let before = inst.clone();
        let step = perform(inst, action, ctx)?;
        observer.observe(rule, &before, &step, inst);
        Ok(step)
    } else {
        perform(inst, action, ctx)
    }
}

/// Whether `rule` currently fits somewhere.
pub fn applicable(rule: Rule, inst: &Instance, ctx: &RuleContext) -> bool {
    check_context(rule, inst, ctx).is_ok() && find(rule, inst, ctx).is_some()
}

fn find(rule: Rule, inst: &Instance, ctx: &RuleContext) -> Option<Action> {
    let g = inst.graph();
    let l = |v: VertexId| inst.list(v);
    let deletable = |v: VertexId| !inst.in_n0(v) && !inst.is_protected(v);
    match rule {
        Rule::EmptyList => g.vertices().any(|v| l(v).is_empty()).then_some(Action::No),
        Rule::TwoList => inst.is_two_list().then_some(Action::SolveTwoList),
        Rule::Connected => {
            let mut comps = g.components();
            if comps.len() <= 1 {
                return None;
            }
            let keep = match inst.n0() {
                Some(p) => comps.iter().position(|c| c.binary_search(&p[0]).is_ok())?,
                None => {
                    let best = comps.iter().map(|c| c.len()).max().unwrap();
                    comps.iter().position(|c| c.len() == best).unwrap()
                }
            };
            comps.remove(keep);
            Some(Action::SolveComponents(comps))
        }
        Rule::Coloured => g
            .vertices()
            .find(|&u| {
                deletable(u)
                    && l(u).len() == 1
                    && g.neighbours(u)
                        .iter()
                        .all(|&v| l(u).intersection(l(v)).is_empty())
            })
            .map(|u| Action::Delete(vec![u])),
        Rule::SingleColour => g.vertices().filter(|&u| l(u).len() == 1).find_map(|u| {
            g.neighbours(u)
                .iter()
                .find(|&&v| l(u).is_subset(l(v)))
                .map(|&v| Action::SetLists(vec![(v, l(v).difference(l(u)))]))
        }),
        Rule::Diamond => {
            for (u, v) in g.edges() {
                let common = g.common_neighbours(u, v);
                for (i, &x) in common.iter().enumerate() {
                    for &y in &common[i + 1..] {
                        if !g.has_edge(x, y) && l(x) != l(y) {
                            let both = l(x).intersection(l(y));
                            return Some(Action::SetLists(vec![(x, both), (y, both)]));
                        }
                    }
                }
            }
            None
        }
        Rule::Twin => {
            for u in g.vertices() {
                let nu = g.neighbours(u);
                let candidates: Vec<VertexId> = match nu.first() {
                    Some(&a) => g.neighbours(a).to_vec(),
                    None => g.vertices().collect(),
                };
                for v in candidates {
                    if v != u
                        && !g.has_edge(u, v)
                        && l(v).is_proper_subset(l(u))
                        && g.neighbourhood_subset(u, v)
                    {
                        return Some(Action::SetLists(vec![(u, l(v))]));
                    }
                }
            }
            None
        }
        Rule::Triangle => {
            for (u, v) in g.edges() {
                let pair = l(u).union(l(v));
                if pair.len() != 2 {
                    continue;
                }
                for w in g.common_neighbours(u, v) {
                    if l(w).len() >= 2 && !l(w).intersection(pair).is_empty() {
                        return Some(Action::SetLists(vec![(w, l(w).difference(pair))]));
                    }
                }
            }
            None
        }
        Rule::FreeColour => g.vertices().filter(|&u| l(u).len() >= 2).find_map(|u| {
            let used = g
                .neighbours(u)
                .iter()
                .fold(ColourSet::EMPTY, |acc, &v| acc.union(l(v)));
            l(u).difference(used)
                .min()
                .map(|c| Action::SetLists(vec![(u, ColourSet::single(c))]))
        }),
        Rule::SmallDegree => g
            .vertices()
            .find(|&u| deletable(u) && l(u).len() > g.degree(u))
            .map(|u| Action::Delete(vec![u])),
        Rule::N3Reduction => {
            let layers = inst.layers()?;
            for &u in layers.layer(3) {
                for &v in g.neighbours(u) {
                    if v < u || !layers.in_layer(v, 3) || !deletable(u) || !deletable(v) {
                        continue;
                    }
                    let other_u: Vec<_> = g.neighbours(u).iter().filter(|&&x| x != v).collect();
                    let other_v: Vec<_> = g.neighbours(v).iter().filter(|&&x| x != u).collect();
                    if other_u.len() == 1
                        && other_u == other_v
                        && l(u).len() == 2
                        && l(v).len() == 2
                        && l(u) != l(v)
                    {
                        return Some(Action::Delete(vec![u, v]));
                    }
                }
            }
            None
        }
        Rule::Identify => {
            for v in g.vertices() {
                if l(v).len() != 3 || !deletable(v) {
                    continue;
                }
                for &u in g.neighbours(v) {
                    let common: Vec<VertexId> =
                        g.neighbours(v).iter().copied().filter(|&x| x != u).collect();
                    if common.is_empty()
                        || !common.iter().all(|&x| g.has_edge(u, x) && deletable(x))
                        || !g.is_independent(&common)
                    {
                        continue;
                    }
                    return Some(Action::Identify { common, removed: v });
                }
            }
            None
        }
        Rule::A2Reduction => {
            let t = ctx.third?;
            let layers = inst.layers()?;
            for &u in layers.layer(2) {
                if l(u).len() != 3 {
                    continue;
                }
                for &v in g.neighbours(u) {
                    let lv = l(v);
                    if lv.len() != 2 || !lv.contains(t) {
                        continue;
                    }
                    let Some(q) = lv.without(t).min() else { continue };
                    if !l(u).contains(q) || !l(u).contains(t) {
                        continue;
                    }
                    let closed = g
                        .neighbours(v)
                        .iter()
                        .all(|&x| x == u || g.has_edge(u, x));
                    let outside_clear = g
                        .neighbours(u)
                        .iter()
                        .filter(|&&x| x != v && !g.has_edge(v, x))
                        .all(|&x| !l(x).contains(t));
                    if closed && outside_clear {
                        return Some(Action::SetLists(vec![(u, l(u).without(q))]));
                    }
                }
            }
            None
        }
    }
}

fn perform(inst: &mut Instance, action: Action, ctx: &RuleContext) -> Result<Step> {
    match action {
        Action::No => Ok(Step::No),
        Action::SolveTwoList => match two_list_solve(inst.graph(), inst.lists())? {
            Some(col) => Ok(Step::Yes(inst.lift(&col)?)),
            None => Ok(Step::No),
        },
        Action::SolveComponents(comps) => {
            for comp in comps {
                let g = inst.graph().induced(&comp);
                match oracle::list_colour(&g, inst.lists(), ctx.budget).into_result()? {
                    Some(col) => inst.delete_solved(&col),
                    None => return Ok(Step::No),
                }
            }
            Ok(Step::Changed)
        }
        Action::Delete(group) => {
            inst.delete(&group);
            Ok(Step::Changed)
        }
        Action::SetLists(changes) => {
            for (v, list) in changes {
                inst.set_list(v, list);
            }
            Ok(Step::Changed)
        }
        Action::Identify { common, removed } => {
            let list = common
                .iter()
                .fold(ColourSet::full(3), |acc, &x| acc.intersection(inst.list(x)));
            let w = inst.identify(&common, list)?;
            inst.delete(&[removed]);
            if k4_through(inst.graph(), w).is_some() {
                Ok(Step::No)
            } else {
                Ok(Step::Changed)
            }
        }
    }
}
