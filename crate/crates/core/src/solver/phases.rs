//! Branchings I to VII.
//!
//! Every function takes a branch instance at a propagation fixpoint (unless
//! noted), checks the structure it relies on and either answers directly or
//! creates children. Children are tried in order; the first colouring wins.

use std::sync::atomic::Ordering;

use crate::colour::{Colour, ColourSet};
use crate::graph::VertexId;
use crate::instance::Instance;
use crate::par;
use crate::rules::{propagate, Propagation, Rule, RuleContext, RuleSet};

use super::active::{ActiveState, PAIRS};
use super::checks::{self, Check};
use super::{anchor_colourings, list_colourings, Ctx, Found, Target};
use crate::error::Result;

const B_I: usize = 0;
const B_II: usize = 1;
const B_III: usize = 2;
const B_IV: usize = 3;
const B_V: usize = 4;
const B_VI: usize = 5;
const B_VII: usize = 6;

enum Child {
    Done(Found),
    Open(Instance),
}

fn base(ctx: &Ctx<'_>) -> RuleContext {
    RuleContext {
        third: None,
        budget: ctx.opts.budget,
    }
}

fn last(ctx: &Ctx<'_>, t: Colour) -> RuleContext {
    RuleContext::phase4(t, ctx.opts.budget)
}

fn settle(ctx: &Ctx<'_>, mut inst: Instance, set: RuleSet, rc: &RuleContext) -> Result<Child> {
    Ok(match propagate(&mut inst, set, rc, ctx)? {
        Propagation::No => Child::Done(None),
        Propagation::Yes(c) => Child::Done(Some(c)),
        Propagation::Fixpoint => Child::Open(inst),
    })
}

/// Restrict `v` to `c`, or to nothing when `c` is not available.
fn pin(inst: &mut Instance, v: VertexId, c: Colour) {
    let l = inst.list(v).intersection(ColourSet::single(c));
    inst.set_list(v, l);
}

fn single(inst: &Instance, v: VertexId) -> Colour {
    inst.list(v).min().expect("anchor vertices are coloured")
}

/// Try children in order and return the first colouring.
fn first<T>(items: Vec<T>, mut f: impl FnMut(T) -> Result<Found>) -> Result<Found> {
    for item in items {
        if let Some(c) = f(item)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

macro_rules! ensure {
    ($ctx:expr, $inst:expr, $check:expr, $outcome:expr) => {
        if let Err(msg) = $ctx.check($check, $outcome) {
            return $ctx.fallback(&$inst, msg);
        }
    };
}

fn layer_checks(ctx: &Ctx<'_>, inst: &Instance) -> std::result::Result<(), String> {
    let act = ActiveState::compute(inst).expect("anchored");
    ctx.check(Check::LayerDepth, checks::layer_depth(&act))?;
    ctx.check(Check::DeepCliques, checks::deep_cliques(inst, &act))?;
    ctx.check(Check::ListSizes, checks::list_sizes(inst))?;
    ctx.check(Check::N3Shape, checks::n3_shape(inst, &act))?;
    ctx.check(Check::ComponentShape, checks::component_shape(inst, &act))?;
    ctx.check(Check::FullListsInN2, checks::full_lists_in_n2(inst, &act))
}

/// Branching I: colour the anchored path in every proper way.
pub(super) fn anchor(ctx: &Ctx<'_>, inst: Instance, node: u64) -> Result<Found> {
    ctx.enter(1);
    let colourings = anchor_colourings(&inst)?;
    ctx.counters
        .max_anchor_children
        .fetch_max(colourings.len() as u64, Ordering::Relaxed);
    let ids = ctx.branch(B_I, node, colourings.len());
    let p = *inst.n0().expect("anchored");
    let items: Vec<_> = colourings.into_iter().zip(ids).collect();
    par::first_found(items, ctx.opts.parallel, |(cols, id)| {
        let mut child = inst.clone();
        for (&v, c) in p.iter().zip(cols) {
            child.colour(v, c);
        }
        match settle(ctx, child, RuleSet::PHASE1, &base(ctx))? {
            Child::Done(f) => Ok(f),
            Child::Open(child) => {
                if let Err(msg) = layer_checks(ctx, &child) {
                    return ctx.fallback(&child, msg);
                }
                ctx.enter(2);
                pairs(ctx, child, 0, id)
            }
        }
    })
}

fn pair_settled(inst: &Instance, k: usize) -> bool {
    let act = ActiveState::compute(inst).expect("anchored");
    let (i, j) = PAIRS[k];
    act.pair(inst, i, j).is_empty() || act.pair(inst, j, i).is_empty()
}

/// Continue after pair `k` was branched on: check it is settled, move on.
fn next_pair(ctx: &Ctx<'_>, inst: Instance, k: usize, node: u64) -> Result<Found> {
    if let Err(msg) = layer_checks(ctx, &inst) {
        return ctx.fallback(&inst, msg);
    }
    let (i, j) = PAIRS[k];
    ensure!(
        ctx,
        inst,
        Check::PropertyP,
        if pair_settled(&inst, k) {
            Ok(())
        } else {
            Err(format!("pair ({}, {}) still has both sides active", i + 1, j + 1))
        }
    );
    pairs(ctx, inst, k + 1, node)
}

/// Branching II over the pairs from index `k` on.
fn pairs(ctx: &Ctx<'_>, inst: Instance, k: usize, node: u64) -> Result<Found> {
    let Some(k) = (k..PAIRS.len()).find(|&k| !pair_settled(&inst, k)) else {
        let act = ActiveState::compute(&inst).expect("anchored");
        ensure!(ctx, inst, Check::PropertyP, checks::property_p(&inst, &act));
        return split_lists(ctx, inst, node);
    };
    let act = ActiveState::compute(&inst).expect("anchored");
    let p = *inst.n0().expect("anchored");
    let (i, j) = PAIRS[k];
    let (ci, cj) = (single(&inst, p[i]), single(&inst, p[j]));
    let rest = ColourSet::full(3).without(ci);
    let two = if ci != cj {
        rest.without(cj).min().unwrap()
    } else {
        rest.min().unwrap()
    };
    let one = rest.without(two).min().unwrap();
    let aij = act.pair(&inst, i, j);
    ensure!(ctx, inst, Check::PairLists, checks::lists_equal(&inst, &aij, rest));

    // At most one vertex gets `two`, or a chosen pair does.
    let mut children: Vec<(Vec<(VertexId, Colour)>, bool)> = Vec::new();
    children.push((aij.iter().map(|&x| (x, one)).collect(), false));
    for &x in &aij {
        let pins = aij.iter().map(|&y| (y, if y == x { two } else { one })).collect();
        children.push((pins, false));
    }
    for (a, &x1) in aij.iter().enumerate() {
        for &x2 in &aij[a + 1..] {
            children.push((vec![(x1, two), (x2, two)], true));
        }
    }
    let ids = ctx.branch(B_II, node, children.len());
    first(children.into_iter().zip(ids).collect(), |((pins, pair), id)| {
        let mut child = inst.clone();
        for (v, c) in pins {
            pin(&mut child, v, c);
        }
        let child = match settle(ctx, child, RuleSet::PHASE1, &base(ctx))? {
            Child::Done(f) => return Ok(f),
            Child::Open(c) => c,
        };
        if !pair {
            return next_pair(ctx, child, k, id);
        }
        let act = ActiveState::compute(&child).expect("anchored");
        let aji = act.pair(&child, j, i);
        if aji.is_empty() {
            return next_pair(ctx, child, k, id);
        }
        let g = child.graph();
        let s: Vec<VertexId> = act
            .a2
            .iter()
            .copied()
            .filter(|&x| g.neighbours(x).iter().any(|y| aji.contains(y)))
            .collect();
        // All of `s` take the colour of `v_j`, or one of them avoids it.
        let mut grand: Vec<Vec<(VertexId, Colour)>> = vec![s.iter().map(|&x| (x, cj)).collect()];
        for &x in &s {
            for c in child.list(x).without(cj).iter() {
                grand.push(vec![(x, c)]);
            }
        }
        let gids = ctx.branch(B_II, id, grand.len());
        first(grand.into_iter().zip(gids).collect(), |(pins, gid)| {
            let mut gc = child.clone();
            for (v, c) in pins {
                pin(&mut gc, v, c);
            }
            match settle(ctx, gc, RuleSet::PHASE1, &base(ctx))? {
                Child::Done(f) => Ok(f),
                Child::Open(gc) => next_pair(ctx, gc, k, gid),
            }
        })
    })
}

/// After Branching II: two lists on `A1` go through Phase 3, one goes on.
fn split_lists(ctx: &Ctx<'_>, inst: Instance, node: u64) -> Result<Found> {
    let act = ActiveState::compute(&inst).expect("anchored");
    let lists = act.a1_lists(&inst);
    ensure!(
        ctx,
        inst,
        Check::A1ListCount,
        if lists.len() <= 2 {
            Ok(())
        } else {
            Err(format!("{} distinct lists on A1", lists.len()))
        }
    );
    if lists.len() == 2 {
        ctx.enter(3);
        two_lists(ctx, inst, &act, lists[0], lists[1], node)
    } else {
        last_phase(ctx, inst, node)
    }
}

/// The colours `(c1, c2, c3)` and the `A1` vertices with list `{c1, c2}`.
struct Split {
    c1: Colour,
    c2: Colour,
    c3: Colour,
    x12: Vec<VertexId>,
}

fn anchor_pattern(
    inst: &Instance,
    act: &ActiveState,
    la: ColourSet,
    lb: ColourSet,
) -> std::result::Result<Split, String> {
    let g = inst.graph();
    let p = *inst.n0().expect("anchored");
    let common = la.intersection(lb);
    if la.len() != 2 || lb.len() != 2 || common.len() != 1 {
        return Err(format!("A1 lists {la} and {lb} do not share exactly one colour"));
    }
    let touched: Vec<usize> = (0..7)
        .filter(|&i| act.a1.iter().any(|&x| g.has_edge(x, p[i])))
        .collect();
    if touched.len() != 3 || touched[2] != touched[0] + 2 {
        return Err(format!("A1 touches anchor positions {touched:?}"));
    }
    let mid = touched[1];
    let (c1, c2, c3) = (common.min().unwrap(), single(inst, p[mid]), single(inst, p[mid - 1]));
    if single(inst, p[mid + 1]) != c3 || c1 == c2 || c1 == c3 {
        return Err("anchor colours around A1 do not fit".into());
    }
    let l12 = ColourSet::from_colours([c1, c2]);
    let l13 = ColourSet::from_colours([c1, c3]);
    let mut x12 = Vec::new();
    for &x in &act.a1 {
        let n0: Vec<usize> = (0..7).filter(|&i| g.has_edge(x, p[i])).collect();
        if inst.list(x) == l12 && n0 == [mid - 1, mid + 1] {
            x12.push(x);
        } else if inst.list(x) != l13 || n0 != [mid] {
            return Err(format!("A1 vertex {x:?} with list {} sees anchor positions {n0:?}", inst.list(x)));
        }
    }
    Ok(Split { c1, c2, c3, x12 })
}

fn x_sets(inst: &Instance, sp: &Split) -> (ActiveState, Vec<VertexId>, Vec<VertexId>) {
    let act = ActiveState::compute(inst).expect("anchored");
    let l12 = ColourSet::from_colours([sp.c1, sp.c2]);
    let l13 = ColourSet::from_colours([sp.c1, sp.c3]);
    let x12 = act.a1.iter().copied().filter(|&x| inst.list(x) == l12).collect();
    let x13 = act.a1.iter().copied().filter(|&x| inst.list(x) == l13).collect();
    (act, x12, x13)
}

/// Branching III.
fn two_lists(ctx: &Ctx<'_>, inst: Instance, act: &ActiveState, la: ColourSet, lb: ColourSet, node: u64) -> Result<Found> {
    let sp = match ctx.check(Check::AnchorPattern, anchor_pattern(&inst, act, la, lb)) {
        Ok(sp) => sp,
        Err(msg) => return ctx.fallback(&inst, msg),
    };
    let mut children: Vec<Option<VertexId>> = vec![None];
    children.extend(sp.x12.iter().map(|&w| Some(w)));
    let ids = ctx.branch(B_III, node, children.len());
    first(children.into_iter().zip(ids).collect(), |(w, id)| {
        let mut child = inst.clone();
        match w {
            None => {
                for &x in &sp.x12 {
                    pin(&mut child, x, sp.c2);
                }
            }
            Some(w) => {
                pin(&mut child, w, sp.c1);
                child.protect(w);
            }
        }
        let child = match settle(ctx, child, RuleSet::PHASE1, &base(ctx))? {
            Child::Done(f) => return Ok(f),
            Child::Open(c) => c,
        };
        if let Err(msg) = layer_checks(ctx, &child) {
            return ctx.fallback(&child, msg);
        }
        let Some(w) = w else {
            return last_phase(ctx, child, id);
        };
        let (act, x12, x13) = x_sets(&child, &sp);
        if x12.is_empty() || x13.is_empty() {
            return last_phase(ctx, child, id);
        }
        ensure!(ctx, child, Check::PivotIsolated, checks::pivot_isolated(&child, &act, w, &x12, &x13));
        ensure!(ctx, child, Check::X13Cliques, checks::x13_cliques(&child, &act, &x13));
        ensure!(ctx, child, Check::A2Edges, checks::a2_edges(&child, &act, w, &x13));
        x13_branch(ctx, child, &sp, w, &act, &x13, id)
    })
}

/// The induced three-vertex path through `s` and the `X13` neighbour of `s`.
fn short_path(
    inst: &Instance,
    act: &ActiveState,
    s: VertexId,
    w: VertexId,
    x13: &[VertexId],
) -> std::result::Result<(Vec<VertexId>, VertexId), String> {
    let g = inst.graph();
    let rs: Vec<VertexId> = g.neighbours(s).iter().copied().filter(|r| x13.contains(r)).collect();
    let [r] = rs[..] else {
        return Err(format!("{s:?} has {} X13 neighbours", rs.len()));
    };
    let others: Vec<VertexId> = g.neighbours(s).iter().copied().filter(|&x| x != r).collect();
    for (a, &t) in others.iter().enumerate() {
        for &t2 in &others[a + 1..] {
            if !g.has_edge(t, t2) {
                return Ok((vec![t, s, t2], r));
            }
        }
    }
    let [mut t, mut t2] = others[..] else {
        return Err(format!("{s:?} has {} neighbours besides {r:?}", others.len()));
    };
    if g.has_edge(t, r) {
        std::mem::swap(&mut t, &mut t2);
    }
    if g.has_edge(t, r) {
        return Err(format!("{s:?}, {r:?}, {t:?}, {t2:?} form a K4"));
    }
    let path = if act.layers.in_layer(t, 2) {
        vec![s, t, w]
    } else {
        vec![s, t2, w]
    };
    if !checks::induced_path(g, &path) {
        return Err(format!("{path:?} is not an induced path"));
    }
    Ok((path, r))
}

/// Branching IV.
fn x13_branch(
    ctx: &Ctx<'_>,
    inst: Instance,
    sp: &Split,
    w: VertexId,
    act: &ActiveState,
    x13: &[VertexId],
    node: u64,
) -> Result<Found> {
    let s_set = checks::x13_neighbours(&inst, act, x13);
    let mut children: Vec<Vec<(VertexId, Colour)>> = vec![Vec::new()];
    for &s in &s_set {
        let (path, r) = match ctx.check(Check::ShortPath, short_path(&inst, act, s, w, x13)) {
            Ok(found) => found,
            Err(msg) => return ctx.fallback(&inst, msg),
        };
        let mut rest: Vec<VertexId> = path.into_iter().filter(|&x| x != s && x != w).collect();
        rest.push(r);
        let g = inst.graph();
        let lists = |x: VertexId| {
            let mut l = inst.list(x);
            if g.has_edge(x, s) {
                l = l.without(sp.c2);
            }
            if g.has_edge(x, w) {
                l = l.without(sp.c1);
            }
            l
        };
        for cols in list_colourings(&inst, &rest, lists) {
            let mut pins = vec![(s, sp.c2)];
            pins.extend(rest.iter().copied().zip(cols));
            children.push(pins);
        }
    }
    let ids = ctx.branch(B_IV, node, children.len());
    first(children.into_iter().zip(ids).collect(), |(pins, id)| {
        let mut child = inst.clone();
        if pins.is_empty() {
            for &s in &s_set {
                let l = child.list(s).without(sp.c2);
                child.set_list(s, l);
            }
        }
        for &(v, c) in &pins {
            pin(&mut child, v, c);
        }
        let child = match settle(ctx, child, RuleSet::PHASE1, &base(ctx))? {
            Child::Done(f) => return Ok(f),
            Child::Open(c) => c,
        };
        if let Err(msg) = layer_checks(ctx, &child) {
            return ctx.fallback(&child, msg);
        }
        let (_, _, x13) = x_sets(&child, sp);
        let limit = if pins.is_empty() { 0 } else { 1 };
        ensure!(
            ctx,
            child,
            Check::SingleX13,
            if x13.len() <= limit {
                Ok(())
            } else {
                Err(format!("{} X13 vertices remain", x13.len()))
            }
        );
        last_x13(ctx, child, w, &x13, id)
    })
}

/// Branching V: colour the remaining `X13` vertex both ways.
fn last_x13(ctx: &Ctx<'_>, mut inst: Instance, w: VertexId, x13: &[VertexId], node: u64) -> Result<Found> {
    let Some(&y) = x13.first() else {
        inst.unprotect(w);
        return last_phase(ctx, inst, node);
    };
    let colours: Vec<Colour> = inst.list(y).iter().collect();
    let ids = ctx.branch(B_V, node, colours.len());
    first(colours.into_iter().zip(ids).collect(), |(c, id)| {
        let mut child = inst.clone();
        pin(&mut child, y, c);
        child.unprotect(w);
        last_phase(ctx, child, id)
    })
}

/// Phase 4 entry: every `A1` vertex shares one list.
fn last_phase(ctx: &Ctx<'_>, mut inst: Instance, node: u64) -> Result<Found> {
    ctx.enter(4);
    inst.release_all();
    let inst = match settle(ctx, inst, RuleSet::PHASE1, &base(ctx))? {
        Child::Done(f) => return Ok(f),
        Child::Open(c) => c,
    };
    let act = ActiveState::compute(&inst).expect("anchored");
    let lists = act.a1_lists(&inst);
    ensure!(
        ctx,
        inst,
        Check::A1SingleList,
        match lists[..] {
            [l] if l.len() == 2 => Ok(()),
            _ => Err(format!("A1 carries lists {lists:?}")),
        }
    );
    let t = ColourSet::full(3).difference(lists[0]).min().unwrap();
    match ctx.target {
        Target::P2P5 => {
            let g = inst.graph();
            let mut deep: Vec<VertexId> = act.layers.layer(2).to_vec();
            deep.extend_from_slice(act.layers.layer(3));
            ensure!(
                ctx,
                inst,
                Check::DeepIndependent,
                if g.is_independent(&deep) {
                    Ok(())
                } else {
                    Err("N2 and N3 span an edge".to_string())
                }
            );
            let mut child = inst.clone();
            for &u in &act.a2 {
                pin(&mut child, u, t);
            }
            match settle(ctx, child, RuleSet::PHASE1, &base(ctx))? {
                Child::Done(f) => Ok(f),
                Child::Open(c) => {
                    let msg = ctx.check::<()>(Check::Settled, Err("full lists survive pinning A2".into()));
                    ctx.fallback(&c, msg.unwrap_err())
                }
            }
        }
        Target::P3P4 => {
            let bound = act.a2.len();
            match settle(ctx, inst, RuleSet::ALL, &last(ctx, t))? {
                Child::Done(f) => Ok(f),
                Child::Open(c) => pivot(ctx, c, t, 0, bound, node),
            }
        }
    }
}

/// Branching VI.
fn pivot(ctx: &Ctx<'_>, inst: Instance, t: Colour, depth: usize, bound: usize, node: u64) -> Result<Found> {
    ctx.counters.max_recursion.fetch_max(depth as u64, Ordering::Relaxed);
    ensure!(
        ctx,
        inst,
        Check::RecursionDepth,
        if depth <= bound {
            Ok(())
        } else {
            Err(format!("depth {depth} exceeds {bound}"))
        }
    );
    let act = ActiveState::compute(&inst).expect("anchored");
    ensure!(
        ctx,
        inst,
        Check::ActiveRemains,
        if act.a2.is_empty() {
            Err("propagation stopped without active vertices".to_string())
        } else {
            Ok(())
        }
    );
    let ab = ColourSet::full(3).without(t);
    ensure!(ctx, inst, Check::A1SingleList, checks::lists_equal(&inst, &act.a1, ab));
    let g = inst.graph();
    let n1 = |x: VertexId| act.layers.in_layer(x, 1);
    let u = *act
        .a2
        .iter()
        .min_by_key(|&&u| (g.neighbours(u).iter().filter(|&&x| n1(x)).count(), u))
        .unwrap();
    let b: Vec<VertexId> = g.neighbours(u).iter().copied().filter(|&x| inst.list(x).contains(t)).collect();
    ensure!(
        ctx,
        inst,
        Check::ThirdColourNeighbours,
        if b.is_empty() {
            Err(format!("{u:?} has no neighbour with colour {t}"))
        } else if let Some(x) = b.iter().find(|&&x| !act.layers.in_layer(x, 2) && !act.layers.in_layer(x, 3)) {
            Err(format!("{x:?} carries colour {t} next to {u:?} outside the deep layers"))
        } else {
            Ok(())
        }
    );
    let v = b[0];
    let auv: Vec<VertexId> = g.neighbours(u).iter().copied().filter(|&x| n1(x) && !g.has_edge(x, v)).collect();
    let avu: Vec<VertexId> = g.neighbours(v).iter().copied().filter(|&x| n1(x) && !g.has_edge(x, u)).collect();
    let common: Vec<VertexId> = g.common_neighbours(u, v);
    let open: Vec<(VertexId, VertexId)> = avu
        .iter()
        .flat_map(|&w| auv.iter().map(move |&tt| (w, tt)))
        .filter(|&(w, tt)| !g.has_edge(w, tt))
        .collect();
    let built = if auv.is_empty() || avu.is_empty() {
        Err(format!("A({u:?},{v:?}) or A({v:?},{u:?}) is empty"))
    } else if let Some(&(w, tt)) = open.iter().find(|(w, _)| inst.list(*w) == ab) {
        Ok((vec![w, tt, u, v], vec![tt, u, v, w], u, tt))
    } else if let Some(&(w, tt)) = open.first() {
        Ok((vec![w, tt, u, v], vec![tt, u, v, w], v, tt))
    } else if let Some(&s) = common.first() {
        let (w, tt) = (avu[0], auv[0]);
        Ok((vec![s, tt, w, u, v], vec![s, u, tt, w], v, tt))
    } else {
        Err(format!("{u:?} and {v:?} have no common neighbour"))
    };
    let built = built.and_then(|(mut q, path, x, tt)| {
        if let Some(&t2) = auv.iter().find(|&&y| y != tt) {
            q.push(t2);
        }
        if checks::induced_path(g, &path) {
            Ok((q, x))
        } else {
            Err(format!("{path:?} is not an induced P4"))
        }
    });
    let (mut q, x) = match ctx.check(Check::QPath, built) {
        Err(msg) => return ctx.fallback(&inst, msg),
        Ok(qx) => qx,
    };
    q.sort();
    let colourings = list_colourings(&inst, &q, |y| {
        if y == x {
            inst.list(y).intersection(ColourSet::single(t))
        } else {
            inst.list(y)
        }
    });
    let mut children: Vec<Option<Vec<Colour>>> = vec![None];
    children.extend(colourings.into_iter().map(Some));
    let ids = ctx.branch(B_VI, node, children.len());
    first(children.into_iter().zip(ids).collect(), |(cols, id)| {
        let mut child = inst.clone();
        let Some(cols) = cols else {
            let l = child.list(x).without(t);
            child.set_list(x, l);
            return match settle(ctx, child, RuleSet::ALL, &last(ctx, t))? {
                Child::Done(f) => Ok(f),
                Child::Open(c) => pivot(ctx, c, t, depth + 1, bound, id),
            };
        };
        for (&y, c) in q.iter().zip(cols) {
            pin(&mut child, y, c);
            child.protect(y);
        }
        let narrow = RuleSet::of(&[Rule::EmptyList, Rule::TwoList, Rule::SingleColour, Rule::Triangle]);
        let child = match settle(ctx, child, narrow, &base(ctx))? {
            Child::Done(f) => return Ok(f),
            Child::Open(c) => c,
        };
        let act = ActiveState::compute(&child).expect("anchored");
        ensure!(ctx, child, Check::SingleA1Neighbour, checks::single_a1_neighbour(&child, &act));
        match settle(ctx, child, RuleSet::ALL, &last(ctx, t))? {
            Child::Done(f) => Ok(f),
            Child::Open(c) => finish(ctx, c, t, id),
        }
    })
}

/// Branching VII.
fn finish(ctx: &Ctx<'_>, inst: Instance, t: Colour, node: u64) -> Result<Found> {
    let act = ActiveState::compute(&inst).expect("anchored");
    ensure!(
        ctx,
        inst,
        Check::ActiveRemains,
        if act.a2.is_empty() {
            Err("propagation stopped without active vertices".to_string())
        } else {
            Ok(())
        }
    );
    let g = inst.graph();
    let mut children: Vec<Option<(VertexId, VertexId, Colour)>> = vec![None];
    for &r in &act.a2 {
        let r1: Vec<VertexId> = g.neighbours(r).iter().copied().filter(|&y| act.is_a1(y)).collect();
        ensure!(
            ctx,
            inst,
            Check::SingleA1Neighbour,
            if r1.len() == 1 {
                Ok(())
            } else {
                Err(format!("A2 vertex {r:?} has {} A1 neighbours", r1.len()))
            }
        );
        for c in inst.list(r1[0]).iter() {
            children.push(Some((r, r1[0], c)));
        }
    }
    let ids = ctx.branch(B_VII, node, children.len());
    first(children.into_iter().zip(ids).collect(), |(choice, _id)| {
        let mut child = inst.clone();
        match choice {
            None => {
                for &u in &act.a2 {
                    let l = child.list(u).without(t);
                    child.set_list(u, l);
                }
            }
            Some((r, r1, c)) => {
                pin(&mut child, r, t);
                pin(&mut child, r1, c);
                child.protect(r);
                for &y in inst.graph().neighbours(r) {
                    child.protect(y);
                }
            }
        }
        match settle(ctx, child, RuleSet::ALL, &last(ctx, t))? {
            Child::Done(f) => Ok(f),
            Child::Open(c) => {
                let msg = ctx.check::<()>(Check::Settled, Err("a full list survives the last branching".into()));
                ctx.fallback(&c, msg.unwrap_err())
            }
        }
    })
}
