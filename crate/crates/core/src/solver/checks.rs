//! Structural invariants the solver relies on, checked where they are used.

use std::fmt;

use crate::colour::ColourSet;
use crate::graph::{Graph, VertexId};
use crate::instance::Instance;

use super::active::ActiveState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Every vertex lies within distance 3 of the anchor.
    LayerDepth,
    /// `G[N2 ∪ N3]` is a union of cliques of size at most 3, each meeting `N2`.
    DeepCliques,
    /// Every vertex off the anchor keeps 2 or 3 colours.
    ListSizes,
    /// `N3` is independent; its vertices have two colours and two `N2` neighbours.
    N3Shape,
    /// Components of `G[N2 ∪ N3]` are small cliques with at most one `N3` vertex.
    ComponentShape,
    /// Full lists occur only in `N2`.
    FullListsInN2,
    /// `A(i,j)` holds exactly the two colours left by `v_i`.
    PairLists,
    /// `A(i,j)` or `A(j,i)` is empty for every pair.
    PropertyP,
    /// At most two distinct lists on `A1`.
    A1ListCount,
    /// `A1` touches three consecutive anchor vertices in the expected pattern.
    AnchorPattern,
    /// The pinned `X12` vertex has no neighbour among the active vertices.
    PivotIsolated,
    /// `X13`, its `A2` neighbours and `N3` induce small disjoint cliques.
    X13Cliques,
    /// Edges from `A2` into `N2` see the pivot or cover the `X13` neighbours.
    A2Edges,
    /// The short path used by the fourth branching exists and is induced.
    ShortPath,
    /// At most one `X13` vertex survives the fourth branching.
    SingleX13,
    /// All of `A1` shares one list on entry to the last phase.
    A1SingleList,
    /// `N2 ∪ N3` is independent on `(P2+P5)`-free inputs.
    DeepIndependent,
    /// A full list remains somewhere while propagation is stuck.
    ActiveRemains,
    /// Every `A2` vertex has a neighbour carrying the third colour, all deep.
    ThirdColourNeighbours,
    /// The four-vertex path of the sixth branching exists and is induced.
    QPath,
    /// The sixth branching recurses at most `|A2|` deep.
    RecursionDepth,
    /// No `A2` vertex has two `A1` neighbours.
    SingleA1Neighbour,
    /// Every child of the seventh branching is settled by propagation.
    Settled,
}

impl Check {
    pub const ALL: [Check; 23] = [
        Check::LayerDepth,
        Check::DeepCliques,
        Check::ListSizes,
        Check::N3Shape,
        Check::ComponentShape,
        Check::FullListsInN2,
        Check::PairLists,
        Check::PropertyP,
        Check::A1ListCount,
        Check::AnchorPattern,
        Check::PivotIsolated,
        Check::X13Cliques,
        Check::A2Edges,
        Check::ShortPath,
        Check::SingleX13,
        Check::A1SingleList,
        Check::DeepIndependent,
        Check::ActiveRemains,
        Check::ThirdColourNeighbours,
        Check::QPath,
        Check::RecursionDepth,
        Check::SingleA1Neighbour,
        Check::Settled,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::LayerDepth => "layer-depth",
            Check::DeepCliques => "deep-cliques",
            Check::ListSizes => "list-sizes",
            Check::N3Shape => "n3-shape",
            Check::ComponentShape => "component-shape",
            Check::FullListsInN2 => "full-lists-in-n2",
            Check::PairLists => "pair-lists",
            Check::PropertyP => "property-p",
            Check::A1ListCount => "a1-list-count",
            Check::AnchorPattern => "anchor-pattern",
            Check::PivotIsolated => "pivot-isolated",
            Check::X13Cliques => "x13-cliques",
            Check::A2Edges => "a2-edges",
            Check::ShortPath => "short-path",
            Check::SingleX13 => "single-x13",
            Check::A1SingleList => "a1-single-list",
            Check::DeepIndependent => "deep-independent",
            Check::ActiveRemains => "active-remains",
            Check::ThirdColourNeighbours => "third-colour-neighbours",
            Check::QPath => "q-path",
            Check::RecursionDepth => "recursion-depth",
            Check::SingleA1Neighbour => "single-a1-neighbour",
            Check::Settled => "settled",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Outcome = Result<(), String>;

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

/// Components of `g[set]`, each sorted.
fn components_within(g: &Graph, set: &[VertexId]) -> Vec<Vec<VertexId>> {
    let sub = g.induced(set);
    sub.components()
}

pub fn layer_depth(act: &ActiveState) -> Outcome {
    if let Some(v) = act.layers.unreachable.first() {
        return fail(format!("{v:?} is not connected to the anchor"));
    }
    if act.layers.max_depth() > 3 {
        return fail(format!("{:?} lies at distance 4", act.layers.layer(4)[0]));
    }
    Ok(())
}

fn deep(act: &ActiveState) -> Vec<VertexId> {
    let mut d: Vec<VertexId> = act.layers.layer(2).to_vec();
    d.extend_from_slice(act.layers.layer(3));
    d.sort();
    d
}

pub fn deep_cliques(inst: &Instance, act: &ActiveState) -> Outcome {
    let g = inst.graph();
    for comp in components_within(g, &deep(act)) {
        if comp.len() > 3 || !g.is_clique(&comp) {
            return fail(format!("component {comp:?} of the deep layers is not a small clique"));
        }
        if comp.iter().all(|&v| act.layers.in_layer(v, 3)) {
            return fail(format!("component {comp:?} has no vertex in N2"));
        }
    }
    Ok(())
}

pub fn list_sizes(inst: &Instance) -> Outcome {
    for v in inst.graph().vertices() {
        let n = inst.list(v).len();
        if !inst.in_n0(v) && !inst.is_protected(v) && !(2..=3).contains(&n) {
            return fail(format!("{v:?} has list {}", inst.list(v)));
        }
    }
    Ok(())
}

pub fn n3_shape(inst: &Instance, act: &ActiveState) -> Outcome {
    let g = inst.graph();
    for &v in act.layers.layer(3) {
        let n2 = g.neighbours(v).iter().filter(|&&w| act.layers.in_layer(w, 2)).count();
        if g.neighbours(v).iter().any(|&w| act.layers.in_layer(w, 3)) {
            return fail(format!("N3 vertex {v:?} has an N3 neighbour"));
        }
        if inst.list(v).len() != 2 || n2 != 2 {
            return fail(format!(
                "N3 vertex {v:?} has list {} and {n2} N2 neighbours",
                inst.list(v)
            ));
        }
    }
    Ok(())
}

pub fn component_shape(inst: &Instance, act: &ActiveState) -> Outcome {
    let g = inst.graph();
    for comp in components_within(g, &deep(act)) {
        let in3 = comp.iter().filter(|&&v| act.layers.in_layer(v, 3)).count();
        let ok = g.is_clique(&comp)
            && ((comp.len() <= 2 && in3 == 0) || (comp.len() == 3 && in3 <= 1));
        if !ok {
            return fail(format!("deep component {comp:?} has {in3} N3 vertices"));
        }
    }
    Ok(())
}

pub fn full_lists_in_n2(inst: &Instance, act: &ActiveState) -> Outcome {
    for v in inst.graph().vertices() {
        if inst.list(v).len() == 3 && !act.layers.in_layer(v, 2) {
            return fail(format!("{v:?} has a full list outside N2"));
        }
    }
    Ok(())
}

pub fn property_p(inst: &Instance, act: &ActiveState) -> Outcome {
    match act.property_p_violation(inst) {
        None => Ok(()),
        Some((i, j)) => fail(format!("A({}, {}) and A({}, {}) are both non-empty", i + 1, j + 1, j + 1, i + 1)),
    }
}

/// The pivot `w` sees none of `A2`, `X12`, `X13`.
pub fn pivot_isolated(inst: &Instance, act: &ActiveState, w: VertexId, x12: &[VertexId], x13: &[VertexId]) -> Outcome {
    let g = inst.graph();
    let hit = g
        .neighbours(w)
        .iter()
        .find(|&&x| act.is_a2(x) || x12.contains(&x) || x13.contains(&x));
    match hit {
        Some(x) => fail(format!("pivot {w:?} is adjacent to active vertex {x:?}")),
        None => Ok(()),
    }
}

/// `N(X13) ∩ A2`, sorted.
pub fn x13_neighbours(inst: &Instance, act: &ActiveState, x13: &[VertexId]) -> Vec<VertexId> {
    let g = inst.graph();
    act.a2
        .iter()
        .copied()
        .filter(|&s| g.neighbours(s).iter().any(|x| x13.contains(x)))
        .collect()
}

pub fn x13_cliques(inst: &Instance, act: &ActiveState, x13: &[VertexId]) -> Outcome {
    let g = inst.graph();
    let mut set: Vec<VertexId> = x13.to_vec();
    set.extend(x13_neighbours(inst, act, x13));
    set.extend_from_slice(act.layers.layer(3));
    set.sort();
    set.dedup();
    for comp in components_within(g, &set) {
        let nx = comp.iter().filter(|v| x13.contains(v)).count();
        let n3 = comp.iter().filter(|&&v| act.layers.in_layer(v, 3)).count();
        let ok = g.is_clique(&comp)
            && ((nx == 1 && n3 == 0 && comp.len() <= 3) || (comp.len() == 1 && n3 == 1));
        if !ok {
            return fail(format!("component {comp:?} around X13 has the wrong shape"));
        }
    }
    Ok(())
}

pub fn a2_edges(inst: &Instance, act: &ActiveState, w: VertexId, x13: &[VertexId]) -> Outcome {
    let g = inst.graph();
    for &s in &act.a2 {
        for &t in g.neighbours(s) {
            if !act.layers.in_layer(t, 2) || g.has_edge(t, w) {
                continue;
            }
            if let Some(r) = g
                .neighbours(s)
                .iter()
                .find(|&&r| x13.contains(&r) && !g.has_edge(r, t))
            {
                return fail(format!(
                    "{s:?} - {t:?} misses the pivot and {t:?} misses X13 vertex {r:?}"
                ));
            }
        }
    }
    Ok(())
}

pub fn single_a1_neighbour(inst: &Instance, act: &ActiveState) -> Outcome {
    let g = inst.graph();
    for &r in &act.a2 {
        let n = g.neighbours(r).iter().filter(|&&x| act.is_a1(x)).count();
        if n > 1 {
            return fail(format!("A2 vertex {r:?} has {n} A1 neighbours"));
        }
    }
    Ok(())
}

/// `path` induces a path in that order.
pub fn induced_path(g: &Graph, path: &[VertexId]) -> bool {
    for a in 0..path.len() {
        for b in a + 1..path.len() {
            if path[a] == path[b] || g.has_edge(path[a], path[b]) != (b == a + 1) {
                return false;
            }
        }
    }
    true
}

/// Lists are all exactly `want`.
pub fn lists_equal(inst: &Instance, vs: &[VertexId], want: ColourSet) -> Outcome {
    match vs.iter().find(|&&v| inst.list(v) != want) {
        Some(v) => fail(format!("{v:?} has list {}, expected {want}", inst.list(*v))),
        None => Ok(()),
    }
}
