//! List-colouring instances with a reconstruction log.
//!
//! Every deletion and identification is recorded so that a colouring of the
//! reduced graph can be lifted back to the vertices the instance started
//! with. Lifting replays the log backwards: at the time an entry is replayed,
//! every vertex that was live when the entry was written already has a colour.

use std::fmt;

use crate::colour::{Colour, ColourSet, MAX_COLOURS};
use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::{layers, Graph, LayerState, VertexId};

/// One step of the reduction history.
#[derive(Clone, Debug)]
enum LogEntry {
    /// Vertices removed together; each keeps its list and its neighbours at
    /// removal time.
    Deleted(Vec<Removed>),
    /// Vertices removed with a colouring already fixed.
    Solved(Vec<(VertexId, Colour)>),
    /// `members` were replaced by `into`.
    Identified {
        members: Vec<VertexId>,
        into: VertexId,
    },
}

#[derive(Clone, Debug)]
struct Removed {
    vertex: VertexId,
    list: ColourSet,
    neighbours: Vec<VertexId>,
}

/// A graph, a list assignment over `{1..k}`, an optional anchored `P_7` and a
/// set of protected vertices.
#[derive(Clone)]
pub struct Instance {
    graph: Graph,
    lists: Vec<ColourSet>,
    k: u8,
    n0: Option<[VertexId; 7]>,
    protected: Vec<bool>,
    roots: Vec<VertexId>,
    log: Vec<LogEntry>,
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for v in self.graph.vertices() {
            m.entry(&v, &(self.lists[v.index()], self.graph.neighbours(v)));
        }
        m.finish()
    }
}

impl Instance {
    /// Every vertex gets the full palette `{1..k}`.
    pub fn new(graph: Graph, k: u8) -> Result<Self> {
        let lists = vec![ColourSet::full(k.min(MAX_COLOURS)); graph.id_bound()];
        Instance::with_lists(graph, lists, k)
    }

    /// `lists` is indexed by vertex id; entries for dead ids are ignored.
    pub fn with_lists(graph: Graph, mut lists: Vec<ColourSet>, k: u8) -> Result<Self> {
        if k == 0 || k > MAX_COLOURS {
            return Err(Error::usage(format!("palette size {k} outside 1..={MAX_COLOURS}")));
        }
        if lists.len() < graph.id_bound() {
            return Err(Error::usage("list assignment shorter than the vertex range"));
        }
        lists.truncate(graph.id_bound());
        let palette = ColourSet::full(k);
        for v in graph.vertices() {
            if !lists[v.index()].is_subset(palette) {
                return Err(Error::usage(format!(
                    "list {} of vertex {v} is not within {{1..{k}}}",
                    lists[v.index()]
                )));
            }
        }
        Ok(Instance {
            protected: vec![false; graph.id_bound()],
            roots: graph.vertices().collect(),
            graph,
            lists,
            k,
            n0: None,
            log: Vec::new(),
        })
    }

    /// Sub-instance on `set` with the same lists, as a fresh root.
    pub fn induced(&self, set: &[VertexId]) -> Instance {
        let graph = self.graph.induced(set);
        Instance {
            protected: vec![false; graph.id_bound()],
            roots: graph.vertices().collect(),
            lists: self.lists.clone(),
            k: self.k,
            n0: None,
            log: Vec::new(),
            graph,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn list(&self, v: VertexId) -> ColourSet {
        self.lists[v.index()]
    }

    /// All lists, indexed by vertex id (dead ids carry stale values).
    pub fn lists(&self) -> &[ColourSet] {
        &self.lists
    }

    /// Vertices the instance was created with.
    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    pub fn set_list(&mut self, v: VertexId, list: ColourSet) {
        debug_assert!(self.graph.contains(v));
        debug_assert!(list.is_subset(ColourSet::full(self.k)));
        self.lists[v.index()] = list;
    }

    /// Restrict `v` to the single colour `c`.
    pub fn colour(&mut self, v: VertexId, c: Colour) {
        self.set_list(v, ColourSet::single(c));
    }

    pub fn n0(&self) -> Option<&[VertexId; 7]> {
        self.n0.as_ref()
    }

    /// Anchor an induced `P_7`, given in path order.
    pub fn set_n0(&mut self, path: [VertexId; 7]) -> Result<()> {
        for &v in &path {
            self.graph.check(v)?;
        }
        for a in 0..7 {
            for b in a + 1..7 {
                if self.graph.has_edge(path[a], path[b]) != (b == a + 1) {
                    return Err(Error::usage("anchor is not an induced P7 in path order"));
                }
            }
        }
        self.n0 = Some(path);
        Ok(())
    }

    pub fn in_n0(&self, v: VertexId) -> bool {
        self.n0.is_some_and(|p| p.contains(&v))
    }

    /// Layers around the anchored path, if any.
    pub fn layers(&self) -> Option<LayerState> {
        self.n0.map(|p| layers(&self.graph, &p))
    }

    pub fn is_protected(&self, v: VertexId) -> bool {
        self.protected.get(v.index()).copied().unwrap_or(false)
    }

    pub fn protect(&mut self, v: VertexId) {
        self.protected[v.index()] = true;
    }

    pub fn unprotect(&mut self, v: VertexId) {
        self.protected[v.index()] = false;
    }

    pub fn release_all(&mut self) {
        self.protected.iter_mut().for_each(|p| *p = false);
    }

    /// Live protected vertices.
    pub fn protected(&self) -> Vec<VertexId> {
        self.graph
            .vertices()
            .filter(|&v| self.protected[v.index()])
            .collect()
    }

    /// Whether every live list has at most two colours.
    pub fn is_two_list(&self) -> bool {
        self.graph.vertices().all(|v| self.lists[v.index()].len() <= 2)
    }

    /// Remove `group`; when lifting, the group is coloured afresh from the
    /// lists it had now.
    pub fn delete(&mut self, group: &[VertexId]) {
        let removed = group
            .iter()
            .map(|&v| Removed {
                vertex: v,
                list: self.lists[v.index()],
                neighbours: self.graph.neighbours(v).to_vec(),
            })
            .collect();
        for &v in group {
            self.graph.remove_vertex(v);
        }
        self.log.push(LogEntry::Deleted(removed));
    }

    /// Remove vertices whose colours are already decided.
    pub fn delete_solved(&mut self, colouring: &Colouring) {
        let entries: Vec<(VertexId, Colour)> = colouring.iter().collect();
        for &(v, _) in &entries {
            self.graph.remove_vertex(v);
        }
        self.log.push(LogEntry::Solved(entries));
    }

    /// Identify `set` into a fresh vertex with list `list`.
    pub fn identify(&mut self, set: &[VertexId], list: ColourSet) -> Result<VertexId> {
        let w = self.graph.identify(set)?;
        if self.lists.len() <= w.index() {
            self.lists.resize(w.index() + 1, ColourSet::EMPTY);
            self.protected.resize(w.index() + 1, false);
        }
        self.lists[w.index()] = list;
        self.log.push(LogEntry::Identified {
            members: set.to_vec(),
            into: w,
        });
        Ok(w)
    }

    /// Extend a colouring of the current graph to the root vertices.
    pub fn lift(&self, colouring: &Colouring) -> Result<Colouring> {
        let mut full = vec![None; self.lists.len()];
        for (v, c) in colouring.iter() {
            if v.index() < full.len() {
                full[v.index()] = Some(c);
            }
        }
        for entry in self.log.iter().rev() {
            match entry {
                LogEntry::Solved(pairs) => {
                    for &(v, c) in pairs {
                        full[v.index()] = Some(c);
                    }
                }
                LogEntry::Identified { members, into } => {
                    let c = full[into.index()].ok_or_else(|| {
                        Error::Reconstruction(format!("identified vertex {into} has no colour"))
                    })?;
                    for &m in members {
                        full[m.index()] = Some(c);
                    }
                }
                LogEntry::Deleted(group) => colour_group(group, &mut full)?,
            }
        }
        let mut out = Colouring::new();
        for &v in &self.roots {
            let c = full[v.index()].ok_or_else(|| {
                Error::Reconstruction(format!("vertex {v} left uncoloured"))
            })?;
            out.set(v, c);
        }
        Ok(out)
    }
}

/// Colour a deleted group given the colours of its outside neighbours.
fn colour_group(group: &[Removed], full: &mut [Option<Colour>]) -> Result<()> {
    let members: Vec<VertexId> = group.iter().map(|r| r.vertex).collect();
    let mut allowed: Vec<ColourSet> = group
        .iter()
        .map(|r| {
            r.neighbours
                .iter()
                .filter(|n| !members.contains(n))
                .fold(r.list, |acc, n| match full[n.index()] {
                    Some(c) => acc.without(c),
                    None => acc,
                })
        })
        .collect();
    fn rec(
        i: usize,
        group: &[Removed],
        members: &[VertexId],
        allowed: &mut [ColourSet],
        full: &mut [Option<Colour>],
    ) -> bool {
        if i == group.len() {
            return true;
        }
        for c in allowed[i].iter() {
            let clash = group[i].neighbours.iter().any(|n| {
                members.contains(n) && full[n.index()] == Some(c)
            });
            if clash {
                continue;
            }
            full[group[i].vertex.index()] = Some(c);
            if rec(i + 1, group, members, allowed, full) {
                return true;
            }
            full[group[i].vertex.index()] = None;
        }
        false
    }
    for r in group {
        full[r.vertex.index()] = None;
    }
    if rec(0, group, &members, &mut allowed, full) {
        Ok(())
    } else {
        Err(Error::Reconstruction(format!(
            "no colour left for deleted group {members:?}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn lift_through_deletion_and_identification() {
        // Star with centre 0; identify leaves 1 and 2, then delete leaf 3.
        let mut inst = Instance::new(Graph::star(3), 3).unwrap();
        let w = inst.identify(&[v(1), v(2)], ColourSet::full(3)).unwrap();
        inst.delete(&[v(3)]);
        assert_eq!(inst.graph().vertex_count(), 2);
        let col: Colouring = [(v(0), 1), (w, 2)].into_iter().collect();
        let lifted = inst.lift(&col).unwrap();
        assert_eq!(lifted.get(v(1)), Some(2));
        assert_eq!(lifted.get(v(2)), Some(2));
        assert_ne!(lifted.get(v(3)), Some(1));
        let root = Instance::new(Graph::star(3), 3).unwrap();
        lifted.verify(root.graph(), root.lists()).unwrap();
    }

    #[test]
    fn lift_fails_when_group_is_stuck() {
        let mut inst = Instance::new(Graph::path(2), 3).unwrap();
        inst.set_list(v(1), ColourSet::single(1));
        inst.delete(&[v(1)]);
        let col: Colouring = [(v(0), 1)].into_iter().collect();
        assert!(matches!(inst.lift(&col), Err(Error::Reconstruction(_))));
    }

    #[test]
    fn lists_are_validated() {
        let lists = vec![ColourSet::from_colours([4]); 2];
        assert!(Instance::with_lists(Graph::path(2), lists, 3).is_err());
        assert!(Instance::new(Graph::path(2), 6).is_err());
    }

    #[test]
    fn anchor_must_be_induced() {
        let mut inst = Instance::new(Graph::cycle(7), 3).unwrap();
        let p: [VertexId; 7] = std::array::from_fn(|i| v(i as u32));
        assert!(inst.set_n0(p).is_err());
        let mut inst = Instance::new(Graph::path(7), 3).unwrap();
        inst.set_n0(p).unwrap();
        assert!(inst.in_n0(v(3)));
        assert_eq!(inst.layers().unwrap().max_depth(), 0);
    }
}
