//! Simple undirected graphs with deletion-stable vertex ids.
//!
//! Vertex ids are allocated monotonically and never reused: deleting a vertex
//! leaves a hole, and identifying a set of vertices allocates a fresh id. This
//! keeps the seven anchor vertices of a solve addressable across every
//! reduction.

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
fn key(u: VertexId, v: VertexId) -> (u32, u32) {
    if u.0 < v.0 {
        (u.0, v.0)
    } else {
        (v.0, u.0)
    }
}

#[derive(Clone, Default)]
pub struct Graph {
    /// Sorted neighbour lists, indexed by vertex id. Empty for dead ids.
    adj: Vec<Vec<VertexId>>,
    alive: Vec<bool>,
    edges: FxHashSet<(u32, u32)>,
    live: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("vertices", &self.vertices().collect::<Vec<_>>())
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Graph on vertices `0..n` and no edges.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            alive: vec![true; n],
            edges: FxHashSet::default(),
            live: n,
        }
    }

    /// Graph on `0..n` with the given edges. Panics on self-loops or
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))
                .expect("edge endpoints must be distinct live vertices");
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n as u32).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(VertexId(0), VertexId(n as u32 - 1)).unwrap();
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.add_edge(VertexId(u), VertexId(v)).unwrap();
            }
        }
        g
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves as u32).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges)
    }

    /// Disjoint union; the vertices of `other` are shifted past `self.id_bound()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.id_bound() as u32;
        let mut g = self.clone();
        for _ in 0..other.id_bound() {
            g.add_vertex();
        }
        for i in 0..other.id_bound() {
            if !other.alive[i] {
                g.remove_vertex(VertexId(shift + i as u32));
            }
        }
        for (u, v) in other.edges() {
            g.add_edge(VertexId(u.0 + shift), VertexId(v.0 + shift))
                .unwrap();
        }
        g
    }

    /// One past the largest id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i as u32))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u.index()]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.adj.len() as u32);
        self.adj.push(Vec::new());
        self.alive.push(true);
        self.live += 1;
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.edges.insert(key(u, v)) {
            let nu = &mut self.adj[u.index()];
            let pos = nu.binary_search(&v).unwrap_err();
            nu.insert(pos, v);
            let nv = &mut self.adj[v.index()];
            let pos = nv.binary_search(&u).unwrap_err();
            nv.insert(pos, u);
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        if self.edges.remove(&key(u, v)) {
            self.adj[u.index()].retain(|&x| x != v);
            self.adj[v.index()].retain(|&x| x != u);
        }
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&key(u, v))
    }

    /// Neighbours of a live vertex in ascending order.
    #[inline]
    pub fn neighbours(&self, v: VertexId) -> &[VertexId] {
        debug_assert!(self.contains(v), "neighbours of dead vertex {v:?}");
        &self.adj[v.index()]
    }

    /// Checked `N(v)`.
    pub fn neighbourhood(&self, v: VertexId) -> Result<&[VertexId]> {
        self.check(v)?;
        Ok(&self.adj[v.index()])
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    /// `N(S) = ∪ N(v) \ S`, sorted.
    pub fn set_neighbourhood(&self, set: &[VertexId]) -> Vec<VertexId> {
        let inside: FxHashSet<VertexId> = set.iter().copied().collect();
        let mut out: Vec<VertexId> = set
            .iter()
            .flat_map(|&v| self.neighbours(v).iter().copied())
            .filter(|v| !inside.contains(v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Common neighbours of `u` and `v`, sorted.
    pub fn common_neighbours(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let (a, b) = (self.neighbours(u), self.neighbours(v));
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Whether `N(u) ⊆ N(v)`.
    pub fn neighbourhood_subset(&self, u: VertexId, v: VertexId) -> bool {
        let nv = self.neighbours(v);
        self.neighbours(u)
            .iter()
            .all(|x| nv.binary_search(x).is_ok())
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if !self.contains(v) {
            return;
        }
        let nbrs = std::mem::take(&mut self.adj[v.index()]);
        for u in nbrs {
            self.edges.remove(&key(u, v));
            self.adj[u.index()].retain(|&x| x != v);
        }
        self.alive[v.index()] = false;
        self.live -= 1;
    }

    /// Replace `set` by a fresh vertex adjacent to exactly `N(set)`.
    pub fn identify(&mut self, set: &[VertexId]) -> Result<VertexId> {
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for &v in set {
            self.check(v)?;
        }
        let outside = self.set_neighbourhood(set);
        for &v in set {
            self.remove_vertex(v);
        }
        let w = self.add_vertex();
        for u in outside {
            self.add_edge(w, u)?;
        }
        Ok(w)
    }

    /// Subgraph induced by `set`, keeping the original ids (all other ids dead).
    pub fn induced(&self, set: &[VertexId]) -> Graph {
        let mut keep = vec![false; self.id_bound()];
        for &v in set {
            if self.contains(v) {
                keep[v.index()] = true;
            }
        }
        let mut g = Graph {
            adj: vec![Vec::new(); self.id_bound()],
            alive: keep.clone(),
            edges: FxHashSet::default(),
            live: keep.iter().filter(|&&k| k).count(),
        };
        for (i, &k) in keep.iter().enumerate() {
            if !k {
                continue;
            }
            let nb: Vec<VertexId> = self.adj[i]
                .iter()
                .copied()
                .filter(|v| keep[v.index()])
                .collect();
            for &v in &nb {
                if (i as u32) < v.0 {
                    g.edges.insert((i as u32, v.0));
                }
            }
            g.adj[i] = nb;
        }
        g
    }

    /// Copy with live vertices renumbered `0..n` in ascending id order.
    /// Returns the graph and the old id of each new vertex.
    pub fn compacted(&self) -> (Graph, Vec<VertexId>) {
        let old: Vec<VertexId> = self.vertices().collect();
        let mut index = vec![u32::MAX; self.id_bound()];
        for (i, v) in old.iter().enumerate() {
            index[v.index()] = i as u32;
        }
        let edges: Vec<(u32, u32)> = self
            .edges()
            .map(|(u, v)| (index[u.index()], index[v.index()]))
            .collect();
        (Graph::from_edges(old.len(), &edges), old)
    }

    /// BFS distances from a set of sources, indexed by vertex id.
    pub fn bfs_from(&self, sources: &[VertexId]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.id_bound()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if self.contains(s) && dist[s.index()].is_none() {
                dist[s.index()] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u.index()].unwrap();
            for &w in self.neighbours(u) {
                if dist[w.index()].is_none() {
                    dist[w.index()] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `dist(u, S)`; `None` means infinity.
    pub fn distance(&self, u: VertexId, set: &[VertexId]) -> Result<Option<usize>> {
        self.check(u)?;
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for &s in set {
            self.check(s)?;
        }
        Ok(self.bfs_from(set)[u.index()].map(|d| d as usize))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.id_bound()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s.index()] {
                continue;
            }
            seen[s.index()] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.neighbours(u) {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether every component is a path.
    pub fn is_linear_forest(&self) -> bool {
        self.components().iter().all(|comp| {
            let edges: usize = comp.iter().map(|&v| self.degree(v)).sum::<usize>() / 2;
            comp.iter().all(|&v| self.degree(v) <= 2) && edges + 1 == comp.len()
        })
    }

    /// Whether `set` is independent.
    pub fn is_independent(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Whether `set` is a clique.
    pub fn is_clique(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// Distance layers around an anchor set.
#[derive(Clone, Debug)]
pub struct LayerState {
    pub n0: Vec<VertexId>,
    /// `layers[i]` holds `N_i`, sorted.
    pub layers: Vec<Vec<VertexId>>,
    /// Vertices with no path to the anchor.
    pub unreachable: Vec<VertexId>,
    depth: Vec<Option<u32>>,
}

impl LayerState {
    /// `N_i`, empty past the deepest layer.
    pub fn layer(&self, i: usize) -> &[VertexId] {
        self.layers.get(i).map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn depth_of(&self, v: VertexId) -> Option<usize> {
        self.depth.get(v.index()).copied().flatten().map(|d| d as usize)
    }

    pub fn in_layer(&self, v: VertexId, i: usize) -> bool {
        self.depth_of(v) == Some(i)
    }

    /// Index of the deepest non-empty layer.
    pub fn max_depth(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }
}

/// Partition the vertices of `g` by their distance to `n0`.
pub fn layers(g: &Graph, n0: &[VertexId]) -> LayerState {
    let depth = g.bfs_from(n0);
    let mut layers: Vec<Vec<VertexId>> = Vec::new();
    let mut unreachable = Vec::new();
    for v in g.vertices() {
        match depth[v.index()] {
            Some(d) => {
                let d = d as usize;
                if layers.len() <= d {
                    layers.resize(d + 1, Vec::new());
                }
                layers[d].push(v);
            }
            None => unreachable.push(v),
        }
    }
    LayerState {
        n0: n0.to_vec(),
        layers,
        unreachable,
        depth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn neighbourhood_examples() {
        let g = Graph::new(1);
        assert!(g.neighbourhood(v(0)).unwrap().is_empty());
        let star = Graph::star(3);
        assert_eq!(star.neighbourhood(v(0)).unwrap(), &[v(1), v(2), v(3)]);
        let p7 = Graph::path(7);
        assert_eq!(p7.neighbourhood(v(0)).unwrap(), &[v(1)]);
        assert_eq!(p7.neighbourhood(v(9)), Err(Error::UnknownVertex(v(9))));
    }

    #[test]
    fn degree_sum() {
        let g = Graph::petersen();
        let total: usize = g.vertices().map(|u| g.degree(u)).sum();
        assert_eq!(total, 2 * g.edge_count());
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn distance_examples() {
        let p7 = Graph::path(7);
        assert_eq!(p7.distance(v(2), &[v(2), v(5)]).unwrap(), Some(0));
        assert_eq!(p7.distance(v(3), &[v(0)]).unwrap(), Some(3));
        let two = Graph::new(2);
        assert_eq!(two.distance(v(0), &[v(1)]).unwrap(), None);
        assert_eq!(two.distance(v(0), &[]), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn layers_examples() {
        let p7 = Graph::path(7);
        let n0: Vec<_> = (0..7).map(v).collect();
        let ls = layers(&p7, &n0);
        assert_eq!(ls.layer(0).len(), 7);
        assert!(ls.layer(1).is_empty() && ls.layer(2).is_empty());

        let mut g = Graph::path(7);
        let p = g.add_vertex();
        g.add_edge(p, v(3)).unwrap();
        let ls = layers(&g, &n0);
        assert_eq!(ls.layer(1), &[p]);
    }

    #[test]
    fn identify_examples() {
        // single vertex: same shape
        let mut g = Graph::star(3);
        let w = g.identify(&[v(1)]).unwrap();
        assert_eq!(g.neighbours(w), &[v(0)]);
        assert_eq!(g.vertex_count(), 4);

        // two leaves of a star merge into one leaf
        let mut g = Graph::star(3);
        let w = g.identify(&[v(1), v(2)]).unwrap();
        assert_eq!(g.neighbours(w), &[v(0)]);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.degree(v(0)), 2);
        assert_eq!(w, v(4), "fresh id, never reused");

        let mut g = Graph::new(2);
        assert_eq!(g.identify(&[]), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn identify_can_create_k4() {
        // Triangle u v z; x sees u and v, y sees z. Identifying {x, y} yields w
        // adjacent to the whole triangle.
        let (u, vv, x, y, z) = (0, 1, 2, 3, 4);
        let mut g = Graph::from_edges(
            5,
            &[(u, vv), (u, z), (vv, z), (x, u), (x, vv), (y, z)],
        );
        assert!(crate::detect::contains_k4(&g).is_none());
        let w = g.identify(&[v(x), v(y)]).unwrap();
        assert_eq!(g.neighbours(w), &[v(u), v(vv), v(z)]);
        assert!(crate::detect::contains_k4(&g).is_some());
    }

    #[test]
    fn components_examples() {
        assert_eq!(Graph::cycle(5).components().len(), 1);
        let g = Graph::path(3).disjoint_union(&Graph::path(5));
        let sizes: Vec<_> = g.components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 5]);
        assert!(Graph::new(0).components().is_empty());
    }

    #[test]
    fn linear_forest_examples() {
        assert!(Graph::path(2).disjoint_union(&Graph::path(5)).is_linear_forest());
        assert!(!Graph::star(3).is_linear_forest());
        assert!(!Graph::cycle(3).is_linear_forest());
        assert!(Graph::new(3).is_linear_forest());
    }

    #[test]
    fn induced_keeps_ids() {
        let g = Graph::path(5);
        let h = g.induced(&[v(1), v(2), v(4)]);
        assert_eq!(h.vertex_count(), 3);
        assert!(h.has_edge(v(1), v(2)));
        assert_eq!(h.degree(v(4)), 0);
        assert!(!h.contains(v(0)));
    }
}
