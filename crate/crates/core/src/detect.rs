//! Induced-subgraph detection for small patterns.
//!
//! All searches are deterministic: candidates are tried in ascending vertex-id
//! order, so the first witness found for a given graph never changes between
//! runs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Largest pattern accepted by [`find_induced`].
pub const MAX_PATTERN: usize = 8;

/// A named pattern graph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Pattern {
    name: String,
    graph: Graph,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let (graph, _) = graph.compacted();
        Pattern {
            name: name.into(),
            graph,
        }
    }

    pub fn path(t: usize) -> Self {
        Pattern::new(format!("p{t}"), Graph::path(t))
    }

    pub fn complete(t: usize) -> Self {
        Pattern::new(format!("k{t}"), Graph::complete(t))
    }

    /// `P_a + P_b`, with the `P_a` on vertices `0..a`.
    pub fn path_sum(a: usize, b: usize) -> Self {
        Pattern::new(
            format!("p{a}p{b}"),
            Graph::path(a).disjoint_union(&Graph::path(b)),
        )
    }

    pub fn p7() -> Self {
        Pattern::path(7)
    }

    pub fn k4() -> Self {
        Pattern::complete(4)
    }

    pub fn p2p5() -> Self {
        Pattern::path_sum(2, 5)
    }

    pub fn p3p4() -> Self {
        Pattern::path_sum(3, 4)
    }

    pub fn p3p5() -> Self {
        Pattern::path_sum(3, 5)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.graph.vertex_count()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses disjoint unions of paths (`p`), cliques (`k`) and cycles (`c`),
    /// written back to back or joined by `+`: `p7`, `k4`, `p3p4`, `p2+p5`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let bytes = lower.as_bytes();
        let mut g = Graph::new(0);
        let mut i = 0;
        let mut parts = 0;
        while i < bytes.len() {
            if bytes[i] == b'+' {
                i += 1;
                continue;
            }
            let kind = bytes[i];
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: usize = lower[start..i]
                .parse()
                .map_err(|_| Error::usage(format!("bad pattern `{s}`")))?;
            let part = match kind {
                b'p' if n >= 1 => Graph::path(n),
                b'k' if n >= 1 => Graph::complete(n),
                b'c' if n >= 3 => Graph::cycle(n),
                _ => return Err(Error::usage(format!("bad pattern `{s}`"))),
            };
            g = g.disjoint_union(&part);
            parts += 1;
        }
        if parts == 0 {
            return Err(Error::usage("empty pattern"));
        }
        Ok(Pattern::new(lower.replace('+', ""), g))
    }
}

/// Host vertices realising a pattern, listed in pattern-vertex order (path
/// order for paths; component by component for disjoint unions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedWitness {
    pub vertices: Vec<VertexId>,
}

impl InducedWitness {
    /// Whether the listed vertices induce exactly `pattern`'s edges.
    pub fn verify(&self, host: &Graph, pattern: &Graph) -> bool {
        let k = self.vertices.len();
        if k != pattern.vertex_count() {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k || !self.vertices.iter().all(|&v| host.contains(v)) {
            return false;
        }
        let (pattern, _) = pattern.compacted();
        for a in 0..k {
            for b in a + 1..k {
                let want = pattern.has_edge(VertexId(a as u32), VertexId(b as u32));
                if host.has_edge(self.vertices[a], self.vertices[b]) != want {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for InducedWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// First induced `P_t` in DFS order from ascending start vertices.
pub fn find_induced_path(g: &Graph, t: usize) -> Option<InducedWitness> {
    if t == 0 {
        return Some(InducedWitness { vertices: vec![] });
    }
    let mut path = Vec::with_capacity(t);
    for s in g.vertices() {
        path.push(s);
        if extend_path(g, t, &mut path) {
            return Some(InducedWitness { vertices: path });
        }
        path.pop();
    }
    None
}

fn extend_path(g: &Graph, t: usize, path: &mut Vec<VertexId>) -> bool {
    if path.len() == t {
        return true;
    }
    let last = *path.last().unwrap();
    let body = &path[..path.len() - 1];
    let next: Vec<VertexId> = g
        .neighbours(last)
        .iter()
        .copied()
        .filter(|&w| !path.contains(&w) && body.iter().all(|&b| !g.has_edge(b, w)))
        .collect();
    for w in next {
        path.push(w);
        if extend_path(g, t, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Some `K_4`, lexicographically first.
pub fn contains_k4(g: &Graph) -> Option<InducedWitness> {
    for (a, b) in g.edges() {
        let common = g.common_neighbours(a, b);
        for (i, &c) in common.iter().enumerate() {
            if c < b {
                continue;
            }
            for &d in &common[i + 1..] {
                if g.has_edge(c, d) {
                    return Some(InducedWitness {
                        vertices: vec![a, b, c, d],
                    });
                }
            }
        }
    }
    None
}

/// Some `K_4` containing `w`.
pub fn k4_through(g: &Graph, w: VertexId) -> Option<InducedWitness> {
    let nb = g.neighbours(w);
    for (i, &a) in nb.iter().enumerate() {
        for (j, &b) in nb.iter().enumerate().skip(i + 1) {
            if !g.has_edge(a, b) {
                continue;
            }
            for &c in &nb[j + 1..] {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    return Some(InducedWitness {
                        vertices: vec![w, a, b, c],
                    });
                }
            }
        }
    }
    None
}

/// Search for an induced copy of `pattern` in `host`.
pub fn find_induced(host: &Graph, pattern: &Pattern) -> Result<Option<InducedWitness>> {
    if pattern.size() > MAX_PATTERN {
        return Err(Error::usage(format!(
            "pattern {} has {} vertices; at most {MAX_PATTERN} supported",
            pattern.name(),
            pattern.size()
        )));
    }
    Ok(Matcher::new(host, pattern.graph(), None).run(None))
}

/// Search for an induced copy of `pattern` that uses vertex `v`.
pub fn find_induced_containing(
    host: &Graph,
    pattern: &Pattern,
    v: VertexId,
) -> Result<Option<InducedWitness>> {
    if pattern.size() > MAX_PATTERN {
        return Err(Error::usage("pattern too large"));
    }
    host.check(v)?;
    let p = pattern.graph();
    for start in p.vertices() {
        if let Some(w) = Matcher::new(host, p, Some(start)).run(Some(v)) {
            return Some(w).map(Ok).transpose();
        }
    }
    Ok(None)
}

/// Whether `host` is free of every listed pattern.
pub fn is_free_of(host: &Graph, patterns: &[Pattern]) -> Result<bool> {
    for p in patterns {
        if find_induced(host, p)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Backtracking matcher: pattern vertices are placed in BFS order so that
/// each placement after the first in a component is constrained to the
/// neighbourhood of an already-placed vertex.
struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    /// Pattern vertices in placement order.
    order: Vec<usize>,
    /// For each position in `order`, a previously placed pattern neighbour.
    anchor: Vec<Option<usize>>,
    pdeg: Vec<usize>,
    image: Vec<Option<VertexId>>,
    host_vertices: Vec<VertexId>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, first: Option<VertexId>) -> Self {
        let n = pattern.id_bound();
        let mut comps = pattern.components();
        comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
        if let Some(f) = first {
            let pos = comps.iter().position(|c| c.contains(&f)).unwrap();
            let c = comps.remove(pos);
            comps.insert(0, c);
        }
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for (ci, comp) in comps.iter().enumerate() {
            let root = match first {
                Some(f) if ci == 0 => f,
                _ => *comp.iter().min_by_key(|&&v| (pattern.degree(v), v)).unwrap(),
            };
            let mut queue = std::collections::VecDeque::from([(root, None)]);
            placed[root.index()] = true;
            while let Some((u, parent)) = queue.pop_front() {
                order.push(u.index());
                anchor.push(parent);
                for &w in pattern.neighbours(u) {
                    if !placed[w.index()] {
                        placed[w.index()] = true;
                        queue.push_back((w, Some(u.index())));
                    }
                }
            }
        }
        Matcher {
            host,
            pattern,
            pdeg: (0..n).map(|i| {
                if pattern.contains(VertexId(i as u32)) {
                    pattern.degree(VertexId(i as u32))
                } else {
                    0
                }
            })
            .collect(),
            order,
            anchor,
            image: vec![None; n],
            host_vertices: host.vertices().collect(),
        }
    }

    fn run(mut self, first_image: Option<VertexId>) -> Option<InducedWitness> {
        if self.order.is_empty() {
            return Some(InducedWitness { vertices: vec![] });
        }
        if let Some(v) = first_image {
            let p = self.order[0];
            if self.host.degree(v) < self.pdeg[p] {
                return None;
            }
            self.image[p] = Some(v);
            if !self.place(1) {
                return None;
            }
        } else if !self.place(0) {
            return None;
        }
        let vertices = self
            .pattern
            .vertices()
            .map(|p| self.image[p.index()].unwrap())
            .collect();
        Some(InducedWitness { vertices })
    }

    fn consistent(&self, pos: usize, cand: VertexId) -> bool {
        let p = self.order[pos];
        if self.host.degree(cand) < self.pdeg[p] {
            return false;
        }
        for &q in &self.order[..pos] {
            let img = self.image[q].unwrap();
            if img == cand {
                return false;
            }
            let want = self
                .pattern
                .has_edge(VertexId(p as u32), VertexId(q as u32));
            if self.host.has_edge(cand, img) != want {
                return false;
            }
        }
        true
    }

    fn place(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let p = self.order[pos];
        let candidates: Vec<VertexId> = match self.anchor[pos] {
            Some(a) => self.host.neighbours(self.image[a].unwrap()).to_vec(),
            None => self.host_vertices.clone(),
        };
        for cand in candidates {
            if self.consistent(pos, cand) {
                self.image[p] = Some(cand);
                if self.place(pos + 1) {
                    return true;
                }
                self.image[p] = None;
            }
        }
        false
    }
}
