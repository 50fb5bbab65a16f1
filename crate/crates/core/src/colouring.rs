//! Colourings and their verification.

use std::collections::BTreeMap;
use std::fmt;

use crate::colour::{Colour, ColourSet};
use crate::graph::{Graph, VertexId};

/// A partial map from vertices to colours, iterated in ascending vertex order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Colouring {
    map: BTreeMap<VertexId, Colour>,
}

impl Colouring {
    pub fn new() -> Self {
        Colouring::default()
    }

    pub fn get(&self, v: VertexId) -> Option<Colour> {
        self.map.get(&v).copied()
    }

    pub fn set(&mut self, v: VertexId, c: Colour) {
        self.map.insert(v, c);
    }

    pub fn remove(&mut self, v: VertexId) -> Option<Colour> {
        self.map.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, Colour)> + '_ {
        self.map.iter().map(|(&v, &c)| (v, c))
    }

    /// Add every entry of `other`, overwriting on overlap.
    pub fn extend(&mut self, other: &Colouring) {
        for (v, c) in other.iter() {
            self.set(v, c);
        }
    }

    /// Keep only the listed vertices.
    pub fn restrict(&self, vertices: &[VertexId]) -> Colouring {
        let mut out = Colouring::new();
        for &v in vertices {
            if let Some(c) = self.get(v) {
                out.set(v, c);
            }
        }
        out
    }

    /// Check that every live vertex is coloured from its list and no edge is
    /// monochromatic. `lists` is indexed by vertex id.
    pub fn verify(&self, g: &Graph, lists: &[ColourSet]) -> Result<(), Violation> {
        for v in g.vertices() {
            let c = self.get(v).ok_or(Violation::Uncoloured(v))?;
            let list = lists.get(v.index()).copied().unwrap_or(ColourSet::EMPTY);
            if !list.contains(c) {
                return Err(Violation::OffList { vertex: v, colour: c, list });
            }
        }
        for (u, v) in g.edges() {
            if self.get(u) == self.get(v) {
                return Err(Violation::Monochromatic(u, v));
            }
        }
        Ok(())
    }
}

impl FromIterator<(VertexId, Colour)> for Colouring {
    fn from_iter<I: IntoIterator<Item = (VertexId, Colour)>>(iter: I) -> Self {
        Colouring {
            map: iter.into_iter().collect(),
        }
    }
}

/// Why a colouring fails to certify an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Uncoloured(VertexId),
    OffList {
        vertex: VertexId,
        colour: Colour,
        list: ColourSet,
    },
    Monochromatic(VertexId, VertexId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uncoloured(v) => write!(f, "vertex {v} is uncoloured"),
            Violation::OffList {
                vertex,
                colour,
                list,
            } => write!(f, "vertex {vertex} has colour {colour} outside {list}"),
            Violation::Monochromatic(u, v) => write!(f, "edge {u}-{v} is monochromatic"),
        }
    }
}

impl std::error::Error for Violation {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_detects_each_violation() {
        let g = Graph::path(3);
        let lists = vec![ColourSet::full(3); 3];
        let good: Colouring = [(VertexId(0), 1), (VertexId(1), 2), (VertexId(2), 1)]
            .into_iter()
            .collect();
        assert!(good.verify(&g, &lists).is_ok());

        let mut missing = good.clone();
        missing.remove(VertexId(2));
        assert_eq!(
            missing.verify(&g, &lists),
            Err(Violation::Uncoloured(VertexId(2)))
        );

        let mut mono = good.clone();
        mono.set(VertexId(1), 1);
        assert!(matches!(
            mono.verify(&g, &lists),
            Err(Violation::Monochromatic(..))
        ));

        let narrow = vec![ColourSet::single(1), ColourSet::single(3), ColourSet::single(1)];
        assert!(matches!(
            good.verify(&g, &narrow),
            Err(Violation::OffList { .. })
        ));
    }
}
