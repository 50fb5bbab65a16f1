//! Active vertices relative to the anchored path.

use crate::colour::ColourSet;
use crate::graph::{LayerState, VertexId};
use crate::instance::Instance;

/// Path index pairs `(i, j)` with `j - i >= 2`, 0-based, in lexicographic order.
pub const PAIRS: [(usize, usize); 15] = [
    (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
    (1, 3), (1, 4), (1, 5), (1, 6),
    (2, 4), (2, 5), (2, 6),
    (3, 5), (3, 6),
    (4, 6),
];

/// Layers plus the active sets, recomputed from scratch on every call.
#[derive(Clone, Debug)]
pub struct ActiveState {
    pub layers: LayerState,
    /// `N_2` vertices with a full list.
    pub a2: Vec<VertexId>,
    /// `N_1` neighbours of `a2`.
    pub a1: Vec<VertexId>,
}

impl ActiveState {
    /// `None` when the instance has no anchor.
    pub fn compute(inst: &Instance) -> Option<Self> {
        let layers = inst.layers()?;
        let g = inst.graph();
        let a2: Vec<VertexId> = layers
            .layer(2)
            .iter()
            .copied()
            .filter(|&v| inst.list(v).len() == 3)
            .collect();
        let a1: Vec<VertexId> = layers
            .layer(1)
            .iter()
            .copied()
            .filter(|&v| g.neighbours(v).iter().any(|w| a2.binary_search(w).is_ok()))
            .collect();
        Some(ActiveState { layers, a2, a1 })
    }

    pub fn is_a1(&self, v: VertexId) -> bool {
        self.a1.binary_search(&v).is_ok()
    }

    pub fn is_a2(&self, v: VertexId) -> bool {
        self.a2.binary_search(&v).is_ok()
    }

    /// `A(i, j)`: active neighbours of `v_i` not adjacent to `v_j`.
    pub fn pair(&self, inst: &Instance, i: usize, j: usize) -> Vec<VertexId> {
        let g = inst.graph();
        let p = inst.n0().expect("active sets need an anchor");
        self.a1
            .iter()
            .copied()
            .filter(|&x| g.has_edge(x, p[i]) && !g.has_edge(x, p[j]))
            .collect()
    }

    /// First pair violating "`A(i,j)` or `A(j,i)` is empty".
    pub fn property_p_violation(&self, inst: &Instance) -> Option<(usize, usize)> {
        PAIRS
            .iter()
            .copied()
            .find(|&(i, j)| !self.pair(inst, i, j).is_empty() && !self.pair(inst, j, i).is_empty())
    }

    /// Distinct lists on `a1`, ascending by bitmask.
    pub fn a1_lists(&self, inst: &Instance) -> Vec<ColourSet> {
        let mut lists: Vec<ColourSet> = self.a1.iter().map(|&v| inst.list(v)).collect();
        lists.sort_by_key(|l| l.bits());
        lists.dedup();
        lists
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn pairs_are_complete() {
        let mut expected = Vec::new();
        for i in 0..7 {
            for j in i + 2..7 {
                expected.push((i, j));
            }
        }
        assert_eq!(PAIRS.to_vec(), expected);
    }

    #[test]
    fn active_sets_on_small_example() {
        // Path 0..6, vertex 7 on v_2 and v_4, vertex 8 behind it.
        let g = Graph::from_edges(
            9,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 7), (3, 7), (7, 8)],
        );
        let mut inst = Instance::new(g, 3).unwrap();
        inst.set_n0(std::array::from_fn(|i| VertexId(i as u32))).unwrap();
        let act = ActiveState::compute(&inst).unwrap();
        assert_eq!(act.a2, vec![VertexId(8)]);
        assert_eq!(act.a1, vec![VertexId(7)]);
        assert_eq!(act.pair(&inst, 1, 5), vec![VertexId(7)]);
        assert!(act.pair(&inst, 1, 3).is_empty());
        assert_eq!(act.property_p_violation(&inst), None);
    }
}
