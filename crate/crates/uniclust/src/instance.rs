//! Problem instances and witnesses for the six modification variants, and the
//! semantics of applying a witness to a graph.

use crate::graph::{EdgeSet, Graph, VertexSet};
use std::fmt;
use thiserror::Error;

/// The six modification regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Vertex deletion.
    Ucvd,
    /// Edge deletion.
    Uced,
    /// Edge addition.
    Ucea,
    /// Edge editing (symmetric difference).
    Ucee,
    /// Exclusive vertex splitting.
    Ucevs,
    /// Inclusive vertex splitting.
    Ucivs,
}

impl Variant {
    pub const ALL: [Variant; 6] =
        [Variant::Ucvd, Variant::Uced, Variant::Ucea, Variant::Ucee, Variant::Ucevs, Variant::Ucivs];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Ucvd => "ucvd",
            Variant::Uced => "uced",
            Variant::Ucea => "ucea",
            Variant::Ucee => "ucee",
            Variant::Ucevs => "ucevs",
            Variant::Ucivs => "ucivs",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A graph, a budget and a variant tag: the unit of solving and kernelizing.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub variant: Variant,
}

impl Instance {
    pub fn new(graph: Graph, k: usize, variant: Variant) -> Self {
        Instance { graph, k, variant }
    }
}

/// One vertex split on the evolving graph. The split vertex keeps its id and
/// receives `side1`; the new copy is appended as the next free id and receives
/// `side2`. Both sides must partition-or-cover `N(v)` depending on the mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitStep {
    pub vertex: usize,
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
    pub exclusive: bool,
}

/// Variant-specific certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Vertices to delete.
    Vertices(VertexSet),
    /// Edges to delete.
    DeleteEdges(EdgeSet),
    /// Edges to add.
    AddEdges(EdgeSet),
    /// Symmetric-difference edge set.
    EditEdges(EdgeSet),
    /// Ordered split steps.
    Splits(Vec<SplitStep>),
}

impl Witness {
    pub fn size(&self) -> usize {
        match self {
            Witness::Vertices(s) => s.len(),
            Witness::DeleteEdges(s) | Witness::AddEdges(s) | Witness::EditEdges(s) => s.len(),
            Witness::Splits(s) => s.len(),
        }
    }

    pub fn variant(&self) -> Option<Variant> {
        match self {
            Witness::Vertices(_) => Some(Variant::Ucvd),
            Witness::DeleteEdges(_) => Some(Variant::Uced),
            Witness::AddEdges(_) => Some(Variant::Ucea),
            Witness::EditEdges(_) => Some(Variant::Ucee),
            // split witnesses carry the mode per step
            Witness::Splits(_) => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("witness edge ({0},{1}) not present in the graph")]
    EdgeAbsent(usize, usize),
    #[error("witness edge ({0},{1}) already present in the graph")]
    EdgePresent(usize, usize),
    #[error("split step {step}: {reason}")]
    BadSplit { step: usize, reason: String },
}

/// Applies a single split step to `g`: the split vertex keeps its id with the
/// step's first neighbor set, and a new vertex `g.n()` carries the second set.
pub fn apply_split(g: &Graph, step: &SplitStep, index: usize) -> Result<Graph, WitnessError> {
    let v = step.vertex;
    if v >= g.n() {
        return Err(WitnessError::BadSplit { step: index, reason: format!("vertex {v} out of range") });
    }
    let nb: VertexSet = g.neighbors(v).collect();
    let s1 = VertexSet::new(step.side1.clone());
    let s2 = VertexSet::new(step.side2.clone());
    for side in [&s1, &s2] {
        for u in side.iter() {
            if !nb.contains(u) {
                return Err(WitnessError::BadSplit {
                    step: index,
                    reason: format!("{u} is not a neighbor of {v}"),
                });
            }
        }
    }
    if s1.union(&s2) != nb {
        return Err(WitnessError::BadSplit {
            step: index,
            reason: format!("sides do not cover N({v})"),
        });
    }
    if step.exclusive {
        if let Some(u) = s1.iter().find(|&u| s2.contains(u)) {
            return Err(WitnessError::BadSplit {
                step: index,
                reason: format!("exclusive split shares neighbor {u}"),
            });
        }
    }
    let fresh = g.n();
    let mut edges: Vec<(usize, usize)> =
        g.edges().filter(|&(a, b)| a != v && b != v).collect();
    edges.extend(s1.iter().map(|u| (v, u)));
    edges.extend(s2.iter().map(|u| (fresh, u)));
    Ok(Graph::from_edges(g.n() + 1, &edges))
}

/// Applies a witness, producing the modified graph. Vertex deletion relabels
/// the survivors densely; split steps replay in order on the evolving graph.
pub fn apply_witness(g: &Graph, w: &Witness) -> Result<Graph, WitnessError> {
    match w {
        Witness::Vertices(set) => {
            if let Some(v) = set.iter().find(|&v| v >= g.n()) {
                return Err(WitnessError::VertexOutOfRange(v));
            }
            let ids: Vec<usize> = set.iter().collect();
            Ok(g.remove_vertices(&ids).0)
        }
        Witness::DeleteEdges(set) => {
            for (u, v) in set.iter() {
                if !g.has_edge(u, v) {
                    return Err(WitnessError::EdgeAbsent(u, v));
                }
            }
            Ok(g.edit_edges(&[], set.as_slice()))
        }
        Witness::AddEdges(set) => {
            for (u, v) in set.iter() {
                if u >= g.n() || v >= g.n() {
                    return Err(WitnessError::VertexOutOfRange(u.max(v)));
                }
                if g.has_edge(u, v) {
                    return Err(WitnessError::EdgePresent(u, v));
                }
            }
            Ok(g.edit_edges(set.as_slice(), &[]))
        }
        Witness::EditEdges(set) => {
            let mut add = Vec::new();
            let mut del = Vec::new();
            for (u, v) in set.iter() {
                if u >= g.n() || v >= g.n() {
                    return Err(WitnessError::VertexOutOfRange(u.max(v)));
                }
                if g.has_edge(u, v) {
                    del.push((u, v));
                } else {
                    add.push((u, v));
                }
            }
            Ok(g.edit_edges(&add, &del))
        }
        Witness::Splits(steps) => {
            let mut cur = g.clone();
            for (i, step) in steps.iter().enumerate() {
                cur = apply_split(&cur, step, i)?;
            }
            Ok(cur)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exclusive_split_of_p3_center() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let step = SplitStep { vertex: 1, side1: vec![0], side2: vec![2], exclusive: true };
        let out = apply_witness(&p3, &Witness::Splits(vec![step])).unwrap();
        assert_eq!(out.is_uniform_cluster(), Some(2));
    }

    /// Two inclusive splits turn the diamond into two disjoint triangles.
    #[test]
    fn inclusive_splits_of_diamond() {
        // 0-1, 0-2, 1-2, 1-3, 2-3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let steps = vec![
            // split 1 into 1 (kept: 0,2) and 4 (gets: 2,3)
            SplitStep { vertex: 1, side1: vec![0, 2], side2: vec![2, 3], exclusive: false },
            // split 2 into 2 (kept: 0,1) and 5 (gets: 3,4)
            SplitStep { vertex: 2, side1: vec![0, 1], side2: vec![3, 4], exclusive: false },
        ];
        let out = apply_witness(&g, &Witness::Splits(steps)).unwrap();
        assert_eq!(out.is_uniform_cluster(), Some(3));
    }

    #[test]
    fn c4_minus_opposite_edges() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let w = Witness::DeleteEdges(EdgeSet::new(vec![(0, 1), (2, 3)]));
        let out = apply_witness(&c4, &w).unwrap();
        assert_eq!(out.is_uniform_cluster(), Some(2));
    }

    #[test]
    fn invalid_split_reports_step() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        // overlap in an exclusive split
        let bad = SplitStep { vertex: 1, side1: vec![0, 2], side2: vec![2], exclusive: true };
        let err = apply_witness(&p3, &Witness::Splits(vec![bad])).unwrap_err();
        assert!(matches!(err, WitnessError::BadSplit { step: 0, .. }));
        // sides failing to cover N(v)
        let short = SplitStep { vertex: 1, side1: vec![0], side2: vec![], exclusive: true };
        let err = apply_witness(&p3, &Witness::Splits(vec![short])).unwrap_err();
        assert!(matches!(err, WitnessError::BadSplit { step: 0, .. }));
    }
}
