//! Immutable simple undirected graphs over dense vertex ids `0..n`, plus the
//! structural primitives shared by every solver: induced `P3` detection,
//! greedy `P3` packings, clique decompositions, edge scores and true twins.

use std::fmt;

/// Number of bits per adjacency word.
const WORD: usize = 64;

/// An immutable simple undirected graph. Vertices are `0..n`; adjacency is
/// stored as one bitset row per vertex. No self-loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<u32>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph { n, words, rows: vec![0; n * words], degrees: vec![0; n], m: 0 }
    }

    /// Builds a graph from an edge list. Panics on self-loops or out-of-range
    /// endpoints; duplicate pairs collapse to a single edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            assert!(u != v, "self-loop {u}");
            assert!(u < n && v < n, "vertex out of range: ({u},{v}) with n={n}");
            g.set_edge(u, v);
        }
        g.recount();
        g
    }

    /// Disjoint union of `count` cliques of `size` vertices each.
    pub fn disjoint_cliques(count: usize, size: usize) -> Self {
        let mut g = Graph::empty(count * size);
        for c in 0..count {
            for i in 0..size {
                for j in i + 1..size {
                    g.set_edge(c * size + i, c * size + j);
                }
            }
        }
        g.recount();
        g
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.rows[v * self.words + u / WORD] &= !(1 << (u % WORD));
    }

    fn recount(&mut self) {
        let mut total = 0usize;
        for v in 0..self.n {
            let d: u32 = self.row(v).iter().map(|w| w.count_ones()).sum();
            self.degrees[v] = d;
            total += d as usize;
        }
        self.m = total / 2;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v] as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// All edges as ordered pairs `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// True iff `N[u] = N[v]`.
    pub fn are_true_twins(&self, u: usize, v: usize) -> bool {
        debug_assert_ne!(u, v);
        let (ru, rv) = (self.row(u), self.row(v));
        for w in 0..self.words {
            let mut a = ru[w];
            let mut b = rv[w];
            // compare closed neighborhoods: add the self bits
            if w == u / WORD {
                a |= 1 << (u % WORD);
            }
            if w == v / WORD {
                b |= 1 << (v % WORD);
            }
            if a != b {
                return false;
            }
        }
        true
    }

    /// Number of induced `P3`s whose edge set contains the edge `uv`.
    ///
    /// Counts the vertices adjacent to exactly one endpoint: each such vertex
    /// `w` yields the induced path `w-u-v` or `u-v-w`.
    pub fn edge_score(&self, u: usize, v: usize) -> usize {
        assert!(self.has_edge(u, v), "edge_score: ({u},{v}) not an edge");
        let (ru, rv) = (self.row(u), self.row(v));
        let mut score = 0usize;
        for w in 0..self.words {
            let mut x = ru[w] ^ rv[w];
            // the endpoints themselves always differ; mask them out
            if w == u / WORD {
                x &= !(1 << (u % WORD));
            }
            if w == v / WORD {
                x &= !(1 << (v % WORD));
            }
            score += x.count_ones() as usize;
        }
        score
    }

    /// For each induced `P3` containing the edge `uv`, the other edge of that
    /// path. The count equals `edge_score(u, v)`.
    pub fn companion_edges(&self, u: usize, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for w in 0..self.n {
            if w == u || w == v {
                continue;
            }
            match (self.has_edge(w, u), self.has_edge(w, v)) {
                (true, false) => out.push(ord(w, u)),
                (false, true) => out.push(ord(w, v)),
                _ => {}
            }
        }
        out
    }

    /// First induced path `a-b-c` (edges `ab`, `bc`, non-edge `ac`) in scan
    /// order, or `None` iff the graph is a cluster graph.
    pub fn find_induced_p3(&self) -> Option<(usize, usize, usize)> {
        self.find_induced_p3_among(|_| true)
    }

    /// As [`find_induced_p3`](Self::find_induced_p3) restricted to vertices
    /// accepted by `alive`.
    pub fn find_induced_p3_among(&self, alive: impl Fn(usize) -> bool) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            if !alive(a) {
                continue;
            }
            for b in self.neighbors(a) {
                if !alive(b) {
                    continue;
                }
                for c in self.neighbors(b) {
                    if c != a && alive(c) && !self.has_edge(a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Greedy maximal set of vertex-disjoint induced `P3`s: scans in ascending
    /// vertex order, taking the first path available among unused vertices.
    /// Deterministic; removing the returned vertices leaves a cluster graph.
    pub fn maximal_p3_packing(&self) -> Vec<[usize; 3]> {
        let mut used = vec![false; self.n];
        let mut packing = Vec::new();
        while let Some((a, b, c)) = self.find_induced_p3_among(|v| !used[v]) {
            used[a] = true;
            used[b] = true;
            used[c] = true;
            packing.push([a, b, c]);
        }
        packing
    }

    /// Connected components, each as an ascending vertex list.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff the vertex set induces a complete subgraph.
    pub fn is_clique(&self, verts: &[usize]) -> bool {
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// The components as cliques, or `None` if some component is not a clique.
    pub fn cluster_components(&self) -> Option<Vec<Vec<usize>>> {
        let comps = self.components();
        for c in &comps {
            // a component is a clique iff every member has degree |c|-1
            if c.iter().any(|&v| self.degree(v) != c.len() - 1) {
                return None;
            }
        }
        Some(comps)
    }

    /// `Some(c)` iff every component is a clique and all components have size
    /// `c`. The empty graph yields `Some(0)`.
    pub fn is_uniform_cluster(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let comps = self.cluster_components()?;
        let c = comps[0].len();
        comps.iter().all(|q| q.len() == c).then_some(c)
    }

    /// Induced subgraph on `keep` (ascending, deduplicated by the caller).
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g.recount();
        (g, keep.to_vec())
    }

    /// Graph with the vertices in `remove` deleted and survivors relabelled
    /// densely. Returns the new graph and the survivor id map.
    pub fn remove_vertices(&self, remove: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n];
        for &v in remove {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Graph with `added` edges inserted and `removed` edges deleted, same
    /// vertex set. Panics if an added edge exists or a removed edge does not.
    pub fn edit_edges(&self, added: &[(usize, usize)], removed: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in added {
            assert!(!g.has_edge(u, v), "edit_edges: ({u},{v}) already present");
            g.set_edge(u, v);
        }
        for &(u, v) in removed {
            assert!(g.has_edge(u, v), "edit_edges: ({u},{v}) absent");
            g.clear_edge(u, v);
        }
        g.recount();
        g
    }

    /// All pairs `u < v` that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff `set` (bitset over vertices) is a subset of `N(v)`.
    pub fn nbhood_contains(&self, v: usize, set: &[u64]) -> bool {
        let rv = self.row(v);
        set.iter().zip(rv).all(|(s, r)| s & !r == 0)
    }

    /// Bitset with exactly the bits of `verts` set, sized to this graph.
    pub fn bitset_of(&self, verts: &[usize]) -> Vec<u64> {
        let mut b = vec![0u64; self.words];
        for &v in verts {
            b[v / WORD] |= 1 << (v % WORD);
        }
        b
    }
}

#[inline]
fn ord(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter { words, word_idx: 0, current: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * WORD + bit)
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        VertexSet::new(v)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Sorted, duplicate-free set of unordered vertex pairs, stored as `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSet(Vec<(usize, usize)>);

impl EdgeSet {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        let mut v: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| ord(a, b)).collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.binary_search(&ord(u, v)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        EdgeSet::new(v)
    }
}

impl FromIterator<(usize, usize)> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        EdgeSet::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub(crate) fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, &e)
    }

    /// K4 minus one edge; the degree-3 pair is (1, 2).
    pub(crate) fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn uniform_cluster_detection() {
        assert_eq!(Graph::disjoint_cliques(2, 3).is_uniform_cluster(), Some(3));
        assert_eq!(path(3).is_uniform_cluster(), None);
        // K2 + K1: equal-size check fails
        let g = Graph::from_edges(3, &[(0, 1)]);
        assert_eq!(g.is_uniform_cluster(), None);
        assert_eq!(Graph::empty(0).is_uniform_cluster(), Some(0));
        assert_eq!(Graph::empty(4).is_uniform_cluster(), Some(1));
    }

    #[test]
    fn p3_detection() {
        assert_eq!(path(3).find_induced_p3(), Some((0, 1, 2)));
        assert_eq!(Graph::disjoint_cliques(1, 3).find_induced_p3(), None);
        assert!(cycle(4).find_induced_p3().is_some());
    }

    #[test]
    fn p3_packing() {
        assert!(Graph::disjoint_cliques(2, 4).maximal_p3_packing().is_empty());
        let two_paths = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]);
        assert_eq!(two_paths.maximal_p3_packing().len(), 2);
        // P5: greedy takes one P3, remainder is an edge plus nothing
        let p5 = path(5);
        let packing = p5.maximal_p3_packing();
        assert_eq!(packing.len(), 1);
        let used: Vec<usize> = packing.iter().flatten().copied().collect();
        let (rest, _) = p5.remove_vertices(&used);
        assert!(rest.find_induced_p3().is_none());
    }

    #[test]
    fn cluster_components_cases() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]);
        let comps = g.cluster_components().unwrap();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(path(3).cluster_components().is_none());
        assert!(Graph::empty(0).cluster_components().unwrap().is_empty());
    }

    #[test]
    fn edge_scores() {
        // P4 middle edge sees both outer P3s
        assert_eq!(path(4).edge_score(1, 2), 2);
        let k3 = Graph::disjoint_cliques(1, 3);
        assert_eq!(k3.edge_score(0, 1), 0);
        // star K_{1,4}: any spoke forms a P3 with each of the other 3 leaves
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(star.edge_score(0, 1), 3);
        assert_eq!(star.companion_edges(0, 1).len(), 3);
    }

    #[test]
    fn true_twins() {
        let k3 = Graph::disjoint_cliques(1, 3);
        assert!(k3.are_true_twins(0, 1));
        assert!(!path(3).are_true_twins(0, 2));
        assert!(diamond().are_true_twins(1, 2));
        assert!(!diamond().are_true_twins(0, 1));
    }

    #[test]
    fn companions_match_score() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]);
        for (u, v) in g.edges().collect::<Vec<_>>() {
            assert_eq!(g.companion_edges(u, v).len(), g.edge_score(u, v));
        }
    }

    /// Exhaustive over all graphs with n <= 7: the uniform test agrees with
    /// "no induced P3 and all components equal", and all edge scores are zero
    /// exactly on cluster graphs.
    #[test]
    fn exhaustive_small_graph_invariants() {
        for n in 0..=7usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges);
                let no_p3 = g.find_induced_p3().is_none();
                let comps = g.components();
                let equal_cliques = no_p3
                    && (comps.is_empty() || comps.iter().all(|c| c.len() == comps[0].len()));
                assert_eq!(g.is_uniform_cluster().is_some(), equal_cliques);
                let all_zero = g.edges().all(|(u, v)| g.edge_score(u, v) == 0);
                assert_eq!(all_zero, no_p3);
            }
        }
    }
}
