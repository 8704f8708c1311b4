//! Brute-force exact solvers for all six variants plus a d-way-cut oracle.
//! These are the ground truth for the test suites and the `oracle` CLI engine;
//! hard size guards keep them at desk scale unless explicitly overridden.

use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::instance::{Variant, Witness};
use crate::split_kernels::{cover_to_splits, partition_to_splits, CliqueFamily, FamilyKind};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use thiserror::Error;

/// Cooperative cancellation for long enumerations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Size guards and cancellation shared by all oracle entry points.
#[derive(Clone, Debug, Default)]
pub struct OracleLimits {
    /// Skip the size guards. Brute force may then run for a very long time.
    pub override_guard: bool,
    pub cancel: Option<CancelToken>,
}

impl OracleLimits {
    pub fn unguarded() -> Self {
        OracleLimits { override_guard: true, cancel: None }
    }

    fn check_cancel(&self) -> Result<(), OracleError> {
        match &self.cancel {
            Some(t) if t.is_cancelled() => Err(OracleError::Cancelled),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for brute force: {0} (pass the override to force)")]
    Capacity(String),
    #[error("cancelled")]
    Cancelled,
    #[error("invalid input: {0}")]
    Input(String),
}

/// Result of a brute-force search. `optimum` is present iff a solution was
/// found within the budget; the witness then has exactly that size.
#[derive(Clone, Debug)]
pub struct OracleAnswer {
    pub decision: bool,
    pub witness: Option<Witness>,
    pub optimum: Option<usize>,
}

impl OracleAnswer {
    fn no() -> Self {
        OracleAnswer { decision: false, witness: None, optimum: None }
    }

    fn yes(witness: Witness, optimum: usize) -> Self {
        OracleAnswer { decision: true, witness: Some(witness), optimum: Some(optimum) }
    }
}

const UCVD_GUARD: usize = 14;
const EDGE_GUARD: u64 = 4_000_000;
const UCEVS_EDGE_GUARD: usize = 16;
const UCIVS_VERTEX_GUARD: usize = 9;
const DWAY_GUARD: usize = 14;

/// Dispatches to the brute-force solver matching the instance variant.
pub fn oracle_solve(
    g: &Graph,
    k: usize,
    variant: Variant,
    limits: &OracleLimits,
) -> Result<OracleAnswer, OracleError> {
    match variant {
        Variant::Ucvd => oracle_ucvd(g, k, limits),
        Variant::Uced => oracle_edge(g, k, EdgeMode::Delete, limits),
        Variant::Ucea => oracle_edge(g, k, EdgeMode::Add, limits),
        Variant::Ucee => oracle_edge(g, k, EdgeMode::Edit, limits),
        Variant::Ucevs => oracle_ucevs(g, k, limits),
        Variant::Ucivs => oracle_ucivs(g, k, limits),
    }
}

/// Exhaustive vertex-deletion search by increasing subset size.
pub fn oracle_ucvd(g: &Graph, k: usize, limits: &OracleLimits) -> Result<OracleAnswer, OracleError> {
    if g.n() > UCVD_GUARD && !limits.override_guard {
        return Err(OracleError::Capacity(format!("n={} exceeds {UCVD_GUARD}", g.n())));
    }
    let pool: Vec<usize> = g.vertices().collect();
    for s in 0..=k.min(g.n()) {
        let hit = first_combination(&pool, s, limits, |subset| {
            g.remove_vertices(subset).0.is_uniform_cluster().is_some()
        })?;
        if let Some(set) = hit {
            return Ok(OracleAnswer::yes(Witness::Vertices(VertexSet::new(set)), s));
        }
    }
    Ok(OracleAnswer::no())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeMode {
    Delete,
    Add,
    Edit,
}

/// Minimum-cardinality edge modification over the mode's allowed pairs.
pub fn oracle_edge(
    g: &Graph,
    k: usize,
    mode: EdgeMode,
    limits: &OracleLimits,
) -> Result<OracleAnswer, OracleError> {
    let pool: Vec<(usize, usize)> = match mode {
        EdgeMode::Delete => g.edges().collect(),
        EdgeMode::Add => g.non_edges(),
        EdgeMode::Edit => {
            let mut p = g.non_edges();
            p.extend(g.edges());
            p.sort_unstable();
            p
        }
    };
    if !limits.override_guard {
        let work: u64 = (0..=k.min(pool.len()) as u64).map(|s| binom(pool.len() as u64, s)).sum();
        if work > EDGE_GUARD {
            return Err(OracleError::Capacity(format!(
                "{work} edge subsets exceed {EDGE_GUARD} (m={}, k={k})",
                g.m()
            )));
        }
    }
    for s in 0..=k.min(pool.len()) {
        let hit = first_combination(&pool, s, limits, |subset| {
            let mut add = Vec::new();
            let mut del = Vec::new();
            for &(u, v) in subset {
                if g.has_edge(u, v) {
                    del.push((u, v));
                } else {
                    add.push((u, v));
                }
            }
            g.edit_edges(&add, &del).is_uniform_cluster().is_some()
        })?;
        if let Some(set) = hit {
            let es = EdgeSet::new(set);
            let w = match mode {
                EdgeMode::Delete => Witness::DeleteEdges(es),
                EdgeMode::Add => Witness::AddEdges(es),
                EdgeMode::Edit => Witness::EditEdges(es),
            };
            return Ok(OracleAnswer::yes(w, s));
        }
    }
    Ok(OracleAnswer::no())
}

/// Exhaustive search for a minimum-cost uniform clique edge partition, mapped
/// back to an exclusive split sequence.
pub fn oracle_ucevs(g: &Graph, k: usize, limits: &OracleLimits) -> Result<OracleAnswer, OracleError> {
    if g.m() > UCEVS_EDGE_GUARD && !limits.override_guard {
        return Err(OracleError::Capacity(format!("m={} exceeds {UCEVS_EDGE_GUARD}", g.m())));
    }
    if g.m() == 0 {
        return Ok(OracleAnswer::yes(Witness::Splits(Vec::new()), 0));
    }
    if g.vertices().any(|v| g.degree(v) == 0) {
        // splits never delete edges, so an isolated vertex forces cliques of
        // size one, impossible while edges remain
        return Ok(OracleAnswer::no());
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
    for d in 2..=g.n() {
        let per_part = d * (d - 1) / 2;
        if per_part > g.m() {
            break;
        }
        if g.m() % per_part != 0 {
            continue;
        }
        let mut st = PartitionSearch {
            g,
            edges: &edges,
            limits,
            freq: vec![0u32; g.n()],
            parts: Vec::new(),
            best_cost: best.as_ref().map(|(c, _)| *c).unwrap_or(k + 1),
            best: None,
            d,
        };
        st.run(0, (1u64 << edges.len()) - 1)?;
        if let Some((cost, parts)) = st.best {
            best = Some((cost, parts));
        }
    }
    match best {
        Some((cost, parts)) if cost <= k => {
            let fam = CliqueFamily::new(parts, FamilyKind::Partition);
            let steps = partition_to_splits(g, &fam)
                .map_err(|e| OracleError::Input(format!("internal family rejected: {e}")))?;
            Ok(OracleAnswer::yes(Witness::Splits(steps), cost))
        }
        _ => Ok(OracleAnswer::no()),
    }
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    edges: &'a [(usize, usize)],
    limits: &'a OracleLimits,
    freq: Vec<u32>,
    parts: Vec<Vec<usize>>,
    best_cost: usize,
    best: Option<(usize, Vec<Vec<usize>>)>,
    d: usize,
}

impl PartitionSearch<'_> {
    /// Recursion on the smallest uncovered edge; `uncovered` is an edge mask.
    fn run(&mut self, cost: usize, uncovered: u64) -> Result<(), OracleError> {
        self.limits.check_cancel()?;
        if cost >= self.best_cost {
            return Ok(());
        }
        if uncovered == 0 {
            self.best_cost = cost;
            self.best = Some((cost, self.parts.clone()));
            return Ok(());
        }
        let e = uncovered.trailing_zeros() as usize;
        let (u, v) = self.edges[e];
        // Grow every d-clique through (u,v) whose edges are all uncovered.
        // Members below v would bring an edge ordered before (u,v), which is
        // covered already, so only candidates above v qualify.
        let mut members = vec![u, v];
        let cands: Vec<usize> =
            self.g.neighbors(u).filter(|&w| w > v && self.g.has_edge(v, w)).collect();
        self.extend_clique(&mut members, &cands, 0, cost, uncovered)
    }

    fn extend_clique(
        &mut self,
        members: &mut Vec<usize>,
        cands: &[usize],
        from: usize,
        cost: usize,
        uncovered: u64,
    ) -> Result<(), OracleError> {
        if members.len() == self.d {
            let mut mask = 0u64;
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    let idx = self.edge_index(a, b);
                    mask |= 1 << idx;
                }
            }
            if mask & !uncovered != 0 {
                return Ok(()); // overlaps an already-used edge
            }
            let inc = members.iter().filter(|&&w| self.freq[w] >= 1).count();
            let new_cost = cost + inc;
            if new_cost >= self.best_cost {
                return Ok(());
            }
            for &w in members.iter() {
                self.freq[w] += 1;
            }
            self.parts.push(members.clone());
            self.run(new_cost, uncovered & !mask)?;
            self.parts.pop();
            for &w in members.iter() {
                self.freq[w] -= 1;
            }
            return Ok(());
        }
        for i in from..cands.len() {
            let w = cands[i];
            if members.iter().all(|&x| self.g.has_edge(x, w)) {
                members.push(w);
                self.extend_clique(members, cands, i + 1, cost, uncovered)?;
                members.pop();
            }
        }
        Ok(())
    }

    fn edge_index(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).expect("edge present")
    }
}

/// Exhaustive search for a minimum-weight uniform clique cover, mapped back to
/// an inclusive split sequence.
pub fn oracle_ucivs(g: &Graph, k: usize, limits: &OracleLimits) -> Result<OracleAnswer, OracleError> {
    if g.n() > UCIVS_VERTEX_GUARD && !limits.override_guard {
        return Err(OracleError::Capacity(format!("n={} exceeds {UCIVS_VERTEX_GUARD}", g.n())));
    }
    if g.m() == 0 {
        return Ok(OracleAnswer::yes(Witness::Splits(Vec::new()), 0));
    }
    if g.vertices().any(|v| g.degree(v) == 0) {
        return Ok(OracleAnswer::no());
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let weight_bound = g.n() + k;
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
    for s in 2..=g.n() {
        let mut st = CoverSearch {
            g,
            edges: &edges,
            limits,
            parts: Vec::new(),
            best_weight: best.as_ref().map(|(w, _)| *w).unwrap_or(weight_bound + 1),
            best: None,
            s,
        };
        st.run((1u64 << edges.len()) - 1, 0)?;
        if let Some((w, parts)) = st.best {
            best = Some((w, parts));
        }
    }
    match best {
        Some((weight, parts)) if weight <= weight_bound => {
            let fam = CliqueFamily::new(parts, FamilyKind::Cover);
            let steps = cover_to_splits(g, &fam)
                .map_err(|e| OracleError::Input(format!("internal family rejected: {e}")))?;
            debug_assert!(steps.len() <= weight - g.n());
            Ok(OracleAnswer::yes(Witness::Splits(steps), weight - g.n()))
        }
        _ => Ok(OracleAnswer::no()),
    }
}

struct CoverSearch<'a> {
    g: &'a Graph,
    edges: &'a [(usize, usize)],
    limits: &'a OracleLimits,
    parts: Vec<Vec<usize>>,
    best_weight: usize,
    best: Option<(usize, Vec<Vec<usize>>)>,
    s: usize,
}

impl CoverSearch<'_> {
    fn run(&mut self, uncovered: u64, weight: usize) -> Result<(), OracleError> {
        self.limits.check_cancel()?;
        if uncovered == 0 {
            if weight < self.best_weight {
                self.best_weight = weight;
                self.best = Some((weight, self.parts.clone()));
            }
            return Ok(());
        }
        // each further part adds weight s and covers at most s(s-1)/2 edges
        let per_part = self.s * (self.s - 1) / 2;
        let remaining = uncovered.count_ones() as usize;
        let lb = weight + remaining.div_ceil(per_part) * self.s;
        if lb >= self.best_weight {
            return Ok(());
        }
        let e = uncovered.trailing_zeros() as usize;
        let (u, v) = self.edges[e];
        let mut members = vec![u, v];
        let cands: Vec<usize> =
            self.g.neighbors(u).filter(|&w| w != v && self.g.has_edge(v, w)).collect();
        self.extend(&mut members, &cands, 0, uncovered, weight)
    }

    fn extend(
        &mut self,
        members: &mut Vec<usize>,
        cands: &[usize],
        from: usize,
        uncovered: u64,
        weight: usize,
    ) -> Result<(), OracleError> {
        if members.len() == self.s {
            let mut mask = 0u64;
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    let key = (a.min(b), a.max(b));
                    let idx = self.edges.binary_search(&key).expect("edge present");
                    mask |= 1 << idx;
                }
            }
            self.parts.push(members.clone());
            self.run(uncovered & !mask, weight + self.s)?;
            self.parts.pop();
            return Ok(());
        }
        for i in from..cands.len() {
            let w = cands[i];
            if members.iter().all(|&x| self.g.has_edge(x, w)) {
                members.push(w);
                self.extend(members, cands, i + 1, uncovered, weight)?;
                members.pop();
            }
        }
        Ok(())
    }
}

/// A minimum edge set whose removal leaves exactly `d` connected components,
/// if one of size at most `budget` exists. Components are returned ascending.
pub fn oracle_dway_cut(
    g: &Graph,
    d: usize,
    budget: usize,
    limits: &OracleLimits,
) -> Result<Option<(EdgeSet, Vec<VertexSet>)>, OracleError> {
    if d < 1 || d > g.n() {
        return Err(OracleError::Input(format!("d={d} out of range 1..={}", g.n())));
    }
    if g.n() > DWAY_GUARD && !limits.override_guard {
        return Err(OracleError::Capacity(format!("n={} exceeds {DWAY_GUARD}", g.n())));
    }
    let n = g.n();
    let mut assign = vec![0usize; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    // restricted-growth enumeration of partitions into exactly d blocks
    fn rec(
        g: &Graph,
        d: usize,
        v: usize,
        used: usize,
        cross: usize,
        assign: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>)>,
        limits: &OracleLimits,
    ) -> Result<(), OracleError> {
        limits.check_cancel()?;
        if let Some((b, _)) = best {
            if cross > *b {
                return Ok(());
            }
        }
        if v == g.n() {
            if used != d {
                return Ok(());
            }
            // every block must induce a connected subgraph
            for b in 0..d {
                let block: Vec<usize> = (0..g.n()).filter(|&x| assign[x] == b).collect();
                let (sub, _) = g.induced(&block);
                if sub.components().len() != 1 {
                    return Ok(());
                }
            }
            if best.as_ref().map_or(true, |(b, _)| cross < *b) {
                *best = Some((cross, assign.clone()));
            }
            return Ok(());
        }
        // remaining vertices must be able to open the missing blocks
        if d - used > g.n() - v {
            return Ok(());
        }
        let top = (used + 1).min(d);
        for b in 0..top {
            assign[v] = b;
            let added =
                (0..v).filter(|&u| g.has_edge(u, v) && assign[u] != b).count();
            rec(g, d, v + 1, used.max(b + 1), cross + added, assign, best, limits)?;
        }
        Ok(())
    }
    rec(g, d, 0, 0, 0, &mut assign, &mut best, limits)?;
    match best {
        Some((cut, assign)) if cut <= budget => {
            let cut_edges: EdgeSet =
                g.edges().filter(|&(u, v)| assign[u] != assign[v]).collect();
            let mut parts: Vec<VertexSet> = (0..d)
                .map(|b| (0..n).filter(|&x| assign[x] == b).collect())
                .collect();
            parts.sort_by_key(|p| p.as_slice().first().copied());
            Ok(Some((cut_edges, parts)))
        }
        _ => Ok(None),
    }
}

/// First subset of size `s` (in combination order) satisfying `pred`.
fn first_combination<T: Clone>(
    pool: &[T],
    s: usize,
    limits: &OracleLimits,
    mut pred: impl FnMut(&[T]) -> bool,
) -> Result<Option<Vec<T>>, OracleError> {
    if s > pool.len() {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..s).collect();
    let mut scratch: Vec<T> = Vec::with_capacity(s);
    let mut ticks = 0u32;
    loop {
        ticks += 1;
        if ticks % 1024 == 0 {
            limits.check_cancel()?;
        }
        scratch.clear();
        scratch.extend(idx.iter().map(|&i| pool[i].clone()));
        if pred(&scratch) {
            return Ok(Some(scratch));
        }
        // advance to the next combination
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] != i + pool.len() - s {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::apply_witness;

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)])
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    }

    #[test]
    fn ucvd_basics() {
        let a = oracle_ucvd(&p3(), 1, &limits()).unwrap();
        assert!(a.decision);
        assert_eq!(a.optimum, Some(1));
        assert!(!oracle_ucvd(&c4(), 1, &limits()).unwrap().decision);
        assert!(oracle_ucvd(&c4(), 2, &limits()).unwrap().decision);
        assert!(oracle_ucvd(&Graph::disjoint_cliques(1, 3), 0, &limits()).unwrap().decision);
    }

    #[test]
    fn edge_basics() {
        assert!(!oracle_edge(&p3(), 1, EdgeMode::Delete, &limits()).unwrap().decision);
        let del = oracle_edge(&p3(), 2, EdgeMode::Delete, &limits()).unwrap();
        assert_eq!(del.optimum, Some(2));
        assert!(oracle_edge(&p3(), 1, EdgeMode::Add, &limits()).unwrap().decision);
        assert!(oracle_edge(&p3(), 1, EdgeMode::Edit, &limits()).unwrap().decision);
    }

    #[test]
    fn ucevs_values() {
        assert_eq!(oracle_ucevs(&bowtie(), 1, &limits()).unwrap().optimum, Some(1));
        assert!(!oracle_ucevs(&diamond(), 3, &limits()).unwrap().decision);
        assert_eq!(oracle_ucevs(&Graph::disjoint_cliques(2, 3), 0, &limits()).unwrap().optimum, Some(0));
        // isolated vertex with edges present is hopeless
        assert!(!oracle_ucevs(&Graph::from_edges(3, &[(0, 1)]), 10, &limits()).unwrap().decision);
    }

    /// Regression: the exact exclusive-splitting optimum of the diamond. The
    /// only feasible part size is two, costing one split per shared endpoint.
    #[test]
    fn ucevs_diamond_optimum_frozen() {
        let a = oracle_ucevs(&diamond(), 10, &limits()).unwrap();
        assert_eq!(a.optimum, Some(6));
    }

    #[test]
    fn ucivs_values() {
        assert!(oracle_ucivs(&diamond(), 2, &limits()).unwrap().decision);
        assert!(!oracle_ucivs(&diamond(), 1, &limits()).unwrap().decision);
        assert!(oracle_ucivs(&Graph::disjoint_cliques(1, 3), 0, &limits()).unwrap().decision);
    }

    #[test]
    fn returned_witnesses_verify() {
        for (g, k, variant) in [
            (p3(), 1, Variant::Ucvd),
            (p3(), 2, Variant::Uced),
            (p3(), 1, Variant::Ucea),
            (p3(), 1, Variant::Ucee),
            (bowtie(), 1, Variant::Ucevs),
            (diamond(), 2, Variant::Ucivs),
        ] {
            let a = oracle_solve(&g, k, variant, &limits()).unwrap();
            assert!(a.decision, "{variant} should be yes");
            let out = apply_witness(&g, &a.witness.unwrap()).unwrap();
            assert!(out.is_uniform_cluster().is_some(), "{variant} witness must verify");
        }
    }

    #[test]
    fn dway_cut_values() {
        let (cut, parts) = oracle_dway_cut(&p3(), 2, 10, &limits()).unwrap().unwrap();
        assert_eq!(cut.len(), 1);
        assert_eq!(parts.len(), 2);
        let (cut, _) = oracle_dway_cut(&c4(), 2, 10, &limits()).unwrap().unwrap();
        assert_eq!(cut.len(), 2);
        let (cut, _) = oracle_dway_cut(&Graph::disjoint_cliques(1, 3), 1, 10, &limits()).unwrap().unwrap();
        assert!(cut.is_empty());
        assert!(oracle_dway_cut(&p3(), 4, 10, &limits()).is_err());
        // over budget
        assert!(oracle_dway_cut(&c4(), 2, 1, &limits()).unwrap().is_none());
    }

    #[test]
    fn guards_fire_and_override() {
        let big = Graph::disjoint_cliques(4, 4);
        assert!(matches!(oracle_ucvd(&big, 1, &limits()), Err(OracleError::Capacity(_))));
        assert!(oracle_ucvd(&big, 1, &OracleLimits::unguarded()).is_ok());
    }

    #[test]
    fn cancellation_stops_search() {
        let token = CancelToken::new();
        token.cancel();
        let lim = OracleLimits { override_guard: true, cancel: Some(token) };
        let g = crate::gen::random_graph(12, 0.4, 5);
        assert!(matches!(oracle_ucvd(&g, 6, &lim), Err(OracleError::Cancelled)));
    }
}
