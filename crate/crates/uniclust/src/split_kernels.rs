//! Kernels and polynomial machinery for the two vertex-splitting variants:
//! uniform clique families (edge partitions and sigma covers), the greedy
//! family construction, constructive split-sequence extraction, and the
//! 4k-vertex kernels built on top of them.

use crate::graph::Graph;
use crate::instance::{Instance, SplitStep, Variant};
use crate::kernel::{Affected, KernelOutcome, KernelResult, Trace};
use std::collections::HashMap;
use thiserror::Error;

/// Whether a family's parts must use every edge exactly once or at least once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Partition,
    Cover,
}

/// An ordered list of equal-size vertex sets, each inducing a clique, used as
/// an edge partition (exclusive splitting) or an edge cover (inclusive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueFamily {
    pub parts: Vec<Vec<usize>>,
    pub kind: FamilyKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("part {0} does not induce a clique")]
    NotClique(usize),
    #[error("parts have unequal sizes")]
    NotUniform,
    #[error("edge ({0},{1}) used by two parts")]
    EdgeOverlap(usize, usize),
    #[error("edge ({0},{1}) not covered by any part")]
    EdgeUncovered(usize, usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
}

impl CliqueFamily {
    pub fn new(parts: Vec<Vec<usize>>, kind: FamilyKind) -> Self {
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        CliqueFamily { parts, kind }
    }

    /// Per-vertex membership counts over `0..n`.
    pub fn freq(&self, n: usize) -> Vec<usize> {
        let mut f = vec![0usize; n];
        for p in &self.parts {
            for &v in p {
                f[v] += 1;
            }
        }
        f
    }

    /// `sum_v max(0, freq(v) - 1)`.
    pub fn cost(&self, n: usize) -> usize {
        self.freq(n).iter().map(|&f| f.saturating_sub(1)).sum()
    }

    /// `sum_v freq(v)`.
    pub fn weight(&self, n: usize) -> usize {
        self.freq(n).iter().sum()
    }

    /// Checks the family against its host graph: every part induces a clique,
    /// all parts have equal size, and the parts' edge sets partition (or
    /// cover) the whole edge set.
    pub fn validate(&self, g: &Graph) -> Result<(), FamilyError> {
        let size = self.parts.first().map(|p| p.len()).unwrap_or(0);
        let mut used: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, p) in self.parts.iter().enumerate() {
            if p.len() != size {
                return Err(FamilyError::NotUniform);
            }
            if !g.is_clique(p) {
                return Err(FamilyError::NotClique(i));
            }
            for (a, &u) in p.iter().enumerate() {
                for &v in &p[a + 1..] {
                    *used.entry((u, v)).or_insert(0) += 1;
                }
            }
        }
        for (u, v) in g.edges() {
            match used.get(&(u, v)) {
                None => return Err(FamilyError::EdgeUncovered(u, v)),
                Some(&c) if c > 1 && self.kind == FamilyKind::Partition => {
                    return Err(FamilyError::EdgeOverlap(u, v))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Outcome of a greedy family construction run.
enum GreedyRun {
    /// All edges accounted for within budget.
    Completed(CliqueFamily),
    /// A forced step was impossible or the budget overflowed.
    Failed,
    /// Early termination for the small-kernel case: the remaining live graph
    /// (relabelled), the original ids of its vertices, and the budget left
    /// after charging the finished prefix.
    Stopped { graph: Graph, orig_ids: Vec<usize>, k_left: usize },
}

/// Greedy weighted uniform clique edge partition with target degree `d`
/// (parts have `d + 1` vertices). Exact whenever `d >= 2k`; `None` means no
/// partition of cost at most `k` exists.
pub fn greedy_kd_edge_partition(g: &Graph, k: usize, d: usize) -> Option<CliqueFamily> {
    match greedy_run(g, k, d, FamilyKind::Partition, None) {
        GreedyRun::Completed(f) => Some(f),
        _ => None,
    }
}

/// Greedy sigma uniform clique cover with target degree `d`. Exact whenever
/// `d >= 2k`; `None` means no cover of cost at most `k` exists.
pub fn greedy_sigma_cover(g: &Graph, k: usize, d: usize) -> Option<CliqueFamily> {
    match greedy_run(g, k, d, FamilyKind::Cover, None) {
        GreedyRun::Completed(f) => Some(f),
        _ => None,
    }
}

/// Core greedy loop shared by both variants.
///
/// The state tracks which original edges are still uncovered. A vertex is
/// live while it has an uncovered edge. Each step picks a forced part:
///
/// * partition: a vertex whose uncovered degree is exactly `d` must have all
///   its remaining edges inside one part, namely its uncovered neighborhood,
///   whose internal edges must all be present and unused;
/// * cover: a vertex of original degree `d` lies in exactly one part of any
///   uniform family, namely its closed original neighborhood, so any such
///   vertex with an uncovered edge forces that part (covered internal edges
///   are fine, parts may overlap on edges).
///
/// Costs accumulate on original ids as `sum_v max(0, freq(v) - 1)`. With
/// `stop_at = Some(limit)` the loop ends once at most `limit` vertices remain
/// live; the returned budget charges one extra unit per live vertex that
/// already appears in a chosen part, since such a vertex is counted once in
/// the prefix and once in any completion.
fn greedy_run(
    g: &Graph,
    k: usize,
    d: usize,
    kind: FamilyKind,
    stop_at: Option<usize>,
) -> GreedyRun {
    let n = g.n();
    let mut covered: HashMap<(usize, usize), bool> = g.edges().map(|e| (e, false)).collect();
    let mut udeg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut freq = vec![0usize; n];
    let mut live: usize = (0..n).filter(|&v| udeg[v] > 0).count();
    let mut cost = 0usize;
    let mut parts: Vec<Vec<usize>> = Vec::new();

    let cover_edge = |covered: &mut HashMap<(usize, usize), bool>,
                          udeg: &mut Vec<usize>,
                          live: &mut usize,
                          u: usize,
                          v: usize| {
        let key = (u.min(v), u.max(v));
        let slot = covered.get_mut(&key).expect("edge exists");
        if !*slot {
            *slot = true;
            for x in [u, v] {
                udeg[x] -= 1;
                if udeg[x] == 0 {
                    *live -= 1;
                }
            }
        }
    };

    loop {
        if live == 0 {
            return GreedyRun::Completed(CliqueFamily::new(parts, kind));
        }
        if let Some(limit) = stop_at {
            if live <= limit {
                let charges = (0..n).filter(|&v| udeg[v] > 0 && freq[v] > 0).count();
                if cost + charges > k {
                    return GreedyRun::Failed;
                }
                let keep: Vec<usize> = (0..n).filter(|&v| udeg[v] > 0).collect();
                let graph = match kind {
                    FamilyKind::Partition => {
                        // only the unused edges remain part of the subproblem
                        let index: HashMap<usize, usize> =
                            keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                        let edges: Vec<(usize, usize)> = covered
                            .iter()
                            .filter(|&(_, &c)| !c)
                            .map(|(&(u, v), _)| (index[&u], index[&v]))
                            .collect();
                        Graph::from_edges(keep.len(), &edges)
                    }
                    FamilyKind::Cover => g.induced(&keep).0,
                };
                return GreedyRun::Stopped {
                    graph,
                    orig_ids: keep,
                    k_left: k - cost - charges,
                };
            }
        }
        // pick the forced part
        let part: Vec<usize> = match kind {
            FamilyKind::Partition => {
                let Some(v) = (0..n).find(|&v| udeg[v] == d && udeg[v] > 0) else {
                    return GreedyRun::Failed;
                };
                let mut p: Vec<usize> = g
                    .neighbors(v)
                    .filter(|&u| !covered[&(u.min(v), u.max(v))])
                    .collect();
                p.push(v);
                p.sort_unstable();
                // every internal edge must exist and be unused
                for (i, &a) in p.iter().enumerate() {
                    for &b in &p[i + 1..] {
                        match covered.get(&(a, b)) {
                            Some(false) => {}
                            _ => return GreedyRun::Failed,
                        }
                    }
                }
                p
            }
            FamilyKind::Cover => {
                let Some(v) =
                    (0..n).find(|&v| g.degree(v) == d && udeg[v] > 0)
                else {
                    return GreedyRun::Failed;
                };
                let mut p: Vec<usize> = g.neighbors(v).collect();
                p.push(v);
                p.sort_unstable();
                if !g.is_clique(&p) {
                    return GreedyRun::Failed;
                }
                p
            }
        };
        debug_assert_eq!(part.len(), d + 1);
        cost += part.iter().filter(|&&w| freq[w] > 0).count();
        if cost > k {
            return GreedyRun::Failed;
        }
        for &w in &part {
            freq[w] += 1;
        }
        for (i, &a) in part.iter().enumerate() {
            for &b in &part[i + 1..] {
                cover_edge(&mut covered, &mut udeg, &mut live, a, b);
            }
        }
        parts.push(part);
    }
}

/// Rewrites a uniform edge partition into an exclusive split sequence: while
/// some vertex lies in two parts, split it off its first part. The sequence
/// length equals the family cost, and applying it yields a uniform cluster
/// graph whose cliques are the parts.
pub fn partition_to_splits(g: &Graph, fam: &CliqueFamily) -> Result<Vec<SplitStep>, FamilyError> {
    fam.validate(g)?;
    if fam.kind != FamilyKind::Partition {
        return Err(FamilyError::EdgeOverlap(0, 0));
    }
    let mut cur = g.clone();
    let mut parts = fam.parts.clone();
    let mut steps = Vec::new();
    loop {
        let mut owner: HashMap<usize, usize> = HashMap::new();
        let mut pick: Option<(usize, usize)> = None; // (vertex, first part)
        'outer: for v in 0..cur.n() {
            for (i, p) in parts.iter().enumerate() {
                if p.binary_search(&v).is_ok() {
                    if let Some(&first) = owner.get(&v) {
                        pick = Some((v, first));
                        break 'outer;
                    }
                    owner.insert(v, i);
                }
            }
        }
        let Some((v, first)) = pick else { break };
        let in_first: Vec<usize> =
            cur.neighbors(v).filter(|u| parts[first].binary_search(u).is_ok()).collect();
        let rest: Vec<usize> =
            cur.neighbors(v).filter(|u| parts[first].binary_search(u).is_err()).collect();
        let step =
            SplitStep { vertex: v, side1: in_first.clone(), side2: rest.clone(), exclusive: true };
        let fresh = cur.n();
        cur = crate::instance::apply_split(&cur, &step, steps.len())
            .expect("forced exclusive split is valid");
        steps.push(step);
        for (i, p) in parts.iter_mut().enumerate() {
            if i != first {
                if let Ok(pos) = p.binary_search(&v) {
                    p.remove(pos);
                    p.push(fresh);
                    p.sort_unstable();
                }
            }
        }
    }
    debug_assert!(cur.is_uniform_cluster().is_some());
    Ok(steps)
}

/// Rewrites a sigma uniform clique cover into an inclusive split sequence per
/// the shared-vertex rewrite: the retained copy keeps its first part, the new
/// copy takes the remaining neighbors plus the first-part members it still
/// shares a later part with.
pub fn cover_to_splits(g: &Graph, fam: &CliqueFamily) -> Result<Vec<SplitStep>, FamilyError> {
    fam.validate(g)?;
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(FamilyError::IsolatedVertex(v));
    }
    let mut cur = g.clone();
    let mut parts = fam.parts.clone();
    let mut steps = Vec::new();
    loop {
        let mut pick: Option<(usize, usize)> = None;
        let mut owner: HashMap<usize, usize> = HashMap::new();
        'outer: for v in 0..cur.n() {
            for (i, p) in parts.iter().enumerate() {
                if p.binary_search(&v).is_ok() {
                    if let Some(&first) = owner.get(&v) {
                        pick = Some((v, first));
                        break 'outer;
                    }
                    owner.insert(v, i);
                }
            }
        }
        let Some((v, first)) = pick else { break };
        let nb: Vec<usize> = cur.neighbors(v).collect();
        let in_first: Vec<usize> =
            nb.iter().copied().filter(|u| parts[first].binary_search(u).is_ok()).collect();
        let shared: Vec<usize> = in_first
            .iter()
            .copied()
            .filter(|&u| {
                parts.iter().enumerate().any(|(i, p)| {
                    i != first && p.binary_search(&v).is_ok() && p.binary_search(&u).is_ok()
                })
            })
            .collect();
        let mut side2: Vec<usize> =
            nb.iter().copied().filter(|u| parts[first].binary_search(u).is_err()).collect();
        side2.extend(shared);
        side2.sort_unstable();
        let step = SplitStep {
            vertex: v,
            side1: in_first.clone(),
            side2: side2.clone(),
            exclusive: false,
        };
        let fresh = cur.n();
        cur = crate::instance::apply_split(&cur, &step, steps.len())
            .expect("forced inclusive split is valid");
        steps.push(step);
        for (i, p) in parts.iter_mut().enumerate() {
            if i != first {
                if let Ok(pos) = p.binary_search(&v) {
                    p.remove(pos);
                    p.push(fresh);
                    p.sort_unstable();
                }
            }
        }
    }
    debug_assert!(cur.is_uniform_cluster().is_some());
    Ok(steps)
}

/// Inverse rewrite of one inclusive split: maps a cover of the split graph
/// back to a cover of the original by folding both copies onto the ancestor.
/// Weight is preserved. Exposed for the constructive-equivalence tests.
pub fn merge_cover_step(parts: &[Vec<usize>], kept: usize, fresh: usize) -> Vec<Vec<usize>> {
    parts
        .iter()
        .map(|p| {
            if p.contains(&kept) || p.contains(&fresh) {
                let mut q: Vec<usize> =
                    p.iter().copied().filter(|&x| x != kept && x != fresh).collect();
                q.push(kept);
                q.sort_unstable();
                q
            } else {
                p.clone()
            }
        })
        .collect()
}

/// The 4k-vertex kernel for the exclusive-splitting variant.
pub fn kernelize_ucevs(g: &Graph, k: usize) -> KernelOutcome {
    kernelize_split(g, k, Variant::Ucevs)
}

/// The 4k-vertex kernel for the inclusive-splitting variant.
pub fn kernelize_ucivs(g: &Graph, k: usize) -> KernelOutcome {
    kernelize_split(g, k, Variant::Ucivs)
}

fn outcome(result: KernelResult, trace: Trace) -> KernelOutcome {
    KernelOutcome {
        result,
        trace: trace.0,
        forced_deletions: Default::default(),
        forced_additions: Default::default(),
        forced_edge_deletions: Default::default(),
    }
}

fn kernelize_split(g: &Graph, k: usize, variant: Variant) -> KernelOutcome {
    let kind = match variant {
        Variant::Ucevs => FamilyKind::Partition,
        Variant::Ucivs => FamilyKind::Cover,
        _ => unreachable!("split kernel on {variant}"),
    };
    let rule_iso: &'static str = if kind == FamilyKind::Partition { "UCEVS-ISO" } else { "UCIVS-ISO" };
    let rule_deg: &'static str = if kind == FamilyKind::Partition { "UCEVS-D" } else { "UCIVS-D" };
    let rule_comb: &'static str = if kind == FamilyKind::Partition { "UCEVS1" } else { "UCIVS1" };
    let rule_case: &'static str = if kind == FamilyKind::Partition { "UCEVS2" } else { "UCIVS2" };
    let mut trace = Trace::default();

    if g.is_uniform_cluster().is_some() {
        return outcome(KernelResult::Decided(true), trace);
    }
    // splits never remove edges: an isolated vertex forces cliques of size
    // one, so edges make the instance hopeless
    if g.vertices().any(|v| g.degree(v) == 0) {
        trace.fire(rule_iso, k, Affected::None);
        return outcome(KernelResult::Decided(g.m() == 0), trace);
    }
    if g.n() <= 2 * k {
        return outcome(
            KernelResult::Reduced {
                instance: Instance::new(g.clone(), k, variant),
                orig_ids: g.vertices().collect(),
            },
            trace,
        );
    }
    // all but k vertices keep their degree through any k-split sequence
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for v in g.vertices() {
        *counts.entry(g.degree(v)).or_insert(0) += 1;
    }
    let d = match counts.iter().find(|&(_, &c)| c + k >= g.n()) {
        Some((&d, _)) => d,
        None => {
            trace.fire(rule_deg, k, Affected::None);
            return outcome(KernelResult::Decided(false), trace);
        }
    };
    // combined no-instance checks
    let over: usize = g.vertices().filter(|&v| g.degree(v) > d).count();
    let under = g.vertices().any(|v| g.degree(v) < d);
    let bad_nbhd = g.vertices().any(|v| {
        g.degree(v) == d && {
            let mut p: Vec<usize> = g.neighbors(v).collect();
            p.push(v);
            !g.is_clique(&p)
        }
    });
    if over > k || under || bad_nbhd {
        trace.fire(rule_comb, k, Affected::None);
        return outcome(KernelResult::Decided(false), trace);
    }

    if d >= 2 * k {
        // the greedy is exact here
        let yes = match greedy_run(g, k, d, kind, None) {
            GreedyRun::Completed(fam) => {
                debug_assert!(fam.cost(g.n()) <= k);
                true
            }
            _ => false,
        };
        return outcome(KernelResult::Decided(yes), trace);
    }
    if g.n() <= 4 * k {
        return outcome(
            KernelResult::Reduced {
                instance: Instance::new(g.clone(), k, variant),
                orig_ids: g.vertices().collect(),
            },
            trace,
        );
    }
    match greedy_run(g, k, d, kind, Some(4 * k)) {
        GreedyRun::Completed(_) => outcome(KernelResult::Decided(true), trace),
        GreedyRun::Failed => {
            trace.fire(rule_case, k, Affected::None);
            outcome(KernelResult::Decided(false), trace)
        }
        GreedyRun::Stopped { graph, orig_ids, k_left } => {
            trace.fire(rule_case, k_left, Affected::None);
            outcome(
                KernelResult::Reduced {
                    instance: Instance::new(graph, k_left, variant),
                    orig_ids,
                },
                trace,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{apply_witness, Witness};

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    }

    fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn greedy_partition_bowtie() {
        let fam = greedy_kd_edge_partition(&bowtie(), 1, 2).unwrap();
        assert_eq!(fam.parts.len(), 2);
        assert_eq!(fam.cost(5), 1);
        fam.validate(&bowtie()).unwrap();
    }

    #[test]
    fn greedy_partition_two_triangles() {
        let g = Graph::disjoint_cliques(2, 3);
        let fam = greedy_kd_edge_partition(&g, 0, 2).unwrap();
        assert_eq!(fam.parts.len(), 2);
        assert_eq!(fam.cost(6), 0);
    }

    #[test]
    fn greedy_partition_diamond_rejects() {
        // the closed neighborhood of a degree-2 vertex uses the shared edge,
        // leaving the second part short
        assert!(greedy_kd_edge_partition(&diamond(), 3, 2).is_none());
    }

    #[test]
    fn greedy_cover_cases() {
        let fam = greedy_sigma_cover(&bowtie(), 1, 2).unwrap();
        assert_eq!(fam.cost(5), 1);
        let fam = greedy_sigma_cover(&diamond(), 2, 2).unwrap();
        assert_eq!(fam.parts, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(fam.cost(4), 2);
        let k3 = Graph::disjoint_cliques(1, 3);
        let fam = greedy_sigma_cover(&k3, 0, 2).unwrap();
        assert_eq!(fam.cost(3), 0);
    }

    /// A part with two surviving members must not strand their shared edge:
    /// three 5-cliques chained through two shared vertices.
    #[test]
    fn greedy_handles_shared_part_members() {
        // C = {u1,u2,w1,w2,w3}, P1 = {u1,x1..x4}, P2 = {u2,y1..y4}
        let mut edges = Vec::new();
        let c = [0usize, 1, 2, 3, 4]; // u1=0, u2=1
        let p1 = [0usize, 5, 6, 7, 8];
        let p2 = [1usize, 9, 10, 11, 12];
        for part in [&c[..], &p1[..], &p2[..]] {
            for (i, &a) in part.iter().enumerate() {
                for &b in &part[i + 1..] {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(13, &edges);
        let fam = greedy_kd_edge_partition(&g, 2, 4).unwrap();
        assert_eq!(fam.cost(13), 2);
        fam.validate(&g).unwrap();
        let fam = greedy_sigma_cover(&g, 2, 4).unwrap();
        assert_eq!(fam.cost(13), 2);
    }

    #[test]
    fn partition_splits_bowtie() {
        let g = bowtie();
        let fam = greedy_kd_edge_partition(&g, 1, 2).unwrap();
        let steps = partition_to_splits(&g, &fam).unwrap();
        assert_eq!(steps.len(), 1);
        let out = apply_witness(&g, &Witness::Splits(steps)).unwrap();
        assert_eq!(out.is_uniform_cluster(), Some(3));
    }

    #[test]
    fn partition_splits_disjoint_family_is_empty() {
        let g = Graph::disjoint_cliques(2, 3);
        let fam = greedy_kd_edge_partition(&g, 0, 2).unwrap();
        assert!(partition_to_splits(&g, &fam).unwrap().is_empty());
    }

    #[test]
    fn cover_splits_diamond() {
        let g = diamond();
        let fam = CliqueFamily::new(vec![vec![0, 1, 2], vec![1, 2, 3]], FamilyKind::Cover);
        let steps = cover_to_splits(&g, &fam).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| !s.exclusive));
        let out = apply_witness(&g, &Witness::Splits(steps)).unwrap();
        assert_eq!(out.is_uniform_cluster(), Some(3));
    }

    #[test]
    fn split_length_matches_cost() {
        let g = bowtie();
        let fam = greedy_kd_edge_partition(&g, 5, 2).unwrap();
        let steps = partition_to_splits(&g, &fam).unwrap();
        assert_eq!(steps.len(), fam.cost(g.n()));
    }

    #[test]
    fn invalid_family_rejected() {
        let g = diamond();
        let fam = CliqueFamily::new(vec![vec![0, 1, 2]], FamilyKind::Cover);
        assert_eq!(cover_to_splits(&g, &fam), Err(FamilyError::EdgeUncovered(1, 3)));
        let fam = CliqueFamily::new(vec![vec![0, 1, 3]], FamilyKind::Partition);
        assert!(matches!(partition_to_splits(&g, &fam), Err(FamilyError::NotClique(0))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernelize_ucevs(&bowtie(), 1).result.decided(), Some(true));
        assert_eq!(kernelize_ucevs(&diamond(), 3).result.decided(), Some(false));
        // isolated vertex with an edge elsewhere
        let g = Graph::from_edges(3, &[(0, 1)]);
        assert_eq!(kernelize_ucevs(&g, 5).result.decided(), Some(false));
        assert_eq!(kernelize_ucivs(&diamond(), 2).result.decided(), Some(true));
        assert_eq!(kernelize_ucivs(&diamond(), 1).result.decided(), Some(false));
        assert_eq!(kernelize_ucivs(&Graph::disjoint_cliques(2, 3), 0).result.decided(), Some(true));
    }

    #[test]
    fn merge_step_inverts_split() {
        let g = diamond();
        let fam = CliqueFamily::new(vec![vec![0, 1, 2], vec![1, 2, 3]], FamilyKind::Cover);
        let steps = cover_to_splits(&g, &fam).unwrap();
        // replay forward, tracking part structure of the final graph
        let mut graphs = vec![g.clone()];
        for (i, s) in steps.iter().enumerate() {
            graphs.push(crate::instance::apply_split(graphs.last().unwrap(), s, i).unwrap());
        }
        let final_parts: Vec<Vec<usize>> =
            graphs.last().unwrap().cluster_components().unwrap();
        // fold back through the splits; weight must be preserved each step
        let mut parts = final_parts;
        for (i, s) in steps.iter().enumerate().rev() {
            let w_before: usize = parts.iter().map(|p| p.len()).sum();
            parts = merge_cover_step(&parts, s.vertex, graphs[i].n());
            let w_after: usize = parts.iter().map(|p| p.len()).sum();
            assert_eq!(w_before, w_after);
        }
        let fam0 = CliqueFamily::new(parts, FamilyKind::Cover);
        fam0.validate(&g).unwrap();
        assert_eq!(fam0.weight(g.n()), g.n() + steps.len());
    }
}
