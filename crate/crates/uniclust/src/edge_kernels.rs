//! Kernels for the three edge-modification variants, built around a shared
//! degree-profile preparation step: editing gives an O(k^2) kernel, deletion
//! a 6k kernel and addition a 5k kernel. Case-1 instances decide outright;
//! case-2 instances shrink to the stated bounds.

use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::instance::{Instance, Variant};
use crate::kernel::{Affected, KernelOutcome, KernelResult, Trace};

/// Target degree and the vertices that deviate from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub d: usize,
    pub deviants: VertexSet,
}

/// Outcome of the shared preparation step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrepOutcome {
    /// `|V| <= 4k`: the instance is its own kernel.
    Small,
    /// No degree value is shared by `|V| - 2k` vertices.
    DecidedNo,
    Profile(DegreeProfile),
}

/// Shared preparation: a kernel-sized instance passes through unchanged;
/// otherwise at least `|V| - 2k` vertices must share one degree `d` (any
/// solution leaves that many vertices untouched), which then is unique.
pub fn prepare_degree_profile(g: &Graph, k: usize) -> PrepOutcome {
    if g.n() <= 4 * k {
        return PrepOutcome::Small;
    }
    let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
    for v in g.vertices() {
        *counts.entry(g.degree(v)).or_default() += 1;
    }
    match counts.iter().find(|&(_, &c)| c + 2 * k >= g.n()) {
        Some((&d, _)) => {
            let deviants: VertexSet = g.vertices().filter(|&v| g.degree(v) != d).collect();
            PrepOutcome::Profile(DegreeProfile { d, deviants })
        }
        None => PrepOutcome::DecidedNo,
    }
}

/// State threaded through one kernelization run, in original-id space.
struct Run {
    cur: Graph,
    ids: Vec<usize>,
    k: usize,
    trace: Trace,
    added: Vec<(usize, usize)>,
    deleted: Vec<(usize, usize)>,
}

impl Run {
    fn new(g: &Graph, k: usize) -> Self {
        Run {
            cur: g.clone(),
            ids: g.vertices().collect(),
            k,
            trace: Trace::default(),
            added: Vec::new(),
            deleted: Vec::new(),
        }
    }

    fn orig_edge(&self, u: usize, v: usize) -> (usize, usize) {
        let (a, b) = (self.ids[u], self.ids[v]);
        (a.min(b), a.max(b))
    }

    fn add_edges(&mut self, rule: &'static str, pairs: &[(usize, usize)]) {
        let orig: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| self.orig_edge(u, v)).collect();
        self.cur = self.cur.edit_edges(pairs, &[]);
        self.k -= pairs.len();
        self.added.extend_from_slice(&orig);
        self.trace.fire(rule, self.k, Affected::Edges(orig));
    }

    fn delete_edges(&mut self, rule: &'static str, pairs: &[(usize, usize)]) {
        let orig: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| self.orig_edge(u, v)).collect();
        self.cur = self.cur.edit_edges(&[], pairs);
        self.k -= pairs.len();
        self.deleted.extend_from_slice(&orig);
        self.trace.fire(rule, self.k, Affected::Edges(orig));
    }

    fn drop_vertices(&mut self, rule: &'static str, verts: &[usize]) {
        let orig: Vec<usize> = verts.iter().map(|&v| self.ids[v]).collect();
        let (g, map) = self.cur.remove_vertices(verts);
        self.ids = map.into_iter().map(|v| self.ids[v]).collect();
        self.cur = g;
        self.trace.fire(rule, self.k, Affected::Vertices(orig));
    }

    fn decide(self, rule: Option<&'static str>, yes: bool, variant: Variant) -> KernelOutcome {
        let mut trace = self.trace;
        if let Some(r) = rule {
            trace.fire(r, self.k, Affected::None);
        }
        KernelOutcome {
            result: KernelResult::Decided(yes),
            trace: trace.0,
            forced_deletions: Default::default(),
            forced_additions: edge_set_for(variant, &self.added),
            forced_edge_deletions: edge_set_for(variant, &self.deleted),
        }
    }

    fn reduce(self, variant: Variant) -> KernelOutcome {
        KernelOutcome {
            result: KernelResult::Reduced {
                instance: Instance::new(self.cur, self.k, variant),
                orig_ids: self.ids,
            },
            trace: self.trace.0,
            forced_deletions: Default::default(),
            forced_additions: edge_set_for(variant, &self.added),
            forced_edge_deletions: edge_set_for(variant, &self.deleted),
        }
    }
}

fn edge_set_for(_variant: Variant, pairs: &[(usize, usize)]) -> EdgeSet {
    EdgeSet::new(pairs.to_vec())
}

/// The O(k^2)-vertex kernel for edge editing: bound 45k^2 + 12k - 1.
pub fn kernelize_ucee(g: &Graph, k: usize) -> KernelOutcome {
    let variant = Variant::Ucee;
    let mut run = Run::new(g, k);
    if g.is_uniform_cluster().is_some() {
        return run.decide(None, true, variant);
    }
    let packing = g.maximal_p3_packing();
    if packing.len() > k {
        return run.decide(Some("P3PACK"), false, variant);
    }
    let d = match prepare_degree_profile(g, k) {
        PrepOutcome::Small => return run.reduce(variant),
        PrepOutcome::DecidedNo => return run.decide(Some("EEER01"), false, variant),
        PrepOutcome::Profile(p) => p.d,
    };
    if g.min_degree() + k < d || g.max_degree() > d + k {
        return run.decide(Some("EEER0"), false, variant);
    }
    let s_verts: Vec<usize> = {
        let mut s: Vec<usize> = packing.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    };
    let (rest, _) = g.remove_vertices(&s_verts);
    let cliques_orig = rest
        .cluster_components()
        .expect("graph minus a maximal packing is a cluster graph");
    // map clique members back to original ids
    let keep: Vec<usize> = g.vertices().filter(|v| s_verts.binary_search(v).is_err()).collect();
    let cliques: Vec<Vec<usize>> =
        cliques_orig.iter().map(|c| c.iter().map(|&i| keep[i]).collect()).collect();

    if d >= 6 * k {
        if cliques.iter().any(|c| c.len() <= 2 * k) {
            return run.decide(Some("EEERC2K"), false, variant);
        }
        loop {
            if run.cur.is_uniform_cluster().is_some() {
                return run.decide(None, true, variant);
            }
            if run.cur.min_degree() + run.k < d || run.cur.max_degree() > d + run.k {
                return run.decide(Some("EEER0"), false, variant);
            }
            let deviants = run.cur.vertices().filter(|&v| run.cur.degree(v) != d).count();
            if deviants > 2 * run.k {
                return run.decide(Some("EEER01"), false, variant);
            }
            if let Some(step) = ucee_case1_step(&run.cur, run.k, &s_verts, &cliques) {
                match step {
                    Case1Step::No(rule) => return run.decide(Some(rule), false, variant),
                    Case1Step::Add(rule, pairs) => run.add_edges(rule, &pairs),
                    Case1Step::Delete(rule, pairs) => run.delete_edges(rule, &pairs),
                }
                continue;
            }
            // all rules exhausted without reaching a uniform cluster graph
            return run.decide(None, false, variant);
        }
    }

    // small-degree case: bound the small-clique mass, then thin out the
    // untouched full-size cliques
    let small_mass: usize =
        cliques.iter().filter(|c| c.len() < d + 1).map(|c| c.len()).sum();
    if small_mass > s_verts.len() * (d + k) + 2 * k {
        // every solution leaves all but 2k of these vertices needing a
        // packing neighbor, exceeding what the packing endpoints can carry
        return run.decide(Some("EEERCLT"), false, variant);
    }
    let isolated_full: Vec<&Vec<usize>> = cliques
        .iter()
        .filter(|c| {
            c.len() == d + 1
                && c.iter().all(|&v| g.neighbors(v).all(|u| s_verts.binary_search(&u).is_err()))
        })
        .collect();
    if isolated_full.len() > 2 * k {
        let drop: Vec<usize> = isolated_full[2 * k + 1..]
            .iter()
            .flat_map(|c| c.iter().copied())
            .collect();
        run.drop_vertices("EEER6", &drop);
    }
    run.reduce(variant)
}

enum Case1Step {
    No(&'static str),
    Add(&'static str, Vec<(usize, usize)>),
    Delete(&'static str, Vec<(usize, usize)>),
}

/// One firing among the editing rules, or `None` at fixpoint. `s_verts` and
/// `cliques` live in original ids, which coincide with current ids here
/// because case 1 never deletes vertices.
fn ucee_case1_step(
    cur: &Graph,
    k: usize,
    s_verts: &[usize],
    cliques: &[Vec<usize>],
) -> Option<Case1Step> {
    // adjacency between a packing vertex and a clique
    let adj_count = |s: usize, c: &[usize]| c.iter().filter(|&&v| cur.has_edge(s, v)).count();
    for &s in s_verts {
        for c in cliques {
            let adj = adj_count(s, c);
            if adj >= k + 1 && adj < c.len() {
                let missing: Vec<(usize, usize)> =
                    c.iter().filter(|&&v| !cur.has_edge(s, v)).map(|&v| (s, v)).collect();
                if missing.len() > k {
                    return Some(Case1Step::No("EEER1"));
                }
                return Some(Case1Step::Add("EEER1", missing));
            }
            if c.len() - adj >= k + 1 && adj > 0 {
                let present: Vec<(usize, usize)> =
                    c.iter().filter(|&&v| cur.has_edge(s, v)).map(|&v| (s, v)).collect();
                if present.len() > k {
                    return Some(Case1Step::No("EEER2"));
                }
                return Some(Case1Step::Delete("EEER2", present));
            }
        }
    }
    for &s in s_verts {
        let touched = cliques.iter().filter(|c| adj_count(s, c) > 0).count();
        if touched >= 2 {
            return Some(Case1Step::No("EEER3"));
        }
    }
    for (i, &s1) in s_verts.iter().enumerate() {
        for &s2 in &s_verts[i + 1..] {
            let shared = cliques
                .iter()
                .find(|c| adj_count(s1, c) > 0 && adj_count(s2, c) > 0);
            if !cur.has_edge(s1, s2) && shared.is_some() {
                if k == 0 {
                    return Some(Case1Step::No("EEER4"));
                }
                return Some(Case1Step::Add("EEER4", vec![(s1, s2)]));
            }
            if cur.has_edge(s1, s2) {
                let c1 = cliques.iter().position(|c| adj_count(s1, c) > 0);
                let c2 = cliques.iter().position(|c| adj_count(s2, c) > 0);
                if let (Some(a), Some(b)) = (c1, c2) {
                    if a != b {
                        if k == 0 {
                            return Some(Case1Step::No("EEER5"));
                        }
                        return Some(Case1Step::Delete("EEER5", vec![(s1, s2)]));
                    }
                }
            }
        }
    }
    None
}

/// The 6k-vertex kernel for edge deletion.
pub fn kernelize_uced(g: &Graph, k: usize) -> KernelOutcome {
    let variant = Variant::Uced;
    let mut run = Run::new(g, k);
    if g.is_uniform_cluster().is_some() {
        return run.decide(None, true, variant);
    }
    if g.maximal_p3_packing().len() > k {
        return run.decide(Some("P3PACK"), false, variant);
    }
    let d = match prepare_degree_profile(g, k) {
        PrepOutcome::Small => return run.reduce(variant),
        PrepOutcome::DecidedNo => return run.decide(Some("EED2"), false, variant),
        PrepOutcome::Profile(p) => p.d,
    };
    loop {
        if run.cur.is_uniform_cluster().is_some() {
            return run.decide(None, true, variant);
        }
        if run.cur.min_degree() < d || run.cur.max_degree() > d + run.k {
            return run.decide(Some("EED1"), false, variant);
        }
        let deviants = run.cur.vertices().filter(|&v| run.cur.degree(v) != d).count();
        if deviants > 2 * run.k {
            return run.decide(Some("EED2"), false, variant);
        }
        // a degree-d vertex must keep its whole closed neighborhood
        let mut fired = false;
        for u in run.cur.vertices() {
            if run.cur.degree(u) != d {
                continue;
            }
            let mut nbhd: Vec<usize> = run.cur.neighbors(u).collect();
            nbhd.push(u);
            nbhd.sort_unstable();
            if !run.cur.is_clique(&nbhd) {
                return run.decide(Some("EED3"), false, variant);
            }
            let big_neighbor = run.cur.neighbors(u).find(|&v| run.cur.degree(v) > d);
            if let Some(v) = big_neighbor {
                let outside: Vec<(usize, usize)> = run
                    .cur
                    .neighbors(v)
                    .filter(|w| nbhd.binary_search(w).is_err())
                    .map(|w| (v, w))
                    .collect();
                if outside.len() > run.k {
                    return run.decide(Some("EED4"), false, variant);
                }
                run.delete_edges("EED4", &outside);
                fired = true;
                break;
            }
        }
        if fired {
            continue;
        }
        if let Some(drop) = surplus_clique_components(&run.cur, d, run.k) {
            run.drop_vertices("EED5", &drop);
            continue;
        }
        break;
    }
    if d >= 2 * run.k {
        // at this fixpoint a yes-instance is already uniform, which the loop
        // head would have caught
        return run.decide(None, false, variant);
    }
    run.reduce(variant)
}

/// Vertices of all but the first `ceil((2k+1)/(d+1))` components that are
/// cliques of size `d + 1`, or `None` when no thinning is needed.
fn surplus_clique_components(cur: &Graph, d: usize, k: usize) -> Option<Vec<usize>> {
    let comps = cur.components();
    let full: Vec<&Vec<usize>> = comps
        .iter()
        .filter(|c| c.len() == d + 1 && c.iter().all(|&v| cur.degree(v) == d))
        .collect();
    let x = (2 * k + 1).div_ceil(d + 1).max(1);
    if full.len() <= x {
        return None;
    }
    Some(full[x..].iter().flat_map(|c| c.iter().copied()).collect())
}

/// The 5k-vertex kernel for edge addition.
pub fn kernelize_ucea(g: &Graph, k: usize) -> KernelOutcome {
    let variant = Variant::Ucea;
    let mut run = Run::new(g, k);
    if g.is_uniform_cluster().is_some() {
        return run.decide(None, true, variant);
    }
    if g.maximal_p3_packing().len() > k {
        return run.decide(Some("P3PACK"), false, variant);
    }
    let d = match prepare_degree_profile(g, k) {
        PrepOutcome::Small => return run.reduce(variant),
        PrepOutcome::DecidedNo => return run.decide(Some("EEA2"), false, variant),
        PrepOutcome::Profile(p) => p.d,
    };
    loop {
        if run.cur.is_uniform_cluster().is_some() {
            return run.decide(None, true, variant);
        }
        if run.cur.min_degree() + run.k < d || run.cur.max_degree() > d {
            return run.decide(Some("EEA1"), false, variant);
        }
        let deviants = run.cur.vertices().filter(|&v| run.cur.degree(v) != d).count();
        if deviants > 2 * run.k {
            return run.decide(Some("EEA2"), false, variant);
        }
        // vertices joined by a path end up in one clique: complete components
        let comp = run
            .cur
            .components()
            .into_iter()
            .find(|c| c.len() * (c.len() - 1) / 2 > c.iter().map(|&v| run.cur.degree(v)).sum::<usize>() / 2);
        if let Some(c) = comp {
            let mut missing = Vec::new();
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    if !run.cur.has_edge(u, v) {
                        missing.push((u, v));
                    }
                }
            }
            if missing.len() > run.k {
                return run.decide(Some("EEA3"), false, variant);
            }
            run.add_edges("EEA3", &missing);
            continue;
        }
        if let Some(drop) = surplus_clique_components(&run.cur, d, run.k) {
            run.drop_vertices("EEA4", &drop);
            continue;
        }
        break;
    }
    if d >= run.k + 1 {
        // every component is a clique now; any short one needs more than k
        // additions, and the uniform case was caught at the loop head
        return run.decide(Some("EEA5"), false, variant);
    }
    if d == 1 {
        // target cliques are single edges, so a solution can only pair up the
        // isolated vertices
        let singles = run.cur.components().iter().filter(|c| c.len() == 1).count();
        let yes = singles % 2 == 0 && singles / 2 <= run.k;
        return run.decide(Some("EEAM"), yes, variant);
    }
    run.reduce(variant)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_k3_bridge() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
    }

    #[test]
    fn prepare_profile_cases() {
        // 2*K3 + P3 on 9 vertices: d = 2, deviants are the path endpoints
        let mut edges = vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
        edges.extend([(6, 7), (7, 8)]);
        let g = Graph::from_edges(9, &edges);
        match prepare_degree_profile(&g, 1) {
            PrepOutcome::Profile(p) => {
                assert_eq!(p.d, 2);
                assert_eq!(p.deviants.as_slice(), &[6, 8]);
            }
            other => panic!("expected profile, got {other:?}"),
        }
        assert_eq!(prepare_degree_profile(&Graph::from_edges(2, &[(0, 1)]), 1), PrepOutcome::Small);
    }

    #[test]
    fn ucee_examples() {
        assert_eq!(kernelize_ucee(&two_k3_bridge(), 1).result.decided(), Some(true));
        let mut edges = vec![(0, 1), (1, 2)];
        edges.extend([(3, 4), (3, 5), (4, 5), (6, 7), (6, 8), (7, 8)]);
        let p3_two_k3 = Graph::from_edges(9, &edges);
        assert_eq!(kernelize_ucee(&p3_two_k3, 1).result.decided(), Some(true));
        let k5_k3 = {
            let mut e = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    e.push((i, j));
                }
            }
            e.extend([(5, 6), (5, 7), (6, 7)]);
            Graph::from_edges(8, &e)
        };
        assert_eq!(kernelize_ucee(&k5_k3, 1).result.decided(), Some(false));
    }

    #[test]
    fn uced_examples() {
        assert_eq!(kernelize_uced(&two_k3_bridge(), 1).result.decided(), Some(true));
        assert_eq!(kernelize_uced(&Graph::disjoint_cliques(1, 4), 0).result.decided(), Some(true));
        // P3 with k=1 is small (3 <= 4): kernel is the instance itself
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        match kernelize_uced(&p3, 1).result {
            KernelResult::Reduced { instance, .. } => assert_eq!(instance.graph.n(), 3),
            other => panic!("expected reduced, got {other:?}"),
        }
    }

    #[test]
    fn uced_forced_deletions_lift() {
        let out = kernelize_uced(&two_k3_bridge(), 1);
        assert_eq!(out.result.decided(), Some(true));
        assert_eq!(out.forced_edge_deletions.as_slice(), &[(2, 3)]);
    }

    #[test]
    fn ucea_examples() {
        let mut edges = vec![(0, 1), (1, 2)];
        edges.extend([(3, 4), (3, 5), (4, 5)]);
        let p3_k3 = Graph::from_edges(6, &edges);
        assert_eq!(kernelize_ucea(&p3_k3, 1).result.decided(), Some(true));
        let k3_k2 = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]);
        assert_eq!(kernelize_ucea(&k3_k2, 1).result.decided(), Some(false));
        assert_eq!(kernelize_ucea(&Graph::disjoint_cliques(2, 3), 0).result.decided(), Some(true));
    }

    /// d = 1 with spare isolated vertices: the kernel decides by pairing.
    #[test]
    fn ucea_pairing_rule() {
        // 3*K2 + 2*K1, k = 1: join the two isolated vertices
        let g = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5)]);
        assert_eq!(kernelize_ucea(&g, 1).result.decided(), Some(true));
        // odd number of isolated vertices can never pair up
        let g = Graph::from_edges(7, &[(0, 1), (2, 3), (4, 5)]);
        assert_eq!(kernelize_ucea(&g, 1).result.decided(), Some(false));
    }
}
