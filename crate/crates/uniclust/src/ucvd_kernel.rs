//! The cubic vertex kernel for uniform cluster vertex deletion.
//!
//! A maximal packing of vertex-disjoint induced `P3`s (vertex set `S`,
//! `|S| <= 3k`) leaves a cluster graph whose cliques carry the whole
//! analysis: cliques with no `S`-neighbors are capped per size, clique sizes
//! are confined to a `4k` window, every surviving packing vertex needs a
//! unique heavy clique, twin tails are trimmed, and the large cliques that
//! are nobody's heavy neighbor pin down the final clique size.
//!
//! Emitted kernels satisfy `|V'| <= max(32k^3 + 40k^2 + 11k,
//! 79k^3 + 60k^2 + 14k + 1)`. The first term is the small-clique case:
//! `3k` packing vertices plus at most `4k^2 + 5k + 1` cliques of size below
//! `8k`. The second assembles the large-clique case from the pieces
//! `|S| <= 3k`, boundary mass `<= 15k^2`, clique size `<= 15k^2 + 5k + 1`,
//! at most `3k` heavy cliques, at most `2k + 1` surviving large plain
//! cliques, and `<= k` twin-tail vertices in each of the at most
//! `4k^2 + 5k + 1` remaining cliques:
//! `3k + 15k^2 + (3k + 2k + 1)(15k^2 + 5k + 1) + (4k^2 + 5k + 1)k`.

use crate::graph::{Graph, VertexSet};
use crate::instance::{Instance, Variant};
use crate::kernel::{Affected, KernelOutcome, KernelResult, Trace};

/// Vertex bound guaranteed for every reduced instance, as a function of the
/// emitted parameter.
pub fn ucvd_size_bound(k: usize) -> usize {
    let case1 = 32 * k.pow(3) + 40 * k.pow(2) + 11 * k;
    let case2 = 79 * k.pow(3) + 60 * k.pow(2) + 14 * k + 1;
    case1.max(case2)
}

/// Per-clique view of the packing decomposition.
#[derive(Clone, Debug)]
pub struct CliquePartitionState {
    /// Packing vertices, ascending.
    pub s_verts: Vec<usize>,
    /// Cliques of the graph minus the packing, each ascending.
    pub cliques: Vec<Vec<usize>>,
    /// Heavy clique index per packing vertex, parallel to `s_verts`.
    pub heavy: Vec<Option<usize>>,
}

impl CliquePartitionState {
    /// Decomposes `g` around a fresh maximal packing.
    pub fn build(g: &Graph, k: usize) -> (Vec<[usize; 3]>, CliquePartitionState) {
        let packing = g.maximal_p3_packing();
        let mut s_verts: Vec<usize> = packing.iter().flatten().copied().collect();
        s_verts.sort_unstable();
        let keep: Vec<usize> =
            g.vertices().filter(|v| s_verts.binary_search(v).is_err()).collect();
        let (rest, _) = g.induced(&keep);
        let cliques: Vec<Vec<usize>> = rest
            .cluster_components()
            .expect("graph minus a maximal packing is a cluster graph")
            .into_iter()
            .map(|c| c.into_iter().map(|i| keep[i]).collect())
            .collect();
        let heavy = s_verts
            .iter()
            .map(|&s| heavy_neighbor_of(g, k, &cliques, s))
            .collect();
        (packing, CliquePartitionState { s_verts, cliques, heavy })
    }

    fn adj_count(&self, g: &Graph, s: usize, clique: usize) -> usize {
        self.cliques[clique].iter().filter(|&&v| g.has_edge(s, v)).count()
    }

    /// Cliques in which no vertex has a packing neighbor.
    fn plain(&self, g: &Graph) -> Vec<usize> {
        (0..self.cliques.len())
            .filter(|&i| {
                self.cliques[i]
                    .iter()
                    .all(|&v| self.s_verts.iter().all(|&s| !g.has_edge(s, v)))
            })
            .collect()
    }
}

/// The unique clique holding at least `max(|C| - 4k, k + 1)` neighbors of
/// `s`, if any.
pub fn heavy_neighbor_of(
    g: &Graph,
    k: usize,
    cliques: &[Vec<usize>],
    s: usize,
) -> Option<usize> {
    cliques.iter().position(|c| {
        let adj = c.iter().filter(|&&v| g.has_edge(s, v)).count();
        adj >= (c.len().saturating_sub(4 * k)).max(k + 1)
    })
}

/// Boundary of a clique: members missed by the clique's own heavy packing
/// vertices, plus members touched by foreign packing vertices. The rest of
/// the clique consists of pairwise true twins.
pub fn boundary_set(
    g: &Graph,
    state: &CliquePartitionState,
    clique: usize,
) -> VertexSet {
    let c = &state.cliques[clique];
    let mut out = Vec::new();
    for (i, &s) in state.s_verts.iter().enumerate() {
        if state.heavy[i] == Some(clique) {
            out.extend(c.iter().copied().filter(|&v| !g.has_edge(s, v)));
        } else {
            out.extend(c.iter().copied().filter(|&v| g.has_edge(s, v)));
        }
    }
    VertexSet::new(out)
}

struct Run {
    cur: Graph,
    ids: Vec<usize>,
    k: usize,
    trace: Trace,
    forced: Vec<usize>,
}

impl Run {
    fn drop(&mut self, rule: &'static str, verts: &[usize], forced: bool, k_delta: usize) {
        let orig: Vec<usize> = verts.iter().map(|&v| self.ids[v]).collect();
        if forced {
            self.forced.extend_from_slice(&orig);
        }
        self.k -= k_delta;
        let (g, map) = self.cur.remove_vertices(verts);
        self.ids = map.into_iter().map(|v| self.ids[v]).collect();
        self.cur = g;
        self.trace.fire(rule, self.k, Affected::Vertices(orig));
    }

    fn finish(self, result: KernelResult, rule: Option<&'static str>) -> KernelOutcome {
        let mut trace = self.trace;
        if let Some(r) = rule {
            trace.fire(r, self.k, Affected::None);
        }
        KernelOutcome {
            result,
            trace: trace.0,
            forced_deletions: VertexSet::new(self.forced),
            forced_additions: Default::default(),
            forced_edge_deletions: Default::default(),
        }
    }
}

/// Applies the reduction rules to a fixpoint, re-deriving the packing state
/// after every change, and either decides the instance or emits an
/// equivalent one within the cubic bound.
pub fn kernelize_ucvd(g: &Graph, k: usize) -> KernelOutcome {
    let mut run = Run {
        cur: g.clone(),
        ids: g.vertices().collect(),
        k,
        trace: Trace::default(),
        forced: Vec::new(),
    };
    loop {
        if run.cur.is_uniform_cluster().is_some() {
            return run.finish(KernelResult::Decided(true), None);
        }
        let k = run.k;
        let (packing, state) = CliquePartitionState::build(&run.cur, k);
        if packing.len() > k {
            return run.finish(KernelResult::Decided(false), Some("P3PACK"));
        }
        // solution-forcing packing vertices: neighbors spread over too many
        // cliques, or concentrated plus spread
        let mut fired = false;
        for &s in &state.s_verts {
            let counts: Vec<usize> =
                (0..state.cliques.len()).map(|c| state.adj_count(&run.cur, s, c)).collect();
            let total: usize = counts.iter().sum();
            let touched = counts.iter().filter(|&&c| c > 0).count();
            let cond1 = touched >= k + 2;
            let cond2 = counts.iter().any(|&a| a >= k + 1 && total - a > k);
            if cond1 || cond2 {
                if k == 0 {
                    return run.finish(KernelResult::Decided(false), Some("UCVD1"));
                }
                run.drop("UCVD1", &[s], true, 1);
                fired = true;
                break;
            }
        }
        if fired {
            continue;
        }
        // cap the plain cliques per size
        let plain = state.plain(&run.cur);
        let mut by_size: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &ci in &plain {
            by_size.entry(state.cliques[ci].len()).or_default().push(ci);
        }
        if let Some((_, group)) = by_size.iter().find(|(_, g)| g.len() > k + 1) {
            let drop: Vec<usize> = group[k + 1..]
                .iter()
                .flat_map(|&ci| state.cliques[ci].iter().copied())
                .collect();
            run.drop("UCVD2", &drop, false, 0);
            continue;
        }
        if by_size.len() > k + 1 {
            return run.finish(KernelResult::Decided(false), Some("UCVD3"));
        }
        // small-clique case: everything already fits in the cubic bound
        let omega = state.cliques.iter().map(|c| c.len()).max().unwrap_or(0);
        if omega < 8 * k {
            let reduced = KernelResult::Reduced {
                instance: Instance::new(run.cur.clone(), run.k, Variant::Ucvd),
                orig_ids: run.ids.clone(),
            };
            return run.finish(reduced, None);
        }
        // clique sizes must stay within a 4k window
        let min_ci = (0..state.cliques.len())
            .min_by_key(|&i| (state.cliques[i].len(), state.cliques[i][0]))
            .expect("cliques nonempty when omega >= 8k");
        if omega - state.cliques[min_ci].len() > 4 * k {
            let victim = state.cliques[min_ci].clone();
            if victim.len() > k {
                return run.finish(KernelResult::Decided(false), Some("UCVD3A"));
            }
            let len = victim.len();
            run.drop("UCVD3A", &victim, true, len);
            continue;
        }
        // every surviving packing vertex needs a heavy clique
        if let Some(i) = (0..state.s_verts.len()).find(|&i| state.heavy[i].is_none()) {
            if k == 0 {
                return run.finish(KernelResult::Decided(false), Some("UCVD4"));
            }
            run.drop("UCVD4", &[state.s_verts[i]], true, 1);
            continue;
        }
        // twin-tail trim: one vertex from every clique interior
        if !state.cliques.is_empty() {
            let interiors: Vec<Vec<usize>> = (0..state.cliques.len())
                .map(|ci| {
                    let b = boundary_set(&run.cur, &state, ci);
                    state.cliques[ci].iter().copied().filter(|&v| !b.contains(v)).collect()
                })
                .collect();
            if interiors.iter().map(|t| t.len()).min().unwrap() > k + 1 {
                let drop: Vec<usize> = interiors.iter().map(|t| t[0]).collect();
                run.drop("UCVD6", &drop, false, 0);
                continue;
            }
        }
        // large plain cliques with big interiors determine the clique size
        let heavy_set: std::collections::BTreeSet<usize> =
            state.heavy.iter().flatten().copied().collect();
        let large: Vec<usize> = (0..state.cliques.len())
            .filter(|ci| !heavy_set.contains(ci))
            .filter(|&ci| {
                let b = boundary_set(&run.cur, &state, ci);
                state.cliques[ci].len() - b.len() >= k + 1
            })
            .collect();
        if large.len() >= 2 * k + 1 {
            // interior vertices of a large clique all have degree |C| - 1;
            // all but k of the cliques must agree on it
            let mut deg_counts: std::collections::BTreeMap<usize, usize> = Default::default();
            for &ci in &large {
                *deg_counts.entry(state.cliques[ci].len() - 1).or_default() += 1;
            }
            let need = large.len() - k;
            let d = match deg_counts.iter().find(|(_, &c)| c >= need) {
                Some((&d, _)) => d,
                None => return run.finish(KernelResult::Decided(false), Some("UCVD-D")),
            };
            let c_size = d + 1;
            if let Some(v) = run.cur.vertices().find(|&v| run.cur.degree(v) < d) {
                if k == 0 {
                    return run.finish(KernelResult::Decided(false), Some("UCVD7"));
                }
                run.drop("UCVD7", &[v], true, 1);
                continue;
            }
            let rule8 = large
                .iter()
                .filter(|&&ci| state.cliques[ci].len() == c_size)
                .map(|&ci| {
                    run.cur
                        .vertices()
                        .filter(|&v| state.cliques[ci].binary_search(&v).is_err())
                        .filter(|&v| state.cliques[ci].iter().any(|&u| run.cur.has_edge(v, u)))
                        .collect::<Vec<usize>>()
                })
                .find(|nb| !nb.is_empty());
            if let Some(nb) = rule8 {
                if nb.len() > k {
                    return run.finish(KernelResult::Decided(false), Some("UCVD8"));
                }
                let len = nb.len();
                run.drop("UCVD8", &nb, true, len);
                continue;
            }
            let oversize = large.iter().filter(|&&ci| state.cliques[ci].len() > c_size).count();
            if oversize > k {
                return run.finish(KernelResult::Decided(false), Some("UCVD10"));
            }
        }
        // fixpoint: emit the large-clique-case kernel
        let reduced = KernelResult::Reduced {
            instance: Instance::new(run.cur.clone(), run.k, Variant::Ucvd),
            orig_ids: run.ids.clone(),
        };
        return run.finish(reduced, None);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_bound_decides_no() {
        // two disjoint P3s, k = 1
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]);
        let out = kernelize_ucvd(&g, 1);
        assert_eq!(out.result.decided(), Some(false));
        assert_eq!(out.trace.last().unwrap().rule, "P3PACK");
    }

    #[test]
    fn c4_small_case_passes_through() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        match kernelize_ucvd(&c4, 1).result {
            KernelResult::Reduced { instance, .. } => {
                assert_eq!(instance.graph.n(), 4);
                assert_eq!(instance.k, 1);
            }
            other => panic!("expected reduced, got {other:?}"),
        }
    }

    #[test]
    fn heavy_neighbor_threshold() {
        // clique of 10, with s adjacent to 7 of them: heavy for k = 1
        let mut edges = Vec::new();
        for i in 0..10 {
            for j in i + 1..10 {
                edges.push((i, j));
            }
        }
        for i in 0..7 {
            edges.push((i, 10));
        }
        let g = Graph::from_edges(11, &edges);
        let cliques = vec![(0..10).collect::<Vec<_>>()];
        assert_eq!(heavy_neighbor_of(&g, 1, &cliques, 10), Some(0));
        // only 5 of them: threshold max(10-4, 2) = 6 misses
        let g2 = Graph::from_edges(
            11,
            &edges.iter().copied().filter(|&(u, v)| !(v == 10 && u >= 5)).collect::<Vec<_>>(),
        );
        assert_eq!(heavy_neighbor_of(&g2, 1, &cliques, 10), None);
        // no neighbors at all
        let g3 = Graph::from_edges(
            11,
            &edges.iter().copied().filter(|&(_, v)| v != 10).collect::<Vec<_>>(),
        );
        assert_eq!(heavy_neighbor_of(&g3, 1, &cliques, 10), None);
    }

    /// Planted instance scaled for the oracle: one stray vertex with a few
    /// neighbors in each of three cliques is forced into the solution.
    #[test]
    fn planted_stray_vertex_resolves() {
        let mut edges = Vec::new();
        for c in 0..3usize {
            for i in 0..8 {
                for j in i + 1..8 {
                    edges.push((c * 8 + i, c * 8 + j));
                }
            }
        }
        let s = 24;
        for c in 0..3 {
            for i in 0..5 {
                edges.push((c * 8 + i, s));
            }
        }
        let g = Graph::from_edges(25, &edges);
        let out = kernelize_ucvd(&g, 3);
        assert_eq!(out.result.decided(), Some(true));
        assert!(out.trace.iter().any(|f| f.rule == "UCVD1"));
        assert_eq!(out.forced_deletions.as_slice(), &[24]);
    }

    #[test]
    fn boundary_set_formula() {
        // clique 0..10, s0 heavy (adjacent to all but vertex 0), s1 adjacent
        // to vertex 1 only (heavy elsewhere or nowhere)
        let mut edges = Vec::new();
        for i in 0..10 {
            for j in i + 1..10 {
                edges.push((i, j));
            }
        }
        for i in 1..10 {
            edges.push((i, 10)); // s0 = 10
        }
        edges.push((1, 11)); // s1 = 11
        let g = Graph::from_edges(12, &edges);
        let state = CliquePartitionState {
            s_verts: vec![10, 11],
            cliques: vec![(0..10).collect()],
            heavy: vec![Some(0), None],
        };
        let b = boundary_set(&g, &state, 0);
        assert_eq!(b.as_slice(), &[0, 1]);
        // interior vertices are pairwise true twins
        for (i, &u) in state.cliques[0].iter().enumerate() {
            for &v in &state.cliques[0][i + 1..] {
                if !b.contains(u) && !b.contains(v) {
                    assert!(g.are_true_twins(u, v));
                }
            }
        }
    }

    #[test]
    fn bound_function_values() {
        assert_eq!(ucvd_size_bound(0), 1);
        assert_eq!(ucvd_size_bound(1), 79 + 60 + 14 + 1);
    }
}
