//! The FPT decision-and-witness solver for uniform cluster vertex deletion:
//! a cluster-vertex-deletion set is found by branching on induced `P3`s, its
//! subsets are guessed as the solution's intersection, and each guess leaves
//! a polynomial annotated problem solved by completion matching.

use crate::graph::{Graph, VertexSet};
use crate::instance::Witness;
use crate::matching::maximum_bipartite_matching;

/// Cluster vertex deletion by 3-way branching on induced `P3`s: some vertex
/// of every induced path must go.
pub fn cvd_branching(g: &Graph, k: usize) -> Option<VertexSet> {
    let mut alive = vec![true; g.n()];
    fn rec(g: &Graph, alive: &mut Vec<bool>, k: usize, out: &mut Vec<usize>) -> bool {
        match g.find_induced_p3_among(|v| alive[v]) {
            None => true,
            Some(_) if k == 0 => false,
            Some((a, b, c)) => {
                for v in [a, b, c] {
                    alive[v] = false;
                    out.push(v);
                    if rec(g, alive, k - 1, out) {
                        return true;
                    }
                    out.pop();
                    alive[v] = true;
                }
                false
            }
        }
    }
    let mut out = Vec::new();
    rec(g, &mut alive, k, &mut out).then(|| VertexSet::new(out))
}

/// Annotated instance: find a deletion set of size at most `k` in `graph`
/// avoiding the undeletable set `x_out`.
#[derive(Clone, Debug)]
pub struct DisjointInstance {
    pub graph: Graph,
    pub x_out: VertexSet,
    pub k: usize,
}

/// Solves the annotated problem in polynomial time. Both the undeletable part
/// and the rest must already be cluster graphs; a vertex seeing two
/// undeletable cliques is forced out, and for each guessed solution size and
/// clique size the undeletable cliques are completed through a saturated
/// matching against the free cliques.
pub fn solve_disjoint_ucvd(di: &DisjointInstance) -> Option<VertexSet> {
    let g = &di.graph;
    let n = g.n();
    let in_xout = {
        let mut m = vec![false; n];
        for v in di.x_out.iter() {
            m[v] = true;
        }
        m
    };
    let xout_ids: Vec<usize> = di.x_out.iter().collect();
    let (xout_graph, _) = g.induced(&xout_ids);
    let xout_cliques_local = xout_graph.cluster_components()?;
    let xout_cliques: Vec<Vec<usize>> = xout_cliques_local
        .iter()
        .map(|c| c.iter().map(|&i| xout_ids[i]).collect())
        .collect();

    let h_ids: Vec<usize> = g.vertices().filter(|&v| !in_xout[v]).collect();
    let (h_graph, _) = g.induced(&h_ids);
    h_graph.cluster_components()?;

    // a free vertex adjacent to two undeletable cliques sits on an induced
    // path it alone can break
    let mut forced: Vec<usize> = Vec::new();
    let mut h_alive: Vec<usize> = h_ids.clone();
    loop {
        let doomed = h_alive.iter().copied().find(|&v| {
            let touched = xout_cliques
                .iter()
                .filter(|c| c.iter().any(|&u| g.has_edge(u, v)))
                .count();
            touched >= 2
        });
        match doomed {
            Some(v) => {
                forced.push(v);
                h_alive.retain(|&u| u != v);
                if forced.len() > di.k {
                    return None;
                }
            }
            None => break,
        }
    }
    let budget = di.k - forced.len();

    // remaining graph in original ids
    let mut keep: Vec<usize> = xout_ids.clone();
    keep.extend_from_slice(&h_alive);
    keep.sort_unstable();

    for k_exact in 0..=budget {
        for c in 1..=keep.len().max(1) {
            if let Some(mut sol) = try_guess(g, &xout_cliques, &h_alive, k_exact, c) {
                sol.extend_from_slice(&forced);
                let solution = VertexSet::new(sol);
                debug_assert!(solution.iter().all(|v| !in_xout[v]));
                let ids: Vec<usize> = solution.iter().collect();
                if g.remove_vertices(&ids).0.is_uniform_cluster().is_some() {
                    return Some(solution);
                }
            }
        }
    }
    None
}

/// One `(k', c)` guess: settle the exactly-`c` undeletable cliques, then ask
/// the completion matching for the rest. Returns the deletion set on success.
fn try_guess(
    g: &Graph,
    xout_cliques: &[Vec<usize>],
    h_alive: &[usize],
    k_exact: usize,
    c: usize,
) -> Option<Vec<usize>> {
    if xout_cliques.iter().any(|q| q.len() > c) {
        return None;
    }
    let mut deletions: Vec<usize> = Vec::new();
    let mut budget = k_exact;
    let mut h_left: Vec<usize> = h_alive.to_vec();
    let mut open_cliques: Vec<&Vec<usize>> = Vec::new();
    for q in xout_cliques {
        if q.len() == c {
            // the clique is already complete; its neighbors must go
            let nb: Vec<usize> = h_left
                .iter()
                .copied()
                .filter(|&v| q.iter().any(|&u| g.has_edge(u, v)))
                .collect();
            if nb.len() > budget {
                return None;
            }
            budget -= nb.len();
            h_left.retain(|v| !nb.contains(v));
            deletions.extend_from_slice(&nb);
        } else {
            open_cliques.push(q);
        }
    }

    let remaining = open_cliques.iter().map(|q| q.len()).sum::<usize>() + h_left.len();
    if remaining < budget || (remaining - budget) % c != 0 {
        return None;
    }
    let p = (remaining - budget) / c;
    if open_cliques.len() > p {
        return None;
    }

    // cliques of the free part that survives so far
    let h_sorted: Vec<usize> = {
        let mut v = h_left.clone();
        v.sort_unstable();
        v
    };
    let (h_graph, h_map) = g.induced(&h_sorted);
    let h_cliques: Vec<Vec<usize>> = h_graph
        .cluster_components()?
        .into_iter()
        .map(|q| q.into_iter().map(|i| h_map[i]).collect())
        .collect();

    let matching =
        build_completion_matching(g, &open_cliques, &h_cliques, c, p)?;

    // reconstruct: matched open cliques keep enough donors, dummy matches
    // trim a free clique, everything else in the free part is deleted
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for (a, b) in matching.iter().enumerate() {
        let b = match b {
            Some(b) => *b,
            None => return None,
        };
        let target = &h_cliques[b];
        if a < open_cliques.len() {
            let q = open_cliques[a];
            let need = c - q.len();
            let qbits = g.bitset_of(q);
            let donors: Vec<usize> = target
                .iter()
                .copied()
                .filter(|&v| g.nbhood_contains(v, &qbits))
                .take(need)
                .collect();
            if donors.len() < need {
                return None;
            }
            let mut clique = q.clone();
            clique.extend_from_slice(&donors);
            kept.push(clique);
        } else {
            let trimmed: Vec<usize> = target
                .iter()
                .copied()
                .filter(|&v| g.neighbors(v).all(|u| !xout_member(&open_cliques, u)))
                .take(c)
                .collect();
            if trimmed.len() < c {
                return None;
            }
            kept.push(trimmed);
        }
    }
    let kept_flat: std::collections::BTreeSet<usize> =
        kept.iter().flatten().copied().collect();
    for &v in &h_sorted {
        if !kept_flat.contains(&v) {
            deletions.push(v);
        }
    }
    if deletions.len() != k_exact {
        return None;
    }
    Some(deletions)
}

fn xout_member(open_cliques: &[&Vec<usize>], u: usize) -> bool {
    open_cliques.iter().any(|q| q.binary_search(&u).is_ok())
}

/// Bipartite completion: side A holds the open undeletable cliques plus
/// dummy slots up to `p`, side B the free cliques. An open clique can use a
/// free clique iff enough of its members are adjacent to the whole open
/// clique; a dummy slot can use it iff enough members have no undeletable
/// neighbors at all. Returns the A-side matching when it saturates A.
pub fn build_completion_matching(
    g: &Graph,
    open_cliques: &[&Vec<usize>],
    h_cliques: &[Vec<usize>],
    c: usize,
    p: usize,
) -> Option<Vec<Option<usize>>> {
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(p);
    for q in open_cliques {
        let need = c - q.len();
        let qbits = g.bitset_of(q);
        let row: Vec<usize> = h_cliques
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                t.iter().filter(|&&v| g.nbhood_contains(v, &qbits)).count() >= need
            })
            .map(|(i, _)| i)
            .collect();
        adj.push(row);
    }
    for _ in open_cliques.len()..p {
        let row: Vec<usize> = h_cliques
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                t.iter()
                    .filter(|&&v| g.neighbors(v).all(|u| !xout_member(open_cliques, u)))
                    .count()
                    >= c
            })
            .map(|(i, _)| i)
            .collect();
        adj.push(row);
    }
    let matching = maximum_bipartite_matching(&adj, h_cliques.len());
    matching.iter().all(Option::is_some).then_some(matching)
}

/// Decides the instance and produces a deletion witness: branch for a
/// cluster deletion set `X`, then for every subset of `X` kept out of the
/// solution, solve the annotated remainder in polynomial time.
pub fn solve_ucvd(g: &Graph, k: usize) -> Option<Witness> {
    if g.is_uniform_cluster().is_some() {
        return Some(Witness::Vertices(VertexSet::default()));
    }
    let x = cvd_branching(g, k)?;
    let xs: Vec<usize> = x.iter().collect();
    for mask in 0u64..1 << xs.len() {
        let x_in: Vec<usize> =
            xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        if x_in.len() > k {
            continue;
        }
        let (g_prime, map) = g.remove_vertices(&x_in);
        // undeletable set in the reduced ids
        let x_out: VertexSet = map
            .iter()
            .enumerate()
            .filter(|(_, orig)| xs.binary_search(orig).is_ok())
            .map(|(i, _)| i)
            .collect();
        let di = DisjointInstance { graph: g_prime, x_out, k: k - x_in.len() };
        if let Some(inner) = solve_disjoint_ucvd(&di) {
            let mut sol: Vec<usize> = inner.iter().map(|v| map[v]).collect();
            sol.extend_from_slice(&x_in);
            let solution = VertexSet::new(sol);
            debug_assert!(
                g.remove_vertices(&solution.iter().collect::<Vec<_>>())
                    .0
                    .is_uniform_cluster()
                    .is_some()
            );
            return Some(Witness::Vertices(solution));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)])
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn cvd_branching_cases() {
        assert_eq!(cvd_branching(&p3(), 1).unwrap().len(), 1);
        assert!(cvd_branching(&c4(), 1).is_none());
        assert!(cvd_branching(&c4(), 2).is_some());
        assert_eq!(cvd_branching(&Graph::disjoint_cliques(2, 3), 0).unwrap().len(), 0);
    }

    #[test]
    fn disjoint_single_undeletable() {
        // x = 3 adjacent to u = 0, v = 1 of the triangle {0,1,2}; k = 1
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (3, 0), (3, 1)]);
        let di = DisjointInstance { graph: g, x_out: VertexSet::new(vec![3]), k: 1 };
        let sol = solve_disjoint_ucvd(&di).unwrap();
        assert_eq!(sol.as_slice(), &[2]);
    }

    #[test]
    fn disjoint_forced_by_two_cliques() {
        // h-vertex 2 adjacent to both undeletable singletons 0 and 1
        let g = Graph::from_edges(3, &[(0, 2), (1, 2)]);
        let di = DisjointInstance { graph: g, x_out: VertexSet::new(vec![0, 1]), k: 1 };
        let sol = solve_disjoint_ucvd(&di).unwrap();
        assert_eq!(sol.as_slice(), &[2]);
    }

    #[test]
    fn disjoint_rejects_p3_in_undeletable() {
        let g = p3();
        let di = DisjointInstance { graph: g, x_out: VertexSet::new(vec![0, 1, 2]), k: 3 };
        assert!(solve_disjoint_ucvd(&di).is_none());
    }

    #[test]
    fn matching_eligibility() {
        // open clique {3} with two donors in the triangle, c = 3, p = 1
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (3, 0), (3, 1)]);
        let open = vec![vec![3usize]];
        let open_refs: Vec<&Vec<usize>> = open.iter().collect();
        let m =
            build_completion_matching(&g, &open_refs, &[vec![0, 1, 2]], 3, 1).unwrap();
        assert_eq!(m[0], Some(0));
        // dummy slot trims a K4 with no undeletable neighbors
        let k4 = Graph::disjoint_cliques(1, 4);
        let m = build_completion_matching(&k4, &[], &[vec![0, 1, 2, 3]], 3, 1).unwrap();
        assert_eq!(m[0], Some(0));
        // an A side bigger than B with no dummy edges cannot saturate
        assert!(build_completion_matching(&k4, &[], &[], 3, 1).is_none());
    }

    #[test]
    fn solve_matches_small_answers() {
        assert!(solve_ucvd(&p3(), 1).is_some());
        assert!(solve_ucvd(&c4(), 1).is_none());
        assert!(solve_ucvd(&c4(), 2).is_some());
        // two triangles joined by an edge: deleting both endpoints works
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]);
        assert!(solve_ucvd(&g, 1).is_none());
        let w = solve_ucvd(&g, 2).unwrap();
        assert_eq!(w.size(), 2);
    }
}
