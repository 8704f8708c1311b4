//! Planted-instance generator for tests and benchmarks.
//!
//! Reproducibility: the generator is ChaCha8 seeded with the given `u64`.
//! Starting from disjoint cliques, it first draws `add_count` indices without
//! replacement from the ascending list of absent pairs, then `del_count`
//! indices from the ascending list of edges of the perturbed graph. Equal
//! seeds give equal graphs across platforms.

use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("cannot add {want} edges, only {have} pairs are absent")]
    TooManyAdditions { want: usize, have: usize },
    #[error("cannot delete {want} edges, only {have} are present")]
    TooManyDeletions { want: usize, have: usize },
}

/// `num_cliques` disjoint cliques of size `clique_size`, perturbed by
/// `add_count` random absent edges and then `del_count` random deletions.
pub fn generate_planted(
    num_cliques: usize,
    clique_size: usize,
    add_count: usize,
    del_count: usize,
    seed: u64,
) -> Result<Graph, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Graph::disjoint_cliques(num_cliques, clique_size);

    let absent = base.non_edges();
    if add_count > absent.len() {
        return Err(GenError::TooManyAdditions { want: add_count, have: absent.len() });
    }
    let added: Vec<(usize, usize)> =
        absent.choose_multiple(&mut rng, add_count).copied().collect();
    let g = base.edit_edges(&added, &[]);

    let present: Vec<(usize, usize)> = g.edges().collect();
    if del_count > present.len() {
        return Err(GenError::TooManyDeletions { want: del_count, have: present.len() });
    }
    let deleted: Vec<(usize, usize)> =
        present.choose_multiple(&mut rng, del_count).copied().collect();
    Ok(g.edit_edges(&[], &deleted))
}

/// Seeded Erdos-Renyi-style graph used by the test corpora: each pair is an
/// edge with probability `density`.
pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < density {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unperturbed_is_uniform() {
        let g = generate_planted(3, 4, 0, 0, 7).unwrap();
        assert_eq!(g.is_uniform_cluster(), Some(4));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_planted(3, 4, 2, 1, 99).unwrap();
        let b = generate_planted(3, 4, 2, 1, 99).unwrap();
        assert_eq!(a, b);
        let c = generate_planted(3, 4, 2, 1, 100).unwrap();
        assert!(a != c || a.edges().eq(c.edges()));
    }

    #[test]
    fn infeasible_counts_error() {
        assert!(matches!(
            generate_planted(1, 3, 1, 0, 0),
            Err(GenError::TooManyAdditions { .. })
        ));
        assert!(matches!(
            generate_planted(2, 2, 0, 5, 0),
            Err(GenError::TooManyDeletions { .. })
        ));
    }
}
