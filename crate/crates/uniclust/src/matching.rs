//! Maximum bipartite matching by augmenting paths.

/// Maximum matching in the bipartite graph given as adjacency lists from the
/// left side into `0..right_count`. Returns, for every left vertex, the right
/// vertex matched to it (or `None`).
pub fn maximum_bipartite_matching(
    left_adj: &[Vec<usize>],
    right_count: usize,
) -> Vec<Option<usize>> {
    let mut right_match: Vec<Option<usize>> = vec![None; right_count];
    let mut seen = vec![false; right_count];
    for l in 0..left_adj.len() {
        seen.iter_mut().for_each(|s| *s = false);
        augment(left_adj, l, &mut seen, &mut right_match);
    }
    let mut left_match = vec![None; left_adj.len()];
    for (r, lm) in right_match.iter().enumerate() {
        if let Some(l) = lm {
            left_match[*l] = Some(r);
        }
    }
    left_match
}

fn augment(
    left_adj: &[Vec<usize>],
    l: usize,
    seen: &mut [bool],
    right_match: &mut [Option<usize>],
) -> bool {
    for &r in &left_adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match right_match[r] {
            None => true,
            Some(prev) => augment(left_adj, prev, seen, right_match),
        };
        if free {
            right_match[r] = Some(l);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matched(m: &[Option<usize>]) -> usize {
        m.iter().flatten().count()
    }

    #[test]
    fn perfect_matching() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        assert_eq!(matched(&maximum_bipartite_matching(&adj, 3)), 3);
    }

    #[test]
    fn hall_violation() {
        // two left vertices compete for one right vertex
        let adj = vec![vec![0], vec![0]];
        assert_eq!(matched(&maximum_bipartite_matching(&adj, 1)), 1);
    }

    #[test]
    fn augmenting_path_reassigns() {
        let adj = vec![vec![0], vec![0, 1]];
        let m = maximum_bipartite_matching(&adj, 2);
        assert_eq!(matched(&m), 2);
        assert_eq!(m[0], Some(0));
        assert_eq!(m[1], Some(1));
    }
}
