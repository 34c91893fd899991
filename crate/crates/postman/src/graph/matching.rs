//! Exact minimum-weight perfect matching on a complete weighted vertex set.

use super::{add_weights, GraphError, Weight, MATCHING_VERTEX_LIMIT};

/// Minimum-weight perfect matching of `0..weights.len()` under the given
/// symmetric pair-weight matrix.
///
/// Exact bitmask dynamic program in `O(2^n · n)`; exactness is the
/// contract, so inputs are capped at [`MATCHING_VERTEX_LIMIT`] vertices.
/// Ties are broken toward the lexicographically smallest pair list, and
/// pairs are returned as `(i, j)` with `i < j`, sorted ascending.
pub fn min_weight_perfect_matching(
    weights: &[Vec<Weight>],
) -> Result<Vec<(usize, usize)>, GraphError> {
    let n = weights.len();
    if n % 2 != 0 {
        return Err(GraphError::OddSetSize(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > MATCHING_VERTEX_LIMIT {
        return Err(GraphError::MatchingTooLarge(n));
    }
    debug_assert!(weights.iter().all(|row| row.len() == n));

    let full: usize = (1 << n) - 1;
    let mut best: Vec<Option<Weight>> = vec![None; full + 1];
    let mut mate_choice: Vec<u8> = vec![0; full + 1];
    best[0] = Some(0);
    for mask in 1..=full {
        let bits = mask.count_ones();
        if bits % 2 != 0 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut candidate: Option<Weight> = None;
        let mut chosen = 0u8;
        let mut sub = rest;
        while sub != 0 {
            let j = sub.trailing_zeros() as usize;
            sub &= sub - 1;
            if let Some(prev) = best[rest & !(1 << j)] {
                let total = add_weights(prev, weights[i][j]);
                if candidate.is_none_or(|c| total < c) {
                    candidate = Some(total);
                    chosen = j as u8;
                }
            }
        }
        best[mask] = candidate;
        mate_choice[mask] = chosen;
    }

    let mut pairs = Vec::with_capacity(n / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = mate_choice[mask] as usize;
        pairs.push((i, j));
        mask &= !(1 << i);
        mask &= !(1 << j);
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// Total weight of a matching under a pair-weight matrix.
pub(crate) fn matching_weight(weights: &[Vec<Weight>], pairs: &[(usize, usize)]) -> Weight {
    pairs
        .iter()
        .fold(0, |acc, &(i, j)| add_weights(acc, weights[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(n: usize, f: impl Fn(usize, usize) -> Weight) -> Vec<Vec<Weight>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0 } else { f(i.min(j), i.max(j)) }).collect())
            .collect()
    }

    #[test]
    fn two_vertices() {
        let w = matrix(2, |_, _| 5);
        assert_eq!(min_weight_perfect_matching(&w).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn forced_optimum_on_four_vertices() {
        // ab=1, cd=1, everything else 10.
        let w = matrix(4, |i, j| match (i, j) {
            (0, 1) | (2, 3) => 1,
            _ => 10,
        });
        let pairs = min_weight_perfect_matching(&w).unwrap();
        assert_eq!(pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(matching_weight(&w, &pairs), 2);
    }

    #[test]
    fn rejects_odd_sets() {
        let w = matrix(3, |_, _| 1);
        assert_eq!(
            min_weight_perfect_matching(&w).unwrap_err(),
            GraphError::OddSetSize(3)
        );
    }

    #[test]
    fn empty_set_matches_trivially() {
        assert_eq!(min_weight_perfect_matching(&[]).unwrap(), Vec::new());
    }
}
