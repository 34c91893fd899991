//! Minimum T-joins: cheapest edge multisets with a prescribed odd-degree set.

use std::collections::BTreeSet;

use super::{
    connected_components, metric_closure, min_weight_perfect_matching, EdgeId, EdgeMultiset,
    GraphError, VertexId, WeightedGraph,
};

/// A minimum-weight edge multiset whose odd-degree vertices are exactly
/// `t_set`.
///
/// Realized as a minimum-weight perfect matching on the metric closure of
/// `t_set`, expanded to shortest paths and reduced mod 2, so every returned
/// multiplicity is 1. With non-negative weights this reduction is exact.
pub fn min_t_join(
    g: &WeightedGraph,
    t_set: &BTreeSet<VertexId>,
) -> Result<EdgeMultiset, GraphError> {
    if t_set.len() % 2 != 0 {
        return Err(GraphError::OddSetSize(t_set.len()));
    }
    if t_set.is_empty() {
        return Ok(EdgeMultiset::new());
    }
    let closure = metric_closure(g, t_set)?;
    let n = closure.terminals.len();
    let weights: Vec<Vec<_>> = (0..n)
        .map(|i| (0..n).map(|j| closure.distance(i, j)).collect())
        .collect();
    let pairs = min_weight_perfect_matching(&weights)?;

    // XOR the matched shortest paths together; parity is all that matters.
    let mut in_join = vec![false; g.edge_count()];
    for (i, j) in pairs {
        for eid in closure.expand(g, i, j).edge_ids() {
            in_join[eid] = !in_join[eid];
        }
    }
    let mut ids: BTreeSet<EdgeId> = (0..g.edge_count()).filter(|&e| in_join[e]).collect();

    // Cancellation can strand balanced components that touch no T vertex;
    // dropping them preserves parity and never increases weight.
    let comps = connected_components(g, Some(&ids));
    for comp in comps {
        if comp.iter().all(|v| !t_set.contains(v)) {
            ids.retain(|&e| {
                let edge = g.edge(e);
                !comp.contains(&edge.u)
            });
        }
    }
    let join = EdgeMultiset::from_edges(ids);
    debug_assert_eq!(&join.odd_vertices(g), t_set);
    Ok(join)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_join() {
        let g = WeightedGraph::new(3, &[(0, 1, 2), (1, 2, 3)]).unwrap();
        let t: BTreeSet<VertexId> = [0, 1].into_iter().collect();
        let join = min_t_join(&g, &t).unwrap();
        assert_eq!(join.ids().collect::<Vec<_>>(), vec![0]);
        assert_eq!(join.weight(&g), 2);
    }

    #[test]
    fn empty_t_set_gives_empty_join() {
        let g = WeightedGraph::new(2, &[(0, 1, 1)]).unwrap();
        let join = min_t_join(&g, &BTreeSet::new()).unwrap();
        assert!(join.is_empty());
    }

    #[test]
    fn join_through_cheap_detour() {
        // Direct edge 0-3 is costly; the path 0-1-2-3 is cheaper.
        let g = WeightedGraph::new(
            4,
            &[(0, 3, 10), (0, 1, 1), (1, 2, 1), (2, 3, 1)],
        )
        .unwrap();
        let t: BTreeSet<VertexId> = [0, 3].into_iter().collect();
        let join = min_t_join(&g, &t).unwrap();
        assert_eq!(join.weight(&g), 3);
        assert_eq!(join.odd_vertices(&g), t);
    }

    #[test]
    fn odd_sets_are_rejected() {
        let g = WeightedGraph::new(2, &[(0, 1, 1)]).unwrap();
        let t: BTreeSet<VertexId> = [0].into_iter().collect();
        assert_eq!(min_t_join(&g, &t).unwrap_err(), GraphError::OddSetSize(1));
    }
}
