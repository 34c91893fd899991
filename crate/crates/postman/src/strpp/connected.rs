//! Exact s-t rural postman solver for connected required-edge sets.
//!
//! Any optimal walk splits into a deadheading prefix from `s` to its first
//! required vertex `x`, a middle covering the required edges, and a
//! deadheading suffix from the last required vertex `y` to `t`. Replacing
//! prefix and suffix by shortest paths and the middle's deadheading by a
//! minimum T-join never increases the weight, so enumerating the
//! attachment pairs `(x, y)` and keeping the cheapest connected candidate
//! is exact. Exactness is additionally cross-validated against the
//! enumeration oracle in the test suite.

use std::collections::BTreeSet;

use crate::graph::{
    connected_components, euler_walk, min_t_join, shortest_paths, EdgeMultiset, VertexId, Walk,
    Weight,
};

use super::{SolveError, StRppInstance};

/// Exact solver requiring `G⟨R⟩` to induce at most one component.
pub fn solve_strpp_connected_exact(inst: &StRppInstance) -> Result<Walk, SolveError> {
    let g = inst.graph;
    let comps = connected_components(g, Some(&inst.required));
    if comps.len() > 1 {
        return Err(SolveError::RequiredNotConnected(comps.len()));
    }
    inst.check_feasible()?;

    let from_source = shortest_paths(g, inst.source, None)?;
    let from_target = shortest_paths(g, inst.target, None)?;
    let required_vertices: BTreeSet<VertexId> = inst
        .required
        .iter()
        .flat_map(|&e| {
            let edge = g.edge(e);
            [edge.u, edge.v]
        })
        .collect();
    let mut attach_s: Vec<VertexId> = required_vertices.iter().copied().collect();
    if !required_vertices.contains(&inst.source) {
        attach_s.push(inst.source);
        attach_s.sort_unstable();
    }
    let mut attach_t: Vec<VertexId> = required_vertices.iter().copied().collect();
    if !required_vertices.contains(&inst.target) {
        attach_t.push(inst.target);
        attach_t.sort_unstable();
    }

    let required_ms = EdgeMultiset::from_edges(inst.required.iter().copied());
    let mut best: Option<(Weight, EdgeMultiset)> = None;
    for &x in &attach_s {
        let Some(prefix) = from_source.walk_to(g, x) else {
            continue;
        };
        for &y in &attach_t {
            let Some(suffix) = from_target.walk_to(g, y) else {
                continue;
            };
            let mut base = required_ms.union(&prefix.edge_multiset());
            base = base.union(&suffix.edge_multiset());

            // Residual parity: odd vertices of the base, with the walk
            // endpoints toggled (they are allowed to stay imbalanced).
            let mut t_set = base.odd_vertices(g);
            if inst.source != inst.target {
                for v in [inst.source, inst.target] {
                    if !t_set.remove(&v) {
                        t_set.insert(v);
                    }
                }
            }
            let join = min_t_join(g, &t_set)?;
            let candidate = base.union(&join);

            if !candidate_usable(inst, &candidate) {
                continue;
            }
            let weight = candidate.weight(g);
            if best.as_ref().is_none_or(|(w, _)| weight < *w) {
                best = Some((weight, candidate));
            }
        }
    }
    let (_, multiset) = best.expect("a connected candidate always exists");
    let walk = if multiset.is_empty() {
        Walk::trivial(inst.source)
    } else {
        euler_walk(g, &multiset, inst.source, inst.target)?
    };
    debug_assert!(inst.covers(&walk));
    Ok(walk)
}

/// A candidate multiset is usable if it is connected, touches the walk
/// endpoints, and its imbalanced vertices are exactly the endpoints.
fn candidate_usable(inst: &StRppInstance, candidate: &EdgeMultiset) -> bool {
    let g = inst.graph;
    if candidate.is_empty() {
        // Only the trivial instance (no requirement, s = t) is coverable
        // by the empty walk.
        return inst.required.is_empty() && inst.source == inst.target;
    }
    let vertices = candidate.vertices(g);
    if !vertices.contains(&inst.source) || !vertices.contains(&inst.target) {
        return false;
    }
    if !candidate.is_connected(g) {
        return false;
    }
    let odd = candidate.odd_vertices(g);
    if inst.source == inst.target {
        odd.is_empty()
    } else {
        odd.len() == 2 && odd.contains(&inst.source) && odd.contains(&inst.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeId, WeightedGraph};

    fn gstar() -> WeightedGraph {
        WeightedGraph::new(
            5,
            &[(0, 1, 2), (1, 3, 1), (3, 2, 3), (2, 1, 4), (1, 4, 1), (4, 0, 2)],
        )
        .unwrap()
    }

    #[test]
    fn required_walk_already_optimal() {
        // R is a path from s to t: the walk is R itself.
        let g = WeightedGraph::new(3, &[(0, 1, 4), (1, 2, 5)]).unwrap();
        let inst = StRppInstance::new(&g, [0, 1], 0, 2);
        let walk = solve_strpp_connected_exact(&inst).unwrap();
        assert_eq!(walk.weight(&g), 9);
        assert_eq!(walk.vertices(), vec![0, 1, 2]);
    }

    #[test]
    fn layered_example_values() {
        let g = gstar();
        let sub: BTreeSet<EdgeId> = [0, 1, 2, 3].into_iter().collect();
        let (restricted, _) = g.edge_subgraph(&sub);
        // Second class from b to a inside classes 1-2: 10.
        let inst = StRppInstance::new(&restricted, [1, 2, 3], 1, 0);
        let walk = solve_strpp_connected_exact(&inst).unwrap();
        assert_eq!(walk.weight(&restricted), 10);

        // First class as a closed walk at b: b-a-b of weight 4.
        let sub1: BTreeSet<EdgeId> = [0].into_iter().collect();
        let (first, _) = g.edge_subgraph(&sub1);
        let inst = StRppInstance::new(&first, [0], 1, 1);
        let walk = solve_strpp_connected_exact(&inst).unwrap();
        assert_eq!(walk.weight(&first), 4);
    }

    #[test]
    fn disconnected_required_set_is_rejected() {
        let g = gstar();
        // Edges a-b and d-c share no vertex.
        let inst = StRppInstance::new(&g, [0, 2], 0, 0);
        assert_eq!(
            solve_strpp_connected_exact(&inst),
            Err(SolveError::RequiredNotConnected(2))
        );
    }

    #[test]
    fn empty_required_set_degenerates_to_shortest_path() {
        let g = gstar();
        let inst = StRppInstance::new(&g, [], 0, 2);
        let walk = solve_strpp_connected_exact(&inst).unwrap();
        assert_eq!(walk.weight(&g), 6);
        let closed = StRppInstance::new(&g, [], 3, 3);
        let walk = solve_strpp_connected_exact(&closed).unwrap();
        assert!(walk.is_empty());
    }
}
