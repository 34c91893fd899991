//! Reduction from the s-t path variant to the closed-walk rural postman.
//!
//! Adding a required edge `{s, t}` of weight `2ω(E)` turns path solutions
//! into closed-walk solutions and back, shifting the optimum by exactly
//! `2ω(E)`. When `s = t` or `s` is adjacent to `t`, a fresh source joined
//! by a required zero-weight edge restores the preconditions first.

use crate::graph::{EdgeId, VertexId, Walk, Weight};

use super::{RppInstance, SolveError, StRppInstance};

/// Undoes the reduction: maps closed walks of the reduced instance back to
/// s-t walks of the original one.
#[derive(Debug, Clone)]
pub struct RppBackMap {
    /// The `{s, t}` edge added by the reduction.
    pub added_edge: EdgeId,
    /// Weight of the added edge, `2ω(E)`.
    pub added_weight: Weight,
    /// Dummy `(vertex, zero-weight edge)` pairs spliced in front of the
    /// source, outermost last.
    pub dummies: Vec<(VertexId, EdgeId)>,
    pub source: VertexId,
    pub target: VertexId,
}

impl RppBackMap {
    /// Rotates a closed walk of the reduced instance around its unique
    /// traversal of the added edge, drops that traversal and the dummy
    /// splices, and returns the resulting walk from `source` to `target`.
    ///
    /// Fails if the walk does not traverse the added edge exactly once,
    /// which an optimal closed walk always does.
    pub fn map_back(
        &self,
        reduced: &RppInstance,
        original: &StRppInstance,
        walk: &Walk,
    ) -> Result<Walk, SolveError> {
        let uses = walk.edge_ids().filter(|&e| e == self.added_edge).count();
        if uses != 1 {
            return Err(SolveError::ReductionEdgeMisuse {
                edge: self.added_edge,
                count: uses,
            });
        }
        assert!(walk.is_closed(), "reduced solutions are closed walks");

        // Split the cyclic step sequence around the added edge.
        let steps = walk.steps();
        let pos = steps
            .iter()
            .position(|&(e, _)| e == self.added_edge)
            .expect("added edge is traversed");
        let mut rotated: Vec<(EdgeId, VertexId)> = Vec::with_capacity(steps.len() - 1);
        rotated.extend_from_slice(&steps[pos + 1..]);
        // The walk is closed, so steps before `pos` continue seamlessly
        // after the wrap-around.
        rotated.extend_from_slice(&steps[..pos]);
        let start = steps[pos].1; // head of the added-edge traversal
        let open = Walk::from_steps(&reduced.graph, start, rotated)
            .expect("rotating a closed walk yields a walk");

        // Orient from the (possibly dummy-extended) source to the target.
        let current_source = self
            .dummies
            .last()
            .map(|&(v, _)| v)
            .unwrap_or(self.source);
        let mut open = if open.start() == current_source {
            open
        } else {
            open.reversed()
        };
        debug_assert_eq!(open.start(), current_source);
        debug_assert_eq!(open.end(), self.target);

        // Peel off the dummy splices, outermost first.
        for &(dummy_vertex, dummy_edge) in self.dummies.iter().rev() {
            let steps: Vec<(EdgeId, VertexId)> = open
                .steps()
                .iter()
                .filter(|&&(e, _)| e != dummy_edge)
                .copied()
                .collect();
            let new_start = open
                .steps()
                .iter()
                .find(|&&(e, _)| e == dummy_edge)
                .map(|&(_, v)| v)
                .filter(|&v| v != dummy_vertex)
                .unwrap_or(self.source);
            open = Walk::from_steps(&reduced.graph, new_start, steps)
                .expect("dummy splices peel off cleanly");
        }
        // Re-validate against the original graph: all remaining ids are
        // original ones because dummies and the added edge are gone.
        let walk = Walk::from_steps(original.graph, open.start(), open.steps().to_vec())
            .expect("remaining steps live in the original graph");
        debug_assert!(original.covers(&walk));
        Ok(walk)
    }
}

/// Builds the closed-walk instance: `opt(reduced) = opt(original) + 2ω(E)`.
pub fn reduce_strpp_to_rpp(inst: &StRppInstance) -> Result<(RppInstance, RppBackMap), SolveError> {
    let mut graph = inst.graph.clone();
    let mut required = inst.required.clone();
    let mut source = inst.source;
    let mut dummies = Vec::new();
    // Normalize until the endpoints are distinct and non-adjacent. Two
    // rounds suffice: a fresh vertex is adjacent only to the old source.
    while source == inst.target || graph.edge_between(source, inst.target).is_some() {
        let dummy_vertex = graph.vertex_count();
        graph = graph.augmented(1, &[(dummy_vertex, source, 0)])?;
        let dummy_edge = graph.edge_count() - 1;
        required.insert(dummy_edge);
        dummies.push((dummy_vertex, dummy_edge));
        source = dummy_vertex;
    }
    let added_weight = graph
        .total_weight()
        .checked_mul(2)
        .expect("edge weight sum overflows u64");
    let graph = graph.augmented(0, &[(source, inst.target, added_weight)])?;
    let added_edge = graph.edge_count() - 1;
    required.insert(added_edge);
    Ok((
        RppInstance { graph, required },
        RppBackMap {
            added_edge,
            added_weight,
            dummies,
            source: inst.source,
            target: inst.target,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{solve_rpp_oracle, solve_strpp_oracle, DEFAULT_ORACLE_LIMIT};
    use super::*;
    use crate::graph::WeightedGraph;

    fn gstar() -> WeightedGraph {
        WeightedGraph::new(
            5,
            &[(0, 1, 2), (1, 3, 1), (3, 2, 3), (2, 1, 4), (1, 4, 1), (4, 0, 2)],
        )
        .unwrap()
    }

    #[test]
    fn added_edge_weighs_twice_the_total() {
        // Non-adjacent endpoints a and d with total weight 13.
        let g = gstar();
        let inst = StRppInstance::new(&g, [2], 0, 3);
        let (reduced, back) = reduce_strpp_to_rpp(&inst).unwrap();
        assert_eq!(back.added_weight, 26);
        assert!(back.dummies.is_empty());
        assert!(reduced.required.contains(&back.added_edge));
        assert_eq!(reduced.graph.edge(back.added_edge).weight, 26);
    }

    #[test]
    fn adjacent_endpoints_are_normalized() {
        let g = gstar();
        // a and b are adjacent: one dummy splice expected.
        let inst = StRppInstance::new(&g, [2], 0, 1);
        let (reduced, back) = reduce_strpp_to_rpp(&inst).unwrap();
        assert_eq!(back.dummies.len(), 1);
        assert_eq!(reduced.graph.vertex_count(), 6);
        // Coincident endpoints: two splices (the first dummy is adjacent
        // to the target).
        let inst = StRppInstance::new(&g, [2], 1, 1);
        let (_, back) = reduce_strpp_to_rpp(&inst).unwrap();
        assert_eq!(back.dummies.len(), 2);
    }

    #[test]
    fn optimum_shifts_by_exactly_the_added_weight() {
        let g = gstar();
        let inst = StRppInstance::new(&g, [1, 2], 0, 4);
        let opt = solve_strpp_oracle(&inst, DEFAULT_ORACLE_LIMIT)
            .unwrap()
            .weight(&g);
        let (reduced, back) = reduce_strpp_to_rpp(&inst).unwrap();
        let tour = solve_rpp_oracle(&reduced, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(tour.weight(&reduced.graph), opt + back.added_weight);
        let mapped = back.map_back(&reduced, &inst, &tour).unwrap();
        assert_eq!(mapped.weight(&g), opt);
        assert!(inst.covers(&mapped));
    }
}
