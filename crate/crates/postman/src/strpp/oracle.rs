//! Exact enumeration oracles for small required-edge sets.
//!
//! An optimal postman walk traverses the required edges in some order and
//! orientation with shortest paths in between, so enumerating all
//! `|R|! · 2^|R|` stitch sequences and keeping the cheapest is exact.

use std::collections::BTreeMap;

use crate::graph::{
    add_weights, shortest_paths, EdgeId, ShortestPaths, VertexId, Walk, Weight, WeightedGraph,
};

use super::{RppInstance, SolveError, StRppInstance};

/// Default cap on `|R|`; the factorial-exponential enumeration blows up
/// quickly past this.
pub const DEFAULT_ORACLE_LIMIT: usize = 7;

/// Shortest-path trees from every stitch point (walk endpoints and
/// required-edge endpoints), keyed by source vertex.
struct StitchTable {
    trees: BTreeMap<VertexId, ShortestPaths>,
}

impl StitchTable {
    fn new(
        g: &WeightedGraph,
        sources: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self, SolveError> {
        let mut trees = BTreeMap::new();
        for s in sources {
            if !trees.contains_key(&s) {
                trees.insert(s, shortest_paths(g, s, None)?);
            }
        }
        Ok(Self { trees })
    }

    fn distance(&self, from: VertexId, to: VertexId) -> Option<Weight> {
        self.trees[&from].distance(to)
    }

    fn walk(&self, g: &WeightedGraph, from: VertexId, to: VertexId) -> Walk {
        self.trees[&from]
            .walk_to(g, to)
            .expect("stitched endpoints are reachable")
    }
}

/// Lexicographic permutation generator over `0..k`.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Oriented endpoints of edge `e` for orientation bit `flip`.
fn oriented(g: &WeightedGraph, e: EdgeId, flip: bool) -> (VertexId, VertexId) {
    let edge = g.edge(e);
    if flip {
        (edge.v, edge.u)
    } else {
        (edge.u, edge.v)
    }
}

/// Cost of stitching the oriented required sequence between `from` and
/// `to`; `None` when some stitch is unreachable.
fn sequence_cost(
    g: &WeightedGraph,
    table: &StitchTable,
    required: &[EdgeId],
    perm: &[usize],
    mask: u32,
    from: VertexId,
    to: VertexId,
) -> Option<Weight> {
    let mut at = from;
    let mut total: Weight = 0;
    for (pos, &ix) in perm.iter().enumerate() {
        let e = required[ix];
        let (a, b) = oriented(g, e, mask & (1 << pos) != 0);
        total = add_weights(total, table.distance(at, a)?);
        total = add_weights(total, g.edge(e).weight);
        at = b;
    }
    total = add_weights(total, table.distance(at, to)?);
    Some(total)
}

/// Materializes the walk for a chosen stitch sequence.
fn sequence_walk(
    g: &WeightedGraph,
    table: &StitchTable,
    required: &[EdgeId],
    perm: &[usize],
    mask: u32,
    from: VertexId,
    to: VertexId,
) -> Walk {
    let mut walk = Walk::trivial(from);
    let mut at = from;
    for (pos, &ix) in perm.iter().enumerate() {
        let e = required[ix];
        let (a, b) = oriented(g, e, mask & (1 << pos) != 0);
        walk.extend(&table.walk(g, at, a));
        walk.extend(&Walk::from_steps(g, a, vec![(e, b)]).expect("edge joins its endpoints"));
        at = b;
    }
    walk.extend(&table.walk(g, at, to));
    walk
}

/// Exact s-t rural postman solver by full enumeration.
///
/// Enumerates every order and orientation of the required edges
/// (lexicographic order, ascending orientation masks) and stitches them
/// with shortest paths; ties keep the first sequence found.
pub fn solve_strpp_oracle(inst: &StRppInstance, limit: usize) -> Result<Walk, SolveError> {
    let r = inst.required.len();
    if r > limit {
        return Err(SolveError::TooManyRequired { count: r, limit });
    }
    inst.check_feasible()?;
    let g = inst.graph;
    let required: Vec<EdgeId> = inst.required.iter().copied().collect();

    let mut stitch_points: Vec<VertexId> = vec![inst.source, inst.target];
    for &e in &required {
        let edge = g.edge(e);
        stitch_points.push(edge.u);
        stitch_points.push(edge.v);
    }
    let table = StitchTable::new(g, stitch_points)?;

    if r == 0 {
        return Ok(table.walk(g, inst.source, inst.target));
    }

    let mut best: Option<(Weight, Vec<usize>, u32)> = None;
    let mut perm: Vec<usize> = (0..r).collect();
    loop {
        for mask in 0..(1u32 << r) {
            if let Some(cost) = sequence_cost(
                g,
                &table,
                &required,
                &perm,
                mask,
                inst.source,
                inst.target,
            ) {
                if best.as_ref().is_none_or(|(w, _, _)| cost < *w) {
                    best = Some((cost, perm.clone(), mask));
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (_, perm, mask) = best.expect("feasible instance admits a stitch sequence");
    let walk = sequence_walk(g, &table, &required, &perm, mask, inst.source, inst.target);
    debug_assert!(inst.covers(&walk));
    Ok(walk)
}

/// Exact rural postman (closed walk) solver by cyclic enumeration.
///
/// The first required edge is pinned to the front of the sequence to kill
/// rotational symmetry; the tour closes back to its oriented tail. With no
/// required edges the convention is the empty walk at vertex 0, weight 0.
pub fn solve_rpp_oracle(inst: &RppInstance, limit: usize) -> Result<Walk, SolveError> {
    let r = inst.required.len();
    if r > limit {
        return Err(SolveError::TooManyRequired { count: r, limit });
    }
    let g = &inst.graph;
    if r == 0 {
        return Ok(Walk::trivial(0));
    }
    let required: Vec<EdgeId> = inst.required.iter().copied().collect();
    // Feasibility: all required endpoints mutually reachable.
    let anchor = g.edge(required[0]).u;
    let probe = StRppInstance::new(g, required.iter().copied(), anchor, anchor);
    probe.check_feasible()?;

    let mut stitch_points: Vec<VertexId> = Vec::with_capacity(2 * r);
    for &e in &required {
        let edge = g.edge(e);
        stitch_points.push(edge.u);
        stitch_points.push(edge.v);
    }
    let table = StitchTable::new(g, stitch_points)?;

    let mut best: Option<(Weight, Vec<usize>, u32)> = None;
    let mut tail: Vec<usize> = (1..r).collect();
    loop {
        let mut perm = Vec::with_capacity(r);
        perm.push(0);
        perm.extend_from_slice(&tail);
        for mask in 0..(1u32 << r) {
            // Tour cost: first edge, then stitches, closing back to the
            // first edge's oriented tail.
            let (tail_v, _) = oriented(g, required[0], mask & 1 != 0);
            if let Some(cost) =
                sequence_cost(g, &table, &required, &perm, mask, tail_v, tail_v)
            {
                if best.as_ref().is_none_or(|(w, _, _)| cost < *w) {
                    best = Some((cost, perm.clone(), mask));
                }
            }
        }
        if !next_permutation(&mut tail) {
            break;
        }
    }
    let (_, perm, mask) = best.expect("feasible instance admits a tour");
    let (tail_v, _) = oriented(g, required[0], mask & 1 != 0);
    let walk = sequence_walk(g, &table, &required, &perm, mask, tail_v, tail_v);
    debug_assert!(walk.is_closed());
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gstar() -> WeightedGraph {
        WeightedGraph::new(
            5,
            &[(0, 1, 2), (1, 3, 1), (3, 2, 3), (2, 1, 4), (1, 4, 1), (4, 0, 2)],
        )
        .unwrap()
    }

    #[test]
    fn empty_required_is_a_shortest_path() {
        let g = gstar();
        let inst = StRppInstance::new(&g, [], 0, 2);
        let walk = solve_strpp_oracle(&inst, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(walk.weight(&g), 6);
    }

    #[test]
    fn layered_example_arc_weights() {
        // Closed walk at b covering the second class inside classes 1-2: 8.
        let g = gstar();
        let sub: std::collections::BTreeSet<EdgeId> = [0, 1, 2, 3].into_iter().collect();
        let (restricted, _) = g.edge_subgraph(&sub);
        let inst = StRppInstance::new(&restricted, [1, 2, 3], 1, 1);
        let walk = solve_strpp_oracle(&inst, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(walk.weight(&restricted), 8);

        // Closed walk at a covering the third class in the full graph: 5.
        let inst = StRppInstance::new(&g, [4, 5], 0, 0);
        let walk = solve_strpp_oracle(&inst, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(walk.weight(&g), 5);
    }

    #[test]
    fn rejects_oversized_required_sets() {
        let g = gstar();
        let inst = StRppInstance::new(&g, 0..6, 0, 0);
        assert_eq!(
            solve_strpp_oracle(&inst, 3),
            Err(SolveError::TooManyRequired { count: 6, limit: 3 })
        );
    }

    #[test]
    fn rpp_oracle_on_eulerian_required_set() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let inst = RppInstance {
            graph: g,
            required: (0..3).collect(),
        };
        let walk = solve_rpp_oracle(&inst, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(walk.weight(&inst.graph), 3);
        assert!(walk.is_closed());
    }

    #[test]
    fn rpp_oracle_empty_required_convention() {
        let g = gstar();
        let inst = RppInstance {
            graph: g,
            required: Default::default(),
        };
        let walk = solve_rpp_oracle(&inst, DEFAULT_ORACLE_LIMIT).unwrap();
        assert!(walk.is_empty());
        assert_eq!(walk.weight(&inst.graph), 0);
    }
}
