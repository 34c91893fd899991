//! 5/3-approximation for the s-t rural postman path problem.
//!
//! The general instance is reduced to a complete metric instance on
//! `V(R) ∪ {s, t}`: connector and deadheading edges live on shortest-path
//! distances, required edges keep their own weight and identity. On that
//! instance the algorithm runs in four steps: a minimum spanning connector
//! `T` for the required edges, a parity set `S`, a minimum-weight perfect
//! matching `M` on `S`, and an Euler walk of `R ⊎ T ⊎ M` from `s` to `t`,
//! whose closure edges are finally expanded back into real walks.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{
    euler_walk, metric_closure, min_weight_perfect_matching, spanning_connector, EdgeId,
    EdgeMultiset, VertexId, Walk, Weight, WeightedGraph,
};

use super::{SolveError, StRppInstance};

/// A deadheading edge of the metric closure, reported in host vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosurePair {
    pub u: VertexId,
    pub v: VertexId,
    /// Shortest-path distance between `u` and `v`.
    pub weight: Weight,
}

/// The intermediate objects of the four approximation steps, kept so that
/// callers can audit the weight accounting `ω(P) = ω(R ∪ T) + ω(M)` and
/// the evenness of the parity set.
#[derive(Debug, Clone)]
pub struct ApproxTrace {
    /// Step 1: minimum connector joining the required edges and endpoints.
    pub connector: Vec<ClosurePair>,
    /// Step 2: vertices needing a parity fix (even size by construction).
    pub parity_set: Vec<VertexId>,
    /// Step 3: minimum-weight perfect matching on the parity set.
    pub matching: Vec<ClosurePair>,
    /// Total weight of the required edges.
    pub required_weight: Weight,
    /// Dummy source spliced in when the instance has `s = t`; its id is one
    /// past the host graph's vertices.
    pub dummy_source: Option<VertexId>,
}

impl ApproxTrace {
    pub fn connector_weight(&self) -> Weight {
        self.connector
            .iter()
            .fold(0, |acc, p| acc.checked_add(p.weight).expect("weight overflow"))
    }

    pub fn matching_weight(&self) -> Weight {
        self.matching
            .iter()
            .fold(0, |acc, p| acc.checked_add(p.weight).expect("weight overflow"))
    }
}

/// Runs the four-step approximation. The returned walk runs from
/// `inst.source` to `inst.target`, covers all required edges, and weighs
/// at most 5/3 of the optimum.
pub fn solve_strpp_approx(inst: &StRppInstance) -> Result<(Walk, ApproxTrace), SolveError> {
    inst.check_feasible()?;

    // The path-shaped analysis needs distinct endpoints; splice in a dummy
    // source joined to the target by a zero-weight edge when they agree.
    let augmented;
    let (g, source, dummy): (&WeightedGraph, VertexId, Option<(VertexId, EdgeId)>) =
        if inst.source == inst.target {
            let dummy_vertex = inst.graph.vertex_count();
            augmented = inst
                .graph
                .augmented(1, &[(dummy_vertex, inst.target, 0)])?;
            let dummy_edge = augmented.edge_count() - 1;
            (&augmented, dummy_vertex, Some((dummy_vertex, dummy_edge)))
        } else {
            (inst.graph, inst.source, None)
        };
    let target = inst.target;

    let mut terminals: BTreeSet<VertexId> = BTreeSet::new();
    for &e in &inst.required {
        let edge = g.edge(e);
        terminals.insert(edge.u);
        terminals.insert(edge.v);
    }
    terminals.insert(source);
    terminals.insert(target);
    let closure = metric_closure(g, &terminals)?;
    let source_ix = closure.index_of(source).expect("source is a terminal");
    let target_ix = closure.index_of(target).expect("target is a terminal");

    // Map the required edges onto closure pairs. The pair's closure weight
    // is the distance, which may undercut the edge's own weight; coverage
    // is preserved by expanding the first traversal of each required pair
    // to the edge itself.
    let mut required_pair: BTreeMap<EdgeId, EdgeId> = BTreeMap::new(); // closure edge -> host edge
    let mut required_closure_ids: BTreeSet<EdgeId> = BTreeSet::new();
    for &e in &inst.required {
        let edge = g.edge(e);
        let i = closure.index_of(edge.u).expect("required endpoints are terminals");
        let j = closure.index_of(edge.v).expect("required endpoints are terminals");
        let cid = closure.edge_between(i, j).expect("closure is complete");
        required_pair.insert(cid, e);
        required_closure_ids.insert(cid);
    }

    // Step 1: cheapest connector making R ∪ T span all terminals.
    let connector = spanning_connector(&closure.graph, &required_closure_ids)?;

    // Step 2: parity set S — vertices outside {s,t} imbalanced in R ∪ T,
    // plus whichever of s,t is balanced there.
    let mut degree = vec![0usize; closure.terminals.len()];
    for &cid in required_closure_ids.iter().chain(connector.iter()) {
        let e = closure.graph.edge(cid);
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    let parity_set: Vec<usize> = (0..closure.terminals.len())
        .filter(|&v| {
            let odd = degree[v] % 2 == 1;
            if v == source_ix || v == target_ix {
                !odd
            } else {
                odd
            }
        })
        .collect();
    debug_assert_eq!(parity_set.len() % 2, 0, "parity set must be even");

    // Step 3: minimum-weight perfect matching on S under closure distances.
    let weights: Vec<Vec<Weight>> = parity_set
        .iter()
        .map(|&a| parity_set.iter().map(|&b| closure.distance(a, b)).collect())
        .collect();
    let matching = min_weight_perfect_matching(&weights)?;

    // Step 4: Euler walk of R ⊎ T ⊎ M from s to t on the closure.
    let mut multiset = EdgeMultiset::new();
    for &cid in &required_closure_ids {
        multiset.insert(cid, 1);
    }
    for &cid in &connector {
        multiset.insert(cid, 1);
    }
    let mut matching_pairs = Vec::with_capacity(matching.len());
    for &(a, b) in &matching {
        let (i, j) = (parity_set[a], parity_set[b]);
        let cid = closure.edge_between(i, j).expect("closure is complete");
        multiset.insert(cid, 1);
        matching_pairs.push((i, j));
    }
    let closure_walk = euler_walk(&closure.graph, &multiset, source_ix, target_ix)?;

    // Expand closure traversals into the host graph. The first traversal
    // of a required pair becomes the required edge itself; everything else
    // becomes a shortest path.
    let mut pending_required = required_pair.clone();
    let mut walk = Walk::trivial(source);
    let mut at_ix = source_ix;
    for &(cid, next_ix) in closure_walk.steps() {
        if let Some(host_edge) = pending_required.remove(&cid) {
            let e = g.edge(host_edge);
            let from = closure.terminals[at_ix];
            let to = e.other(from).expect("required pair matches its endpoints");
            debug_assert_eq!(to, closure.terminals[next_ix]);
            walk.extend(
                &Walk::from_steps(g, from, vec![(host_edge, to)])
                    .expect("required edge joins its endpoints"),
            );
        } else {
            walk.extend(&closure.expand(g, at_ix, next_ix));
        }
        at_ix = next_ix;
    }

    let trace = ApproxTrace {
        connector: connector
            .iter()
            .map(|&cid| host_pair(&closure, cid))
            .collect(),
        parity_set: parity_set.iter().map(|&i| closure.terminals[i]).collect(),
        matching: matching_pairs
            .iter()
            .map(|&(i, j)| ClosurePair {
                u: closure.terminals[i],
                v: closure.terminals[j],
                weight: closure.distance(i, j),
            })
            .collect(),
        required_weight: inst
            .required
            .iter()
            .fold(0, |acc, &e| {
                acc.checked_add(g.edge(e).weight).expect("weight overflow")
            }),
        dummy_source: dummy.map(|(v, _)| v),
    };

    let walk = match dummy {
        Some((_, dummy_edge)) => strip_dummy(inst.graph, &walk, dummy_edge, inst.target),
        None => walk,
    };
    debug_assert!(inst.covers(&walk));
    Ok((walk, trace))
}

fn host_pair(closure: &crate::graph::MetricClosure, cid: EdgeId) -> ClosurePair {
    let e = closure.graph.edge(cid);
    ClosurePair {
        u: closure.terminals[e.u],
        v: closure.terminals[e.v],
        weight: e.weight,
    }
}

/// Removes every traversal of the zero-weight dummy edge. The dummy
/// vertex has degree one, so dropping its steps leaves a contiguous
/// closed walk rooted at the real endpoint.
fn strip_dummy(host: &WeightedGraph, walk: &Walk, dummy_edge: EdgeId, root: VertexId) -> Walk {
    let steps: Vec<(EdgeId, VertexId)> = walk
        .steps()
        .iter()
        .filter(|&&(e, _)| e != dummy_edge)
        .copied()
        .collect();
    Walk::from_steps(host, root, steps).expect("stripping dummy steps keeps the walk contiguous")
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
    fn eulerian_triangle_needs_no_extras() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let inst = StRppInstance::new(&g, 0..3, 0, 0);
        let (walk, trace) = solve_strpp_approx(&inst).unwrap();
        assert_eq!(walk.weight(&g), 3);
        assert!(walk.is_closed());
        assert!(trace.matching.is_empty());
    }

    #[test]
    fn layered_example_second_class_from_b_to_a() {
        // Graph restricted to the first two classes; required = second class.
        let g = gstar();
        let sub: BTreeSet<EdgeId> = [0, 1, 2, 3].into_iter().collect();
        let (restricted, back) = g.edge_subgraph(&sub);
        let required = (0..back.len()).filter(|&i| back[i] != 0);
        let inst = StRppInstance::new(&restricted, required, 1, 0);
        let (walk, trace) = solve_strpp_approx(&inst).unwrap();
        assert_eq!(walk.weight(&restricted), 10);
        assert!(inst.covers(&walk));
        // Here the required edges are connected, so approx equals exact and
        // the accounting identity is easy to eyeball: R=8, T=2, M=0.
        assert_eq!(trace.required_weight, 8);
        assert_eq!(trace.connector_weight(), 2);
        assert_eq!(trace.matching_weight(), 0);
    }

    #[test]
    fn weight_matches_step_accounting() {
        let g = gstar();
        let inst = StRppInstance::new(&g, [1, 5], 0, 2);
        let (walk, trace) = solve_strpp_approx(&inst).unwrap();
        assert_eq!(
            walk.weight(&g),
            trace.required_weight + trace.connector_weight() + trace.matching_weight()
        );
        assert_eq!(trace.parity_set.len() % 2, 0);
        assert!(inst.covers(&walk));
    }

    #[test]
    fn empty_required_reduces_to_shortest_path() {
        let g = gstar();
        let inst = StRppInstance::new(&g, [], 0, 2);
        let (walk, _) = solve_strpp_approx(&inst).unwrap();
        assert_eq!(walk.weight(&g), 6);
    }

    #[test]
    fn coincident_endpoints_use_the_dummy_source() {
        let g = gstar();
        let inst = StRppInstance::new(&g, [2], 0, 0);
        let (walk, trace) = solve_strpp_approx(&inst).unwrap();
        assert!(walk.is_closed());
        assert_eq!(walk.start(), 0);
        assert!(inst.covers(&walk));
        assert_eq!(trace.dummy_source, Some(5));
    }

    #[test]
    fn infeasible_instance_is_reported() {
        let g = WeightedGraph::new(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        let inst = StRppInstance::new(&g, [1], 0, 0);
        assert!(matches!(
            solve_strpp_approx(&inst),
            Err(SolveError::Infeasible(0, _))
        ));
    }
}
