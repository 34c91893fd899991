//! Postman solvers on a weighted graph: the exact Chinese Postman tour, a
//! 5/3-approximation for the s-t rural postman path problem, exact
//! enumeration oracles for the path and closed-walk variants, an exact
//! solver for connected required-edge sets, and the reduction from the
//! path variant to the closed-walk variant.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{
    euler_walk, min_t_join, EdgeId, EdgeMultiset, GraphError, VertexId, Walk,
    WeightedGraph,
};

mod approx;
mod connected;
mod oracle;
mod reduction;

pub use approx::{solve_strpp_approx, ApproxTrace, ClosurePair};
pub use connected::solve_strpp_connected_exact;
pub use oracle::{solve_rpp_oracle, solve_strpp_oracle, DEFAULT_ORACLE_LIMIT};
pub use reduction::{reduce_strpp_to_rpp, RppBackMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance is infeasible: {0} and {1} lie in different components")]
    Infeasible(VertexId, VertexId),
    #[error("{count} required edges exceed the oracle limit of {limit}")]
    TooManyRequired { count: usize, limit: usize },
    #[error("required edge set induces {0} components; this solver needs a connected one")]
    RequiredNotConnected(usize),
    #[error("closed walk traverses the reduction edge {edge} {count} times instead of once")]
    ReductionEdgeMisuse { edge: EdgeId, count: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An s-t rural postman path instance: find a minimum-weight walk from
/// `source` to `target` traversing every edge of `required`.
#[derive(Debug, Clone)]
pub struct StRppInstance<'g> {
    pub graph: &'g WeightedGraph,
    pub required: BTreeSet<EdgeId>,
    pub source: VertexId,
    pub target: VertexId,
}

impl<'g> StRppInstance<'g> {
    pub fn new(
        graph: &'g WeightedGraph,
        required: impl IntoIterator<Item = EdgeId>,
        source: VertexId,
        target: VertexId,
    ) -> Self {
        Self {
            graph,
            required: required.into_iter().collect(),
            source,
            target,
        }
    }

    /// Vertices that any solution must visit: `V(R) ∪ {s, t}`.
    pub fn terminals(&self) -> BTreeSet<VertexId> {
        let mut t = BTreeSet::new();
        for &e in &self.required {
            let edge = self.graph.edge(e);
            t.insert(edge.u);
            t.insert(edge.v);
        }
        t.insert(self.source);
        t.insert(self.target);
        t
    }

    /// Feasibility: all terminals in one connected component.
    pub fn check_feasible(&self) -> Result<(), SolveError> {
        let sp = crate::graph::shortest_paths(self.graph, self.source, None)?;
        for v in self.terminals() {
            if sp.distance(v).is_none() {
                return Err(SolveError::Infeasible(self.source, v));
            }
        }
        Ok(())
    }

    /// Checks that `walk` is a solution: correct endpoints and every
    /// required edge traversed at least once.
    pub fn covers(&self, walk: &Walk) -> bool {
        if walk.start() != self.source || walk.end() != self.target {
            return false;
        }
        let ms = walk.edge_multiset();
        self.required.iter().all(|&e| ms.multiplicity(e) >= 1)
    }
}

/// A rural postman (closed walk) instance on its own graph.
#[derive(Debug, Clone)]
pub struct RppInstance {
    pub graph: WeightedGraph,
    pub required: BTreeSet<EdgeId>,
}

/// Exact Chinese Postman tour: a minimum-weight closed walk traversing
/// every edge of `g` at least once.
///
/// The doubled edges are a minimum T-join over the odd-degree vertices, so
/// the tour weight is `ω(E)` plus the join weight, which is optimal. The
/// tour starts at the smallest non-isolated vertex. An edgeless graph
/// yields the empty walk at vertex 0.
pub fn solve_cpp_exact(g: &WeightedGraph) -> Result<Walk, SolveError> {
    if g.edge_count() == 0 {
        return Ok(Walk::trivial(0));
    }
    let comps = crate::graph::connected_components(g, None);
    if comps.len() > 1 {
        return Err(SolveError::Infeasible(comps[0][0], comps[1][0]));
    }
    let all = EdgeMultiset::from_edges(0..g.edge_count());
    let odd = all.odd_vertices(g);
    let join = min_t_join(g, &odd)?;
    let tour_edges = all.union(&join);
    let start = comps[0][0];
    Ok(euler_walk(g, &tour_edges, start, start)?)
}
