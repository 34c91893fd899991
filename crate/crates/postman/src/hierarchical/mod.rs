//! Postman tours under a precedence order on edge classes.
//!
//! An instance partitions the edges into classes with a partial order; a
//! feasible tour is a closed walk covering every edge in which each edge is
//! traversed only after all classes preceding its own class are fully
//! covered. Linearly ordered instances are solved through a layered
//! digraph whose arcs carry sub-solver walks; general partial orders are
//! accepted by the data model and the validator but rejected by the
//! solver, which would otherwise face an NP-hard problem even for
//! near-linear orders.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{EdgeId, GraphError, VertexId, Walk, Weight, WeightedGraph};
use crate::strpp::SolveError;

mod dag;
mod solve;
mod validate;

pub use dag::{build_layered_dag, build_layered_dag_threaded, DagArc, LayeredDag};
pub use solve::{
    assemble_walk, best_layer_path, check_feasibility, class_component_stats, solve_hcppl,
    ClassStats, HcppSolution, LayerPath, SolveMode, SolveStats,
};
pub use validate::{validate_walk, Violation, WalkVerdict};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HcppError {
    #[error("edge {0} appears in multiple classes or none")]
    BadPartition(EdgeId),
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("class order contains a cycle through class {0}")]
    CyclicOrder(usize),
    #[error("class id {0} is out of range")]
    UnknownClass(usize),
    #[error("general partial orders are NP-hard to solve; only linear orders are supported")]
    PartialOrderUnsupported,
    #[error("class {class} induces {components} components; exact-connected mode needs 1")]
    ClassNotConnected { class: usize, components: usize },
    #[error("class {class} has {size} edges, above the oracle limit of {limit}")]
    ClassTooLarge {
        class: usize,
        size: usize,
        limit: usize,
    },
    #[error("instance is infeasible: the layered digraph admits no layer path")]
    Infeasible,
    #[error("sub-solver failed on arc ({u}, {v}) of layer {layer}: {source}")]
    SubSolver {
        u: VertexId,
        v: VertexId,
        layer: usize,
        source: SolveError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Precedence structure on class ids `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassOrder {
    /// `E_i ≺ E_j` iff `i < j`.
    Linear,
    /// Explicit strict relations `(before, after)`, closed transitively.
    Partial(Vec<(usize, usize)>),
}

/// A hierarchical postman instance: a graph, a partition of its edges into
/// nonempty classes, and a partial order on the classes.
#[derive(Debug, Clone)]
pub struct HcppInstance {
    pub graph: WeightedGraph,
    classes: Vec<BTreeSet<EdgeId>>,
    order: ClassOrder,
    /// `predecessors[c]` = classes strictly preceding `c` (transitive).
    predecessors: Vec<BTreeSet<usize>>,
}

impl HcppInstance {
    /// Validates that `classes` partitions the edges exactly, that every
    /// class is nonempty, and that the order relation is acyclic.
    pub fn new(
        graph: WeightedGraph,
        classes: Vec<BTreeSet<EdgeId>>,
        order: ClassOrder,
    ) -> Result<Self, HcppError> {
        let mut owner = vec![usize::MAX; graph.edge_count()];
        for (c, members) in classes.iter().enumerate() {
            if members.is_empty() {
                return Err(HcppError::EmptyClass(c));
            }
            for &e in members {
                if e >= graph.edge_count() || owner[e] != usize::MAX {
                    return Err(HcppError::BadPartition(e));
                }
                owner[e] = c;
            }
        }
        if let Some(e) = owner.iter().position(|&c| c == usize::MAX) {
            return Err(HcppError::BadPartition(e));
        }
        let predecessors = compute_predecessors(classes.len(), &order)?;
        Ok(Self {
            graph,
            classes,
            order,
            predecessors,
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[BTreeSet<EdgeId>] {
        &self.classes
    }

    pub fn class_edges(&self, c: usize) -> &BTreeSet<EdgeId> {
        &self.classes[c]
    }

    pub fn order(&self) -> &ClassOrder {
        &self.order
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.order, ClassOrder::Linear)
    }

    /// The class of an edge.
    pub fn class_of(&self, e: EdgeId) -> usize {
        self.classes
            .iter()
            .position(|members| members.contains(&e))
            .expect("every edge belongs to a class")
    }

    /// Classes strictly preceding `c` under the transitive closure.
    pub fn predecessors_of(&self, c: usize) -> &BTreeSet<usize> {
        &self.predecessors[c]
    }

    /// Edges of classes `0..=i` (linear-order prefix).
    pub fn prefix_edges(&self, i: usize) -> BTreeSet<EdgeId> {
        self.classes[..=i]
            .iter()
            .flat_map(|members| members.iter().copied())
            .collect()
    }

    /// Vertices incident to a class's edges, ascending.
    pub fn class_vertices(&self, c: usize) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for &e in &self.classes[c] {
            let edge = self.graph.edge(e);
            out.insert(edge.u);
            out.insert(edge.v);
        }
        out
    }

    pub fn max_weight(&self) -> Weight {
        self.graph.max_weight()
    }
}

fn compute_predecessors(
    k: usize,
    order: &ClassOrder,
) -> Result<Vec<BTreeSet<usize>>, HcppError> {
    match order {
        ClassOrder::Linear => Ok((0..k).map(|c| (0..c).collect()).collect()),
        ClassOrder::Partial(relations) => {
            let mut direct: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
            for &(before, after) in relations {
                if before >= k {
                    return Err(HcppError::UnknownClass(before));
                }
                if after >= k {
                    return Err(HcppError::UnknownClass(after));
                }
                if before == after {
                    return Err(HcppError::CyclicOrder(before));
                }
                direct[after].insert(before);
            }
            // Transitive closure by DFS from each class, with cycle check.
            let mut closed: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
            for c in 0..k {
                let mut stack: Vec<usize> = direct[c].iter().copied().collect();
                let mut seen = BTreeSet::new();
                while let Some(p) = stack.pop() {
                    if p == c {
                        return Err(HcppError::CyclicOrder(c));
                    }
                    if seen.insert(p) {
                        stack.extend(direct[p].iter().copied());
                    }
                }
                closed[c] = seen;
            }
            Ok(closed)
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The five-vertex, three-class layered example: classes
    /// E1 = {a-b}, E2 = {b-d, d-c, c-b}, E3 = {b-e, e-a}.
    pub(crate) fn gstar_instance() -> HcppInstance {
        let graph = WeightedGraph::new(
            5,
            &[(0, 1, 2), (1, 3, 1), (3, 2, 3), (2, 1, 4), (1, 4, 1), (4, 0, 2)],
        )
        .unwrap();
        let classes = vec![
            [0].into_iter().collect(),
            [1, 2, 3].into_iter().collect(),
            [4, 5].into_iter().collect(),
        ];
        HcppInstance::new(graph, classes, ClassOrder::Linear).unwrap()
    }

    #[test]
    fn partition_must_be_exact() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let missing = vec![[0].into_iter().collect()];
        assert_eq!(
            HcppInstance::new(g.clone(), missing, ClassOrder::Linear).unwrap_err(),
            HcppError::BadPartition(1)
        );
        let doubled = vec![[0, 1].into_iter().collect(), [1].into_iter().collect()];
        assert_eq!(
            HcppInstance::new(g.clone(), doubled, ClassOrder::Linear).unwrap_err(),
            HcppError::BadPartition(1)
        );
        let empty = vec![[0, 1].into_iter().collect(), BTreeSet::new()];
        assert_eq!(
            HcppInstance::new(g, empty, ClassOrder::Linear).unwrap_err(),
            HcppError::EmptyClass(1)
        );
    }

    #[test]
    fn partial_orders_close_transitively_and_reject_cycles() {
        let g = WeightedGraph::new(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let classes: Vec<BTreeSet<EdgeId>> = (0..3).map(|e| [e].into_iter().collect()).collect();
        let inst = HcppInstance::new(
            g.clone(),
            classes.clone(),
            ClassOrder::Partial(vec![(0, 1), (1, 2)]),
        )
        .unwrap();
        assert_eq!(
            inst.predecessors_of(2).iter().copied().collect::<Vec<_>>(),
            vec![0, 1]
        );
        assert!(inst.predecessors_of(0).is_empty());

        let err = HcppInstance::new(
            g,
            classes,
            ClassOrder::Partial(vec![(0, 1), (1, 0)]),
        )
        .unwrap_err();
        assert!(matches!(err, HcppError::CyclicOrder(_)));
    }
}
