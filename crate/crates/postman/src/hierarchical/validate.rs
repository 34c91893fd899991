//! Feasibility checking of candidate tours against the precedence order.

use crate::graph::{EdgeId, GraphError, Walk};

use super::{HcppError, HcppInstance};

/// Why a walk is not a feasible tour. The reported violation is the first
/// one encountered: closedness, then coverage (smallest missing edge),
/// then the earliest precedence-violating step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotClosed,
    /// An edge of the graph never traversed.
    MissingEdge(EdgeId),
    /// Edge `edge` of `class` traversed at `step` (1-based) while
    /// `blocking_class ≺ class` was not yet fully covered.
    OrderViolation {
        step: usize,
        edge: EdgeId,
        class: usize,
        blocking_class: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotClosed => write!(f, "walk is not closed"),
            Violation::MissingEdge(e) => write!(f, "edge {e} is never traversed"),
            Violation::OrderViolation {
                step,
                edge,
                class,
                blocking_class,
            } => write!(
                f,
                "step {step}: edge {edge} of class {class} traversed before class {blocking_class} was completed"
            ),
        }
    }
}

/// The validator's verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkVerdict {
    pub violation: Option<Violation>,
}

impl WalkVerdict {
    pub fn feasible(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `walk` is a feasible tour for `inst`: closed, covering
/// every edge, and traversing each edge only after all classes preceding
/// its class are fully covered. Works for arbitrary partial orders.
///
/// The walk must be structurally valid in `inst.graph`; walks referring to
/// unknown edges are an input error, not a verdict.
pub fn validate_walk(inst: &HcppInstance, walk: &Walk) -> Result<WalkVerdict, HcppError> {
    // Re-check the steps against the instance graph so that walks built
    // elsewhere cannot smuggle in foreign edge ids.
    let mut at = walk.start();
    if at >= inst.graph.vertex_count() {
        return Err(HcppError::Graph(GraphError::UnknownVertex(at)));
    }
    for (i, &(e, v)) in walk.steps().iter().enumerate() {
        if e >= inst.graph.edge_count() {
            return Err(HcppError::Graph(GraphError::UnknownEdge(e)));
        }
        if inst.graph.edge(e).other(at) != Some(v) {
            return Err(HcppError::Graph(GraphError::InvalidWalkStep {
                step: i,
                edge: e,
                from: at,
                to: v,
            }));
        }
        at = v;
    }

    if !walk.is_closed() {
        return Ok(WalkVerdict {
            violation: Some(Violation::NotClosed),
        });
    }

    let coverage = walk.edge_multiset();
    for e in 0..inst.graph.edge_count() {
        if coverage.multiplicity(e) == 0 {
            return Ok(WalkVerdict {
                violation: Some(Violation::MissingEdge(e)),
            });
        }
    }

    // Scan traversals in order, tracking how many edges of each class have
    // been covered so far. A step is legal only if all predecessor classes
    // are already complete.
    let edge_class: Vec<usize> = (0..inst.graph.edge_count())
        .map(|e| inst.class_of(e))
        .collect();
    let mut covered = vec![0usize; inst.class_count()];
    let mut seen = vec![false; inst.graph.edge_count()];
    for (i, &(e, _)) in walk.steps().iter().enumerate() {
        let class = edge_class[e];
        for &p in inst.predecessors_of(class) {
            if covered[p] < inst.class_edges(p).len() {
                return Ok(WalkVerdict {
                    violation: Some(Violation::OrderViolation {
                        step: i + 1,
                        edge: e,
                        class,
                        blocking_class: p,
                    }),
                });
            }
        }
        if !seen[e] {
            seen[e] = true;
            covered[class] += 1;
        }
    }
    Ok(WalkVerdict { violation: None })
}

#[cfg(test)]
mod tests {
    use super::super::tests::gstar_instance;
    use super::*;
    use crate::graph::{Walk, WeightedGraph};
    use crate::hierarchical::{ClassOrder, HcppInstance};

    #[test]
    fn single_class_accepts_any_covering_tour() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let inst = HcppInstance::new(
            g,
            vec![(0..3).collect()],
            ClassOrder::Linear,
        )
        .unwrap();
        let walk = Walk::from_vertices(&inst.graph, &[0, 1, 2, 0]).unwrap();
        assert!(validate_walk(&inst, &walk).unwrap().feasible());
    }

    #[test]
    fn layered_example_tour_is_accepted() {
        // a-b | b-d-c-b | b-e-a: classes in order, weight 13.
        let inst = gstar_instance();
        let walk = Walk::from_vertices(&inst.graph, &[0, 1, 3, 2, 1, 4, 0]).unwrap();
        assert_eq!(walk.weight(&inst.graph), 13);
        assert!(validate_walk(&inst, &walk).unwrap().feasible());
    }

    #[test]
    fn early_class_three_edge_is_rejected() {
        // Take b-e (class 3) before finishing class 2.
        let inst = gstar_instance();
        let walk =
            Walk::from_vertices(&inst.graph, &[0, 1, 4, 1, 3, 2, 1, 4, 0]).unwrap();
        let verdict = validate_walk(&inst, &walk).unwrap();
        assert_eq!(
            verdict.violation,
            Some(Violation::OrderViolation {
                step: 3,
                edge: 4,
                class: 2,
                blocking_class: 1,
            })
        );
    }

    #[test]
    fn open_and_non_covering_walks_are_rejected() {
        let inst = gstar_instance();
        let open = Walk::from_vertices(&inst.graph, &[0, 1]).unwrap();
        assert_eq!(
            validate_walk(&inst, &open).unwrap().violation,
            Some(Violation::NotClosed)
        );
        let partial = Walk::from_vertices(&inst.graph, &[0, 1, 0]).unwrap();
        assert_eq!(
            validate_walk(&inst, &partial).unwrap().violation,
            Some(Violation::MissingEdge(1))
        );
    }

    #[test]
    fn foreign_edges_are_an_input_error() {
        let inst = gstar_instance();
        let other = WeightedGraph::new(9, &[(7, 8, 1)]).unwrap();
        let foreign = Walk::from_vertices(&other, &[7, 8]).unwrap();
        assert!(validate_walk(&inst, &foreign).is_err());
    }
}
