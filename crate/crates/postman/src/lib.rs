//! Solvers for postman-style arc routing problems on undirected graphs
//! with non-negative integer edge weights.
//!
//! The crate is organized in four layers:
//!
//! * [`graph`] — weighted graphs, edge multisets, walks, and the exact
//!   primitives everything else is built from: shortest paths, metric
//!   closure, Euler walks, minimum spanning connectors, minimum-weight
//!   perfect matching, and minimum T-joins.
//! * [`strpp`] — the Chinese Postman solver, a 5/3-approximation for the
//!   s-t rural postman path problem, exact enumeration oracles, an exact
//!   solver for connected required-edge sets, and the reduction from the
//!   path variant to the closed-walk variant.
//! * [`hierarchical`] — postman tours under a precedence order on edge
//!   classes: walk validation, the layered digraph whose arcs are
//!   sub-solver walks, and the assembled solvers (approximate and exact).
//! * [`gadget`] — a 3-SAT reduction that emits hierarchical instances with
//!   one incomparable class, together with structural checks and a
//!   constructor that turns a satisfying assignment into a tight tour.
//!
//! All weights are integers and all tie-breaks are resolved by smallest
//! vertex or edge id, so every solver is deterministic and safe to call
//! from multiple threads.

pub mod gadget;
pub mod graph;
pub mod hierarchical;
pub mod strpp;
