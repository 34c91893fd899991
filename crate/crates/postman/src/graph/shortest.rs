//! Single-source shortest paths and the metric closure of a terminal set.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use super::{add_weights, EdgeId, GraphError, VertexId, Walk, Weight, WeightedGraph};

/// Result of a single-source Dijkstra run.
///
/// Predecessors are tie-broken by lexicographically smallest
/// `(vertex, edge)` pair, so the shortest-path tree is deterministic.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub source: VertexId,
    dist: Vec<Option<Weight>>,
    pred: Vec<Option<(VertexId, EdgeId)>>,
}

impl ShortestPaths {
    /// Distance to `v`, or `None` if unreachable.
    pub fn distance(&self, v: VertexId) -> Option<Weight> {
        self.dist.get(v).copied().flatten()
    }

    pub fn predecessor(&self, v: VertexId) -> Option<(VertexId, EdgeId)> {
        self.pred.get(v).copied().flatten()
    }

    /// The shortest walk from the source to `v`, or `None` if unreachable.
    pub fn walk_to(&self, g: &WeightedGraph, v: VertexId) -> Option<Walk> {
        self.distance(v)?;
        let mut rev_steps = Vec::new();
        let mut at = v;
        while at != self.source {
            let (prev, eid) = self.pred[at].expect("reachable vertex has a predecessor");
            rev_steps.push((eid, at));
            at = prev;
        }
        rev_steps.reverse();
        Some(
            Walk::from_steps(g, self.source, rev_steps)
                .expect("predecessor chain forms a valid walk"),
        )
    }
}

/// Dijkstra from `source`, optionally restricted to a subset of edges.
///
/// Requires non-negative weights (guaranteed by the `Weight` type).
pub fn shortest_paths(
    g: &WeightedGraph,
    source: VertexId,
    allowed: Option<&BTreeSet<EdgeId>>,
) -> Result<ShortestPaths, GraphError> {
    if source >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(source));
    }
    let n = g.vertex_count();
    let mut dist: Vec<Option<Weight>> = vec![None; n];
    let mut pred: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(Weight, VertexId)>> = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for &(eid, v) in g.incident(u) {
            if allowed.is_some_and(|set| !set.contains(&eid)) {
                continue;
            }
            if settled[v] {
                continue;
            }
            let nd = add_weights(d, g.edge(eid).weight);
            match dist[v] {
                Some(old) if nd > old => {}
                Some(old) if nd == old => {
                    // Equal-length path: prefer the smaller predecessor.
                    if pred[v].is_none_or(|p| (u, eid) < p) {
                        pred[v] = Some((u, eid));
                    }
                }
                _ => {
                    dist[v] = Some(nd);
                    pred[v] = Some((u, eid));
                    heap.push(Reverse((nd, v)));
                }
            }
        }
    }
    Ok(ShortestPaths { source, dist, pred })
}

/// The metric closure of `g` over a terminal set: a complete graph on the
/// terminals whose edge weights are shortest-path distances in `g`,
/// together with enough information to expand each closure edge back into
/// a walk of `g`.
#[derive(Debug, Clone)]
pub struct MetricClosure {
    /// Terminals in ascending host-vertex order; closure vertex `i`
    /// corresponds to `terminals[i]`.
    pub terminals: Vec<VertexId>,
    /// Complete graph on `terminals.len()` vertices with distance weights.
    pub graph: WeightedGraph,
    trees: Vec<ShortestPaths>,
}

impl MetricClosure {
    /// Closure index of a host vertex.
    pub fn index_of(&self, host: VertexId) -> Option<usize> {
        self.terminals.binary_search(&host).ok()
    }

    /// Shortest-path distance between terminals `i` and `j` (closure ids).
    pub fn distance(&self, i: usize, j: usize) -> Weight {
        if i == j {
            return 0;
        }
        self.trees[i]
            .distance(self.terminals[j])
            .expect("closure terminals are mutually reachable")
    }

    /// The closure edge joining terminals `i` and `j`.
    pub fn edge_between(&self, i: usize, j: usize) -> Option<EdgeId> {
        self.graph.edge_between(i, j)
    }

    /// Expands the closure pair `(i, j)` to a host-graph walk from
    /// `terminals[i]` to `terminals[j]` of weight exactly `distance(i, j)`.
    pub fn expand(&self, g: &WeightedGraph, i: usize, j: usize) -> Walk {
        if i == j {
            return Walk::trivial(self.terminals[i]);
        }
        self.trees[i]
            .walk_to(g, self.terminals[j])
            .expect("closure terminals are mutually reachable")
    }
}

/// Builds the metric closure of `g` on `terminals`.
///
/// Fails with the offending pair if any two terminals are disconnected.
pub fn metric_closure(
    g: &WeightedGraph,
    terminals: &BTreeSet<VertexId>,
) -> Result<MetricClosure, GraphError> {
    let terminals: Vec<VertexId> = terminals.iter().copied().collect();
    if let Some(&v) = terminals.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(GraphError::UnknownVertex(v));
    }
    let trees: Vec<ShortestPaths> = terminals
        .iter()
        .map(|&t| shortest_paths(g, t, None))
        .collect::<Result<_, _>>()?;
    let mut edges = Vec::new();
    for i in 0..terminals.len() {
        for j in (i + 1)..terminals.len() {
            let d = trees[i]
                .distance(terminals[j])
                .ok_or(GraphError::DisconnectedPair(terminals[i], terminals[j]))?;
            edges.push((i, j, d));
        }
    }
    let graph = WeightedGraph::new(terminals.len(), &edges)
        .expect("complete closure graph is simple");
    Ok(MetricClosure {
        terminals,
        graph,
        trees,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::gstar_graph;
    use super::*;

    #[test]
    fn dijkstra_on_restricted_subgraph() {
        // First two edge classes of the layered example: edges 0..=3.
        let g = gstar_graph();
        let allowed: BTreeSet<EdgeId> = [0, 1, 2, 3].into_iter().collect();
        let sp = shortest_paths(&g, 1, Some(&allowed)).unwrap();
        assert_eq!(sp.distance(0), Some(2));
        assert_eq!(sp.distance(2), Some(4)); // b-c direct and b-d-c tie at 4
        assert_eq!(sp.distance(3), Some(1));
        assert_eq!(sp.distance(4), None); // e needs an excluded edge
    }

    #[test]
    fn dijkstra_trivial_and_unknown_source() {
        let g = WeightedGraph::new(1, &[]).unwrap();
        let sp = shortest_paths(&g, 0, None).unwrap();
        assert_eq!(sp.distance(0), Some(0));
        assert!(shortest_paths(&g, 3, None).is_err());
    }

    #[test]
    fn closure_on_unit_path() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let terminals: BTreeSet<VertexId> = [0, 1, 2].into_iter().collect();
        let mc = metric_closure(&g, &terminals).unwrap();
        assert_eq!(mc.distance(0, 1), 1);
        assert_eq!(mc.distance(1, 2), 1);
        assert_eq!(mc.distance(0, 2), 2);
        let w = mc.expand(&g, 0, 2);
        assert_eq!(w.vertices(), vec![0, 1, 2]);
        assert_eq!(w.weight(&g), 2);
    }

    #[test]
    fn closure_of_single_terminal_is_empty() {
        let g = gstar_graph();
        let terminals: BTreeSet<VertexId> = [2].into_iter().collect();
        let mc = metric_closure(&g, &terminals).unwrap();
        assert_eq!(mc.graph.vertex_count(), 1);
        assert_eq!(mc.graph.edge_count(), 0);
    }

    #[test]
    fn closure_reports_disconnected_pair() {
        let g = WeightedGraph::new(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        let terminals: BTreeSet<VertexId> = [0, 2].into_iter().collect();
        assert_eq!(
            metric_closure(&g, &terminals).unwrap_err(),
            GraphError::DisconnectedPair(0, 2)
        );
    }
}
