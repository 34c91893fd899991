//! Undirected weighted graphs, edge multisets, walks, and the exact
//! combinatorial primitives shared by all solvers.
//!
//! Vertices and edges are dense indices (`0..n`); callers that need named
//! vertices keep their own symbol table. All types are immutable after
//! construction and all operations are pure functions.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

mod euler;
mod matching;
mod shortest;
mod tjoin;

pub use euler::euler_walk;
pub use matching::min_weight_perfect_matching;
pub use shortest::{metric_closure, shortest_paths, MetricClosure, ShortestPaths};
pub use tjoin::min_t_join;

/// Dense vertex index into a [`WeightedGraph`].
pub type VertexId = usize;
/// Dense edge index into a [`WeightedGraph`].
pub type EdgeId = usize;
/// Non-negative integer edge weight.
///
/// Weight arithmetic throughout the crate is overflow-checked: sums that
/// would exceed `u64::MAX` panic instead of wrapping, since headroom
/// matters for reductions that scale weights by the total edge weight.
pub type Weight = u64;

/// Adds two weights, panicking on overflow.
pub(crate) fn add_weights(a: Weight, b: Weight) -> Weight {
    a.checked_add(b).expect("edge weight sum overflows u64")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(VertexId),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertices {0} and {1} are not connected")]
    DisconnectedPair(VertexId, VertexId),
    #[error("graph is not connected: no spanning connector exists")]
    NotSpannable,
    #[error("vertex set has odd size {0}; a perfect pairing needs an even count")]
    OddSetSize(usize),
    #[error("matching instance with {0} vertices exceeds the exact solver limit of {MATCHING_VERTEX_LIMIT}")]
    MatchingTooLarge(usize),
    #[error("vertex {0} has odd degree but is not a requested endpoint")]
    ImbalancedVertex(VertexId),
    #[error("edge multiset is disconnected; vertex {0} cannot reach vertex {1}")]
    DisconnectedMultiset(VertexId, VertexId),
    #[error("start vertex {0} is isolated in the edge multiset")]
    IsolatedEndpoint(VertexId),
    #[error("walk step {step}: edge {edge} does not join {from} and {to}")]
    InvalidWalkStep {
        step: usize,
        edge: EdgeId,
        from: VertexId,
        to: VertexId,
    },
}

/// Largest vertex count accepted by the exact matching solver.
pub const MATCHING_VERTEX_LIMIT: usize = 22;

/// An edge of a [`WeightedGraph`]: an unordered vertex pair with a weight.
///
/// Endpoints are stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

impl Edge {
    /// The endpoint opposite to `x`, or `None` if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }
}

/// A simple undirected graph with non-negative integer edge weights.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    edges: Vec<Edge>,
    /// Incident `(edge, other endpoint)` pairs per vertex, sorted by edge id.
    adjacency: Vec<Vec<(EdgeId, VertexId)>>,
}

impl WeightedGraph {
    /// Builds a graph on vertices `0..vertex_count` from an edge list.
    ///
    /// Rejects self-loops, duplicate edges, and endpoints out of range.
    pub fn new(
        vertex_count: usize,
        edge_list: &[(VertexId, VertexId, Weight)],
    ) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b, weight) in edge_list {
            if a >= vertex_count {
                return Err(GraphError::UnknownVertex(a));
            }
            if b >= vertex_count {
                return Err(GraphError::UnknownVertex(b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            let id = edges.len();
            edges.push(Edge { u, v, weight });
            adjacency[u].push((id, v));
            adjacency[v].push((id, u));
        }
        // Already sorted by edge id because ids are assigned in order,
        // but make the invariant explicit.
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident `(edge, neighbor)` pairs of `v`, sorted by edge id.
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adjacency[v]
    }

    /// The edge joining `u` and `v`, if present.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(_, w)| w == v)
            .map(|&(e, _)| e)
    }

    /// Total weight of all edges (overflow-checked).
    pub fn total_weight(&self) -> Weight {
        self.edges
            .iter()
            .fold(0, |acc, e| add_weights(acc, e.weight))
    }

    /// Largest edge weight, or 0 for an edgeless graph.
    pub fn max_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    /// A copy of this graph with extra fresh vertices and extra edges.
    ///
    /// New vertices get ids `n, n+1, ...`; new edges get ids `m, m+1, ...`.
    /// Used by reductions that splice in dummy sources.
    pub(crate) fn augmented(
        &self,
        extra_vertices: usize,
        extra_edges: &[(VertexId, VertexId, Weight)],
    ) -> Result<Self, GraphError> {
        let n = self.vertex_count() + extra_vertices;
        let mut list: Vec<(VertexId, VertexId, Weight)> = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.weight))
            .collect();
        list.extend_from_slice(extra_edges);
        Self::new(n, &list)
    }

    /// The subgraph keeping all vertices but only the given edges.
    ///
    /// Edge ids are re-assigned densely; the returned map sends each new
    /// edge id to its id in `self`.
    pub fn edge_subgraph(&self, keep: &BTreeSet<EdgeId>) -> (Self, Vec<EdgeId>) {
        let mut list = Vec::with_capacity(keep.len());
        let mut back = Vec::with_capacity(keep.len());
        for &id in keep {
            let e = &self.edges[id];
            list.push((e.u, e.v, e.weight));
            back.push(id);
        }
        let sub = Self::new(self.vertex_count(), &list)
            .expect("subgraph of a valid graph is valid");
        (sub, back)
    }
}

/// Connected components of the subgraph induced by an edge subset.
///
/// Returns the partition of the non-isolated vertices: every vertex
/// incident to at least one (restricted) edge. Components are sorted by
/// their smallest vertex id and members are sorted ascending.
pub fn connected_components(
    g: &WeightedGraph,
    restrict: Option<&BTreeSet<EdgeId>>,
) -> Vec<Vec<VertexId>> {
    let mut dsu = Dsu::new(g.vertex_count());
    let mut touched = vec![false; g.vertex_count()];
    let mut consider = |e: &Edge| {
        touched[e.u] = true;
        touched[e.v] = true;
        dsu.union(e.u, e.v);
    };
    match restrict {
        Some(ids) => {
            for &id in ids {
                consider(g.edge(id));
            }
        }
        None => {
            for e in g.edges() {
                consider(e);
            }
        }
    }
    let mut groups: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        if touched[v] {
            groups.entry(dsu.find(v)).or_default().push(v);
        }
    }
    let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Minimum-weight edge set `T` such that `required ∪ T` spans and connects
/// all vertices of `g`.
///
/// Kruskal over all edges, with the required edges' components pre-merged.
/// Ties are broken by smallest edge id. Fails if `g` itself cannot be
/// spanned.
pub fn spanning_connector(
    g: &WeightedGraph,
    required: &BTreeSet<EdgeId>,
) -> Result<Vec<EdgeId>, GraphError> {
    let mut dsu = Dsu::new(g.vertex_count());
    let mut components = g.vertex_count();
    for &id in required {
        let e = g.edge(id);
        if dsu.union(e.u, e.v) {
            components -= 1;
        }
    }
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by_key(|&id| (g.edge(id).weight, id));
    let mut chosen = Vec::new();
    for id in order {
        if components == 1 {
            break;
        }
        let e = g.edge(id);
        if dsu.union(e.u, e.v) {
            components -= 1;
            chosen.push(id);
        }
    }
    if components != 1 {
        return Err(GraphError::NotSpannable);
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// A multiset of graph edges, keyed by edge id with positive multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeMultiset {
    counts: BTreeMap<EdgeId, u32>,
}

impl EdgeMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut ms = Self::new();
        for id in ids {
            ms.insert(id, 1);
        }
        ms
    }

    pub fn insert(&mut self, id: EdgeId, times: u32) {
        if times > 0 {
            *self.counts.entry(id).or_insert(0) += times;
        }
    }

    pub fn multiplicity(&self, id: EdgeId) -> u32 {
        self.counts.get(&id).copied().unwrap_or(0)
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.counts.contains_key(&id)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Distinct edge ids, ascending.
    pub fn ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.counts.keys().copied()
    }

    /// `(edge id, multiplicity)` pairs, ascending by id.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, u32)> + '_ {
        self.counts.iter().map(|(&id, &k)| (id, k))
    }

    /// Total number of edge traversals (with multiplicity).
    pub fn total_multiplicity(&self) -> usize {
        self.counts.values().map(|&k| k as usize).sum()
    }

    /// Multiset union: adds multiplicities.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (id, k) in other.iter() {
            out.insert(id, k);
        }
        out
    }

    /// Multiset difference: subtracts multiplicities, clamping at zero.
    pub fn subtract(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (id, k) in self.iter() {
            let left = k.saturating_sub(other.multiplicity(id));
            if left > 0 {
                out.insert(id, left);
            }
        }
        out
    }

    /// `Σ ν(e)·ω(e)`, overflow-checked.
    pub fn weight(&self, g: &WeightedGraph) -> Weight {
        self.iter().fold(0, |acc, (id, k)| {
            let contribution = g
                .edge(id)
                .weight
                .checked_mul(k as Weight)
                .expect("edge weight sum overflows u64");
            add_weights(acc, contribution)
        })
    }

    /// Vertices incident to at least one edge of the multiset, ascending.
    pub fn vertices(&self, g: &WeightedGraph) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for id in self.ids() {
            let e = g.edge(id);
            out.insert(e.u);
            out.insert(e.v);
        }
        out
    }

    /// Vertices of odd degree in the induced multigraph, ascending.
    pub fn odd_vertices(&self, g: &WeightedGraph) -> BTreeSet<VertexId> {
        let mut parity: BTreeMap<VertexId, bool> = BTreeMap::new();
        for (id, k) in self.iter() {
            if k % 2 == 1 {
                let e = g.edge(id);
                for v in [e.u, e.v] {
                    let p = parity.entry(v).or_insert(false);
                    *p = !*p;
                }
            }
        }
        parity
            .into_iter()
            .filter_map(|(v, odd)| odd.then_some(v))
            .collect()
    }

    /// Whether the induced multigraph is connected (at most one component).
    pub fn is_connected(&self, g: &WeightedGraph) -> bool {
        let ids: BTreeSet<EdgeId> = self.ids().collect();
        connected_components(g, Some(&ids)).len() <= 1
    }
}

/// A walk: a start vertex followed by `(edge, vertex)` steps, where each
/// edge joins the previous vertex to the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    start: VertexId,
    steps: Vec<(EdgeId, VertexId)>,
}

impl Walk {
    /// The empty walk sitting at `v`.
    pub fn trivial(v: VertexId) -> Self {
        Self {
            start: v,
            steps: Vec::new(),
        }
    }

    /// Builds a walk from its vertex/edge step sequence, verifying each
    /// step against the host graph.
    pub fn from_steps(
        g: &WeightedGraph,
        start: VertexId,
        steps: Vec<(EdgeId, VertexId)>,
    ) -> Result<Self, GraphError> {
        if start >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(start));
        }
        let mut at = start;
        for (i, &(eid, next)) in steps.iter().enumerate() {
            if eid >= g.edge_count() {
                return Err(GraphError::UnknownEdge(eid));
            }
            let e = g.edge(eid);
            if e.other(at) != Some(next) {
                return Err(GraphError::InvalidWalkStep {
                    step: i,
                    edge: eid,
                    from: at,
                    to: next,
                });
            }
            at = next;
        }
        Ok(Self { start, steps })
    }

    /// Builds a walk from a vertex sequence, looking up each edge. Only
    /// valid for simple graphs, where consecutive vertices determine the
    /// edge uniquely.
    pub fn from_vertices(g: &WeightedGraph, vertices: &[VertexId]) -> Result<Self, GraphError> {
        let (&start, rest) = vertices
            .split_first()
            .expect("vertex sequence must be nonempty");
        if start >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(start));
        }
        let mut steps = Vec::with_capacity(rest.len());
        let mut at = start;
        for (i, &v) in rest.iter().enumerate() {
            if v >= g.vertex_count() {
                return Err(GraphError::UnknownVertex(v));
            }
            let eid = g
                .edge_between(at, v)
                .ok_or(GraphError::InvalidWalkStep {
                    step: i,
                    edge: usize::MAX,
                    from: at,
                    to: v,
                })?;
            steps.push((eid, v));
            at = v;
        }
        Ok(Self { start, steps })
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.steps.last().map_or(self.start, |&(_, v)| v)
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    /// Number of edge traversals.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[(EdgeId, VertexId)] {
        &self.steps
    }

    /// The vertex sequence `v0, v1, ..., vℓ`.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start);
        out.extend(self.steps.iter().map(|&(_, v)| v));
        out
    }

    /// Edge ids in traversal order.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|&(e, _)| e)
    }

    /// The traversal multiset `E(w)`.
    pub fn edge_multiset(&self) -> EdgeMultiset {
        EdgeMultiset::from_edges(self.edge_ids())
    }

    /// `ω(w) = Σ ω(e_i)`, overflow-checked.
    pub fn weight(&self, g: &WeightedGraph) -> Weight {
        self.edge_ids()
            .fold(0, |acc, id| add_weights(acc, g.edge(id).weight))
    }

    /// The reverse walk (valid because edges are undirected).
    pub fn reversed(&self) -> Self {
        let verts = self.vertices();
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, &(e, _)) in self.steps.iter().enumerate().rev() {
            steps.push((e, verts[i]));
        }
        Self {
            start: self.end(),
            steps,
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: &Walk) {
        assert_eq!(
            self.end(),
            other.start(),
            "concatenated walks must share an endpoint"
        );
        self.steps.extend_from_slice(&other.steps);
    }

    /// Re-labels edge ids (used when lifting a walk from an edge-subgraph
    /// back into its host graph). Vertex ids are unchanged.
    pub fn map_edges(&self, f: impl Fn(EdgeId) -> EdgeId) -> Self {
        Self {
            start: self.start,
            steps: self.steps.iter().map(|&(e, v)| (f(e), v)).collect(),
        }
    }
}

/// Union-find with path halving.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; true if they were distinct.
    /// The smaller root wins, keeping representatives deterministic.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
