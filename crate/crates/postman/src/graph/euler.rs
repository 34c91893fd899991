//! Euler walks of edge multisets via Hierholzer's algorithm.

use super::{connected_components, EdgeMultiset, GraphError, VertexId, Walk, WeightedGraph};

/// An Euler walk of the multigraph induced by `edges`: a walk from `start`
/// to `end` traversing every edge exactly its multiplicity.
///
/// Preconditions: the induced multigraph is connected; all vertices are
/// balanced when `start == end`, otherwise exactly `start` and `end` are
/// imbalanced. Branching always takes the smallest remaining edge id, so
/// the output is deterministic.
pub fn euler_walk(
    g: &WeightedGraph,
    edges: &EdgeMultiset,
    start: VertexId,
    end: VertexId,
) -> Result<Walk, GraphError> {
    if start >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(start));
    }
    if end >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(end));
    }
    if edges.is_empty() {
        return if start == end {
            Ok(Walk::trivial(start))
        } else {
            Err(GraphError::IsolatedEndpoint(start))
        };
    }

    let vertices = edges.vertices(g);
    if !vertices.contains(&start) {
        return Err(GraphError::IsolatedEndpoint(start));
    }
    if !vertices.contains(&end) {
        return Err(GraphError::IsolatedEndpoint(end));
    }
    let odd = edges.odd_vertices(g);
    if start == end {
        if let Some(&v) = odd.iter().next() {
            return Err(GraphError::ImbalancedVertex(v));
        }
    } else {
        let expected: Vec<VertexId> = {
            let mut e = vec![start, end];
            e.sort_unstable();
            e
        };
        let actual: Vec<VertexId> = odd.iter().copied().collect();
        if actual != expected {
            let offender = actual
                .iter()
                .find(|v| !expected.contains(v))
                .or_else(|| expected.iter().find(|v| !actual.contains(v)))
                .copied()
                .unwrap_or(start);
            return Err(GraphError::ImbalancedVertex(offender));
        }
    }
    let ids = edges.ids().collect();
    let comps = connected_components(g, Some(&ids));
    if comps.len() > 1 {
        return Err(GraphError::DisconnectedMultiset(comps[0][0], comps[1][0]));
    }

    // Adjacency with remaining multiplicities, sorted by edge id, plus a
    // skip cursor per vertex.
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, VertexId, u32)>> = vec![Vec::new(); n];
    for (eid, k) in edges.iter() {
        let e = g.edge(eid);
        adj[e.u].push((eid, e.v, k));
        adj[e.v].push((eid, e.u, k));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut cursor = vec![0usize; n];
    // Remaining multiplicity is tracked per edge so both endpoint lists
    // observe the same counter.
    let mut remaining: std::collections::BTreeMap<usize, u32> = edges.iter().collect();

    let mut stack: Vec<(VertexId, Option<usize>)> = vec![(start, None)];
    let mut out: Vec<(VertexId, Option<usize>)> = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let mut taken = None;
        while cursor[v] < adj[v].len() {
            let (eid, w, _) = adj[v][cursor[v]];
            let left = remaining.get_mut(&eid).expect("edge is registered");
            if *left == 0 {
                cursor[v] += 1;
                continue;
            }
            *left -= 1;
            taken = Some((eid, w));
            break;
        }
        match taken {
            Some((eid, w)) => stack.push((w, Some(eid))),
            None => out.push(stack.pop().expect("stack is nonempty")),
        }
    }
    out.reverse();
    debug_assert_eq!(out[0], (start, None));
    let steps: Vec<(usize, VertexId)> = out[1..]
        .iter()
        .map(|&(v, e)| (e.expect("interior entries carry the arrival edge"), v))
        .collect();
    debug_assert_eq!(steps.len(), edges.total_multiplicity());
    let walk = Walk::from_steps(g, start, steps).expect("Hierholzer emits a valid walk");
    debug_assert_eq!(walk.end(), end);
    Ok(walk)
}
