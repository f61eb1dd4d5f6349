//! Executable hardness reductions from vertex cover reconfiguration (VCR),
//! plus the VCR oracle and gadget-vertex sequence normalization.
//!
//! Three instance transformers are provided: edge subdivision gadgets onto a
//! general graph, the split-graph variant where the original vertices become
//! a clique, and the split-to-bipartite rewrite that trades the clique for an
//! apex vertex. Each returns a map recording every gadget vertex so sequences
//! on the reduced graph can be rewritten to touch original vertices only.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::reconfig::{
    mask_bfs, path_to_sequence, DsrInstance, InstanceError, Move, OracleError, ReconfSequence,
    SearchStats, SequenceError, ORACLE_VERTEX_LIMIT,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("reduction needs at least one edge")]
    EmptyEdgeSet,
    #[error("vertex {0} is isolated; covers cannot dominate it after the reduction")]
    IsolatedVertex(usize),
    #[error("endpoint is not a vertex cover")]
    EndpointNotCover,
    #[error("endpoint size exceeds threshold k")]
    EndpointTooLarge,
    #[error("graph is not split with the given partition")]
    NotSplit,
    #[error("endpoint leaves the clique side")]
    EndpointOutsideClique,
    #[error("sequence endpoint contains a gadget vertex")]
    GadgetInEndpoint,
    #[error("normalization is not defined for this reduction's map")]
    UnsupportedMap,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Vertex cover reconfiguration instance.
#[derive(Debug, Clone)]
pub struct VcrInstance {
    pub graph: Graph,
    pub source: VertexSet,
    pub target: VertexSet,
    pub k: usize,
}

impl VcrInstance {
    pub fn new(
        graph: Graph,
        source: VertexSet,
        target: VertexSet,
        k: usize,
    ) -> Result<Self, ReductionError> {
        if !is_vertex_cover(&graph, &source) || !is_vertex_cover(&graph, &target) {
            return Err(ReductionError::EndpointNotCover);
        }
        if source.len() > k || target.len() > k {
            return Err(ReductionError::EndpointTooLarge);
        }
        Ok(VcrInstance {
            graph,
            source,
            target,
            k,
        })
    }
}

pub fn is_vertex_cover(g: &Graph, c: &VertexSet) -> bool {
    c.iter().all(|v| v < g.n()) && g.edges().all(|(u, v)| c.contains(u) || c.contains(v))
}

/// Provenance of a gadget vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetRole {
    /// Added for the edge `(u, w)` of the original graph.
    EdgeVertex { u: usize, w: usize },
    /// The pendant vertex of the bipartite reduction.
    X,
    /// The apex vertex joined to the clique side.
    Y,
}

/// Which reduced-graph vertices are gadgets and where they came from.
/// Gadget ids sit above the original range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    pub original_count: usize,
    /// `roles[i]` belongs to vertex `original_count + i`.
    pub roles: Vec<GadgetRole>,
}

impl ReductionMap {
    pub fn is_gadget(&self, v: usize) -> bool {
        v >= self.original_count
    }

    pub fn role(&self, v: usize) -> Option<GadgetRole> {
        v.checked_sub(self.original_count)
            .and_then(|i| self.roles.get(i))
            .copied()
    }
}

/// BFS reachability over vertex covers of size at most `k`.
pub fn vcr_oracle(
    inst: &VcrInstance,
    budget: usize,
) -> Result<(bool, Option<ReconfSequence>, SearchStats), OracleError> {
    let n = inst.graph.n();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(OracleError::TooLarge(n, ORACLE_VERTEX_LIMIT));
    }
    let edge_masks: Vec<u64> = inst
        .graph
        .edges()
        .map(|(u, v)| (1u64 << u) | (1u64 << v))
        .collect();
    let covers = |mask: u64| edge_masks.iter().all(|&e| mask & e != 0);
    let (path, stats) = mask_bfs(
        n,
        inst.source.to_mask(),
        inst.target.to_mask(),
        inst.k,
        budget,
        covers,
    )?;
    match path {
        Some(p) => Ok((true, Some(path_to_sequence(&p)), stats)),
        None => Ok((false, None, stats)),
    }
}

fn guard_edges_and_isolates(g: &Graph) -> Result<(), ReductionError> {
    if g.m() == 0 {
        return Err(ReductionError::EmptyEdgeSet);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(ReductionError::IsolatedVertex(v));
    }
    Ok(())
}

/// Adds one gadget vertex per edge, joined to both endpoints. The result has
/// `n' + m'` vertices and exactly `3 m'` edges; covers carry over unchanged
/// as dominating sets at the same threshold.
pub fn reduce_vcr_to_dsr(
    inst: &VcrInstance,
) -> Result<(DsrInstance, ReductionMap), ReductionError> {
    guard_edges_and_isolates(&inst.graph)?;
    let n = inst.graph.n();
    let mut edges: Vec<(usize, usize)> = inst.graph.edges().collect();
    let mut roles = Vec::with_capacity(inst.graph.m());
    for (i, (u, w)) in inst.graph.edges().enumerate() {
        let gadget = n + i;
        edges.push((u, gadget));
        edges.push((gadget, w));
        roles.push(GadgetRole::EdgeVertex { u, w });
    }
    let graph = Graph::from_edges(n + roles.len(), edges).expect("gadget edges are simple");
    let reduced = DsrInstance::new(
        graph,
        inst.source.clone(),
        inst.target.clone(),
        inst.k,
    )?;
    Ok((
        reduced,
        ReductionMap {
            original_count: n,
            roles,
        },
    ))
}

/// The split variant: original vertices become a clique `A`, one independent
/// vertex per edge joined to its endpoints forms `B`.
pub fn reduce_vcr_to_split_dsr(
    inst: &VcrInstance,
) -> Result<(DsrInstance, ReductionMap), ReductionError> {
    if inst.graph.m() == 0 {
        return Err(ReductionError::EmptyEdgeSet);
    }
    let n = inst.graph.n();
    let mut edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut roles = Vec::with_capacity(inst.graph.m());
    for (i, (u, w)) in inst.graph.edges().enumerate() {
        let gadget = n + i;
        edges.push((u, gadget));
        edges.push((gadget, w));
        roles.push(GadgetRole::EdgeVertex { u, w });
    }
    let graph = Graph::from_edges(n + roles.len(), edges).expect("split edges are simple");
    let reduced = DsrInstance::new(
        graph,
        inst.source.clone(),
        inst.target.clone(),
        inst.k,
    )?;
    Ok((
        reduced,
        ReductionMap {
            original_count: n,
            roles,
        },
    ))
}

/// Split-to-bipartite rewrite: drops the clique edges inside `A`, adds a new
/// edge `x - y`, and joins `y` to every vertex of `A`. Endpoints must lie
/// inside `A` and gain `y`; the threshold grows by one.
pub fn reduce_split_to_bipartite_dsr(
    inst: &DsrInstance,
    clique: &VertexSet,
    independent: &VertexSet,
) -> Result<(DsrInstance, ReductionMap), ReductionError> {
    let n = inst.graph.n();
    check_split(&inst.graph, clique, independent)?;
    if !inst.source.is_subset_of(clique) || !inst.target.is_subset_of(clique) {
        return Err(ReductionError::EndpointOutsideClique);
    }
    let x = n;
    let y = n + 1;
    let mut edges: Vec<(usize, usize)> = inst
        .graph
        .edges()
        .filter(|&(u, v)| !(clique.contains(u) && clique.contains(v)))
        .collect();
    edges.push((x, y));
    for a in clique.iter() {
        edges.push((a, y));
    }
    let graph = Graph::from_edges(n + 2, edges).expect("bipartite edges are simple");
    let mut source = inst.source.clone();
    source.insert(y);
    let mut target = inst.target.clone();
    target.insert(y);
    let reduced = DsrInstance::new(graph, source, target, inst.k + 1)?;
    Ok((
        reduced,
        ReductionMap {
            original_count: n,
            roles: vec![GadgetRole::X, GadgetRole::Y],
        },
    ))
}

fn check_split(
    g: &Graph,
    clique: &VertexSet,
    independent: &VertexSet,
) -> Result<(), ReductionError> {
    if clique.len() + independent.len() != g.n()
        || !clique.intersection(independent).is_empty()
    {
        return Err(ReductionError::NotSplit);
    }
    let a: Vec<usize> = clique.iter().collect();
    for (i, &u) in a.iter().enumerate() {
        for &v in &a[i + 1..] {
            if !g.has_edge(u, v) {
                return Err(ReductionError::NotSplit);
            }
        }
    }
    let b: Vec<usize> = independent.iter().collect();
    for (i, &u) in b.iter().enumerate() {
        for &v in &b[i + 1..] {
            if g.has_edge(u, v) {
                return Err(ReductionError::NotSplit);
            }
        }
    }
    Ok(())
}

/// Finds a split partition (clique, independent) if one exists: vertices
/// sorted by descending degree, the clique side is the largest prefix whose
/// degrees allow a clique, verified directly afterwards.
///
/// When the whole graph is a clique the lowest-degree vertex is moved to the
/// independent side: an empty independent side is degenerate for the
/// bipartite reduction (the apex alone would dominate).
pub fn split_partition(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut m = (0..n)
        .take_while(|&i| g.degree(by_degree[i]) >= i)
        .count();
    if m == n && n >= 2 {
        m -= 1;
    }
    let clique: VertexSet = by_degree[..m].iter().copied().collect();
    let independent: VertexSet = by_degree[m..].iter().copied().collect();
    check_split(g, &clique, &independent)
        .ok()
        .map(|_| (clique, independent))
}

/// Like [`split_partition`], but greedily pulls the given vertices onto the
/// clique side when the partition allows it.
pub fn split_partition_containing(
    g: &Graph,
    must_be_clique: &VertexSet,
) -> Option<(VertexSet, VertexSet)> {
    let (mut clique, mut independent) = split_partition(g)?;
    for v in must_be_clique.iter() {
        if clique.contains(v) {
            continue;
        }
        // v can join the clique only if it sees all of it
        if clique.iter().all(|a| g.has_edge(a, v)) {
            independent.remove(v);
            clique.insert(v);
        } else {
            return None;
        }
    }
    check_split(g, &clique, &independent).ok()?;
    Some((clique, independent))
}

/// Rewrites a valid sequence on a reduced graph so that it touches original
/// vertices only, replacing each gadget episode by one of the gadget's edge
/// endpoints and dropping moves that become no-ops. The result is valid,
/// never longer, and pointwise dominates the original sequence's sets.
pub fn normalize_sequence(
    seq: &ReconfSequence,
    map: &ReductionMap,
    g: &Graph,
) -> Result<ReconfSequence, ReductionError> {
    if map
        .roles
        .iter()
        .any(|r| !matches!(r, GadgetRole::EdgeVertex { .. }))
    {
        return Err(ReductionError::UnsupportedMap);
    }
    let sets = seq.apply()?; // validates the replay
    if sets[0].iter().any(|v| map.is_gadget(v))
        || sets.last().unwrap().iter().any(|v| map.is_gadget(v))
    {
        return Err(ReductionError::GadgetInEndpoint);
    }
    debug_assert!(sets.iter().all(|s| s.iter().all(|v| v < g.n())));

    // count[v]: how many present members (originals and gadget replacements)
    // currently stand on original vertex v
    let mut count = vec![0usize; map.original_count];
    for v in sets[0].iter() {
        count[v] += 1;
    }
    let mut replacement: Vec<Option<usize>> = vec![None; map.roles.len()];
    let mut moves = Vec::new();
    for &mv in &seq.moves {
        match mv {
            Move::Add(v) if !map.is_gadget(v) => {
                count[v] += 1;
                if count[v] == 1 {
                    moves.push(Move::Add(v));
                }
            }
            Move::Remove(v) if !map.is_gadget(v) => {
                count[v] -= 1;
                if count[v] == 0 {
                    moves.push(Move::Remove(v));
                }
            }
            Move::Add(v) => {
                let Some(GadgetRole::EdgeVertex { u, w }) = map.role(v) else {
                    unreachable!("checked above")
                };
                // stand-in choice: the smaller absent endpoint, else the
                // smaller one (a no-op add)
                let (lo, hi) = (u.min(w), u.max(w));
                let r = if count[lo] == 0 {
                    lo
                } else if count[hi] == 0 {
                    hi
                } else {
                    lo
                };
                replacement[v - map.original_count] = Some(r);
                count[r] += 1;
                if count[r] == 1 {
                    moves.push(Move::Add(r));
                }
            }
            Move::Remove(v) => {
                let r = replacement[v - map.original_count]
                    .take()
                    .expect("gadget removal follows its addition");
                count[r] -= 1;
                if count[r] == 0 {
                    moves.push(Move::Remove(r));
                }
            }
        }
    }
    Ok(ReconfSequence {
        start: seq.start.clone(),
        moves,
    })
}
