//! Simple undirected graphs and vertex sets.
//!
//! Vertices are `0..n` internally; the text formats in [`crate::format`] use
//! 1-based ids. Neighbor lists are kept sorted so that every traversal order
//! in the crate is deterministic.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges
    /// collapse to one; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Partition of `V` into connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut part = Vec::new();
            while let Some(u) = stack.pop() {
                part.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(VertexSet::from_sorted(part));
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// A tree is connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m == self.n() - 1 && self.is_connected()
    }

    /// Subgraph induced by `verts`, with vertices relabeled `0..verts.len()`.
    /// The returned map sends new ids back to original ids.
    pub fn induced(&self, verts: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = verts.iter().collect();
        let mut back = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let mut adj = vec![Vec::new(); map.len()];
        for (new, &old) in map.iter().enumerate() {
            for &w in &self.adj[old] {
                if back[w] != usize::MAX {
                    adj[new].push(back[w]);
                }
            }
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            m += list.len();
        }
        (Graph { adj, m: m / 2 }, map)
    }

    /// Complement graph (desk-scale helper for cotree recognition tests).
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        for (u, list) in adj.iter_mut().enumerate() {
            for v in 0..n {
                if u != v && !self.has_edge(u, v) {
                    list.push(v);
                }
            }
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=", self.n(), self.m)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet::default()
    }

    pub fn from_vec(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { members: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Inserts `v`; returns false if already present.
    pub fn insert(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    /// Removes `v`; returns false if absent.
    pub fn remove(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet { members: v }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let members = self
            .members
            .iter()
            .filter(|&&v| other.contains(v))
            .copied()
            .collect();
        VertexSet { members }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let members = self
            .members
            .iter()
            .filter(|&&v| !other.contains(v))
            .copied()
            .collect();
        VertexSet { members }
    }

    pub fn without(&self, v: usize) -> VertexSet {
        let members = self.members.iter().filter(|&&u| u != v).copied().collect();
        VertexSet { members }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    /// Bitmask view for the mask-based search engines; requires ids `< 64`.
    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.members.last().is_none_or(|&v| v < 64));
        self.members.iter().fold(0u64, |acc, &v| acc | (1u64 << v))
    }

    pub fn from_mask(mut mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            members.push(v);
            mask &= mask - 1;
        }
        VertexSet { members }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_vec(iter.into_iter().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}
