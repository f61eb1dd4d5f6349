//! Domination predicates, minimality, and the brute-force minimum oracle.

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DomsetError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("set is not a dominating set")]
    NotDominating,
    #[error("graph too large for brute force (n = {0} > {1})")]
    TooLarge(usize, usize),
}

/// True iff every vertex is in `d` or adjacent to a member of `d`.
pub fn is_dominating(g: &Graph, d: &VertexSet) -> Result<bool, DomsetError> {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut remaining = n;
    for v in d.iter() {
        if v >= n {
            return Err(DomsetError::VertexOutOfRange(v, n));
        }
        if !covered[v] {
            covered[v] = true;
            remaining -= 1;
        }
        for &w in g.neighbors(v) {
            if !covered[w] {
                covered[w] = true;
                remaining -= 1;
            }
        }
    }
    Ok(remaining == 0)
}

/// Number of members of `d` in each closed neighborhood, `|N[u] ∩ D|` per `u`.
pub fn dominator_counts(g: &Graph, d: &VertexSet) -> Vec<usize> {
    let mut counts = vec![0usize; g.n()];
    for v in d.iter() {
        counts[v] += 1;
        for &w in g.neighbors(v) {
            counts[w] += 1;
        }
    }
    counts
}

/// The members `w` of `d` for which `d \ {w}` still dominates.
///
/// Runs in `O(n + m)`: a member `w` is deletable exactly when every vertex of
/// `N[w]` has a second dominator, i.e. its dominator count is at least 2.
pub fn deletable_vertices(g: &Graph, d: &VertexSet) -> Result<VertexSet, DomsetError> {
    if !is_dominating(g, d)? {
        return Err(DomsetError::NotDominating);
    }
    let counts = dominator_counts(g, d);
    let deletable = d
        .iter()
        .filter(|&w| counts[w] >= 2 && g.neighbors(w).iter().all(|&u| counts[u] >= 2))
        .collect();
    Ok(deletable)
}

/// A dominating set is minimal when no member is deletable.
pub fn is_minimal(g: &Graph, d: &VertexSet) -> Result<bool, DomsetError> {
    Ok(deletable_vertices(g, d)?.is_empty())
}

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Minimum dominating set by exhaustive search, smallest cardinality first,
/// ties broken by lexicographically smallest member list.
///
/// Guarded to `n <= 24`; enumerating by cardinality keeps this practical
/// whenever the domination number is small.
pub fn min_dominating_set_bruteforce(g: &Graph) -> Result<VertexSet, DomsetError> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(DomsetError::TooLarge(n, BRUTE_FORCE_LIMIT));
    }
    if n == 0 {
        return Ok(VertexSet::new());
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let nbhd: Vec<u64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u64 << v, |acc, &w| acc | (1u64 << w))
        })
        .collect();
    for size in 1..=n {
        // itertools emits combinations in lexicographic order
        for combo in (0..n).combinations(size) {
            let cover = combo.iter().fold(0u64, |acc, &v| acc | nbhd[v]);
            if cover == full {
                return Ok(VertexSet::from_sorted(combo));
            }
        }
    }
    unreachable!("V(G) always dominates")
}

/// Domination number via the brute-force oracle.
pub fn domination_number_bruteforce(g: &Graph) -> Result<usize, DomsetError> {
    Ok(min_dominating_set_bruteforce(g)?.len())
}
