//! Interval representations: per-vertex closed intervals with rational
//! endpoints whose intersection graph must match the graph exactly.

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::Graph;

pub type Endpoint = Rational64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("vertex {0} missing from the interval representation")]
    MissingVertex(usize),
    #[error("vertex {0}: left endpoint exceeds right endpoint")]
    InvertedInterval(usize),
    #[error("representation covers {0} vertices, graph has {1}")]
    SizeMismatch(usize, usize),
}

/// Closed interval `[l, r]` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRepresentation {
    intervals: Vec<Option<(Endpoint, Endpoint)>>,
}

impl IntervalRepresentation {
    pub fn with_capacity(n: usize) -> Self {
        IntervalRepresentation {
            intervals: vec![None; n],
        }
    }

    pub fn from_pairs(pairs: Vec<(Endpoint, Endpoint)>) -> Self {
        IntervalRepresentation {
            intervals: pairs.into_iter().map(Some).collect(),
        }
    }

    pub fn set(&mut self, v: usize, l: Endpoint, r: Endpoint) {
        if v >= self.intervals.len() {
            self.intervals.resize(v + 1, None);
        }
        self.intervals[v] = Some((l, r));
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<(Endpoint, Endpoint)> {
        self.intervals.get(v).copied().flatten()
    }

    pub fn left(&self, v: usize) -> Endpoint {
        self.intervals[v].expect("interval present").0
    }

    pub fn right(&self, v: usize) -> Endpoint {
        self.intervals[v].expect("interval present").1
    }

    /// Checks every vertex of `g` has a well-formed interval.
    pub fn check_complete(&self, g: &Graph) -> Result<(), IntervalError> {
        if self.intervals.len() != g.n() {
            return Err(IntervalError::SizeMismatch(self.intervals.len(), g.n()));
        }
        for v in 0..g.n() {
            match self.intervals[v] {
                None => return Err(IntervalError::MissingVertex(v)),
                Some((l, r)) if l > r => return Err(IntervalError::InvertedInterval(v)),
                _ => {}
            }
        }
        Ok(())
    }

    /// Restriction to a subset of vertices with ids remapped by `map`, where
    /// `map[new] = old`.
    pub fn restricted(&self, map: &[usize]) -> IntervalRepresentation {
        IntervalRepresentation {
            intervals: map.iter().map(|&old| self.intervals[old]).collect(),
        }
    }

    /// The reflection `[l, r] -> [-r, -l]`. Intersections are unchanged, but
    /// the left-to-right sweep order reverses, which generally yields a
    /// different canonical dominating set.
    pub fn mirrored(&self) -> IntervalRepresentation {
        IntervalRepresentation {
            intervals: self
                .intervals
                .iter()
                .map(|iv| iv.map(|(l, r)| (-r, -l)))
                .collect(),
        }
    }

    /// True when all right endpoints are pairwise distinct.
    pub fn has_distinct_rights(&self) -> bool {
        let mut rights: Vec<Endpoint> = self
            .intervals
            .iter()
            .filter_map(|iv| iv.map(|(_, r)| r))
            .collect();
        rights.sort();
        rights.windows(2).all(|w| w[0] != w[1])
    }

    /// Makes right endpoints pairwise distinct while preserving the
    /// intersection graph.
    ///
    /// Ties are broken by vertex id: within a tie group of size `s`, the
    /// `j`-th interval's right endpoint moves up by `j * eps / s`, where
    /// `eps` is half the minimum positive gap between distinct endpoint
    /// values. No endpoint crosses another, so intersections are unchanged.
    pub fn canonicalized(&self) -> IntervalRepresentation {
        if self.has_distinct_rights() {
            return self.clone();
        }
        let mut values: Vec<Endpoint> = self
            .intervals
            .iter()
            .flatten()
            .flat_map(|&(l, r)| [l, r])
            .collect();
        values.sort();
        values.dedup();
        let min_gap = values
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|g| !g.is_zero())
            .min();
        let eps = match min_gap {
            Some(gap) => gap / 2,
            None => Rational64::new(1, 1), // all endpoints equal: any step works
        };

        let mut order: Vec<usize> = (0..self.intervals.len())
            .filter(|&v| self.intervals[v].is_some())
            .collect();
        order.sort_by_key(|&v| (self.right(v), v));

        let mut out = self.clone();
        let mut i = 0;
        while i < order.len() {
            let mut j = i + 1;
            while j < order.len() && self.right(order[j]) == self.right(order[i]) {
                j += 1;
            }
            let group = j - i;
            if group > 1 {
                for (idx, &v) in order[i..j].iter().enumerate() {
                    let (l, r) = out.intervals[v].unwrap();
                    let shifted = r + eps * Rational64::new(idx as i64, group as i64);
                    out.intervals[v] = Some((l, shifted));
                }
            }
            i = j;
        }
        debug_assert!(out.has_distinct_rights());
        out
    }
}

/// True iff the intersection graph of `rep` equals `g` exactly, by direct
/// pairwise checks: closed intervals meet when `max(l) <= min(r)`.
pub fn validate_interval_representation(
    g: &Graph,
    rep: &IntervalRepresentation,
) -> Result<bool, IntervalError> {
    rep.check_complete(g)?;
    for u in 0..g.n() {
        let (lu, ru) = rep.get(u).unwrap();
        for v in (u + 1)..g.n() {
            let (lv, rv) = rep.get(v).unwrap();
            let meet = lu.max(lv) <= ru.min(rv);
            if meet != g.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
