//! Canonical dominating sets for connected interval graphs.
//!
//! Labeling sweeps the representation left to right: take the unlabeled
//! vertex with the smallest right endpoint, label it 1; relabel the vertex
//! with the largest right endpoint in its closed neighborhood to 2; label
//! that vertex's unlabeled neighbors 3. The label-2 vertices, ordered by
//! right endpoint, induce a cell partition over right-endpoint ranges, and
//! the same cell-by-cell rewrite as for trees reaches them from any
//! dominating set.

use thiserror::Error;

use crate::canonical::transform_by_cells;
use crate::domset::{self, DomsetError};
use crate::graph::{Graph, VertexSet};
use crate::interval::{IntervalError, IntervalRepresentation};
use crate::reconfig::ReconfSequence;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalLabelError {
    #[error("representation does not match the graph")]
    RepresentationMismatch,
    #[error("right endpoints must be pairwise distinct; canonicalize first")]
    TiedRightEndpoints,
    #[error("graph must be connected")]
    Disconnected,
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Domset(#[from] DomsetError),
}

#[derive(Debug, Clone)]
pub struct IntervalLabeling {
    pub label: Vec<u8>,
    /// `V2` ordered by strictly increasing right endpoint.
    pub order: Vec<usize>,
}

impl IntervalLabeling {
    pub fn class(&self, which: u8) -> VertexSet {
        (0..self.label.len())
            .filter(|&v| self.label[v] == which)
            .collect()
    }

    pub fn v2(&self) -> VertexSet {
        self.class(2)
    }
}

#[derive(Debug, Clone)]
pub struct IntervalCells {
    pub order: Vec<usize>,
    pub cells: Vec<VertexSet>,
}

impl IntervalCells {
    pub fn canonical(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }
}

/// Labels a connected interval graph. `rep` must validate against `g` and
/// carry pairwise distinct right endpoints.
pub fn label_interval(
    g: &Graph,
    rep: &IntervalRepresentation,
) -> Result<IntervalLabeling, IntervalLabelError> {
    rep.check_complete(g)?;
    if !crate::interval::validate_interval_representation(g, rep)? {
        return Err(IntervalLabelError::RepresentationMismatch);
    }
    if !rep.has_distinct_rights() {
        return Err(IntervalLabelError::TiedRightEndpoints);
    }
    if !g.is_connected() {
        return Err(IntervalLabelError::Disconnected);
    }
    let n = g.n();
    let mut label = vec![0u8; n];
    // ascending right endpoint; ids break (unreachable) ties deterministically
    let mut by_right: Vec<usize> = (0..n).collect();
    by_right.sort_by_key(|&v| (rep.right(v), v));

    // labels are only ever assigned, so the minimum unlabeled right endpoint
    // advances monotonically and one cursor suffices
    let mut cursor = 0;
    loop {
        while cursor < n && label[by_right[cursor]] != 0 {
            cursor += 1;
        }
        if cursor == n {
            break;
        }
        let vi = by_right[cursor];
        label[vi] = 1;
        let vj = g
            .neighbors(vi)
            .iter()
            .copied()
            .chain([vi])
            .max_by_key(|&u| (rep.right(u), u))
            .unwrap();
        label[vj] = 2; // may relabel vi itself
        for &u in g.neighbors(vj) {
            if label[u] == 0 {
                label[u] = 3;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).filter(|&v| label[v] == 2).collect();
    order.sort_by_key(|&v| rep.right(v));
    Ok(IntervalLabeling { label, order })
}

/// Cells by right-endpoint ranges: cell `i` holds the vertices whose right
/// endpoint lies in `(r(w_{i-1}), r(w_i)]`, with the first range unbounded
/// below and the last unbounded above.
pub fn interval_cells(lab: &IntervalLabeling, rep: &IntervalRepresentation) -> IntervalCells {
    let q = lab.order.len();
    assert!(q >= 1, "labeling always produces at least one 2");
    let breaks: Vec<_> = lab.order[..q - 1].iter().map(|&w| rep.right(w)).collect();
    let mut cells = vec![Vec::new(); q];
    for v in 0..lab.label.len() {
        let r = rep.right(v);
        let i = breaks.partition_point(|b| *b < r);
        cells[i].push(v);
    }
    IntervalCells {
        order: lab.order.clone(),
        cells: cells.into_iter().map(VertexSet::from_vec).collect(),
    }
}

/// Transforms a dominating set into `V2`, cell by cell, left to right.
pub fn transform_interval(
    g: &Graph,
    cells: &IntervalCells,
    d: &VertexSet,
) -> Result<ReconfSequence, IntervalLabelError> {
    if !domset::is_dominating(g, d)? {
        return Err(IntervalLabelError::Domset(DomsetError::NotDominating));
    }
    Ok(transform_by_cells(&cells.order, &cells.cells, d))
}
