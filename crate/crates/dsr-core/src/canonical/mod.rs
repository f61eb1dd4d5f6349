//! Canonical dominating sets and the per-class transformations.

pub mod cograph;
pub mod interval;
pub mod tree;

use crate::graph::VertexSet;
use crate::reconfig::{Move, ReconfSequence};

/// Cell-by-cell rewrite shared by the tree and interval transforms: per cell
/// in order, add the canonical vertex when absent, then delete the other
/// present cell members in ascending id order.
pub(crate) fn transform_by_cells(
    order: &[usize],
    cells: &[VertexSet],
    d: &VertexSet,
) -> ReconfSequence {
    let mut moves = Vec::new();
    let mut cur = d.clone();
    for (i, &canon) in order.iter().enumerate() {
        if cur.insert(canon) {
            moves.push(Move::Add(canon));
        }
        for v in cells[i].iter() {
            if v != canon && cur.remove(v) {
                moves.push(Move::Remove(v));
            }
        }
    }
    ReconfSequence {
        start: d.clone(),
        moves,
    }
}
