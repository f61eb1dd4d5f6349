//! Canonical dominating sets for connected cographs.
//!
//! A connected cograph with two or more vertices is a join `G1 ∨ G2`. If some
//! vertex sees everything, that vertex alone is canonical; otherwise one
//! vertex from each join side is. The transformation into the canonical pair
//! keeps every intermediate set dominating within one vertex of slack.

use thiserror::Error;

use crate::cotree::Cotree;
use crate::domset::{self, DomsetError};
use crate::graph::{Graph, VertexSet};
use crate::reconfig::{Move, ReconfSequence};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CographError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("cotree does not evaluate to the graph")]
    CotreeMismatch,
    #[error(transparent)]
    Domset(#[from] DomsetError),
}

/// Canonical set of size 1 (universal vertex) or 2 (one per join side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CographCanonical {
    pub canonical: VertexSet,
    /// The join bipartition backing a size-2 canonical set.
    pub join_split: Option<(VertexSet, VertexSet)>,
}

/// Builds the canonical set for a connected cograph with cotree `ct`.
///
/// Prefers the smallest-id universal vertex; otherwise takes the smallest id
/// from the first join child and the smallest id from the remaining children.
pub fn cograph_canonical(g: &Graph, ct: &Cotree) -> Result<CographCanonical, CographError> {
    if !g.is_connected() {
        return Err(CographError::Disconnected);
    }
    if ct.evaluate(g.n()) != *g {
        return Err(CographError::CotreeMismatch);
    }
    let n = g.n();
    if let Some(w) = (0..n).find(|&v| g.degree(v) == n - 1) {
        return Ok(CographCanonical {
            canonical: VertexSet::singleton(w),
            join_split: None,
        });
    }
    // no universal vertex and connected, so the root is a join of >= 2 parts
    let children = match ct {
        Cotree::Join(children) => children,
        _ => return Err(CographError::CotreeMismatch),
    };
    let side1 = children[0].leaves();
    let side2: VertexSet = children[1..]
        .iter()
        .flat_map(|c| c.leaves().iter().collect::<Vec<_>>())
        .collect();
    let a = side1.iter().next().expect("join side nonempty");
    let b = side2.iter().next().expect("join side nonempty");
    Ok(CographCanonical {
        canonical: VertexSet::from_vec(vec![a, b]),
        join_split: Some((side1, side2)),
    })
}

/// Transforms a dominating set `d` into the canonical set.
///
/// Universal case: add the universal vertex, then strip the rest. Join case,
/// oriented so the first side holds at least as much of `d` as the second
/// (with `a` canonical on the heavy side, `b` on the light side):
/// add `b`; drop one heavy-side non-`a` vertex if the heavy side has two or
/// more, else one light-side non-`b` vertex if any; add `a`; strip the rest.
pub fn transform_cograph(
    g: &Graph,
    can: &CographCanonical,
    d: &VertexSet,
) -> Result<ReconfSequence, CographError> {
    if !domset::is_dominating(g, d)? {
        return Err(CographError::Domset(DomsetError::NotDominating));
    }
    let mut moves = Vec::new();
    let mut cur = d.clone();

    match &can.join_split {
        None => {
            let w = can.canonical.iter().next().unwrap();
            if cur.insert(w) {
                moves.push(Move::Add(w));
            }
            for v in d.iter() {
                if v != w {
                    cur.remove(v);
                    moves.push(Move::Remove(v));
                }
            }
        }
        Some((side1, side2)) => {
            let c: Vec<usize> = can.canonical.iter().collect();
            let (c1, c2) = (c[0], c[1]);
            // orient: `a` on the side holding more of d
            let d1 = d.intersection(side1).len();
            let d2 = d.intersection(side2).len();
            let (heavy, light, a, b) = if d1 >= d2 {
                (side1, side2, pick_on(&can.canonical, side1, c1, c2), pick_on(&can.canonical, side2, c1, c2))
            } else {
                (side2, side1, pick_on(&can.canonical, side2, c1, c2), pick_on(&can.canonical, side1, c1, c2))
            };

            // step 1: add b
            if cur.insert(b) {
                moves.push(Move::Add(b));
            }
            // step 2: one removal, heavy side first
            let heavy_non_a: Vec<usize> =
                d.intersection(heavy).iter().filter(|&v| v != a).collect();
            if d.intersection(heavy).len() >= 2 {
                let v = heavy_non_a[0];
                cur.remove(v);
                moves.push(Move::Remove(v));
            } else if let Some(v) = d
                .intersection(light)
                .iter()
                .find(|&v| v != b)
            {
                cur.remove(v);
                moves.push(Move::Remove(v));
            }
            // step 3: add a
            if cur.insert(a) {
                moves.push(Move::Add(a));
            }
            // step 4: strip everything else
            let keep = VertexSet::from_vec(vec![a, b]);
            for v in cur.clone().iter() {
                if !keep.contains(v) {
                    cur.remove(v);
                    moves.push(Move::Remove(v));
                }
            }
        }
    }

    Ok(ReconfSequence {
        start: d.clone(),
        moves,
    })
}

fn pick_on(canonical: &VertexSet, side: &VertexSet, c1: usize, c2: usize) -> usize {
    debug_assert_eq!(canonical.len(), 2);
    if side.contains(c1) {
        c1
    } else {
        debug_assert!(side.contains(c2));
        c2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotree::cotree_decompose;
    use crate::domset::min_dominating_set_bruteforce;
    use crate::generate::{random_connected_cograph, stream_rng};
    use crate::reconfig::{verify, DsrInstance};
    use rand::Rng;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vec(v.to_vec())
    }

    #[test]
    fn k2_and_single_vertex_are_universal() {
        let k2 = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        let ct = cotree_decompose(&k2).unwrap();
        let can = cograph_canonical(&k2, &ct).unwrap();
        assert_eq!(can.canonical, vs(&[0]));
        assert!(can.join_split.is_none());

        let single = Graph::empty(1);
        let can = cograph_canonical(&single, &Cotree::Leaf(0)).unwrap();
        assert_eq!(can.canonical, vs(&[0]));
    }

    #[test]
    fn c4_canonical_pair_spans_the_join() {
        // C4 has no universal vertex; sides {0,2} and {1,3}
        let c4 = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let ct = cotree_decompose(&c4).unwrap();
        let can = cograph_canonical(&c4, &ct).unwrap();
        assert_eq!(can.canonical, vs(&[0, 1]));
        assert_eq!(can.join_split, Some((vs(&[0, 2]), vs(&[1, 3]))));
        assert_eq!(min_dominating_set_bruteforce(&c4).unwrap().len(), 2);
    }

    #[test]
    fn universal_case_strips_leaves() {
        // star K1,4: d = four leaves, canonical = center
        let star = Graph::from_edges(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let ct = cotree_decompose(&star).unwrap();
        let can = cograph_canonical(&star, &ct).unwrap();
        assert_eq!(can.canonical, vs(&[0]));
        let d = vs(&[1, 2, 3, 4]);
        let seq = transform_cograph(&star, &can, &d).unwrap();
        let inst = DsrInstance::new(star, d.clone(), vs(&[0]), d.len() + 1).unwrap();
        assert!(verify(&inst, &seq).is_valid());
        let max = seq.apply().unwrap().iter().map(|s| s.len()).max().unwrap();
        assert_eq!(max, 5);
    }

    #[test]
    fn join_case_with_one_sided_start() {
        // C4, d = {0, 2}: both on the same join side
        let c4 = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let ct = cotree_decompose(&c4).unwrap();
        let can = cograph_canonical(&c4, &ct).unwrap();
        let d = vs(&[0, 2]);
        let seq = transform_cograph(&c4, &can, &d).unwrap();
        let inst =
            DsrInstance::new(c4, d.clone(), can.canonical.clone(), d.len() + 1).unwrap();
        assert!(verify(&inst, &seq).is_valid());
    }

    #[test]
    fn canonical_start_is_a_fixed_point() {
        let c4 = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let ct = cotree_decompose(&c4).unwrap();
        let can = cograph_canonical(&c4, &ct).unwrap();
        let seq = transform_cograph(&c4, &can, &can.canonical).unwrap();
        assert!(seq.is_empty());
    }

    #[test]
    fn random_cographs_canonical_is_minimum_and_transform_verifies() {
        let mut rng = stream_rng(29, "cg");
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let (g, ct) = random_connected_cograph(n, &mut rng);
            let can = cograph_canonical(&g, &ct).unwrap();
            assert!(domset::is_dominating(&g, &can.canonical).unwrap());
            assert_eq!(
                can.canonical.len(),
                min_dominating_set_bruteforce(&g).unwrap().len()
            );
            if let Some((s1, s2)) = &can.join_split {
                // one canonical endpoint per side, no universal vertex
                assert!((0..g.n()).all(|v| g.degree(v) < g.n() - 1));
                assert_eq!(s1.intersection(&can.canonical).len(), 1);
                assert_eq!(s2.intersection(&can.canonical).len(), 1);
            }

            let mut d: VertexSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            for v in 0..n {
                if !domset::is_dominating(&g, &d).unwrap() {
                    d.insert(v);
                }
            }
            let seq = transform_cograph(&g, &can, &d).unwrap();
            let inst = DsrInstance::new(
                g.clone(),
                d.clone(),
                can.canonical.clone(),
                d.len() + 1,
            )
            .unwrap();
            assert!(verify(&inst, &seq).is_valid());
            // each vertex touched at most twice, removals one-shot
            assert!(seq.touch_counts(n).iter().all(|&c| c <= 2));

            // midpoint bound: just before the second addition the set is D2
            // with |D2| <= |d|, and it still dominates
            if can.join_split.is_some() && !seq.is_empty() {
                let sets = seq.apply().unwrap();
                let mut adds = 0;
                for (i, mv) in seq.moves.iter().enumerate() {
                    if matches!(mv, Move::Add(_)) {
                        adds += 1;
                        if adds == 2 {
                            assert!(sets[i].len() <= d.len());
                            assert!(domset::is_dominating(&g, &sets[i]).unwrap());
                        }
                    }
                }
            }
        }
    }
}
