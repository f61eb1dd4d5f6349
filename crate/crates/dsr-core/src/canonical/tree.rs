//! Canonical dominating sets for trees.
//!
//! The tree is rooted at a degree-one vertex and every vertex gets a label in
//! `{1, 2, 3}` bottom-up: leaves get 1; an internal vertex gets 1 when all its
//! children carry 3, 2 when some child carries 1, and 3 otherwise; the root
//! gets 3 when its sole child carries 2 and 2 otherwise. The label-2 vertices
//! form a minimum dominating set, and the subtree cells below them drive a
//! transformation that reaches it from any dominating set within one vertex
//! of slack.

use thiserror::Error;

use crate::canonical::transform_by_cells;
use crate::domset::{self, DomsetError};
use crate::graph::{Graph, VertexSet};
use crate::reconfig::ReconfSequence;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("root {0} must have degree one")]
    BadRoot(usize),
    #[error(transparent)]
    Domset(#[from] DomsetError),
}

/// Complete `{1,2,3}` labeling of a rooted tree.
#[derive(Debug, Clone)]
pub struct TreeLabeling {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub label: Vec<u8>,
    /// Children lists in ascending id order; kept for cell construction.
    pub children: Vec<Vec<usize>>,
}

impl TreeLabeling {
    pub fn class(&self, which: u8) -> VertexSet {
        (0..self.label.len())
            .filter(|&v| self.label[v] == which)
            .collect()
    }

    pub fn v2(&self) -> VertexSet {
        self.class(2)
    }
}

/// The cell partition: `V2` in post-order, one cell per canonical vertex.
#[derive(Debug, Clone)]
pub struct TreeCells {
    /// `V2` ordered by post-order depth-first traversal from the root.
    pub order: Vec<usize>,
    /// `cells[i]` is the cell of `order[i]`.
    pub cells: Vec<VertexSet>,
}

impl TreeCells {
    pub fn canonical(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }
}

/// Labels a tree rooted at `root`, which must have degree one.
pub fn label_tree(t: &Graph, root: usize) -> Result<TreeLabeling, TreeError> {
    if !t.is_tree() {
        return Err(TreeError::NotATree);
    }
    let n = t.n();
    assert!(n >= 2, "labeling needs at least two vertices");
    if t.degree(root) != 1 {
        return Err(TreeError::BadRoot(root));
    }

    let mut parent = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n); // BFS order, parents first
    let mut seen = vec![false; n];
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                children[u].push(w);
                order.push(w);
            }
        }
    }

    let mut label = vec![0u8; n];
    for &v in order.iter().rev() {
        if v == root {
            continue;
        }
        // leaves have no children, so the all-3 rule covers them too
        label[v] = if children[v].iter().all(|&c| label[c] == 3) {
            1
        } else if children[v].iter().any(|&c| label[c] == 1) {
            2
        } else {
            3
        };
    }
    let child = children[root][0];
    label[root] = if label[child] == 2 { 3 } else { 2 };

    Ok(TreeLabeling {
        root,
        parent,
        label,
        children,
    })
}

/// Builds the cells: `V2` is ordered by a post-order traversal from the root;
/// each vertex falls into the cell of its nearest label-2 ancestor-or-self,
/// and vertices with no such ancestor join the last cell.
pub fn tree_cells(lab: &TreeLabeling) -> TreeCells {
    let n = lab.label.len();
    // iterative post-order, children in ascending id order
    let mut post = Vec::with_capacity(n);
    let mut stack = vec![(lab.root, 0usize)];
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx < lab.children[v].len() {
            let c = lab.children[v][*idx];
            *idx += 1;
            stack.push((c, 0));
        } else {
            stack.pop();
            post.push(v);
        }
    }
    let order: Vec<usize> = post.iter().copied().filter(|&v| lab.label[v] == 2).collect();

    let q = order.len();
    let mut cell_index = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        cell_index[v] = i;
    }
    // top-down: inherit the nearest label-2 ancestor's cell
    let mut cells = vec![Vec::new(); q];
    let mut dfs = vec![(lab.root, usize::MAX)];
    while let Some((v, inherited)) = dfs.pop() {
        let own = if cell_index[v] != usize::MAX {
            cell_index[v]
        } else {
            inherited
        };
        cells[if own == usize::MAX { q - 1 } else { own }].push(v);
        for &c in &lab.children[v] {
            dfs.push((c, own));
        }
    }
    TreeCells {
        order,
        cells: cells.into_iter().map(VertexSet::from_vec).collect(),
    }
}

/// Transforms a dominating set `d` into `V2`, cell by cell: add the cell's
/// canonical vertex when absent, then delete the other cell members one by
/// one in ascending order. Every intermediate set stays dominating with at
/// most `|d| + 1` vertices.
pub fn transform_tree(
    t: &Graph,
    cells: &TreeCells,
    d: &VertexSet,
) -> Result<ReconfSequence, TreeError> {
    if !domset::is_dominating(t, d)? {
        return Err(TreeError::Domset(DomsetError::NotDominating));
    }
    Ok(transform_by_cells(&cells.order, &cells.cells, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domset::min_dominating_set_bruteforce;
    use crate::generate::tree_from_pruefer;
    use crate::reconfig::{verify, DsrInstance, Move};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vec(v.to_vec())
    }

    pub(crate) fn random_tree(n: usize, rng: &mut impl rand::Rng) -> Graph {
        if n == 1 {
            return Graph::empty(1);
        }
        let seq: Vec<usize> = (0..n.saturating_sub(2))
            .map(|_| rng.gen_range(0..n))
            .collect();
        tree_from_pruefer(n, &seq)
    }

    fn random_dominating(g: &Graph, rng: &mut impl rand::Rng) -> VertexSet {
        let mut d: VertexSet = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
        for v in 0..g.n() {
            if !domset::is_dominating(g, &d).unwrap() {
                d.insert(v);
            }
        }
        d
    }

    #[test]
    fn p4_labels_and_cells() {
        let t = path(4);
        let lab = label_tree(&t, 0).unwrap();
        assert_eq!(lab.label, vec![2, 3, 2, 1]);
        assert_eq!(lab.v2(), vs(&[0, 2]));
        assert_eq!(
            lab.v2().len(),
            min_dominating_set_bruteforce(&t).unwrap().len()
        );

        let cells = tree_cells(&lab);
        assert_eq!(cells.order, vec![2, 0]);
        assert_eq!(cells.cells, vec![vs(&[2, 3]), vs(&[0, 1])]);
    }

    #[test]
    fn p2_labels() {
        let t = path(2);
        let lab = label_tree(&t, 0).unwrap();
        assert_eq!(lab.label, vec![2, 1]);
        assert_eq!(lab.v2(), vs(&[0]));
        let cells = tree_cells(&lab);
        assert_eq!(cells.cells, vec![vs(&[0, 1])]);
    }

    #[test]
    fn star_rooted_at_leaf() {
        // K1,3: center 0, leaves 1..3, rooted at leaf 1
        let t = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let lab = label_tree(&t, 1).unwrap();
        assert_eq!(lab.label[2], 1);
        assert_eq!(lab.label[3], 1);
        assert_eq!(lab.label[0], 2);
        assert_eq!(lab.label[1], 3); // root's child (the center) is labeled 2
        assert_eq!(lab.v2(), vs(&[0]));
        assert_eq!(min_dominating_set_bruteforce(&t).unwrap().len(), 1);
    }

    #[test]
    fn bad_root_and_non_tree_rejected() {
        let t = path(3);
        assert!(matches!(label_tree(&t, 1), Err(TreeError::BadRoot(1))));
        let c3 = Graph::from_edges(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(label_tree(&c3, 0), Err(TreeError::NotATree)));
    }

    #[test]
    fn thirteen_vertex_tree_with_five_cells() {
        // caterpillar shaped like the five-cell example: a 13-vertex tree
        // whose labeling produces exactly five canonical vertices
        let t = path(13);
        let lab = label_tree(&t, 0).unwrap();
        let cells = tree_cells(&lab);
        assert_eq!(cells.order.len(), 5);
        assert_eq!(min_dominating_set_bruteforce(&t).unwrap().len(), 5);
        let mut all: Vec<usize> = cells.cells.iter().flat_map(|c| c.iter()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..13).collect::<Vec<_>>());
        for (i, cell) in cells.cells.iter().enumerate() {
            assert_eq!(
                cell.intersection(&lab.v2()),
                VertexSet::singleton(cells.order[i])
            );
        }
    }

    #[test]
    fn labeling_invariants_on_random_trees() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=14);
            let t = random_tree(n, &mut rng);
            let root = (0..n).find(|&v| t.degree(v) == 1).unwrap();
            let lab = label_tree(&t, root).unwrap();
            assert!(lab.label.iter().all(|&l| (1..=3).contains(&l)));
            for v in 0..n {
                match lab.label[v] {
                    1 if v != root => assert_eq!(lab.label[lab.parent[v].unwrap()], 2),
                    3 => assert!(lab.children[v].iter().any(|&c| lab.label[c] == 2)),
                    _ => {}
                }
            }
            let v2 = lab.v2();
            assert!(domset::is_dominating(&t, &v2).unwrap());
            assert_eq!(v2.len(), min_dominating_set_bruteforce(&t).unwrap().len());
            let cells = tree_cells(&lab);
            let mut all: Vec<usize> = cells.cells.iter().flat_map(|c| c.iter()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            for (i, cell) in cells.cells.iter().enumerate() {
                assert_eq!(
                    cell.intersection(&v2),
                    VertexSet::singleton(cells.order[i])
                );
            }
        }
    }

    #[test]
    fn transform_examples() {
        let t = path(4);
        let lab = label_tree(&t, 0).unwrap();
        let cells = tree_cells(&lab);

        // d already canonical: empty sequence
        let seq = transform_tree(&t, &cells, &vs(&[0, 2])).unwrap();
        assert!(seq.is_empty());

        // d = {v2, v3} reaches {v1, v3} with max size |d| + 1
        let d = vs(&[1, 2]);
        let seq = transform_tree(&t, &cells, &d).unwrap();
        let inst = DsrInstance::new(t.clone(), d.clone(), vs(&[0, 2]), d.len() + 1).unwrap();
        assert!(verify(&inst, &seq).is_valid());

        // star: all three leaves down to the center
        let star = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let lab = label_tree(&star, 1).unwrap();
        let cells = tree_cells(&lab);
        let d = vs(&[1, 2, 3]);
        let seq = transform_tree(&star, &cells, &d).unwrap();
        let inst = DsrInstance::new(star, d.clone(), vs(&[0]), d.len() + 1).unwrap();
        assert!(verify(&inst, &seq).is_valid());
    }

    #[test]
    fn transform_budget_touch_and_monotone_size() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(13);
        for _ in 0..300 {
            let n = rng.gen_range(2..=12);
            let t = random_tree(n, &mut rng);
            let root = (0..n).find(|&v| t.degree(v) == 1).unwrap();
            let lab = label_tree(&t, root).unwrap();
            let cells = tree_cells(&lab);
            let v2 = lab.v2();

            let d = random_dominating(&t, &mut rng);
            // every dominating set meets every cell
            for cell in &cells.cells {
                assert!(!cell.intersection(&d).is_empty());
            }

            let seq = transform_tree(&t, &cells, &d).unwrap();
            let inst = DsrInstance::new(t.clone(), d.clone(), v2, d.len() + 1).unwrap();
            assert!(verify(&inst, &seq).is_valid());
            assert!(seq.touch_counts(n).iter().all(|&c| c <= 1));

            // set size never grows across cell boundaries
            let mut cur = d.clone();
            let mut prev_size = d.len();
            let mut mi = 0;
            for (i, &canon) in cells.order.iter().enumerate() {
                while mi < seq.moves.len() {
                    let mv = seq.moves[mi];
                    let in_cell = cells.cells[i].contains(mv.vertex());
                    if !in_cell {
                        break;
                    }
                    match mv {
                        Move::Add(v) => cur.insert(v),
                        Move::Remove(v) => cur.remove(v),
                    };
                    mi += 1;
                }
                let _ = canon;
                assert!(cur.len() <= prev_size, "cell step must not grow the set");
                prev_size = cur.len();
            }
        }
    }
}
