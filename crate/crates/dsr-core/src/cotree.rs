//! Cotrees: the union/join construction trees of cographs.
//!
//! Recognition works by recursive decomposition: a disconnected part becomes a
//! UNION node over its components, a co-disconnected part a JOIN node over its
//! co-components, and a part that is both connected and co-connected with two
//! or more vertices is not a cograph, in which case an induced `P4` is
//! returned as the witness.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

/// Four vertices inducing a path `a - b - c - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P4Witness {
    pub path: [usize; 4],
}

impl Cotree {
    pub fn leaves(&self) -> VertexSet {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        VertexSet::from_vec(out)
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Union(children) | Cotree::Join(children) => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    pub fn children(&self) -> &[Cotree] {
        match self {
            Cotree::Leaf(_) => &[],
            Cotree::Union(c) | Cotree::Join(c) => c,
        }
    }

    /// Edge set the cotree evaluates to: unions contribute nothing, joins add
    /// all pairs across child leaf sets.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        self.collect_edges(&mut edges);
        edges
    }

    fn collect_edges(&self, edges: &mut Vec<(usize, usize)>) {
        match self {
            Cotree::Leaf(_) => {}
            Cotree::Union(children) => {
                for c in children {
                    c.collect_edges(edges);
                }
            }
            Cotree::Join(children) => {
                let leaf_sets: Vec<VertexSet> = children.iter().map(|c| c.leaves()).collect();
                for i in 0..children.len() {
                    children[i].collect_edges(edges);
                    for j in (i + 1)..children.len() {
                        for u in leaf_sets[i].iter() {
                            for w in leaf_sets[j].iter() {
                                edges.push((u.min(w), u.max(w)));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Rebuilds the graph on `n` vertices the cotree describes.
    pub fn evaluate(&self, n: usize) -> Graph {
        Graph::from_edges(n, self.edges()).expect("cotree edges are simple")
    }

    /// Canonical form: internal nodes have two or more children and no child
    /// of the same kind as its parent.
    pub fn is_canonical(&self) -> bool {
        match self {
            Cotree::Leaf(_) => true,
            Cotree::Union(children) => {
                children.len() >= 2
                    && children
                        .iter()
                        .all(|c| !matches!(c, Cotree::Union(_)) && c.is_canonical())
            }
            Cotree::Join(children) => {
                children.len() >= 2
                    && children
                        .iter()
                        .all(|c| !matches!(c, Cotree::Join(_)) && c.is_canonical())
            }
        }
    }
}

impl fmt::Display for Cotree {
    /// S-expression form with 1-based leaf ids, e.g. `(J (U 1 3) (U 2 4))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cotree::Leaf(v) => write!(f, "{}", v + 1),
            Cotree::Union(children) | Cotree::Join(children) => {
                write!(f, "({}", if matches!(self, Cotree::Union(_)) { "U" } else { "J" })?;
                for c in children {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Decomposes `g` into its canonical cotree, or returns an induced `P4`.
pub fn cotree_decompose(g: &Graph) -> Result<Cotree, P4Witness> {
    assert!(g.n() >= 1, "cotree of the empty graph is undefined");
    let all: Vec<usize> = (0..g.n()).collect();
    decompose(g, &all)
}

fn decompose(g: &Graph, verts: &[usize]) -> Result<Cotree, P4Witness> {
    if verts.len() == 1 {
        return Ok(Cotree::Leaf(verts[0]));
    }
    let parts = components_within(g, verts);
    if parts.len() > 1 {
        let children = parts
            .iter()
            .map(|p| decompose(g, p))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Cotree::Union(children));
    }
    let co_parts = co_components_within(g, verts);
    if co_parts.len() > 1 {
        let children = co_parts
            .iter()
            .map(|p| decompose(g, p))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Cotree::Join(children));
    }
    // connected and co-connected with >= 2 vertices: an induced P4 exists
    Err(find_p4(g, verts).expect("connected co-connected part must contain a P4"))
}

/// Connected components of `G[verts]`, ordered by smallest member.
fn components_within(g: &Graph, verts: &[usize]) -> Vec<Vec<usize>> {
    let inside: BTreeSet<usize> = verts.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut parts = Vec::new();
    for &s in verts {
        if seen.contains(&s) {
            continue;
        }
        let mut stack = vec![s];
        seen.insert(s);
        let mut part = Vec::new();
        while let Some(u) = stack.pop() {
            part.push(u);
            for &w in g.neighbors(u) {
                if inside.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Components of the complement of `G[verts]` without materializing it:
/// BFS where the frontier's complement-neighbors are the still-unvisited
/// vertices outside its real neighborhood.
fn co_components_within(g: &Graph, verts: &[usize]) -> Vec<Vec<usize>> {
    let mut unvisited: BTreeSet<usize> = verts.iter().copied().collect();
    let mut parts = Vec::new();
    while let Some(&s) = unvisited.iter().next() {
        unvisited.remove(&s);
        let mut stack = vec![s];
        let mut part = Vec::new();
        while let Some(u) = stack.pop() {
            part.push(u);
            let nb: BTreeSet<usize> = g.neighbors(u).iter().copied().collect();
            let grab: Vec<usize> = unvisited.iter().copied().filter(|w| !nb.contains(w)).collect();
            for w in grab {
                unvisited.remove(&w);
                stack.push(w);
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Finds an induced P4 inside `G[verts]` if one exists. Every induced path
/// `a - b - c - d` has a middle edge `bc` with `a ∈ N(b) \ N[c]`,
/// `d ∈ N(c) \ N[b]`, and `ad` absent; scanning middle edges finds one.
pub fn find_p4(g: &Graph, verts: &[usize]) -> Option<P4Witness> {
    let inside: BTreeSet<usize> = verts.iter().copied().collect();
    for &b in verts {
        for &c in g.neighbors(b) {
            if !inside.contains(&c) {
                continue;
            }
            let a_side: Vec<usize> = g
                .neighbors(b)
                .iter()
                .copied()
                .filter(|&a| inside.contains(&a) && a != c && !g.has_edge(a, c))
                .collect();
            if a_side.is_empty() {
                continue;
            }
            let d_side: Vec<usize> = g
                .neighbors(c)
                .iter()
                .copied()
                .filter(|&d| inside.contains(&d) && d != b && !g.has_edge(d, b))
                .collect();
            for &a in &a_side {
                for &d in &d_side {
                    if a != d && !g.has_edge(a, d) {
                        return Some(P4Witness { path: [a, b, c, d] });
                    }
                }
            }
        }
    }
    None
}

/// Brute-force P4-freeness check, the independent oracle for recognition.
pub fn is_p4_free_bruteforce(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a == b || a == c || a == d || b == c || b == d || c == d {
                        continue;
                    }
                    if g.has_edge(a, b)
                        && g.has_edge(b, c)
                        && g.has_edge(c, d)
                        && !g.has_edge(a, c)
                        && !g.has_edge(a, d)
                        && !g.has_edge(b, d)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn k2_is_a_join_of_leaves() {
        let g = graph(2, &[(0, 1)]);
        let ct = cotree_decompose(&g).unwrap();
        assert_eq!(ct, Cotree::Join(vec![Cotree::Leaf(0), Cotree::Leaf(1)]));
    }

    #[test]
    fn p4_yields_witness() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let w = cotree_decompose(&g).unwrap_err();
        let [a, b, c, d] = w.path;
        assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d));
        assert!(!g.has_edge(a, c) && !g.has_edge(b, d) && !g.has_edge(a, d));
    }

    #[test]
    fn c4_decomposes_into_join_of_nonedges() {
        // C4 = 0-1-2-3-0; non-adjacent pairs {0,2} and {1,3}
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let ct = cotree_decompose(&g).unwrap();
        assert_eq!(
            ct,
            Cotree::Join(vec![
                Cotree::Union(vec![Cotree::Leaf(0), Cotree::Leaf(2)]),
                Cotree::Union(vec![Cotree::Leaf(1), Cotree::Leaf(3)]),
            ])
        );
        assert_eq!(ct.evaluate(4), g);
    }

    #[test]
    fn display_sexpr() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let ct = cotree_decompose(&g).unwrap();
        assert_eq!(ct.to_string(), "(J (U 1 3) (U 2 4))");
    }

    #[test]
    fn recognition_matches_bruteforce_p4_check() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(41);
        let mut cographs = 0;
        for _ in 0..400 {
            let n = rng.gen_range(1..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            match cotree_decompose(&g) {
                Ok(ct) => {
                    assert!(is_p4_free_bruteforce(&g));
                    assert!(ct.is_canonical());
                    assert_eq!(ct.evaluate(n), g, "cotree must evaluate back to g");
                    cographs += 1;
                }
                Err(w) => {
                    assert!(!is_p4_free_bruteforce(&g));
                    let [a, b, c, d] = w.path;
                    assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d));
                    assert!(!g.has_edge(a, c) && !g.has_edge(b, d) && !g.has_edge(a, d));
                }
            }
        }
        assert!(cographs > 30);
    }
}
