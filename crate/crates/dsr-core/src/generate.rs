//! Seeded random instance generators.
//!
//! Determinism contract: the same [`GenSpec`] always produces the same
//! instance, byte for byte. Each kind of draw (graph shape, endpoints, ...)
//! runs on its own ChaCha stream keyed by `(seed, stream name)` so adding a
//! knob to one stage never shifts another stage's randomness.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::cotree::Cotree;
use crate::domset;
use crate::graph::{Graph, VertexSet};
use crate::interval::{Endpoint, IntervalRepresentation};
use crate::reconfig::DsrInstance;
use crate::reductions::VcrInstance;
use crate::scheme::ClassEvidence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Tree,
    Interval,
    Cograph,
    General,
    Vcr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPolicy {
    /// `k = max{|Ds|, |Dt|}`.
    Tight,
    /// `k = max{|Ds|, |Dt|} + 1`.
    Slack,
    Explicit(usize),
}

#[derive(Debug, Clone)]
pub struct GenSpec {
    pub class: GraphClass,
    pub n: usize,
    pub seed: u64,
    /// Edge probability for `General`/`Vcr`; ignored elsewhere.
    pub density: f64,
    /// Upper bound on random extra vertices added to each endpoint set.
    pub padding: usize,
    pub k_policy: KPolicy,
}

impl GenSpec {
    pub fn new(class: GraphClass, n: usize, seed: u64) -> Self {
        GenSpec {
            class,
            n,
            seed,
            density: 0.35,
            padding: 2,
            k_policy: KPolicy::Slack,
        }
    }

    pub fn with_k_policy(mut self, k_policy: KPolicy) -> Self {
        self.k_policy = k_policy;
        self
    }

    pub fn with_padding(mut self, padding: usize) -> Self {
        self.padding = padding;
        self
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("n must be at least 1")]
    EmptyGraph,
    #[error("explicit k = {k} below max endpoint size {max}")]
    InfeasibleK { k: usize, max: usize },
}

/// A generated instance together with its class evidence.
#[derive(Debug, Clone)]
pub enum Generated {
    Dsr(DsrInstance, ClassEvidence),
    Vcr(VcrInstance),
}

/// Stream-keyed PRNG: same `(seed, name)` always yields the same stream.
pub fn stream_rng(seed: u64, name: &str) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    for (i, b) in name.bytes().enumerate() {
        key[8 + (i % 24)] ^= b.rotate_left((i / 24) as u32);
    }
    ChaCha12Rng::from_seed(key)
}

/// Decodes a Prüfer sequence into a tree on `n >= 2` vertices.
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> Graph {
    assert!(n >= 2);
    assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(u) = leaves.pop().expect("leaf available");
        edges.push((u, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Graph::from_edges(n, edges).expect("Prüfer decoding yields a tree")
}

pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    if n == 1 {
        return Graph::empty(1);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_pruefer(n, &seq)
}

/// `n` intervals over `4n` grid points, all endpoints distinct.
pub fn random_interval_representation(n: usize, rng: &mut impl Rng) -> IntervalRepresentation {
    let mut points: Vec<i64> = (1..=(4 * n as i64)).collect();
    points.shuffle(rng);
    let mut rep = IntervalRepresentation::with_capacity(n);
    for v in 0..n {
        let a = points[2 * v];
        let b = points[2 * v + 1];
        rep.set(
            v,
            Endpoint::from_integer(a.min(b)),
            Endpoint::from_integer(a.max(b)),
        );
    }
    rep
}

pub fn intersection_graph(rep: &IntervalRepresentation) -> Graph {
    let n = rep.len();
    let mut edges = Vec::new();
    for u in 0..n {
        let (lu, ru) = rep.get(u).unwrap();
        for v in (u + 1)..n {
            let (lv, rv) = rep.get(v).unwrap();
            if lu.max(lv) <= ru.min(rv) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Connected interval graph with its representation, by rejection sampling.
pub fn random_connected_interval(
    n: usize,
    rng: &mut impl Rng,
) -> (Graph, IntervalRepresentation) {
    loop {
        let rep = random_interval_representation(n, rng);
        let g = intersection_graph(&rep);
        if g.is_connected() {
            return (g, rep);
        }
    }
}

/// Random canonical cotree over leaves `0..n`, alternating node kinds.
/// A JOIN root makes the evaluated cograph connected for `n >= 2`.
pub fn random_cotree(n: usize, rng: &mut impl Rng) -> Cotree {
    let leaves: Vec<usize> = (0..n).collect();
    build_cotree(&leaves, true, rng)
}

fn build_cotree(leaves: &[usize], join: bool, rng: &mut impl Rng) -> Cotree {
    if leaves.len() == 1 {
        return Cotree::Leaf(leaves[0]);
    }
    let parts = rng.gen_range(2..=leaves.len().min(4));
    // random composition of the leaf range into nonempty blocks
    let mut cuts: Vec<usize> = (1..leaves.len()).collect();
    cuts.shuffle(rng);
    cuts.truncate(parts - 1);
    cuts.sort_unstable();
    cuts.push(leaves.len());
    let mut children = Vec::with_capacity(parts);
    let mut prev = 0;
    for cut in cuts {
        children.push(build_cotree(&leaves[prev..cut], !join, rng));
        prev = cut;
    }
    if join {
        Cotree::Join(children)
    } else {
        Cotree::Union(children)
    }
}

pub fn random_connected_cograph(n: usize, rng: &mut impl Rng) -> (Graph, Cotree) {
    if n == 1 {
        return (Graph::empty(1), Cotree::Leaf(0));
    }
    let ct = random_cotree(n, rng);
    let g = ct.evaluate(n);
    debug_assert!(g.is_connected());
    (g, ct)
}

pub fn random_gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random graph where every vertex has at least one edge (`n >= 2`): each
/// vertex gets a random partner first, then extra edges at the given density.
pub fn random_graph_no_isolates(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    assert!(n >= 2, "need at least one edge");
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        let mut w = rng.gen_range(0..n - 1);
        if w >= v {
            w += 1;
        }
        edges.push((v.min(w), v.max(w)));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Greedy dominating set with a bucket queue: repeatedly takes a vertex
/// covering the most uncovered vertices. Near-linear, which keeps endpoint
/// construction cheap even on 10^5-vertex trees.
pub fn greedy_dominating_set(g: &Graph, rng: &mut impl Rng) -> VertexSet {
    let n = g.n();
    if n == 0 {
        return VertexSet::new();
    }
    let mut gain: Vec<usize> = (0..n).map(|v| g.degree(v) + 1).collect();
    let max_gain = *gain.iter().max().unwrap();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_gain + 1];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in &order {
        buckets[gain[v]].push(v);
    }
    let mut covered = vec![false; n];
    let mut uncovered = n;
    let mut chosen = vec![false; n];
    let mut level = max_gain;
    let mut picked = Vec::new();
    while uncovered > 0 {
        while buckets[level].is_empty() {
            level -= 1;
        }
        let v = buckets[level].pop().unwrap();
        if chosen[v] {
            continue;
        }
        // entries go stale as neighbors get covered; recompute lazily
        let fresh = usize::from(!covered[v])
            + g.neighbors(v).iter().filter(|&&w| !covered[w]).count();
        if fresh < level {
            gain[v] = fresh;
            buckets[fresh].push(v);
            continue;
        }
        chosen[v] = true;
        picked.push(v);
        if !covered[v] {
            covered[v] = true;
            uncovered -= 1;
        }
        for &w in g.neighbors(v) {
            if !covered[w] {
                covered[w] = true;
                uncovered -= 1;
            }
        }
    }
    VertexSet::from_vec(picked)
}

/// Greedy set plus up to `padding` random extra vertices; always dominating.
pub fn random_endpoint(g: &Graph, padding: usize, rng: &mut impl Rng) -> VertexSet {
    let mut d = greedy_dominating_set(g, rng);
    if padding > 0 && d.len() < g.n() {
        let extra = rng.gen_range(0..=padding);
        let mut others: Vec<usize> = (0..g.n()).filter(|&v| !d.contains(v)).collect();
        others.shuffle(rng);
        for v in others.into_iter().take(extra) {
            d.insert(v);
        }
    }
    debug_assert!(domset::is_dominating(g, &d).unwrap());
    d
}

/// Minimal-ish vertex cover greedily over shuffled edges, then padding.
pub fn random_cover(g: &Graph, padding: usize, rng: &mut impl Rng) -> VertexSet {
    let mut cover = VertexSet::new();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(rng);
    for (u, v) in edges {
        if !cover.contains(u) && !cover.contains(v) {
            cover.insert(if rng.gen_bool(0.5) { u } else { v });
        }
    }
    if padding > 0 && cover.len() < g.n() {
        let extra = rng.gen_range(0..=padding);
        let mut others: Vec<usize> = (0..g.n()).filter(|&v| !cover.contains(v)).collect();
        others.shuffle(rng);
        for v in others.into_iter().take(extra) {
            cover.insert(v);
        }
    }
    cover
}

fn resolve_k(policy: KPolicy, max: usize) -> Result<usize, GenError> {
    match policy {
        KPolicy::Tight => Ok(max),
        KPolicy::Slack => Ok(max + 1),
        KPolicy::Explicit(k) => {
            if k < max {
                Err(GenError::InfeasibleK { k, max })
            } else {
                Ok(k)
            }
        }
    }
}

/// Generates an instance from a spec. See the module docs for the
/// determinism contract.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    if spec.n == 0 {
        return Err(GenError::EmptyGraph);
    }
    let mut graph_rng = stream_rng(spec.seed, "graph");
    let mut src_rng = stream_rng(spec.seed, "source");
    let mut tgt_rng = stream_rng(spec.seed, "target");

    let (graph, evidence) = match spec.class {
        GraphClass::Tree => (random_tree(spec.n, &mut graph_rng), ClassEvidence::Tree),
        GraphClass::Interval => {
            let (g, rep) = random_connected_interval(spec.n, &mut graph_rng);
            (g, ClassEvidence::Interval(rep))
        }
        GraphClass::Cograph => {
            let (g, ct) = random_connected_cograph(spec.n, &mut graph_rng);
            (g, ClassEvidence::Cograph(Some(ct)))
        }
        GraphClass::General => (
            random_gnp(spec.n, spec.density, &mut graph_rng),
            ClassEvidence::None,
        ),
        GraphClass::Vcr => {
            if spec.n < 2 {
                return Err(GenError::EmptyGraph);
            }
            let g = random_graph_no_isolates(spec.n, spec.density, &mut graph_rng);
            let source = random_cover(&g, spec.padding, &mut src_rng);
            let target = random_cover(&g, spec.padding, &mut tgt_rng);
            let k = resolve_k(spec.k_policy, source.len().max(target.len()))?;
            let inst =
                VcrInstance::new(g, source, target, k).expect("generated covers are valid");
            return Ok(Generated::Vcr(inst));
        }
    };

    let source = random_endpoint(&graph, spec.padding, &mut src_rng);
    let target = random_endpoint(&graph, spec.padding, &mut tgt_rng);
    let k = resolve_k(spec.k_policy, source.len().max(target.len()))?;
    let inst = DsrInstance::new(graph, source, target, k).expect("generated endpoints dominate");
    Ok(Generated::Dsr(inst, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotree::cotree_decompose;
    use crate::interval::validate_interval_representation;

    #[test]
    fn pruefer_decodes_paths_and_stars() {
        // sequence (2, 3) over n = 4 gives edges (0,2),(1,3),(2,3): a path
        let t = tree_from_pruefer(4, &[2, 3]);
        assert!(t.is_tree());
        assert!(t.has_edge(0, 2) && t.has_edge(2, 3) && t.has_edge(1, 3));
        // constant sequence gives a star
        let star = tree_from_pruefer(5, &[0, 0, 0]);
        assert!(star.is_tree());
        assert_eq!(star.degree(0), 4);
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = stream_rng(3, "t");
        for _ in 0..100 {
            let n = rng.gen_range(2..=30);
            assert!(random_tree(n, &mut rng).is_tree());
        }
    }

    #[test]
    fn generated_instances_are_deterministic() {
        let spec = GenSpec::new(GraphClass::Interval, 10, 7);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        match (a, b) {
            (Generated::Dsr(ia, ea), Generated::Dsr(ib, eb)) => {
                assert_eq!(ia.graph, ib.graph);
                assert_eq!(ia.source, ib.source);
                assert_eq!(ia.target, ib.target);
                assert_eq!(ia.k, ib.k);
                match (ea, eb) {
                    (ClassEvidence::Interval(ra), ClassEvidence::Interval(rb)) => {
                        assert_eq!(ra, rb)
                    }
                    _ => panic!("expected interval evidence"),
                }
            }
            _ => panic!("expected DSR instances"),
        }
    }

    #[test]
    fn generated_evidence_validates() {
        for seed in 0..30 {
            match generate(&GenSpec::new(GraphClass::Interval, 9, seed)).unwrap() {
                Generated::Dsr(inst, ClassEvidence::Interval(rep)) => {
                    assert!(validate_interval_representation(&inst.graph, &rep).unwrap());
                    assert!(inst.graph.is_connected());
                }
                _ => unreachable!(),
            }
            match generate(&GenSpec::new(GraphClass::Cograph, 9, seed)).unwrap() {
                Generated::Dsr(inst, ClassEvidence::Cograph(Some(ct))) => {
                    assert_eq!(ct.evaluate(inst.graph.n()), inst.graph);
                    assert!(inst.graph.is_connected());
                    assert!(cotree_decompose(&inst.graph).is_ok());
                }
                _ => unreachable!(),
            }
            match generate(&GenSpec::new(GraphClass::Tree, 9, seed)).unwrap() {
                Generated::Dsr(inst, ClassEvidence::Tree) => assert!(inst.graph.is_tree()),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn single_vertex_tree_instance() {
        match generate(&GenSpec::new(GraphClass::Tree, 1, 5)).unwrap() {
            Generated::Dsr(inst, _) => {
                assert_eq!(inst.source, VertexSet::singleton(0));
                assert_eq!(inst.target, VertexSet::singleton(0));
                assert!(inst.k >= 1);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn tight_policy_pins_k_to_max() {
        let spec = GenSpec::new(GraphClass::Cograph, 12, 3).with_k_policy(KPolicy::Tight);
        match generate(&spec).unwrap() {
            Generated::Dsr(inst, _) => {
                assert_eq!(inst.k, inst.source.len().max(inst.target.len()))
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn explicit_k_below_max_is_rejected() {
        let spec = GenSpec::new(GraphClass::Tree, 8, 1).with_k_policy(KPolicy::Explicit(1));
        assert!(matches!(
            generate(&spec),
            Err(GenError::InfeasibleK { k: 1, .. })
        ));
    }

    #[test]
    fn greedy_dominating_is_dominating() {
        let mut rng = stream_rng(9, "g");
        for _ in 0..50 {
            let n = rng.gen_range(2..=20);
            let g = random_graph_no_isolates(n, 0.2, &mut rng);
            let d = greedy_dominating_set(&g, &mut rng);
            assert!(domset::is_dominating(&g, &d).unwrap());
        }
    }

    #[test]
    fn covers_cover() {
        let mut rng = stream_rng(9, "c");
        for _ in 0..50 {
            let n = rng.gen_range(2..=12);
            let g = random_graph_no_isolates(n, 0.3, &mut rng);
            let c = random_cover(&g, 2, &mut rng);
            assert!(g.edges().all(|(u, v)| c.contains(u) || c.contains(v)));
        }
    }
}
