//! The general canonical-set scheme: linear-time decision and sequence
//! construction for graphs whose components admit canonical dominating sets.
//!
//! Decision never builds a canonical set. An instance is YES exactly when the
//! endpoints are equal, or the threshold leaves a unit of slack, or every
//! endpoint sitting exactly at the threshold is non-minimal. Sequence
//! construction routes both endpoints through the composed canonical set,
//! dropping one deletable vertex first whenever an endpoint would otherwise
//! need to exceed the threshold.

use thiserror::Error;

use crate::batch;
use crate::canonical::cograph::{cograph_canonical, transform_cograph, CographCanonical};
use crate::canonical::interval::{interval_cells, label_interval, IntervalCells};
use crate::canonical::transform_by_cells;
use crate::canonical::tree::{label_tree, tree_cells, TreeCells};
use crate::cotree::{cotree_decompose, Cotree};
use crate::domset::{self, DomsetError};
use crate::graph::{Graph, VertexSet};
use crate::interval::{validate_interval_representation, IntervalRepresentation};
use crate::reconfig::{DsrInstance, Move, ReconfSequence};

/// Class evidence accompanying an instance. Solvers re-validate it instead of
/// trusting the caller.
#[derive(Debug, Clone)]
pub enum ClassEvidence {
    Tree,
    /// An optional externally supplied cotree; recognition runs either way,
    /// a supplied cotree is only checked for consistency.
    Cograph(Option<Cotree>),
    Interval(IntervalRepresentation),
    /// No evidence: only the exhaustive oracle can handle the instance.
    None,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemeError {
    #[error("component {0} does not belong to the declared class")]
    UnsupportedComponent(usize),
    #[error("interval representation does not match the graph")]
    BadIntervalEvidence,
    #[error("supplied cotree does not evaluate to the graph")]
    BadCotreeEvidence,
    #[error("no class evidence supplied")]
    MissingEvidence,
    #[error("endpoint is not a dominating set")]
    EndpointNotDominating,
    #[error("threshold k = {k} below max endpoint size {max}")]
    ThresholdTooSmall { k: usize, max: usize },
    #[error(transparent)]
    Domset(#[from] DomsetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    EqualEndpoints,
    SlackK,
    NonminimalEndpoints,
    MinimalEndpointAtK,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::EqualEndpoints => "EQUAL_ENDPOINTS",
            Reason::SlackK => "SLACK_K",
            Reason::NonminimalEndpoints => "NONMINIMAL_ENDPOINTS",
            Reason::MinimalEndpointAtK => "MINIMAL_ENDPOINT_AT_K",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub yes: bool,
    pub reason: Reason,
}

/// Per-component canonical machinery, in component-local vertex ids.
#[derive(Debug, Clone)]
enum ComponentKind {
    /// Single vertex: canonical is the vertex itself, transform is empty.
    Single,
    Tree(TreeCells),
    Interval(IntervalCells),
    Cograph(CographCanonical),
}

/// Canonical set and transform for one connected component.
#[derive(Debug, Clone)]
pub struct ComponentSolver {
    graph: Graph,
    /// `to_global[local] = global`.
    to_global: Vec<usize>,
    kind: ComponentKind,
    canonical_global: VertexSet,
}

impl ComponentSolver {
    pub fn canonical(&self) -> &VertexSet {
        &self.canonical_global
    }

    pub fn vertices(&self) -> VertexSet {
        self.to_global.iter().copied().collect()
    }

    fn project(&self, d: &VertexSet) -> VertexSet {
        self.to_global
            .iter()
            .enumerate()
            .filter(|&(_, &g)| d.contains(g))
            .map(|(local, _)| local)
            .collect()
    }

    /// Moves (in global ids) transforming `d`'s restriction to this component
    /// into the component canonical set.
    fn transform_moves(&self, d: &VertexSet) -> Result<Vec<Move>, SchemeError> {
        let local = self.project(d);
        if !domset::is_dominating(&self.graph, &local)? {
            return Err(SchemeError::EndpointNotDominating);
        }
        let seq = match &self.kind {
            ComponentKind::Single => ReconfSequence::empty(local),
            ComponentKind::Tree(cells) => transform_by_cells(&cells.order, &cells.cells, &local),
            ComponentKind::Interval(cells) => {
                transform_by_cells(&cells.order, &cells.cells, &local)
            }
            ComponentKind::Cograph(can) => transform_cograph(&self.graph, can, &local)
                .map_err(|_| SchemeError::EndpointNotDominating)?,
        };
        Ok(seq
            .moves
            .into_iter()
            .map(|m| match m {
                Move::Add(v) => Move::Add(self.to_global[v]),
                Move::Remove(v) => Move::Remove(self.to_global[v]),
            })
            .collect())
    }
}

/// The composed solver: per-component canonical sets joined into one.
#[derive(Debug, Clone)]
pub struct SchemeSolver {
    components: Vec<ComponentSolver>,
    canonical: VertexSet,
}

/// Joins per-component solvers; the canonical set is the union and the
/// transform runs the component transforms in component order.
pub fn compose_components(parts: Vec<ComponentSolver>) -> SchemeSolver {
    let canonical = parts
        .iter()
        .fold(VertexSet::new(), |acc, p| acc.union(&p.canonical_global));
    SchemeSolver {
        components: parts,
        canonical,
    }
}

impl SchemeSolver {
    /// Validates the evidence and builds per-component solvers with the
    /// default deterministic choices (smallest-id roots and pairs).
    pub fn build(g: &Graph, evidence: &ClassEvidence) -> Result<SchemeSolver, SchemeError> {
        Self::build_avoiding(g, evidence, &VertexSet::new())
    }

    /// Like [`SchemeSolver::build`], but prefers canonical sets disjoint from
    /// `avoid` where the class allows a choice (tree root, sweep direction,
    /// join pair). Falls back to the default when no variant avoids the set.
    pub fn build_avoiding(
        g: &Graph,
        evidence: &ClassEvidence,
        avoid: &VertexSet,
    ) -> Result<SchemeSolver, SchemeError> {
        let prepared = prepare_evidence(g, evidence)?;
        let comps = g.connected_components();
        let mut parts = Vec::with_capacity(comps.len());
        for (index, comp) in comps.iter().enumerate() {
            let (sub, to_global) = g.induced(comp);
            let avoid_local: VertexSet = to_global
                .iter()
                .enumerate()
                .filter(|&(_, &old)| avoid.contains(old))
                .map(|(new, _)| new)
                .collect();
            let kind = build_component(&sub, &to_global, index, &prepared, &avoid_local)?;
            let canonical_local = match &kind {
                ComponentKind::Single => VertexSet::singleton(0),
                ComponentKind::Tree(cells) => cells.canonical(),
                ComponentKind::Interval(cells) => cells.canonical(),
                ComponentKind::Cograph(can) => can.canonical.clone(),
            };
            let canonical_global = canonical_local.iter().map(|v| to_global[v]).collect();
            parts.push(ComponentSolver {
                graph: sub,
                to_global,
                kind,
                canonical_global,
            });
        }
        Ok(compose_components(parts))
    }

    /// The composed canonical dominating set (a minimum dominating set).
    pub fn canonical(&self) -> &VertexSet {
        &self.canonical
    }

    pub fn components(&self) -> &[ComponentSolver] {
        &self.components
    }

    /// Sequence from `d` to the canonical set; every intermediate set stays
    /// dominating with at most `|d| + 1` vertices. Component transforms are
    /// independent, so they may run in parallel; concatenation keeps
    /// component order, so the output is identical either way.
    pub fn transform(&self, d: &VertexSet) -> Result<ReconfSequence, SchemeError> {
        let per: Vec<Result<Vec<Move>, SchemeError>> =
            batch::map(&self.components, |c| c.transform_moves(d));
        let mut moves = Vec::new();
        for r in per {
            moves.extend(r?);
        }
        Ok(ReconfSequence {
            start: d.clone(),
            moves,
        })
    }
}

/// Evidence after whole-graph validation, ready for per-component builds.
enum PreparedEvidence {
    Tree,
    Cograph,
    Interval(IntervalRepresentation),
}

fn prepare_evidence(
    g: &Graph,
    evidence: &ClassEvidence,
) -> Result<PreparedEvidence, SchemeError> {
    match evidence {
        ClassEvidence::Tree => Ok(PreparedEvidence::Tree),
        ClassEvidence::Cograph(supplied) => {
            if let Some(ct) = supplied {
                if ct.evaluate(g.n()) != *g {
                    return Err(SchemeError::BadCotreeEvidence);
                }
            }
            Ok(PreparedEvidence::Cograph)
        }
        ClassEvidence::Interval(rep) => {
            match validate_interval_representation(g, rep) {
                Ok(true) => {}
                _ => return Err(SchemeError::BadIntervalEvidence),
            }
            Ok(PreparedEvidence::Interval(rep.canonicalized()))
        }
        ClassEvidence::None => Err(SchemeError::MissingEvidence),
    }
}

/// How many alternative tree roots to try when steering the canonical set
/// away from an avoid vertex. Bounded so pathological solve calls on huge
/// trees stay near-linear.
const MAX_ROOT_VARIANTS: usize = 64;

fn build_component(
    sub: &Graph,
    to_global: &[usize],
    index: usize,
    prepared: &PreparedEvidence,
    avoid: &VertexSet,
) -> Result<ComponentKind, SchemeError> {
    if sub.n() == 1 {
        return Ok(ComponentKind::Single);
    }
    let clean = |canonical: &VertexSet| canonical.intersection(avoid).is_empty();
    match prepared {
        PreparedEvidence::Tree => {
            if !sub.is_tree() {
                return Err(SchemeError::UnsupportedComponent(index));
            }
            let mut fallback = None;
            for (tried, root) in (0..sub.n()).filter(|&v| sub.degree(v) == 1).enumerate() {
                let lab = label_tree(sub, root)
                    .map_err(|_| SchemeError::UnsupportedComponent(index))?;
                if avoid.is_empty() || clean(&lab.v2()) {
                    return Ok(ComponentKind::Tree(tree_cells(&lab)));
                }
                if fallback.is_none() {
                    fallback = Some(tree_cells(&lab));
                }
                if tried + 1 >= MAX_ROOT_VARIANTS {
                    break;
                }
            }
            Ok(ComponentKind::Tree(fallback.expect("a tree has a leaf")))
        }
        PreparedEvidence::Cograph => {
            let ct = cotree_decompose(sub)
                .map_err(|_| SchemeError::UnsupportedComponent(index))?;
            let can = cograph_canonical(sub, &ct)
                .map_err(|_| SchemeError::UnsupportedComponent(index))?;
            if avoid.is_empty() || clean(&can.canonical) {
                return Ok(ComponentKind::Cograph(can));
            }
            Ok(ComponentKind::Cograph(steer_cograph(sub, &ct, avoid, can)))
        }
        PreparedEvidence::Interval(rep) => {
            let local = rep.restricted(to_global);
            let lab = label_interval(sub, &local)
                .map_err(|_| SchemeError::UnsupportedComponent(index))?;
            if avoid.is_empty() || clean(&lab.v2()) {
                return Ok(ComponentKind::Interval(interval_cells(&lab, &local)));
            }
            // sweep from the other end: the mirrored representation labels
            // the same graph with a usually different canonical set
            let mirrored = local.mirrored().canonicalized();
            if let Ok(mlab) = label_interval(sub, &mirrored) {
                if clean(&mlab.v2()) {
                    return Ok(ComponentKind::Interval(interval_cells(&mlab, &mirrored)));
                }
            }
            Ok(ComponentKind::Interval(interval_cells(&lab, &local)))
        }
    }
}

/// Alternative canonical sets for a connected cograph: another universal
/// vertex, or one vertex from each side of any regrouping of the join
/// children. Every such choice is canonical; this picks one missing `avoid`.
fn steer_cograph(
    sub: &Graph,
    ct: &Cotree,
    avoid: &VertexSet,
    default: CographCanonical,
) -> CographCanonical {
    let n = sub.n();
    let universals: Vec<usize> = (0..n).filter(|&v| sub.degree(v) == n - 1).collect();
    if !universals.is_empty() {
        // a minimum dominating set has size one here, so only universal
        // singletons are canonical
        return match universals.iter().find(|&&w| !avoid.contains(w)) {
            Some(&w) => CographCanonical {
                canonical: VertexSet::singleton(w),
                join_split: None,
            },
            None => default,
        };
    }
    let children = match ct {
        Cotree::Join(children) => children,
        _ => return default,
    };
    let leaf_sets: Vec<VertexSet> = children.iter().map(|c| c.leaves()).collect();
    for (i, side1) in leaf_sets.iter().enumerate() {
        let side2 = leaf_sets
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(VertexSet::new(), |acc, (_, s)| acc.union(s));
        let a = side1.iter().find(|&v| !avoid.contains(v));
        let b = side2.iter().find(|&v| !avoid.contains(v));
        if let (Some(a), Some(b)) = (a, b) {
            return CographCanonical {
                canonical: VertexSet::from_vec(vec![a, b]),
                join_split: Some((side1.clone(), side2)),
            };
        }
    }
    default
}

/// Quick class membership check, without building canonical machinery.
/// Used by `decide`, which must stay linear for trees.
pub fn validate_class(g: &Graph, evidence: &ClassEvidence) -> Result<(), SchemeError> {
    match evidence {
        ClassEvidence::Tree => {
            let comps = g.connected_components();
            for (index, comp) in comps.iter().enumerate() {
                let (sub, _) = g.induced(comp);
                if !sub.is_tree() {
                    return Err(SchemeError::UnsupportedComponent(index));
                }
            }
            Ok(())
        }
        ClassEvidence::Cograph(supplied) => {
            if let Some(ct) = supplied {
                if ct.evaluate(g.n()) != *g {
                    return Err(SchemeError::BadCotreeEvidence);
                }
                return Ok(());
            }
            let comps = g.connected_components();
            for (index, comp) in comps.iter().enumerate() {
                let (sub, _) = g.induced(comp);
                if cotree_decompose(&sub).is_err() {
                    return Err(SchemeError::UnsupportedComponent(index));
                }
            }
            Ok(())
        }
        ClassEvidence::Interval(rep) => match validate_interval_representation(g, rep) {
            Ok(true) => Ok(()),
            _ => Err(SchemeError::BadIntervalEvidence),
        },
        ClassEvidence::None => Err(SchemeError::MissingEvidence),
    }
}

fn check_instance(inst: &DsrInstance) -> Result<(), SchemeError> {
    if !domset::is_dominating(&inst.graph, &inst.source)?
        || !domset::is_dominating(&inst.graph, &inst.target)?
    {
        return Err(SchemeError::EndpointNotDominating);
    }
    let max = inst.source.len().max(inst.target.len());
    if inst.k < max {
        return Err(SchemeError::ThresholdTooSmall { k: inst.k, max });
    }
    Ok(())
}

/// Decides the instance in `O(n + m)` after class validation, without ever
/// constructing a canonical set.
pub fn decide(inst: &DsrInstance, evidence: &ClassEvidence) -> Result<Decision, SchemeError> {
    check_instance(inst)?;
    validate_class(&inst.graph, evidence)?;
    Ok(decide_validated(inst))
}

fn decide_validated(inst: &DsrInstance) -> Decision {
    let yes = |reason| Decision { yes: true, reason };
    if inst.source == inst.target {
        return yes(Reason::EqualEndpoints);
    }
    let max = inst.source.len().max(inst.target.len());
    if inst.k > max {
        return yes(Reason::SlackK);
    }
    // k == max: every endpoint of size exactly k must be non-minimal
    for d in [&inst.source, &inst.target] {
        let minimal = domset::is_minimal(&inst.graph, d).expect("endpoints validated");
        if d.len() == inst.k && minimal {
            return Decision {
                yes: false,
                reason: Reason::MinimalEndpointAtK,
            };
        }
    }
    yes(Reason::NonminimalEndpoints)
}

/// Decides and, on YES, constructs a verifying sequence through a composed
/// canonical set: `Ds -> C` followed by the reverse of `Dt -> C`.
///
/// When an endpoint sits exactly at the threshold and its transform would
/// momentarily exceed it, one deletable vertex is removed first. Routing
/// through a canonical set containing that vertex would force a third touch
/// on it, so construction retries with canonical sets steered away from any
/// over-touched vertex until every vertex is touched at most twice (at most
/// a handful of rebuilds; the first clean sequence wins).
pub fn solve(
    inst: &DsrInstance,
    evidence: &ClassEvidence,
) -> Result<(Decision, Option<ReconfSequence>), SchemeError> {
    check_instance(inst)?;
    let decision = {
        validate_class(&inst.graph, evidence)?;
        decide_validated(inst)
    };
    if !decision.yes {
        return Ok((decision, None));
    }
    if decision.reason == Reason::EqualEndpoints {
        return Ok((
            decision,
            Some(ReconfSequence::empty(inst.source.clone())),
        ));
    }

    let n = inst.graph.n();
    let mut avoid = VertexSet::new();
    let mut best: Option<(usize, usize, ReconfSequence)> = None;
    for _ in 0..4 {
        let solver = SchemeSolver::build_avoiding(&inst.graph, evidence, &avoid)?;
        let forward = half_sequence(inst, &solver, &inst.source, &inst.target)?;
        let backward = half_sequence(inst, &solver, &inst.target, &inst.source)?;
        let seq = forward
            .chain(&backward.reverse().expect("half sequences replay"))
            .expect("halves meet at the canonical set")
            .simplified();
        let counts = seq.touch_counts(n);
        let worst = counts.iter().copied().max().unwrap_or(0);
        if worst <= 2 {
            return Ok((decision, Some(seq)));
        }
        let grew = counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 2)
            .fold(false, |acc, (v, _)| avoid.insert(v) || acc);
        if best.as_ref().is_none_or(|(w, l, _)| (worst, seq.len()) < (*w, *l)) {
            best = Some((worst, seq.len(), seq));
        }
        if !grew {
            break;
        }
    }
    let (_, _, seq) = best.expect("at least one construction ran");
    Ok((decision, Some(seq)))
}

/// Sequence from `d` to the canonical set staying within `inst.k`.
fn half_sequence(
    inst: &DsrInstance,
    solver: &SchemeSolver,
    d: &VertexSet,
    other: &VertexSet,
) -> Result<ReconfSequence, SchemeError> {
    let direct = solver.transform(d)?;
    if max_size(&direct) <= inst.k {
        return Ok(direct);
    }
    // |d| = k and the transform needs one more: drop a deletable vertex first
    let deletable = domset::deletable_vertices(&inst.graph, d)?;
    let x = deletable
        .iter()
        .find(|&v| !solver.canonical().contains(v))
        .or_else(|| deletable.iter().find(|&v| other.contains(v)))
        .or_else(|| deletable.iter().next())
        .expect("a YES endpoint at the threshold is non-minimal");
    let mut seq = ReconfSequence {
        start: d.clone(),
        moves: vec![Move::Remove(x)],
    };
    let rest = solver.transform(&d.without(x))?;
    seq.moves.extend(rest.moves);
    debug_assert!(max_size(&seq) <= inst.k);
    Ok(seq)
}

fn max_size(seq: &ReconfSequence) -> usize {
    let mut cur = seq.start.len();
    let mut max = cur;
    for m in &seq.moves {
        match m {
            Move::Add(_) => cur += 1,
            Move::Remove(_) => cur -= 1,
        }
        max = max.max(cur);
    }
    max
}
