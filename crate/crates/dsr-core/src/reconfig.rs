//! Reconfiguration moves, sequences, the trusted verifier, and the exhaustive
//! BFS reachability oracle.
//!
//! The oracle is the ground truth for everything else in the crate, so it
//! favors exactness and determinism over speed: states are bitmasks, the
//! search is plain BFS with a fixed expansion order, and the verifier checks
//! domination from scratch at every step.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::domset::{self, DomsetError};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Add(usize),
    Remove(usize),
}

impl Move {
    pub fn vertex(self) -> usize {
        match self {
            Move::Add(v) | Move::Remove(v) => v,
        }
    }

    pub fn flipped(self) -> Move {
        match self {
            Move::Add(v) => Move::Remove(v),
            Move::Remove(v) => Move::Add(v),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Add(v) => write!(f, "+ {}", v + 1),
            Move::Remove(v) => write!(f, "- {}", v + 1),
        }
    }
}

/// A start set plus an ordered list of single-vertex moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfSequence {
    pub start: VertexSet,
    pub moves: Vec<Move>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("move {index}: cannot add vertex {vertex}, already present")]
    AddPresent { index: usize, vertex: usize },
    #[error("move {index}: cannot remove vertex {vertex}, not present")]
    RemoveAbsent { index: usize, vertex: usize },
}

impl ReconfSequence {
    pub fn empty(start: VertexSet) -> Self {
        ReconfSequence {
            start,
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the moves, returning all intermediate sets `D_0 ..= D_l`.
    /// Consecutive sets differ in exactly one vertex by construction.
    pub fn apply(&self) -> Result<Vec<VertexSet>, SequenceError> {
        let mut sets = Vec::with_capacity(self.moves.len() + 1);
        let mut cur = self.start.clone();
        sets.push(cur.clone());
        for (index, &mv) in self.moves.iter().enumerate() {
            match mv {
                Move::Add(vertex) => {
                    if !cur.insert(vertex) {
                        return Err(SequenceError::AddPresent { index, vertex });
                    }
                }
                Move::Remove(vertex) => {
                    if !cur.remove(vertex) {
                        return Err(SequenceError::RemoveAbsent { index, vertex });
                    }
                }
            }
            sets.push(cur.clone());
        }
        Ok(sets)
    }

    /// The final set, assuming the sequence replays cleanly.
    pub fn final_set(&self) -> Result<VertexSet, SequenceError> {
        Ok(self.apply()?.pop().expect("apply returns at least D_0"))
    }

    /// The sequence run backwards: starts at the final set, each move flipped.
    pub fn reverse(&self) -> Result<ReconfSequence, SequenceError> {
        let start = self.final_set()?;
        let moves = self.moves.iter().rev().map(|m| m.flipped()).collect();
        Ok(ReconfSequence { start, moves })
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn chain(mut self, other: &ReconfSequence) -> Result<ReconfSequence, SequenceError> {
        debug_assert_eq!(self.final_set()?, other.start);
        self.moves.extend_from_slice(&other.moves);
        Ok(self)
    }

    /// Vertices added or removed at least once.
    pub fn touched(&self) -> VertexSet {
        self.moves.iter().map(|m| m.vertex()).collect()
    }

    /// Drops adjacent inverse move pairs (`+v -v` or `-v +v`), cascading.
    ///
    /// Every surviving intermediate set already appeared in the original
    /// sequence, so validity is preserved unconditionally. One stack pass:
    /// a move canceling the stack top pops it instead of pushing.
    pub fn simplified(&self) -> ReconfSequence {
        let mut stack: Vec<Move> = Vec::with_capacity(self.moves.len());
        for &m in &self.moves {
            if stack.last() == Some(&m.flipped()) {
                stack.pop();
            } else {
                stack.push(m);
            }
        }
        ReconfSequence {
            start: self.start.clone(),
            moves: stack,
        }
    }

    /// How many times each vertex is touched.
    pub fn touch_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0usize; n];
        for m in &self.moves {
            counts[m.vertex()] += 1;
        }
        counts
    }
}

/// A DSR instance: graph, source and target dominating sets, and threshold.
#[derive(Debug, Clone)]
pub struct DsrInstance {
    pub graph: Graph,
    pub source: VertexSet,
    pub target: VertexSet,
    pub k: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("source is not a dominating set")]
    SourceNotDominating,
    #[error("target is not a dominating set")]
    TargetNotDominating,
    #[error("threshold k = {k} below max endpoint size {max}")]
    ThresholdTooSmall { k: usize, max: usize },
    #[error(transparent)]
    Domset(#[from] DomsetError),
}

impl DsrInstance {
    pub fn new(
        graph: Graph,
        source: VertexSet,
        target: VertexSet,
        k: usize,
    ) -> Result<Self, InstanceError> {
        if !domset::is_dominating(&graph, &source)? {
            return Err(InstanceError::SourceNotDominating);
        }
        if !domset::is_dominating(&graph, &target)? {
            return Err(InstanceError::TargetNotDominating);
        }
        let max = source.len().max(target.len());
        if k < max {
            return Err(InstanceError::ThresholdTooSmall { k, max });
        }
        Ok(DsrInstance {
            graph,
            source,
            target,
            k,
        })
    }
}

/// First violated condition found by [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    StartMismatch,
    BadMove { index: usize, mv: Move },
    NotDominating { index: usize },
    SizeExceeded { index: usize, size: usize },
    FinalMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StartMismatch => write!(f, "start set differs from source"),
            Violation::BadMove { index, mv } => write!(f, "invalid move {mv} at step {index}"),
            Violation::NotDominating { index } => {
                write!(f, "set {index} is not a dominating set")
            }
            Violation::SizeExceeded { index, size } => {
                write!(f, "set {index} has size {size} above threshold")
            }
            Violation::FinalMismatch => write!(f, "final set differs from target"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub violation: Option<Violation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks a sequence against an instance: start equals source, every move
/// legal, every intermediate a dominating set of size at most `k`, final set
/// equals target. Domination is rechecked from scratch per step.
pub fn verify(inst: &DsrInstance, seq: &ReconfSequence) -> VerifyReport {
    let fail = |violation| VerifyReport {
        violation: Some(violation),
    };
    if seq.start != inst.source {
        return fail(Violation::StartMismatch);
    }
    let mut cur = seq.start.clone();
    for index in 0..=seq.moves.len() {
        match domset::is_dominating(&inst.graph, &cur) {
            Ok(true) => {}
            _ => return fail(Violation::NotDominating { index }),
        }
        if cur.len() > inst.k {
            return fail(Violation::SizeExceeded {
                index,
                size: cur.len(),
            });
        }
        if index < seq.moves.len() {
            let mv = seq.moves[index];
            let ok = match mv {
                Move::Add(v) => v < inst.graph.n() && cur.insert(v),
                Move::Remove(v) => cur.remove(v),
            };
            if !ok {
                return fail(Violation::BadMove { index, mv });
            }
        }
    }
    if cur != inst.target {
        return fail(Violation::FinalMismatch);
    }
    VerifyReport { violation: None }
}

pub const ORACLE_VERTEX_LIMIT: usize = 20;
pub const DEFAULT_NODE_BUDGET: usize = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph too large for the exhaustive oracle (n = {0} > {1})")]
    TooLarge(usize, usize),
    #[error("state budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("endpoint is not feasible")]
    InfeasibleEndpoint,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states_expanded: usize,
}

/// BFS over feasible subsets of `0..n` with at most `k` members, moving by
/// single-vertex additions and removals. Returns the shortest mask path from
/// `source` to `target`, or `None` when unreachable.
///
/// Expansion order is additions by ascending vertex id, then removals by
/// ascending vertex id, so returned paths are deterministic.
pub fn mask_bfs(
    n: usize,
    source: u64,
    target: u64,
    k: usize,
    budget: usize,
    feasible: impl Fn(u64) -> bool,
) -> Result<(Option<Vec<u64>>, SearchStats), OracleError> {
    let mut stats = SearchStats::default();
    let size_ok = |mask: u64| (mask.count_ones() as usize) <= k;
    if !size_ok(source) || !feasible(source) || !size_ok(target) || !feasible(target) {
        return Err(OracleError::InfeasibleEndpoint);
    }

    let mut parent: HashMap<u64, u64> = HashMap::new();
    parent.insert(source, source);
    let mut queue = VecDeque::new();
    queue.push_back(source);

    let mut found = source == target;
    'search: while let Some(cur) = queue.pop_front() {
        if found {
            break;
        }
        stats.states_expanded += 1;
        let visit = |next: u64,
                     parent: &mut HashMap<u64, u64>,
                     queue: &mut VecDeque<u64>|
         -> Result<bool, OracleError> {
            if !parent.contains_key(&next) && size_ok(next) && feasible(next) {
                if parent.len() >= budget {
                    return Err(OracleError::BudgetExceeded(budget));
                }
                parent.insert(next, cur);
                queue.push_back(next);
                if next == target {
                    return Ok(true);
                }
            }
            Ok(false)
        };
        for v in 0..n {
            let bit = 1u64 << v;
            if cur & bit == 0 && visit(cur | bit, &mut parent, &mut queue)? {
                found = true;
                break 'search;
            }
        }
        for v in 0..n {
            let bit = 1u64 << v;
            if cur & bit != 0 && visit(cur & !bit, &mut parent, &mut queue)? {
                found = true;
                break 'search;
            }
        }
    }

    if !found {
        return Ok((None, stats));
    }
    let mut path = vec![target];
    let mut cur = target;
    while cur != source {
        cur = parent[&cur];
        path.push(cur);
    }
    path.reverse();
    Ok((Some(path), stats))
}

/// Turns a mask path into a move sequence.
pub fn path_to_sequence(path: &[u64]) -> ReconfSequence {
    let start = VertexSet::from_mask(path[0]);
    let moves = path
        .windows(2)
        .map(|w| {
            let diff = w[0] ^ w[1];
            debug_assert_eq!(diff.count_ones(), 1);
            let v = diff.trailing_zeros() as usize;
            if w[1] & diff != 0 {
                Move::Add(v)
            } else {
                Move::Remove(v)
            }
        })
        .collect();
    ReconfSequence { start, moves }
}

/// Exhaustive reachability over dominating sets of size at most `k`.
///
/// Returns whether the target is reachable, along with a shortest valid
/// sequence when it is.
pub fn oracle_reachable(
    inst: &DsrInstance,
    budget: usize,
) -> Result<(bool, Option<ReconfSequence>, SearchStats), OracleError> {
    let n = inst.graph.n();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(OracleError::TooLarge(n, ORACLE_VERTEX_LIMIT));
    }
    // re-check instance invariants so the oracle never trusts its caller
    DsrInstance::new(
        inst.graph.clone(),
        inst.source.clone(),
        inst.target.clone(),
        inst.k,
    )?;
    let nbhd: Vec<u64> = (0..n)
        .map(|v| {
            inst.graph
                .neighbors(v)
                .iter()
                .fold(1u64 << v, |acc, &w| acc | (1u64 << w))
        })
        .collect();
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let dominating = |mask: u64| {
        let mut cover = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            cover |= nbhd[v];
            rest &= rest - 1;
        }
        cover == full
    };
    let (path, stats) = mask_bfs(
        n,
        inst.source.to_mask(),
        inst.target.to_mask(),
        inst.k,
        budget,
        dominating,
    )?;
    match path {
        Some(p) => Ok((true, Some(path_to_sequence(&p)), stats)),
        None => Ok((false, None, stats)),
    }
}
