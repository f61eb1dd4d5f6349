//! Text formats: graphs, instances, sequences, and reduction maps.
//!
//! All formats are line oriented with 1-based vertex ids and `c`-prefixed
//! comments. A graph file is a `p ds <n> <m>` header plus `e <u> <v>` lines.
//! An instance file extends it with `s`/`t` endpoint lines, a `k` line, and
//! optional `i <v> <l> <r>` interval lines whose endpoints are decimals or
//! `a/b` rationals. A sequence file starts with the `s` line for the initial
//! set followed by one `+ <v>` or `- <v>` move per line. Writers emit
//! deterministic, sorted output.

use std::fmt::Write as _;

use num_rational::Rational64;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::interval::{Endpoint, IntervalRepresentation};
use crate::reconfig::{DsrInstance, InstanceError, Move, ReconfSequence};
use crate::reductions::{GadgetRole, ReductionMap, VcrInstance};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A parsed instance file before semantic validation.
#[derive(Debug, Clone, Default)]
pub struct RawInstance {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub source: Option<VertexSet>,
    pub target: Option<VertexSet>,
    pub k: Option<usize>,
    pub rep: Option<IntervalRepresentation>,
}

impl RawInstance {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied()).expect("validated during parse")
    }

    /// Builds a DSR instance; endpoints must dominate and `k` must cover them.
    pub fn into_dsr(self) -> Result<(DsrInstance, Option<IntervalRepresentation>), InstanceError> {
        let graph = self.graph();
        let source = self.source.unwrap_or_default();
        let target = self.target.unwrap_or_default();
        let k = self
            .k
            .unwrap_or_else(|| source.len().max(target.len()));
        let inst = DsrInstance::new(graph, source, target, k)?;
        Ok((inst, self.rep))
    }

    /// Builds a VCR instance; endpoints must be vertex covers within `k`.
    pub fn into_vcr(self) -> Result<VcrInstance, crate::reductions::ReductionError> {
        let graph = self.graph();
        let source = self.source.unwrap_or_default();
        let target = self.target.unwrap_or_default();
        let k = self
            .k
            .unwrap_or_else(|| source.len().max(target.len()));
        VcrInstance::new(graph, source, target, k)
    }
}

fn parse_vertex(token: &str, n: usize, line: usize) -> Result<usize, ParseError> {
    let id: usize = token
        .parse()
        .map_err(|_| ParseError {
            line,
            message: format!("bad vertex id `{token}`"),
        })?;
    if id == 0 || id > n {
        return err(line, format!("vertex id {id} out of range 1..={n}"));
    }
    Ok(id - 1)
}

fn parse_endpoint(token: &str, line: usize) -> Result<Endpoint, ParseError> {
    let bad = || ParseError {
        line,
        message: format!("bad rational `{token}`"),
    };
    if let Some((a, b)) = token.split_once('/') {
        let num: i64 = a.parse().map_err(|_| bad())?;
        let den: i64 = b.parse().map_err(|_| bad())?;
        if den == 0 {
            return err(line, "zero denominator");
        }
        return Ok(Rational64::new(num, den));
    }
    if let Some((int, frac)) = token.split_once('.') {
        let negative = int.starts_with('-');
        let whole: i64 = if int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let digits: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        if digits < 0 || frac.len() > 12 {
            return Err(bad());
        }
        let scale = 10i64.pow(frac.len() as u32);
        let frac_part = Rational64::new(digits, scale);
        let whole_part = Rational64::from_integer(whole);
        return Ok(if negative {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        });
    }
    token
        .parse::<i64>()
        .map(Rational64::from_integer)
        .map_err(|_| bad())
}

/// Parses instance files: header, edges, then any of `s`, `t`, `k`, `i`.
pub fn parse_instance(text: &str) -> Result<RawInstance, ParseError> {
    let mut raw: Option<RawInstance> = None;
    let mut declared_m = 0usize;
    let mut seen_edges = 0usize;
    for (idx, full_line) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = full_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut tokens = trimmed.split_ascii_whitespace();
        let kind = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        if kind == "p" {
            if raw.is_some() {
                return err(line, "duplicate header");
            }
            if rest.len() != 3 || rest[0] != "ds" {
                return err(line, "malformed header, expected `p ds <n> <m>`");
            }
            let n: usize = rest[1]
                .parse()
                .map_err(|_| ParseError {
                    line,
                    message: format!("bad vertex count `{}`", rest[1]),
                })?;
            declared_m = rest[2].parse().map_err(|_| ParseError {
                line,
                message: format!("bad edge count `{}`", rest[2]),
            })?;
            raw = Some(RawInstance {
                n,
                ..RawInstance::default()
            });
            continue;
        }
        let Some(raw) = raw.as_mut() else {
            return err(line, "missing `p ds <n> <m>` header");
        };
        match kind {
            "e" => {
                if rest.len() != 2 {
                    return err(line, "edge line needs two endpoints");
                }
                let u = parse_vertex(rest[0], raw.n, line)?;
                let v = parse_vertex(rest[1], raw.n, line)?;
                if u == v {
                    return err(line, format!("self-loop at vertex {}", u + 1));
                }
                raw.edges.push((u, v));
                seen_edges += 1;
            }
            "s" | "t" => {
                let members = rest
                    .iter()
                    .map(|t| parse_vertex(t, raw.n, line))
                    .collect::<Result<Vec<_>, _>>()?;
                let set = VertexSet::from_vec(members);
                if kind == "s" {
                    raw.source = Some(set);
                } else {
                    raw.target = Some(set);
                }
            }
            "k" => {
                if rest.len() != 1 {
                    return err(line, "k line needs one integer");
                }
                let k: usize = rest[0].parse().map_err(|_| ParseError {
                    line,
                    message: format!("bad threshold `{}`", rest[0]),
                })?;
                raw.k = Some(k);
            }
            "i" => {
                if rest.len() != 3 {
                    return err(line, "interval line needs `i <v> <l> <r>`");
                }
                let v = parse_vertex(rest[0], raw.n, line)?;
                let l = parse_endpoint(rest[1], line)?;
                let r = parse_endpoint(rest[2], line)?;
                if l > r {
                    return err(line, format!("interval of vertex {} is inverted", v + 1));
                }
                raw.rep
                    .get_or_insert_with(|| IntervalRepresentation::with_capacity(raw.n))
                    .set(v, l, r);
            }
            other => return err(line, format!("unknown line kind `{other}`")),
        }
    }
    let Some(raw) = raw else {
        return err(0, "empty input, expected `p ds <n> <m>` header");
    };
    if seen_edges != declared_m {
        return err(
            0,
            format!("header declares {declared_m} edges, found {seen_edges}"),
        );
    }
    Ok(raw)
}

/// Parses a pure graph file (`c`, `p`, `e` lines only).
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    for (idx, line) in text.lines().enumerate() {
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('c') && !t.starts_with('p') && !t.starts_with('e') {
            return err(idx + 1, format!("unexpected line in graph file: `{t}`"));
        }
    }
    Ok(parse_instance(text)?.graph())
}

fn endpoint_str(e: Endpoint) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

fn set_line(prefix: &str, set: &VertexSet, out: &mut String) {
    out.push_str(prefix);
    for v in set.iter() {
        let _ = write!(out, " {}", v + 1);
    }
    out.push('\n');
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p ds {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn write_instance(
    graph: &Graph,
    source: &VertexSet,
    target: &VertexSet,
    k: usize,
    rep: Option<&IntervalRepresentation>,
) -> String {
    let mut out = write_graph(graph);
    set_line("s", source, &mut out);
    set_line("t", target, &mut out);
    let _ = writeln!(out, "k {k}");
    if let Some(rep) = rep {
        for v in 0..graph.n() {
            if let Some((l, r)) = rep.get(v) {
                let _ = writeln!(out, "i {} {} {}", v + 1, endpoint_str(l), endpoint_str(r));
            }
        }
    }
    out
}

pub fn write_dsr_instance(inst: &DsrInstance, rep: Option<&IntervalRepresentation>) -> String {
    write_instance(&inst.graph, &inst.source, &inst.target, inst.k, rep)
}

pub fn parse_sequence(text: &str, n: usize) -> Result<ReconfSequence, ParseError> {
    let mut start: Option<VertexSet> = None;
    let mut moves = Vec::new();
    for (idx, full_line) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = full_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut tokens = trimmed.split_ascii_whitespace();
        let kind = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match kind {
            "s" => {
                if start.is_some() {
                    return err(line, "duplicate start line");
                }
                let members = rest
                    .iter()
                    .map(|t| parse_vertex(t, n, line))
                    .collect::<Result<Vec<_>, _>>()?;
                start = Some(VertexSet::from_vec(members));
            }
            "+" | "-" => {
                if start.is_none() {
                    return err(line, "move before start line");
                }
                if rest.len() != 1 {
                    return err(line, "move line needs one vertex");
                }
                let v = parse_vertex(rest[0], n, line)?;
                moves.push(if kind == "+" { Move::Add(v) } else { Move::Remove(v) });
            }
            other => return err(line, format!("unknown line kind `{other}`")),
        }
    }
    match start {
        Some(start) => Ok(ReconfSequence { start, moves }),
        None => err(0, "missing start line `s ...`"),
    }
}

pub fn write_sequence(seq: &ReconfSequence) -> String {
    let mut out = String::new();
    set_line("s", &seq.start, &mut out);
    for m in &seq.moves {
        let _ = writeln!(out, "{m}");
    }
    out
}

pub fn write_map(map: &ReductionMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "orig {}", map.original_count);
    for (i, role) in map.roles.iter().enumerate() {
        let gadget = map.original_count + i + 1; // 1-based
        match role {
            GadgetRole::EdgeVertex { u, w } => {
                let _ = writeln!(out, "g {gadget} e {} {}", u + 1, w + 1);
            }
            GadgetRole::X => {
                let _ = writeln!(out, "g {gadget} x");
            }
            GadgetRole::Y => {
                let _ = writeln!(out, "g {gadget} y");
            }
        }
    }
    out
}

pub fn parse_map(text: &str) -> Result<ReductionMap, ParseError> {
    let mut original_count: Option<usize> = None;
    let mut roles = Vec::new();
    for (idx, full_line) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = full_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        match tokens.as_slice() {
            ["orig", n] => {
                original_count = Some(n.parse().map_err(|_| ParseError {
                    line,
                    message: format!("bad count `{n}`"),
                })?);
            }
            ["g", gid, rest @ ..] => {
                let Some(orig) = original_count else {
                    return err(line, "gadget before `orig` line");
                };
                let gid: usize = gid.parse().map_err(|_| ParseError {
                    line,
                    message: format!("bad gadget id `{gid}`"),
                })?;
                if gid != orig + roles.len() + 1 {
                    return err(line, "gadget ids must be contiguous above the originals");
                }
                let role = match rest {
                    ["e", u, w] => GadgetRole::EdgeVertex {
                        u: parse_vertex(u, orig, line)?,
                        w: parse_vertex(w, orig, line)?,
                    },
                    ["x"] => GadgetRole::X,
                    ["y"] => GadgetRole::Y,
                    _ => return err(line, "bad gadget role"),
                };
                roles.push(role);
            }
            _ => return err(line, "unknown line in map file"),
        }
    }
    match original_count {
        Some(original_count) => Ok(ReductionMap {
            original_count,
            roles,
        }),
        None => err(0, "missing `orig` line"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::reduce_vcr_to_dsr;

    #[test]
    fn parse_spec_examples() {
        let g = parse_graph("p ds 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));

        let single = parse_graph("p ds 1 0\n").unwrap();
        assert_eq!((single.n(), single.m()), (1, 0));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_graph("p ds 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("self-loop"));

        let e = parse_graph("p ds 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("out of range"));

        let e = parse_graph("p foo 2 1\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse_instance("p ds 2 2\ne 1 2\n").unwrap_err();
        assert!(e.message.contains("declares 2 edges"));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_graph("p ds 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn instance_round_trip() {
        let text = "c sample\np ds 3 2\ne 1 2\ne 2 3\ns 1 3\nt 2\nk 2\n";
        let raw = parse_instance(text).unwrap();
        let (inst, rep) = raw.into_dsr().unwrap();
        assert!(rep.is_none());
        assert_eq!(inst.k, 2);
        assert_eq!(inst.source, VertexSet::from_vec(vec![0, 2]));
        let out = write_dsr_instance(&inst, None);
        let again = parse_instance(&out).unwrap().into_dsr().unwrap().0;
        assert_eq!(again.graph, inst.graph);
        assert_eq!(again.source, inst.source);
        assert_eq!(again.target, inst.target);
        assert_eq!(again.k, inst.k);
    }

    #[test]
    fn interval_lines_parse_decimals_and_fractions() {
        let text = "p ds 3 2\ne 1 2\ne 2 3\ns 2\nt 2\nk 1\ni 1 0 1\ni 2 0.5 3/2\ni 3 1.2 2\n";
        let raw = parse_instance(text).unwrap();
        let rep = raw.rep.clone().unwrap();
        assert_eq!(rep.get(1), Some((Rational64::new(1, 2), Rational64::new(3, 2))));
        assert_eq!(rep.get(2), Some((Rational64::new(6, 5), Rational64::new(2, 1))));
        let (inst, rep) = raw.into_dsr().unwrap();
        let rep = rep.unwrap();
        assert!(
            crate::interval::validate_interval_representation(&inst.graph, &rep).unwrap()
        );
    }

    #[test]
    fn sequence_round_trip() {
        let text = "s 1\n+ 2\n- 1\n";
        let seq = parse_sequence(text, 3).unwrap();
        assert_eq!(seq.start, VertexSet::singleton(0));
        assert_eq!(seq.moves, vec![Move::Add(1), Move::Remove(0)]);
        assert_eq!(write_sequence(&seq), text);
    }

    #[test]
    fn map_round_trip() {
        let g = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        let inst = VcrInstance::new(
            g,
            VertexSet::singleton(0),
            VertexSet::singleton(1),
            2,
        )
        .unwrap();
        let (_, map) = reduce_vcr_to_dsr(&inst).unwrap();
        let text = write_map(&map);
        assert_eq!(parse_map(&text).unwrap(), map);
    }

    #[test]
    fn writers_are_deterministic() {
        let raw = parse_instance("p ds 4 3\ne 4 3\ne 1 2\ne 2 3\ns 2 4\nt 1 3\nk 3\n").unwrap();
        let (inst, _) = raw.into_dsr().unwrap();
        let a = write_dsr_instance(&inst, None);
        let b = write_dsr_instance(&inst, None);
        assert_eq!(a, b);
        assert!(a.contains("e 1 2\ne 2 3\ne 3 4\n"));
    }
}
