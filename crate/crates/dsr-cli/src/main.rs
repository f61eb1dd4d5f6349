//! `dsr`: decide and construct dominating set reconfiguration sequences.
//!
//! Exit codes: 0 for YES/valid, 1 for NO/invalid, 2 for any error.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dsr_core::format;
use dsr_core::generate::{self, GenSpec, Generated, KPolicy};
use dsr_core::graph::{Graph, VertexSet};
use dsr_core::interval::IntervalRepresentation;
use dsr_core::reconfig::{
    oracle_reachable, verify, Move, ReconfSequence, SearchStats, DEFAULT_NODE_BUDGET,
};
use dsr_core::reductions::{
    reduce_split_to_bipartite_dsr, reduce_vcr_to_dsr, reduce_vcr_to_split_dsr,
    split_partition_containing,
};
use dsr_core::scheme::{self, ClassEvidence};

#[derive(Parser)]
#[command(name = "dsr", version, about = "Dominating set reconfiguration toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Tree,
    Interval,
    Cograph,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct IoArgs {
    /// Input file, `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Output file, `-` for stdout.
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, value_enum, default_value = "auto")]
    class: ClassArg,
    /// Route unsupported classes to the exhaustive oracle.
    #[arg(long)]
    oracle_fallback: bool,
    /// Node budget for the oracle.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the witness sequence to this file (solve/oracle).
    #[arg(long)]
    emit_sequence: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide reachability without constructing a sequence.
    Decide(DecideArgs),
    /// Decide and construct a witness sequence on YES.
    Solve(DecideArgs),
    /// Check a sequence file against an instance.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// Sequence file to check.
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Exhaustive BFS reachability over dominating sets.
    Oracle {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        emit_sequence: Option<PathBuf>,
    },
    /// Print the canonical labeling / cells for a connected graph.
    Label {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Apply a hardness reduction to an instance file.
    Reduce {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum)]
        kind: ReduceKind,
        /// Map sidecar path (default `<output>.map`).
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Generate a seeded random instance.
    Generate {
        /// Output file, `-` for stdout.
        #[arg(short, long, default_value = "-")]
        output: String,
        #[arg(long, value_enum)]
        class: GenClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `tight`, `slack`, or an explicit integer.
        #[arg(long, default_value = "slack")]
        k_policy: String,
        #[arg(long, default_value_t = 0.35)]
        density: f64,
        #[arg(long, default_value_t = 2)]
        padding: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceKind {
    VcrDsr,
    VcrSplit,
    SplitBipartite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenClassArg {
    Tree,
    Interval,
    Cograph,
    General,
    Vcr,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn write_output(path: &str, content: &str) -> Result<(), String> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        fs::write(path, content).map_err(|e| format!("writing {path}: {e}"))
    }
}

/// Resolves class evidence: explicit classes validate, `auto` tries tree,
/// then cograph, then interval when a representation is present.
fn resolve_evidence(
    class: ClassArg,
    graph: &Graph,
    rep: Option<IntervalRepresentation>,
) -> Result<ClassEvidence, String> {
    let check = |ev: ClassEvidence| -> Result<ClassEvidence, String> {
        scheme::validate_class(graph, &ev)
            .map(|_| ev)
            .map_err(|e| e.to_string())
    };
    match class {
        ClassArg::Tree => check(ClassEvidence::Tree),
        ClassArg::Cograph => check(ClassEvidence::Cograph(None)),
        ClassArg::Interval => {
            let rep = rep.ok_or("interval class needs `i` lines in the instance file")?;
            check(ClassEvidence::Interval(rep))
        }
        ClassArg::Auto => {
            if let Ok(ev) = check(ClassEvidence::Tree) {
                return Ok(ev);
            }
            if let Ok(ev) = check(ClassEvidence::Cograph(None)) {
                return Ok(ev);
            }
            if let Some(rep) = rep {
                if let Ok(ev) = check(ClassEvidence::Interval(rep)) {
                    return Ok(ev);
                }
            }
            Err("no supported class matches the instance".into())
        }
    }
}

struct Outcome {
    yes: bool,
    reason: String,
    sequence: Option<ReconfSequence>,
    stats: SearchStats,
}

fn sequence_json(seq: &ReconfSequence) -> serde_json::Value {
    let start: Vec<usize> = seq.start.iter().map(|v| v + 1).collect();
    let moves: Vec<serde_json::Value> = seq
        .moves
        .iter()
        .map(|m| match m {
            Move::Add(v) => json!({"op": "add", "v": v + 1}),
            Move::Remove(v) => json!({"op": "remove", "v": v + 1}),
        })
        .collect();
    json!({"start": start, "moves": moves})
}

fn report(
    outcome: &Outcome,
    format: FormatArg,
    output: &str,
    elapsed_ms: u128,
) -> Result<i32, String> {
    let answer = if outcome.yes { "YES" } else { "NO" };
    let content = match format {
        FormatArg::Text => format!("{answer} {}\n", outcome.reason),
        FormatArg::Json => {
            let mut obj = json!({
                "schema": 1,
                "answer": answer,
                "reason": outcome.reason,
                "stats": {
                    "states_expanded": outcome.stats.states_expanded,
                    "time_ms": elapsed_ms,
                },
            });
            if let Some(seq) = &outcome.sequence {
                obj["sequence"] = sequence_json(seq);
            }
            format!("{obj}\n")
        }
    };
    write_output(output, &content)?;
    Ok(if outcome.yes { 0 } else { 1 })
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::Decide(args) => run_decide(args, false),
        Command::Solve(args) => run_decide(args, true),
        Command::Verify {
            io,
            sequence,
            format,
        } => run_verify(io, &sequence, format),
        Command::Oracle {
            io,
            budget,
            format,
            emit_sequence,
        } => run_oracle(io, budget, format, emit_sequence.as_deref()),
        Command::Label { io, class } => run_label(io, class),
        Command::Reduce { io, kind, map } => run_reduce(io, kind, map),
        Command::Generate {
            output,
            class,
            n,
            seed,
            k_policy,
            density,
            padding,
        } => run_generate(&output, class, n, seed, &k_policy, density, padding),
    }
}

fn run_decide(args: DecideArgs, want_sequence: bool) -> Result<i32, String> {
    let started = Instant::now();
    let raw = format::parse_instance(&read_input(&args.io.input)?).map_err(|e| e.to_string())?;
    let (inst, rep) = raw.into_dsr().map_err(|e| e.to_string())?;

    let outcome = match resolve_evidence(args.class, &inst.graph, rep) {
        Ok(evidence) => {
            if want_sequence {
                let (d, seq) =
                    scheme::solve(&inst, &evidence).map_err(|e| e.to_string())?;
                Outcome {
                    yes: d.yes,
                    reason: d.reason.code().to_string(),
                    sequence: seq,
                    stats: SearchStats::default(),
                }
            } else {
                let d = scheme::decide(&inst, &evidence).map_err(|e| e.to_string())?;
                Outcome {
                    yes: d.yes,
                    reason: d.reason.code().to_string(),
                    sequence: None,
                    stats: SearchStats::default(),
                }
            }
        }
        Err(class_err) => {
            if !args.oracle_fallback {
                return Err(class_err);
            }
            let (yes, seq, stats) =
                oracle_reachable(&inst, args.budget).map_err(|e| e.to_string())?;
            Outcome {
                yes,
                reason: "ORACLE".to_string(),
                sequence: seq,
                stats,
            }
        }
    };

    if let (Some(path), Some(seq)) = (&args.emit_sequence, &outcome.sequence) {
        fs::write(path, format::write_sequence(seq))
            .map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    report(
        &outcome,
        args.format,
        &args.io.output,
        started.elapsed().as_millis(),
    )
}

fn run_verify(io: IoArgs, sequence: &Path, format: FormatArg) -> Result<i32, String> {
    let started = Instant::now();
    let raw = format::parse_instance(&read_input(&io.input)?).map_err(|e| e.to_string())?;
    let (inst, _) = raw.into_dsr().map_err(|e| e.to_string())?;
    let seq_text = fs::read_to_string(sequence)
        .map_err(|e| format!("reading {}: {e}", sequence.display()))?;
    let seq = format::parse_sequence(&seq_text, inst.graph.n()).map_err(|e| e.to_string())?;
    let report_data = verify(&inst, &seq);
    let outcome = Outcome {
        yes: report_data.is_valid(),
        reason: match &report_data.violation {
            None => "VALID".to_string(),
            Some(v) => v.to_string(),
        },
        sequence: None,
        stats: SearchStats::default(),
    };
    let answer = if outcome.yes { "VALID" } else { "INVALID" };
    let content = match format {
        FormatArg::Text => {
            if outcome.yes {
                format!("{answer}\n")
            } else {
                format!("{answer} {}\n", outcome.reason)
            }
        }
        FormatArg::Json => {
            let obj = json!({
                "schema": 1,
                "answer": answer,
                "reason": outcome.reason,
                "stats": {"states_expanded": 0, "time_ms": started.elapsed().as_millis() as u64},
            });
            format!("{obj}\n")
        }
    };
    write_output(&io.output, &content)?;
    Ok(if outcome.yes { 0 } else { 1 })
}

fn run_oracle(
    io: IoArgs,
    budget: usize,
    format: FormatArg,
    emit_sequence: Option<&Path>,
) -> Result<i32, String> {
    let started = Instant::now();
    let raw = format::parse_instance(&read_input(&io.input)?).map_err(|e| e.to_string())?;
    let (inst, _) = raw.into_dsr().map_err(|e| e.to_string())?;
    let (yes, seq, stats) = oracle_reachable(&inst, budget).map_err(|e| e.to_string())?;
    if let (Some(path), Some(seq)) = (emit_sequence, &seq) {
        fs::write(path, format::write_sequence(seq))
            .map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    let outcome = Outcome {
        yes,
        reason: "ORACLE".to_string(),
        sequence: seq,
        stats,
    };
    report(&outcome, format, &io.output, started.elapsed().as_millis())
}

fn run_label(io: IoArgs, class: ClassArg) -> Result<i32, String> {
    use dsr_core::canonical::{cograph, interval as civ, tree as ctr};
    use dsr_core::cotree::cotree_decompose;

    let raw = format::parse_instance(&read_input(&io.input)?).map_err(|e| e.to_string())?;
    let graph = raw.graph();
    if !graph.is_connected() {
        return Err("label needs a connected graph".into());
    }
    let mut out = String::new();
    match class {
        ClassArg::Tree => {
            if graph.n() < 2 {
                return Err("tree labeling needs at least two vertices".into());
            }
            let root = (0..graph.n())
                .find(|&v| graph.degree(v) == 1)
                .ok_or("tree labeling needs a degree-one vertex")?;
            let lab = ctr::label_tree(&graph, root).map_err(|e| e.to_string())?;
            let cells = ctr::tree_cells(&lab);
            for v in 0..graph.n() {
                out.push_str(&format!("v {} {}\n", v + 1, lab.label[v]));
            }
            emit_cells(&mut out, &cells.cells);
        }
        ClassArg::Interval => {
            let rep = raw
                .rep
                .ok_or("interval labeling needs `i` lines in the input")?
                .canonicalized();
            let lab = civ::label_interval(&graph, &rep).map_err(|e| e.to_string())?;
            let cells = civ::interval_cells(&lab, &rep);
            for v in 0..graph.n() {
                out.push_str(&format!("v {} {}\n", v + 1, lab.label[v]));
            }
            emit_cells(&mut out, &cells.cells);
        }
        ClassArg::Cograph => {
            let ct = cotree_decompose(&graph)
                .map_err(|w| format!("not a cograph; induced path witness {:?}", w.path))?;
            let can =
                cograph::cograph_canonical(&graph, &ct).map_err(|e| e.to_string())?;
            out.push_str("canonical");
            for v in can.canonical.iter() {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
            if let Some((s1, s2)) = &can.join_split {
                emit_side(&mut out, "side1", s1);
                emit_side(&mut out, "side2", s2);
            }
        }
        ClassArg::Auto => return Err("label needs an explicit --class".into()),
    }
    write_output(&io.output, &out)?;
    Ok(0)
}

fn emit_cells(out: &mut String, cells: &[VertexSet]) {
    for (i, cell) in cells.iter().enumerate() {
        out.push_str(&format!("cell {}", i + 1));
        for v in cell.iter() {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
}

fn emit_side(out: &mut String, name: &str, side: &VertexSet) {
    out.push_str(name);
    for v in side.iter() {
        out.push_str(&format!(" {}", v + 1));
    }
    out.push('\n');
}

fn run_reduce(io: IoArgs, kind: ReduceKind, map_path: Option<PathBuf>) -> Result<i32, String> {
    let raw = format::parse_instance(&read_input(&io.input)?).map_err(|e| e.to_string())?;
    let (reduced, map) = match kind {
        ReduceKind::VcrDsr => {
            let vcr = raw.into_vcr().map_err(|e| e.to_string())?;
            reduce_vcr_to_dsr(&vcr).map_err(|e| e.to_string())?
        }
        ReduceKind::VcrSplit => {
            let vcr = raw.into_vcr().map_err(|e| e.to_string())?;
            reduce_vcr_to_split_dsr(&vcr).map_err(|e| e.to_string())?
        }
        ReduceKind::SplitBipartite => {
            let (inst, _) = raw.into_dsr().map_err(|e| e.to_string())?;
            let anchors = inst.source.union(&inst.target);
            let (clique, independent) =
                split_partition_containing(&inst.graph, &anchors)
                    .ok_or("input graph is not split with the endpoints in the clique")?;
            reduce_split_to_bipartite_dsr(&inst, &clique, &independent)
                .map_err(|e| e.to_string())?
        }
    };
    write_output(&io.output, &format::write_dsr_instance(&reduced, None))?;
    let map_file = map_path.or_else(|| {
        (io.output != "-").then(|| PathBuf::from(format!("{}.map", io.output)))
    });
    if let Some(path) = map_file {
        fs::write(&path, format::write_map(&map))
            .map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(0)
}

fn run_generate(
    output: &str,
    class: GenClassArg,
    n: usize,
    seed: u64,
    k_policy: &str,
    density: f64,
    padding: usize,
) -> Result<i32, String> {
    let k_policy = match k_policy {
        "tight" => KPolicy::Tight,
        "slack" => KPolicy::Slack,
        other => KPolicy::Explicit(
            other
                .parse()
                .map_err(|_| format!("bad k policy `{other}`, expected tight/slack/<int>"))?,
        ),
    };
    let class = match class {
        GenClassArg::Tree => generate::GraphClass::Tree,
        GenClassArg::Interval => generate::GraphClass::Interval,
        GenClassArg::Cograph => generate::GraphClass::Cograph,
        GenClassArg::General => generate::GraphClass::General,
        GenClassArg::Vcr => generate::GraphClass::Vcr,
    };
    let spec = GenSpec {
        class,
        n,
        seed,
        density,
        padding,
        k_policy,
    };
    match generate::generate(&spec).map_err(|e| e.to_string())? {
        Generated::Dsr(inst, evidence) => {
            let rep = match &evidence {
                ClassEvidence::Interval(rep) => Some(rep),
                _ => None,
            };
            write_output(output, &format::write_dsr_instance(&inst, rep))?;
            if let ClassEvidence::Cograph(Some(ct)) = &evidence {
                if output != "-" {
                    let path = format!("{output}.cotree");
                    fs::write(&path, format!("{ct}\n"))
                        .map_err(|e| format!("writing {path}: {e}"))?;
                }
            }
        }
        Generated::Vcr(inst) => {
            write_output(
                output,
                &format::write_instance(&inst.graph, &inst.source, &inst.target, inst.k, None),
            )?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn evidence_resolution_auto_prefers_tree() {
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let ev = resolve_evidence(ClassArg::Auto, &g, None).unwrap();
        assert!(matches!(ev, ClassEvidence::Tree));

        // C4 is not a tree but is a cograph
        let c4 = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let ev = resolve_evidence(ClassArg::Auto, &c4, None).unwrap();
        assert!(matches!(ev, ClassEvidence::Cograph(_)));
    }
}
