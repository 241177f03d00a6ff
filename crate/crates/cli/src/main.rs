use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use idom_core::enumeration::{enumerate_with_guard, enumerate_parallel, read_graph6_file, EnumRange, EnumSpec, Regularity};
use idom_core::families::{build, FamilySpec};
use idom_core::harness::{
    self, fabricated_violation, summarize, verdict, write_jsonl, write_summary_csv, Objective, Source, Theorem,
};
use idom_core::solvers::{domination_number, independent_domination_number, SolveResult};
use idom_core::structure::{classify_ab, find_forbidden_configs, key_lemma_sides, weight_summary};
use idom_core::{write_graph6, Graph, VertexSet};

/// Exact independent domination and domination numbers of small graphs.
#[derive(Parser)]
#[command(name = "idom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph and print it as graph6.
    Family {
        kind: FamilyKind,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print one graph6 line per isomorphism class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long)]
        no_c4: bool,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        min_girth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Compute i and/or γ, one JSON object per graph.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "family"])))]
    Solve {
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        family: Option<FamilyKind>,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an inequality over a corpus; exits 1 if any in-scope graph violates it.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "spec"])))]
    Verify {
        /// T15 (14i <= w), T14 (14i <= 5n) or T17 (4i <= 5γ).
        #[arg(long)]
        theorem: Theorem,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Class to enumerate, e.g. `n=8,subcubic,no-c4` or `n=4..14,cubic,connected`.
        #[arg(long = "enum")]
        spec: Option<EnumRange>,
        /// Treat graphs outside the hypothesis as a fatal error.
        #[arg(long)]
        strict: bool,
        /// Write every per-graph report here as JSON lines.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the per-order CSV summary here.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        run: RunOptions,
        #[arg(long, hide = true)]
        inject_violation: bool,
    },
    /// Scan a class for the largest i/γ or for graphs with 14i = 5n.
    Search {
        #[arg(long)]
        objective: Objective,
        #[arg(long = "enum")]
        spec: EnumRange,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Print structural data for each graph of a file as JSON lines.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        what: Analysis,
        /// Comma-separated vertex set for `keylemma`; defaults to a minimum
        /// independent dominating set.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct FamilyParams {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
}

#[derive(Args)]
struct RunOptions {
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Allow orders above the enumeration guard.
    #[arg(long)]
    override_guard: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Tkl,
    Cycle,
    Path,
    CompleteBipartite,
    Prism,
    Petersen,
    Edgeless,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Cubic,
    Subcubic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Param {
    I,
    Gamma,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Analysis {
    Weights,
    Ab,
    Configs,
    Keylemma,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Family { kind, params, out } => {
            let g = build(family_spec(kind, &params)?)?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", write_graph6(&g))?;
            w.flush()?;
            Ok(true)
        }
        Command::Enumerate {
            n,
            class,
            no_c4,
            connected,
            min_girth,
            out,
            run,
        } => {
            let spec = EnumSpec {
                order: n,
                regularity: match class {
                    Class::Cubic => Regularity::Cubic,
                    Class::Subcubic => Regularity::Subcubic,
                },
                forbid_c4: no_c4,
                min_girth,
                connected,
            };
            spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let mut w = output(out.as_deref())?;
            if run.workers == 1 {
                for g in enumerate_with_guard(spec, run.override_guard)? {
                    writeln!(w, "{}", write_graph6(&g))?;
                }
            } else {
                let graphs = harness::with_workers(run.workers, || enumerate_parallel(spec, run.override_guard))??;
                for g in &graphs {
                    writeln!(w, "{}", write_graph6(g))?;
                }
            }
            w.flush()?;
            Ok(true)
        }
        Command::Solve {
            param,
            input,
            family,
            params,
            out,
        } => {
            let graphs = match (input, family) {
                (Some(path), _) => read_graph6_file(&path)?,
                (None, Some(kind)) => vec![build(family_spec(kind, &params)?)?],
                (None, None) => unreachable!("clap requires a source"),
            };
            let lines: Vec<SolveLine> = graphs.iter().map(|g| solve_line(g, param)).collect();
            let mut w = output(out.as_deref())?;
            write_jsonl(&mut w, &lines)?;
            w.flush()?;
            Ok(true)
        }
        Command::Verify {
            theorem,
            input,
            spec,
            strict,
            report,
            summary,
            run,
            inject_violation,
        } => {
            let source = match (input, spec) {
                (Some(path), _) => Source::File(path),
                (None, Some(range)) => Source::Enumerate(range.specs()),
                (None, None) => unreachable!("clap requires a source"),
            };
            let (mut reports, _) = harness::with_workers(run.workers, || {
                harness::verify_theorem(&source, theorem, strict, run.override_guard)
            })??;
            if inject_violation {
                reports.push(fabricated_violation(theorem));
            }
            let v = verdict(theorem, &reports);
            if let Some(path) = report {
                let mut w = BufWriter::new(create(&path)?);
                write_jsonl(&mut w, &reports)?;
                w.flush()?;
            }
            if let Some(path) = summary {
                write_summary_csv(BufWriter::new(create(&path)?), &summarize(&reports))?;
            }
            for r in &v.violations {
                eprintln!("VIOLATION {} {}", r.graph_id.graph6, serde_json::to_string(r)?);
            }
            println!(
                "{} {theorem}: {} graphs, {} in scope, {} flagged out of scope, {} tight, {} violations",
                if v.pass { "PASS" } else { "FAIL" },
                v.graphs,
                v.in_scope,
                v.out_of_scope,
                v.tight,
                v.violations.len()
            );
            Ok(v.pass)
        }
        Command::Search {
            objective,
            spec,
            report,
            run,
        } => {
            let summary = harness::with_workers(run.workers, || {
                harness::search_extremal(&spec.specs(), objective, run.override_guard)
            })??;
            let text = serde_json::to_string(&summary)?;
            if let Some(path) = report {
                let mut f = create(&path)?;
                writeln!(f, "{text}")?;
            }
            println!("{text}");
            Ok(true)
        }
        Command::Analyze { input, what, set, out } => {
            let graphs = read_graph6_file(&input)?;
            let set = set.map(VertexSet::from_vertices);
            let lines: Vec<serde_json::Value> = graphs.iter().map(|g| analyze(g, what, set)).collect();
            let mut w = output(out.as_deref())?;
            write_jsonl(&mut w, &lines)?;
            w.flush()?;
            Ok(true)
        }
    }
}

fn family_spec(kind: FamilyKind, p: &FamilyParams) -> Result<FamilySpec, Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::Usage(format!("this family needs --{name}")))
    };
    Ok(match kind {
        FamilyKind::Tkl => FamilySpec::Tkl {
            k: need(p.k, "k")?,
            l: need(p.l, "l")?,
        },
        FamilyKind::Cycle => FamilySpec::Cycle { n: need(p.n, "n")? },
        FamilyKind::Path => FamilySpec::Path { n: need(p.n, "n")? },
        FamilyKind::CompleteBipartite => FamilySpec::CompleteBipartite {
            a: need(p.a, "a")?,
            b: need(p.b, "b")?,
        },
        FamilyKind::Prism => FamilySpec::Prism { k: p.k.unwrap_or(5) },
        FamilyKind::Petersen => FamilySpec::Petersen,
        FamilyKind::Edgeless => FamilySpec::Edgeless { n: need(p.n, "n")? },
        FamilyKind::Complete => FamilySpec::Complete { n: need(p.n, "n")? },
    })
}

#[derive(Serialize)]
struct SolveLine {
    graph6: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<SolveResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<SolveResult>,
}

fn solve_line(g: &Graph, param: Param) -> SolveLine {
    SolveLine {
        graph6: write_graph6(g),
        n: g.order(),
        i: (param != Param::Gamma).then(|| independent_domination_number(g)),
        gamma: (param != Param::I).then(|| domination_number(g)),
    }
}

fn analyze(g: &Graph, what: Analysis, set: Option<VertexSet>) -> serde_json::Value {
    let graph6 = write_graph6(g);
    let value = match what {
        Analysis::Weights => weight_summary(g).map(|w| serde_json::json!({ "weights": w })),
        Analysis::Ab => Ok(serde_json::json!({ "ab": classify_ab(g) })),
        Analysis::Configs => Ok(serde_json::json!({ "configs": find_forbidden_configs(g) })),
        Analysis::Keylemma => {
            let s = set.unwrap_or_else(|| independent_domination_number(g).witness);
            key_lemma_sides(g, s).map(|sides| serde_json::json!({ "set": s, "sides": sides }))
        }
    };
    let mut obj = value.unwrap_or_else(|e| serde_json::json!({ "error": e.to_string() }));
    obj["graph6"] = serde_json::Value::String(graph6);
    obj
}

fn create(path: &Path) -> Result<File, Failure> {
    File::create(path).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
