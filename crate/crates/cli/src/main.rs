//! `primegraph`: batch front end for prime-graph realizability, minimality and synthesis.
//!
//! Graphs are read as edge lists or graph6, orientations as `u > v` arc lists and group
//! plans as JSON. A path of `-` reads standard input.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 computational limit.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use primegraph_core::graph::format;
use primegraph_core::realizability::exceptional_forest_names;
use primegraph_core::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "primegraph", version, about = "Prime graphs of finite solvable groups")]
struct Cli {
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Realizability verdict with a coloring certificate (exit 1 when not realizable).
    Check { graph: PathBuf },
    /// Frobenius orientation of the complement, as an arc list.
    Orient { graph: PathBuf },
    /// Checks an arc list against the Frobenius orientation rules.
    Validate { arcs: PathBuf },
    /// Girth class of a realizable graph.
    ClassifyGirth { graph: PathBuf },
    /// The realizable graphs of girth other than 3, as graph6.
    Exceptions {
        /// Append a name after each graph6 string.
        #[arg(long)]
        names: bool,
    },
    /// Minimal prime graphs.
    Minimal {
        #[command(subcommand)]
        command: MinimalCommand,
    },
    /// Source, middle and sink sets of a Frobenius orientation.
    Analyze { arcs: PathBuf },
    /// Group plan for a Frobenius orientation.
    Synthesize {
        arcs: PathBuf,
        /// Require middle primes to be 1 modulo the product of all source primes.
        #[arg(long)]
        strict: bool,
    },
    /// Prime graph of the group described by a plan, as an edge list.
    PrimeGraph { plan: PathBuf },
    /// Frobenius digraph of the group described by a plan, as an arc list.
    Digraph { plan: PathBuf },
    /// Round-trip report for a plan (exit 1 when the group misses its target).
    Verify {
        plan: PathBuf,
        /// Also scan every element when the group order is at most this bound.
        #[arg(long)]
        brute_cap: Option<u64>,
    },
    /// Size of the largest set of pairwise adjacent primes realized by one element.
    Sigma { plan: PathBuf },
}

#[derive(Subcommand)]
enum MinimalCommand {
    /// Minimality verdict (exit 1 when not minimal).
    Check { graph: PathBuf },
    /// Linked duplication of a vertex, as an edge list.
    Duplicate {
        graph: PathBuf,
        vertex: String,
        #[arg(long)]
        label: Option<String>,
    },
    /// Every minimal graph on `n` vertices up to isomorphism, as graph6.
    Enumerate { n: usize },
    /// Structural checks on a minimal graph (exit 1 when one fails).
    Lemmas { graph: PathBuf },
}

enum Failure {
    Input(String),
    Core(Error),
}

type CliResult<T> = std::result::Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn json(value: Value, positive: bool) -> Self {
        Output {
            text: format!("{}\n", serde_json::to_string_pretty(&value).expect("json")),
            code: if positive { 0 } else { 1 },
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn read_graph(path: &Path) -> CliResult<LabeledGraph> {
    Ok(format::parse_graph(&read_input(path)?)?)
}

fn read_arcs(path: &Path) -> CliResult<Orientation> {
    Ok(format::parse_arc_list(&read_input(path)?)?)
}

fn read_plan(path: &Path) -> CliResult<GroupPlan> {
    Ok(GroupPlan::from_json(&read_input(path)?)?)
}

fn model(path: &Path) -> CliResult<GroupModel> {
    Ok(GroupModel::from_plan(&read_plan(path)?)?)
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

fn run(command: Command) -> CliResult<Output> {
    Ok(match command {
        Command::Check { graph } => {
            let g = read_graph(&graph)?;
            let v = is_solvable_prime_graph(&g)?;
            Output::json(v.to_json(&g), v.realizable)
        }
        Command::Orient { graph } => {
            let g = read_graph(&graph)?;
            match canonical_orientation(&g) {
                Ok(o) => Output::ok(format::to_arc_list(&o)),
                Err(Error::NotRealizable) => {
                    let v = is_solvable_prime_graph(&g)?;
                    Output::json(v.to_json(&g), false)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Validate { arcs } => {
            let o = read_arcs(&arcs)?;
            let found = validate_frobenius_orientation(&o);
            let doc = json!({
                "schema_version": 1,
                "valid": found.is_empty(),
                "violations": found.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            });
            Output::json(doc, found.is_empty())
        }
        Command::ClassifyGirth { graph } => {
            let class = classify_girth(&read_graph(&graph)?)?;
            let realizable = class != GirthClass::NotRealizable;
            Output { text: format!("{class}\n"), code: if realizable { 0 } else { 1 } }
        }
        Command::Exceptions { names } => {
            let mut graphs: Vec<(LabeledGraph, String)> =
                exceptional_forests().into_iter().zip(exceptional_forest_names()).collect();
            graphs.push((named::cycle(4), "C4".into()));
            graphs.push((named::cycle(5), "C5".into()));
            Output::ok(lines(graphs.iter().map(|(g, name)| {
                let g6 = format::to_graph6(g);
                if names { format!("{g6} {name}") } else { g6 }
            })))
        }
        Command::Minimal { command } => run_minimal(command)?,
        Command::Analyze { arcs } => {
            let o = read_arcs(&arcs)?;
            Output::json(analyze(&o)?.to_json(), true)
        }
        Command::Synthesize { arcs, strict } => {
            let o = read_arcs(&arcs)?;
            let opts = if strict { SynthOptions::strict() } else { SynthOptions::default() };
            Output::json(synthesize(&o, &opts)?.to_json(), true)
        }
        Command::PrimeGraph { plan } => Output::ok(format::to_edge_list(&model(&plan)?.compute_prime_graph())),
        Command::Digraph { plan } => Output::ok(format::to_arc_list(&model(&plan)?.compute_frobenius_digraph()?)),
        Command::Verify { plan, brute_cap } => {
            let report = verify_round_trip(&read_plan(&plan)?, brute_cap)?;
            Output::json(report.to_json(), report.ok())
        }
        Command::Sigma { plan } => {
            let m = model(&plan)?;
            let sigma = m.sigma()?;
            let primes = m.primes().len();
            let doc = json!({
                "schema_version": 1,
                "sigma": sigma,
                "primes": primes,
                "bound_holds": primes <= 3 * sigma,
            });
            Output::json(doc, true)
        }
    })
}

fn run_minimal(command: MinimalCommand) -> CliResult<Output> {
    Ok(match command {
        MinimalCommand::Check { graph } => {
            let report = is_minimal(&read_graph(&graph)?)?;
            Output::json(report.to_json(), report.minimal)
        }
        MinimalCommand::Duplicate { graph, vertex, label } => {
            let g = read_graph(&graph)?;
            Output::ok(format::to_edge_list(&linked_vertex_duplication(&g, &vertex, label.as_deref())?))
        }
        MinimalCommand::Enumerate { n } => {
            Output::ok(lines(enumerate_minimal(n)?.iter().map(format::to_graph6)))
        }
        MinimalCommand::Lemmas { graph } => match check_minimal_lemmas(&read_graph(&graph)?) {
            Ok(report) => Output::json(report.to_json(), report.all_pass()),
            Err(Error::NotMinimal) => Output::json(json!({"schema_version": 1, "minimal": false}), false),
            Err(e) => return Err(e.into()),
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed;
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_limit() { 3 } else { 2 })
        }
    }
}
