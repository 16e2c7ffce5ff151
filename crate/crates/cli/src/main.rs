use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use bicircular::graph::io::{parse_graph, write_graph};
use bicircular::graph::oracle::oracle_decide;
use bicircular::graph::oracle_find_representation;
use bicircular::logic::{build, eval, parse, print, Interpretation, Params, Phi};
use bicircular::matroid::io::{parse_set_system, write_set_system};
use bicircular::{canonical_tree, is_bicircular, Decision, ElementSet, Exec, Matroid, SetSystem};

#[derive(Parser)]
#[command(name = "bicircular", version, about = "Decide whether small matroids are bicircular")]
struct Cli {
    /// Worker threads for the graph oracle (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Report timings on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide bicircularity of a set-system file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Structural)]
        mode: Mode,
    },
    /// Print the canonical 2-sum decomposition tree.
    Decompose { file: PathBuf },
    /// Print the bicircular matroid of a graph file as a set-system.
    Bmatroid { graph: PathBuf },
    /// Evaluate a formula file on a set-system file.
    Eval {
        formula: PathBuf,
        system: PathBuf,
        /// Free-variable bindings, e.g. `X=a,b;Y=`.
        #[arg(long, default_value = "")]
        bind: String,
    },
    /// Print a catalog formula.
    Emit {
        name: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        phi: Option<String>,
    },
    /// Search all graphs for a (rooted) bicircular representation.
    Oracle {
        file: PathBuf,
        /// Elements that must be loops of the representing graph.
        #[arg(long, default_value = "")]
        loops: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Structural,
    Oracle,
    Both,
}

enum Failure {
    Input(String),
    Disagreement(String),
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: bicircular::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<SetSystem, Failure> {
    in_file(path, parse_set_system(&read(path)?))
}

fn load_matroid(path: &Path) -> Result<Matroid, Failure> {
    in_file(path, Matroid::new(load_system(path)?))
}

fn names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn bindings(text: &str) -> Result<Vec<(&str, Vec<&str>)>, Failure> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|b| {
            b.split_once('=')
                .map(|(var, set)| (var.trim(), names(set)))
                .ok_or_else(|| Failure::Input(format!("--bind: expected `VAR=a,b`, got `{b}`")))
        })
        .collect()
}

fn check(m: &Matroid, mode: Mode, exec: Exec, jobs: usize) -> Outcome {
    let structural = match mode {
        Mode::Oracle => None,
        _ => Some(is_bicircular(m, exec).map_err(|e| Failure::Input(e.to_string()))?),
    };
    let oracle = match mode {
        Mode::Structural => None,
        _ => Some(exec.with_jobs(jobs, || oracle_decide(m, exec)).map_err(|e| Failure::Input(e.to_string()))?),
    };
    let verdict = |yes: bool| if yes { "bicircular" } else { "not bicircular" };
    match (&structural, &oracle) {
        (Some(d), Some(o)) if d.is_yes() != o.bicircular => Err(Failure::Disagreement(format!(
            "structural test says {}, oracle says {} ({} graphs searched)",
            verdict(d.is_yes()),
            verdict(o.bicircular),
            o.graphs_searched
        ))),
        (Some(d), o) => {
            match o {
                Some(o) => println!("{}; oracle agrees ({} graphs searched)", verdict(d.is_yes()), o.graphs_searched),
                None => println!("{}", verdict(d.is_yes())),
            }
            match d {
                Decision::Yes(w) => {
                    print!("{}", write_graph(&w.graph));
                    if !w.loops.is_empty() {
                        println!("# loops of the matroid: {}", w.loops.join(" "));
                    }
                }
                Decision::No(reason) => println!("reason: {reason}"),
            }
            Ok(d.is_yes())
        }
        (None, Some(o)) => {
            println!("{} ({} graphs searched)", verdict(o.bicircular), o.graphs_searched);
            for (comp, g) in &o.witnesses {
                if let Some(g) = g.as_ref().filter(|g| g.edge_count() > 0) {
                    println!("# component {}", m.names_of(*comp).join(" "));
                    print!("{}", write_graph(g));
                }
            }
            Ok(o.bicircular)
        }
        (None, None) => unreachable!(),
    }
}

fn run(cli: &Cli) -> Outcome {
    let exec = if cli.jobs == 1 { Exec::Sequential } else { Exec::Parallel };
    match &cli.command {
        Command::Check { file, mode } => check(&load_matroid(file)?, *mode, exec, cli.jobs),
        Command::Decompose { file } => {
            let tree = in_file(file, canonical_tree(&load_matroid(file)?))?;
            print!("{}", tree.to_text());
            Ok(true)
        }
        Command::Bmatroid { graph } => {
            let g = in_file(graph, parse_graph(&read(graph)?))?;
            let m = in_file(graph, g.bicircular())?;
            print!("{}", write_set_system(&m.set_system()));
            Ok(true)
        }
        Command::Eval { formula, system, bind } => {
            let f = in_file(formula, parse(&read(formula)?))?;
            let s = load_system(system)?;
            let theta = in_file(system, Interpretation::from_names(&s, &bindings(bind)?))?;
            let value = eval(&s, &f, &theta).map_err(|e| Failure::Input(e.to_string()))?;
            println!("{value}");
            Ok(value)
        }
        Command::Emit { name, k, n, phi } => {
            let phi = phi
                .as_deref()
                .map(Phi::parse)
                .transpose()
                .map_err(|e| Failure::Input(format!("--phi: {e}")))?;
            let params = Params { k: *k, n: *n, phi, ..Params::default() };
            let f = build(name, &params).map_err(|e| Failure::Input(e.to_string()))?;
            println!("{}", print(&f));
            Ok(true)
        }
        Command::Oracle { file, loops } => {
            let m = load_matroid(file)?;
            let loops: ElementSet = in_file(file, m.set_of(&names(loops)))?;
            let report = exec
                .with_jobs(cli.jobs, || oracle_find_representation(&m, loops, exec))
                .map_err(|e| Failure::Input(e.to_string()))?;
            match &report.witness {
                Some(g) => {
                    println!("found ({} of {} graphs visited)", report.nodes_visited, report.space_size);
                    print!("{}", write_graph(g));
                }
                None => println!("none ({} of {} graphs visited)", report.nodes_visited, report.space_size),
            }
            Ok(report.witness.is_some())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    if cli.verbose {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}
