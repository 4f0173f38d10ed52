// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdescriptor::oracle::{Oracle, DEFAULT_DENSE_CAP};
use qdescriptor::{
    build_branch_tree, build_report, parse_circuit, preset::preset, run_circuit, serialize_circuit, Circuit, Error,
    Result, DEFAULT_TOLERANCE,
};

#[derive(Parser)]
#[command(
    name = "qdescriptor",
    version,
    about = "Heisenberg-picture descriptor analysis of qubit networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate descriptors and report foliations.
    Run(RunArgs),
    /// Print the circuit in canonical text form.
    Show(Source),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in circuit (`fr`).
    #[arg(long)]
    preset: Option<String>,
    /// Circuit text file.
    #[arg(long)]
    circuit: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// `table` prints the per-gate summary, `json` the full descriptor trace.
    #[arg(long, value_enum, default_value = "table")]
    report: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the branching tree; `.json` selects JSON, anything else Graphviz.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Cross-check against the dense state-vector oracle; the summary goes to stdout.
    #[arg(long)]
    check: bool,
    #[arg(long, env = "QDESCRIPTOR_TOLERANCE", default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    tolerance: f64,
    /// Pairs for the tree, e.g. `R:A,A:S`. Defaults to every interacting pair.
    #[arg(long)]
    watch: Option<String>,
    /// Largest network the dense oracle will expand.
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    cap: usize,
}

fn parse_tolerance(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(format!("`{s}` is not a non-negative number")),
    }
}

fn load(source: &Source) -> Result<Circuit> {
    if let Some(name) = &source.preset {
        return preset(name).unwrap_or_else(|| Err(Error::Usage(format!("unknown preset `{name}`"))));
    }
    let path = source.circuit.as_ref().expect("clap enforces one source");
    parse_circuit(&fs::read_to_string(path)?)
}

fn parse_watch(circuit: &Circuit, spec: &str) -> Result<Vec<(usize, usize)>> {
    spec.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| Error::Usage(format!("watch pair `{pair}` must look like C:T")))?;
            let resolve = |name: &str| {
                circuit
                    .qubit_by_name(name.trim())
                    .ok_or_else(|| Error::Usage(format!("unknown qubit `{}`", name.trim())))
            };
            Ok((resolve(a)?, resolve(b)?))
        })
        .collect()
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(args: &RunArgs) -> Result<bool> {
    let circuit = load(&args.source)?;
    let trace = run_circuit(&circuit)?;
    let report = match args.report {
        ReportFormat::Table => build_report(&trace, args.tolerance)?.render(),
        ReportFormat::Json => trace.to_json()? + "\n",
    };
    emit(args.out.as_deref(), &report)?;

    if let Some(path) = &args.tree {
        let watch = match &args.watch {
            Some(spec) => parse_watch(&circuit, spec)?,
            None => circuit.interacting_pairs(),
        };
        let tree = build_branch_tree(&trace, &watch, args.tolerance)?;
        let text = if path.extension().is_some_and(|e| e == "json") {
            tree.to_json()? + "\n"
        } else {
            tree.to_dot()
        };
        fs::write(path, text)?;
    }

    if args.check {
        let check = Oracle::new(args.cap).cross_check(&trace, &circuit)?;
        println!("{}", check.to_json()?);
        return Ok(check.passes(args.tolerance));
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => run(args),
        Command::Show(source) => load(source).map(|c| {
            print!("{}", serialize_circuit(&c));
            true
        }),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("qdescriptor: cross-check exceeded tolerance");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("qdescriptor: {e}");
            ExitCode::from(2)
        }
    }
}
