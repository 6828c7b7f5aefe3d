//! `guided`: graph generation, brute-force optima, experiment runs and the
//! acceptance suites.
//!
//! Exit codes: 0 success, 1 a certification criterion failed, 2 invalid
//! input (including usage errors), 3 resource limit exceeded.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use guided::bench::certify::{run_criterion, CRITERIA};
use guided::bench::{load_config, run_experiment, summarize, write_summary_csv, write_trials_csv, brute_force_opt};
use guided::constraint::{Constraint, ExtendedMatroid, Matroid, SizeConstraint};
use guided::constraint::read_partition_matroid;
use guided::oracle::{gen_graph, read_edge_list, write_edge_list, CountedOracle, GraphModel};
use guided::{Error, Result};

#[derive(Parser)]
#[command(
    name = "guided",
    version,
    about = "Guided greedy submodular maximization toolkit",
    after_help = "Exit codes: 0 success, 1 a certification criterion failed, 2 invalid input, 3 resource limit exceeded."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random unit-weight graph and write it as an edge list.
    GenGraph(GenGraphArgs),
    /// Brute-force the max-cut optimum of an edge-list graph.
    Opt(OptArgs),
    /// Run an experiment config and write the trial and summary CSVs.
    Run(RunArgs),
    /// Run the acceptance property suites and print one line per criterion.
    Certify(CertifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// Erdős–Rényi G(n, p); needs --p.
    Er,
    /// Barabási–Albert; needs --m.
    Ba,
    /// Watts–Strogatz; needs --degree and --p.
    Ws,
}

#[derive(Args)]
struct GenGraphArgs {
    /// Random graph model.
    model: Model,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Edge probability (ER) or rewiring probability (WS).
    #[arg(long)]
    p: Option<f64>,
    /// Edges attached per new vertex (BA).
    #[arg(long)]
    m: Option<usize>,
    /// Even ring degree (WS).
    #[arg(long)]
    degree: Option<usize>,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OptArgs {
    /// Edge-list file (`n m` header, then `u v w` lines).
    #[arg(long)]
    graph: PathBuf,
    /// Size bound; ignored when --partition is given.
    #[arg(long)]
    k: usize,
    /// Partition matroid file (`B N` header, `block capacity` lines, `element block` lines).
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Maximum number of feasible sets to enumerate before giving up (exit 3).
    #[arg(long, default_value_t = 50_000_000)]
    limit: u64,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (TOML, or JSON when the extension is .json).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct CertifyArgs {
    /// Comma-separated criterion ids to run; all when omitted.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

fn graph_model(a: &GenGraphArgs) -> Result<GraphModel> {
    let need = |what: &str| Error::input(format!("--{what} is required for this model"));
    Ok(match a.model {
        Model::Er => GraphModel::Er { p: a.p.ok_or_else(|| need("p"))? },
        Model::Ba => GraphModel::Ba { m: a.m.ok_or_else(|| need("m"))? },
        Model::Ws => GraphModel::Ws {
            degree: a.degree.ok_or_else(|| need("degree"))?,
            p: a.p.ok_or_else(|| need("p"))?,
        },
    })
}

fn open(path: &PathBuf) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::input(format!("cannot open {}: {e}", path.display())))
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::input(format!("cannot create {}: {e}", path.display())))
}

fn gen_graph_cmd(a: GenGraphArgs) -> Result<u8> {
    let g = gen_graph(graph_model(&a)?, a.n, a.seed)?;
    match &a.output {
        Some(path) => {
            let mut out = create(path)?;
            write_edge_list(&g, &mut out)?;
            out.flush()?;
            eprintln!("wrote {} vertices, {} edges to {}", g.n(), g.edges().len(), path.display());
        }
        None => write_edge_list(&g, io::stdout().lock())?,
    }
    Ok(0)
}

fn opt_cmd(a: OptArgs) -> Result<u8> {
    let g = read_edge_list(open(&a.graph)?)?;
    let partition = a.partition.as_ref().map(|p| read_partition_matroid(open(p)?)).transpose()?;
    let (set, value) = match &partition {
        Some(p) => {
            if p.ground_size() != g.n() {
                return Err(Error::input(format!("partition covers {} elements, graph has {}", p.ground_size(), g.n())));
            }
            let m = ExtendedMatroid::new(p)?;
            let o = CountedOracle::new(&g, m.k());
            brute_force_opt(&o, &Constraint::Matroid(m), a.limit)?
        }
        None => {
            let o = CountedOracle::new(&g, a.k);
            brute_force_opt(&o, &Constraint::Size(SizeConstraint::new(a.k)?), a.limit)?
        }
    };
    println!("{value}");
    println!("{}", set.strip_dummies(g.n()));
    Ok(0)
}

fn run_cmd(a: RunArgs) -> Result<u8> {
    let config = load_config(&a.config)?;
    let report = run_experiment(&config)?;
    let mut trials = create(&config.output)?;
    write_trials_csv(&report.records, &mut trials)?;
    trials.flush()?;
    let mut summary = create(&config.summary)?;
    write_summary_csv(&summarize(&report.records), &mut summary)?;
    summary.flush()?;
    eprintln!(
        "wrote {} trial rows to {} and the summary to {}",
        report.records.len(),
        config.output.display(),
        config.summary.display()
    );
    let failed: Vec<_> = report.errors().collect();
    for r in &failed {
        eprintln!("trial {} k={} seed={} failed: {}", r.algorithm, r.k, r.seed, r.error.as_deref().unwrap_or(""));
    }
    Ok(if failed.is_empty() { 0 } else { 2 })
}

fn certify_cmd(a: CertifyArgs) -> Result<u8> {
    let ids: Vec<u8> = if a.only.is_empty() { (1..=CRITERIA).collect() } else { a.only };
    let mut failed = 0;
    for id in ids {
        let report = run_criterion(id)?;
        println!("{report}");
        failed += usize::from(!report.passed);
    }
    Ok(u8::from(failed > 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::GenGraph(a) => gen_graph_cmd(a),
        Command::Opt(a) => opt_cmd(a),
        Command::Run(a) => run_cmd(a),
        Command::Certify(a) => certify_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
