use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seedwalk::graph::LoadOptions;
use seedwalk::{benchmark, BenchmarkConfig, Graph, Mode, SolveParams};
use seedwalk_cli::config::ExperimentSpec;
use seedwalk_cli::{detect, experiment, score, CliError};

#[derive(Parser)]
#[command(
    name = "seedwalk",
    version,
    about = "Seeded community detection with absorbing random walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep benchmark parameters and write mean NMI per point as CSV.
    Bench(BenchArgs),
    /// Detect communities of a network from a seed file.
    Detect(DetectArgs),
    /// Generate a benchmark graph as network.dat and community.dat.
    Gen(GenArgs),
    /// NMI between a ground-truth and a detected community file.
    Score(ScoreArgs),
}

#[derive(Args)]
struct BenchArgs {
    /// TOML experiment file; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated mixing values to sweep.
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<f64>>,
    /// Comma-separated overlap fractions to sweep (at the configured mu).
    #[arg(long, value_delimiter = ',', conflicts_with = "mu")]
    overlap: Option<Vec<f64>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed_fraction: Option<f64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    rng_seed: Option<u64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct DetectArgs {
    /// Edge list, one `u v` pair per line.
    graph: PathBuf,
    /// `node<TAB>c1[,c2...]` or `node<TAB>a1 a2 ... ak` per seed.
    seeds: PathBuf,
    #[arg(long, default_value = "disjoint")]
    mode: Mode,
    #[arg(long, default_value_t = 1)]
    iterations: usize,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Node ids start at 0 instead of 1.
    #[arg(long)]
    zero_indexed: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Directory receiving network.dat and community.dat.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    overlap: Option<f64>,
    #[arg(long)]
    avg_degree: Option<f64>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    c_min: Option<usize>,
    #[arg(long)]
    c_max: Option<usize>,
    #[arg(long)]
    rng_seed: Option<u64>,
}

#[derive(Args)]
struct ScoreArgs {
    truth: PathBuf,
    found: PathBuf,
    /// Force partition (disjoint) or cover (overlapping) NMI.
    #[arg(long)]
    mode: Option<Mode>,
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Runtime(format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn bench(args: BenchArgs) -> Result<(), CliError> {
    let mut spec = match &args.config {
        Some(p) => ExperimentSpec::load(p)?,
        None => ExperimentSpec::default(),
    };
    if let Some(v) = args.mu {
        spec.sweep = seedwalk_cli::config::SweepVariable::Mu;
        spec.values = v;
    }
    if let Some(v) = args.overlap {
        spec.sweep = seedwalk_cli::config::SweepVariable::OverlapFraction;
        spec.values = v;
    }
    macro_rules! overlay {
        ($($field:ident),*) => { $(if let Some(v) = args.$field { spec.$field = v; })* };
    }
    overlay!(
        n,
        seed_fraction,
        iterations,
        epsilon,
        mode,
        reps,
        rng_seed,
        tol
    );
    if args.workers.is_some() {
        spec.workers = args.workers;
    }
    if args.out.is_some() {
        spec.out = args.out;
    }
    let rows = experiment::run_experiment(&spec)?;
    let mut out = output(spec.out.as_deref())?;
    experiment::write_csv(&rows, &mut out)
}

fn run_detect(args: DetectArgs) -> Result<(), CliError> {
    let opts = LoadOptions {
        one_indexed: !args.zero_indexed,
        ..LoadOptions::default()
    };
    let graph = Graph::load_edge_list(open(&args.graph)?, opts)?;
    let seeds = detect::read_seed_file(open(&args.seeds)?, &graph)?;
    let params = SolveParams::with_tolerance(args.tol);
    let found = detect::detect(
        &graph,
        &seeds.seeds,
        args.mode,
        args.iterations,
        args.epsilon,
        &params,
    )?;
    let mut out = output(args.out.as_deref())?;
    detect::write_detection(&graph, &seeds.names, &found, &mut out)?;
    out.flush()
        .map_err(|e| CliError::Runtime(format!("writing output: {e}")))
}

fn gen(args: GenArgs) -> Result<(), CliError> {
    let mut cfg = BenchmarkConfig::default();
    if let Some(v) = args.overlap {
        cfg.overlap_fraction = v;
    }
    macro_rules! overlay {
        ($($field:ident),*) => { $(if let Some(v) = args.$field { cfg.$field = v; })* };
    }
    overlay!(n, mu, avg_degree, max_degree, c_min, c_max, rng_seed);
    let (graph, truth) = benchmark::generate(&cfg)?;
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", args.out.display())))?;
    let create = |name: &str| {
        let p = args.out.join(name);
        File::create(&p)
            .map(BufWriter::new)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", p.display())))
    };
    let mut net = create("network.dat")?;
    benchmark::write_network(&graph, &mut net)?;
    let mut com = create("community.dat")?;
    benchmark::write_communities(&graph, &truth, &mut com)?;
    let flush = |w: &mut BufWriter<File>| {
        w.flush()
            .map_err(|e| CliError::Runtime(format!("writing benchmark: {e}")))
    };
    flush(&mut net)?;
    flush(&mut com)
}

fn run_score(args: ScoreArgs) -> Result<(), CliError> {
    let truth = score::read_memberships(open(&args.truth)?)?;
    let found = score::read_memberships(open(&args.found)?)?;
    println!("{}", score::nmi(&truth, &found, args.mode)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Bench(a) => bench(a),
        Command::Detect(a) => run_detect(a),
        Command::Gen(a) => gen(a),
        Command::Score(a) => run_score(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("seedwalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
