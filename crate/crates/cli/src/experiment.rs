//! Benchmark sweeps: generate or load, seed, detect, score, aggregate.

use std::fs::File;
use std::io::{BufReader, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use seedwalk::benchmark::{self, MAX_ATTEMPTS};
use seedwalk::classify::{self, Assignment};
use seedwalk::{metrics, seeding, Error, Graph, GroundTruth, Mode};

use crate::config::ExperimentSpec;
use crate::CliError;

/// One CSV line: aggregate over the repetitions of one sweep value.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub sweep_variable: String,
    pub value: Option<f64>,
    pub mean_nmi: f64,
    pub std_nmi: f64,
    pub reps: usize,
    pub n: usize,
    pub seed_fraction: f64,
    pub iterations: usize,
    pub epsilon: f64,
    pub mode: Mode,
}

pub const CSV_HEADER: [&str; 10] = [
    "sweep_variable",
    "value",
    "mean_nmi",
    "std_nmi",
    "reps",
    "n",
    "seed_fraction",
    "iterations",
    "epsilon",
    "mode",
];

/// Independent stream for repetition `rep` of sweep point `point`.
pub fn repetition_rng(rng_seed: u64, point: usize, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(((point as u64) << 32) | rep as u64);
    rng
}

/// Generates a connected benchmark graph, drawing again (up to the retry
/// budget) whenever the result is disconnected.
pub fn connected_benchmark(
    cfg: &seedwalk::BenchmarkConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Graph, GroundTruth), Error> {
    let mut last = Error::Disconnected;
    for _ in 0..MAX_ATTEMPTS {
        match benchmark::generate_with_rng(cfg, rng) {
            Ok((g, t)) if g.is_connected() => return Ok((g, t)),
            Ok(_) => last = Error::Disconnected,
            Err(e @ Error::Generation(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// NMI of a detection against ground truth: partition NMI in disjoint mode,
/// LFK cover NMI in overlapping mode.
pub fn score(truth: &GroundTruth, found: &Assignment) -> Result<f64, Error> {
    match found {
        Assignment::Partition(p) => match truth.to_partition() {
            Some(t) => metrics::nmi_partition(&t, p),
            None => metrics::nmi_cover_lfk(&truth.to_cover(), &p.to_cover()),
        },
        Assignment::Cover(c) => metrics::nmi_cover_lfk(&truth.to_cover(), c),
    }
}

/// Seeds, detection and scoring on one graph.
pub fn evaluate(
    spec: &ExperimentSpec,
    graph: &Graph,
    truth: &GroundTruth,
    rng: &mut ChaCha8Rng,
) -> Result<f64, CliError> {
    let seeds = seeding::pick_seeds(graph, truth, spec.seed_fraction, rng)
        .map_err(|e| CliError::stage("seed generation", e))?;
    let outcome = classify::run(
        graph,
        &seeds,
        spec.mode,
        spec.iterations,
        spec.epsilon,
        &spec.solve_params(),
    )
    .map_err(|e| CliError::stage("random walk", e))?;
    score(truth, &outcome.assignment).map_err(|e| CliError::stage("nmi", e))
}

fn load_files(spec: &ExperimentSpec) -> Result<(Graph, GroundTruth), CliError> {
    let open = |p: &std::path::Path| {
        File::open(p)
            .map(BufReader::new)
            .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
    };
    let network = open(spec.network.as_deref().unwrap())?;
    let communities = open(spec.communities.as_deref().unwrap())?;
    let (g, t) = benchmark::read_lfr_files(network, communities)
        .map_err(|e| CliError::stage("loading benchmark files", e))?;
    if !g.is_connected() {
        return Err(CliError::stage(
            "loading benchmark files",
            Error::Disconnected,
        ));
    }
    Ok((g, t))
}

fn aggregate(spec: &ExperimentSpec, variable: &str, value: Option<f64>, nmis: &[f64]) -> ResultRow {
    let reps = nmis.len();
    let mean = nmis.iter().sum::<f64>() / reps as f64;
    let std = if reps > 1 {
        (nmis.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (reps - 1) as f64).sqrt()
    } else {
        0.0
    };
    ResultRow {
        sweep_variable: variable.to_string(),
        value,
        mean_nmi: mean,
        std_nmi: std,
        reps,
        n: spec.n,
        seed_fraction: spec.seed_fraction,
        iterations: spec.iterations,
        epsilon: spec.epsilon,
        mode: spec.mode,
    }
}

/// Runs every sweep point and repetition. Repetitions run in parallel on
/// `spec.workers` threads; rows come back in sweep order and depend only on
/// the spec.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ResultRow>, CliError> {
    spec.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = spec.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;

    if spec.uses_files() {
        let (graph, truth) = load_files(spec)?;
        let nmis: Vec<f64> = pool.install(|| {
            (0..spec.reps)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = repetition_rng(spec.rng_seed, 0, rep);
                    evaluate(spec, &graph, &truth, &mut rng)
                })
                .collect::<Result<_, _>>()
        })?;
        return Ok(vec![aggregate(spec, "file", None, &nmis)]);
    }

    let tasks: Vec<(usize, usize)> = (0..spec.values.len())
        .flat_map(|p| (0..spec.reps).map(move |r| (p, r)))
        .collect();
    let nmis: Vec<f64> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(point, rep)| {
                let mut rng = repetition_rng(spec.rng_seed, point, rep);
                let cfg = spec.benchmark_at(spec.values[point]);
                let (graph, truth) = connected_benchmark(&cfg, &mut rng)
                    .map_err(|e| CliError::stage("benchmark generation", e))?;
                evaluate(spec, &graph, &truth, &mut rng)
            })
            .collect::<Result<_, _>>()
    })?;

    Ok(spec
        .values
        .iter()
        .enumerate()
        .map(|(p, &v)| {
            let chunk = &nmis[p * spec.reps..(p + 1) * spec.reps];
            aggregate(spec, spec.sweep.name(), Some(v), chunk)
        })
        .collect())
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Runtime(format!("writing csv: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.sweep_variable.clone(),
            r.value.map(|v| v.to_string()).unwrap_or_default(),
            r.mean_nmi.to_string(),
            r.std_nmi.to_string(),
            r.reps.to_string(),
            r.n.to_string(),
            r.seed_fraction.to_string(),
            r.iterations.to_string(),
            r.epsilon.to_string(),
            r.mode.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::Runtime(format!("writing csv: {e}")))?;
    Ok(())
}
