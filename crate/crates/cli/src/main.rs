mod run;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cranesched::dot::{bipartite_dot, interval_dot, job_graph_dot, two_level_dot};
use cranesched::eulerian::{build_job_graph, semi_eulerize};
use cranesched::pathcover::{build_interval_digraph, BipartiteSplit};
use cranesched::twolevel::{build_two_level, greedy_assign, AuxAssignment};
use cranesched::{
    generate_instance, parse_instance, parse_schedule, serialize_instance, serialize_schedule,
    Instance,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use run::{oracle_cap, run, status_of, Algorithm, Choice};

/// Energy-saving single-crane scheduler.
#[derive(Parser)]
#[command(name = "cranesched", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the schedule as JSON.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Number of exhaustively enumerated jobs for approx (default min(n, 3)).
        #[arg(long)]
        k: Option<usize>,
        /// Print per-slot DP records as JSON lines on standard error.
        #[arg(long)]
        trace: bool,
        /// Write the solver's graph in DOT format to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eta: u32,
        #[arg(long, default_value_t = 0)]
        buffer: u32,
        #[arg(long)]
        max_length: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check that a schedule is a permutation with the stated energy.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Run several algorithms on one instance and print a CSV table.
    Compare {
        #[arg(short, long)]
        input: PathBuf,
        /// Comma-separated list, e.g. `oracle,approx:2,dp-bounded`.
        #[arg(short, long, value_delimiter = ',', required = true)]
        algorithms: Vec<Choice>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write one of the underlying graphs in DOT format.
    ExportDot {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        model: Model,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a CSV manifest of `instance,algorithm` rows in parallel.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    JobGraph,
    TwoLevel,
    Interval,
    Bipartite,
}

/// Failure with its exit code: 2 when the algorithm does not apply, 1 for
/// everything else.
struct Failure {
    code: u8,
    message: String,
}

impl From<cranesched::Error> for Failure {
    fn from(e: cranesched::Error) -> Self {
        Failure {
            code: if e.is_precondition() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure { code: 1, message }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn load_instance(path: &Path) -> CliResult<Instance> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Writes to `path`, or standard output when absent.
fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()).into())
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}").into()),
    }
}

fn solve(
    input: &Path,
    algorithm: Algorithm,
    k: Option<usize>,
    trace: bool,
    dot: Option<&Path>,
    out: Option<&Path>,
) -> CliResult {
    let instance = load_instance(input)?;
    if k.is_some() && algorithm != Algorithm::Approx {
        return Err("--k only applies to approx".to_string().into());
    }
    let result = run(
        &instance,
        Choice { algorithm, k },
        oracle_cap()?,
        dot.is_some(),
    )?;
    if algorithm == Algorithm::Auto {
        eprintln!("auto: using {}", result.used.name());
    }
    if trace {
        let mut err = io::stderr().lock();
        for record in &result.trace {
            writeln!(
                err,
                "{}",
                serde_json::to_string(record).expect("trace serializes")
            )
            .map_err(|e| format!("cannot write trace: {e}"))?;
        }
    }
    if let Some(path) = dot {
        emit(
            Some(path),
            result.dot.as_deref().unwrap_or("digraph empty {\n}\n"),
        )?;
    }
    emit(out, &format!("{}\n", serialize_schedule(&result.schedule)))
}

fn verify(instance: &Path, schedule: &Path) -> CliResult {
    let instance = load_instance(instance)?;
    let schedule = parse_schedule(&read(schedule)?)?;
    schedule.verify(&instance)?;
    println!("ok: energy {}", schedule.energy);
    Ok(())
}

#[derive(Serialize)]
struct CompareRow {
    name: String,
    energy: Option<usize>,
    milliseconds: u128,
    status: &'static str,
}

fn compare(input: &Path, choices: &[Choice], out: Option<&Path>) -> CliResult {
    let instance = load_instance(input)?;
    let cap = oracle_cap()?;
    let mut table = csv::Writer::from_writer(Vec::new());
    for &choice in choices {
        let start = Instant::now();
        let result = run(&instance, choice, cap, false);
        let milliseconds = start.elapsed().as_millis();
        if let Err(e) = &result {
            eprintln!("{choice}: {e}");
        }
        table
            .serialize(CompareRow {
                name: choice.to_string(),
                energy: result.as_ref().ok().map(|r| r.schedule.energy),
                milliseconds,
                status: status_of(&result),
            })
            .map_err(|e| e.to_string())?;
    }
    let bytes = table.into_inner().map_err(|e| e.to_string())?;
    emit(out, &String::from_utf8(bytes).expect("csv is utf-8"))
}

fn export_dot(input: &Path, model: Model, out: Option<&Path>) -> CliResult {
    let instance = load_instance(input)?;
    let text = match model {
        Model::JobGraph => {
            let g = build_job_graph(&instance);
            let added = if g.is_empty() {
                Default::default()
            } else {
                semi_eulerize(&g)?
            };
            job_graph_dot(&g, &added)
        }
        Model::TwoLevel => {
            let g = build_two_level(&instance);
            let assignment = greedy_assign(&g, &AuxAssignment::unassigned(instance.len()));
            two_level_dot(&g, Some(&assignment))?
        }
        Model::Interval => interval_dot(&build_interval_digraph(&instance)),
        Model::Bipartite => {
            let mut split = BipartiteSplit::new(&build_interval_digraph(&instance).without_loops());
            split.maximize();
            bipartite_dot(&split)
        }
    };
    emit(out, &text)
}

#[derive(Deserialize)]
struct ManifestRow {
    instance: PathBuf,
    algorithm: String,
}

#[derive(Serialize)]
struct BenchRow {
    instance: String,
    algorithm: String,
    energy: Option<usize>,
    milliseconds: u128,
    status: &'static str,
    message: String,
}

fn bench_one(base: &Path, row: &ManifestRow, cap: usize) -> BenchRow {
    let mut report = BenchRow {
        instance: row.instance.display().to_string(),
        algorithm: row.algorithm.clone(),
        energy: None,
        milliseconds: 0,
        status: "error",
        message: String::new(),
    };
    let choice: Choice = match row.algorithm.parse() {
        Ok(c) => c,
        Err(e) => {
            report.message = e;
            return report;
        }
    };
    let instance = match load_instance(&base.join(&row.instance)) {
        Ok(i) => i,
        Err(f) => {
            report.message = f.message;
            return report;
        }
    };
    let start = Instant::now();
    let result = run(&instance, choice, cap, false);
    report.milliseconds = start.elapsed().as_millis();
    report.status = status_of(&result);
    match result {
        Ok(r) => report.energy = Some(r.schedule.energy),
        Err(e) => report.message = e.to_string(),
    }
    report
}

fn bench(manifest: &Path, out: Option<&Path>) -> CliResult {
    let text = read(manifest)?;
    let rows: Vec<ManifestRow> = csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| format!("{}: {e}", manifest.display()))?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let cap = oracle_cap()?;
    let report: Vec<BenchRow> = rows
        .par_iter()
        .map(|row| bench_one(base, row, cap))
        .collect();
    let mut table = csv::Writer::from_writer(Vec::new());
    for row in report {
        table.serialize(row).map_err(|e| e.to_string())?;
    }
    let bytes = table.into_inner().map_err(|e| e.to_string())?;
    emit(out, &String::from_utf8(bytes).expect("csv is utf-8"))
}

fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve {
            input,
            algorithm,
            k,
            trace,
            dot,
            out,
        } => solve(&input, algorithm, k, trace, dot.as_deref(), out.as_deref()),
        Command::Gen {
            n,
            eta,
            buffer,
            max_length,
            seed,
            out,
        } => {
            let instance = generate_instance(n, eta, buffer, max_length, seed)?;
            emit(
                out.as_deref(),
                &format!("{}\n", serialize_instance(&instance)),
            )
        }
        Command::Verify { instance, schedule } => verify(&instance, &schedule),
        Command::Compare {
            input,
            algorithms,
            out,
        } => compare(&input, &algorithms, out.as_deref()),
        Command::ExportDot { input, model, out } => export_dot(&input, model, out.as_deref()),
        Command::Bench { manifest, out } => bench(&manifest, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
