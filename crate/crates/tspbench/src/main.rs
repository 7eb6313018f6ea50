// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use tspbench::backend::{execute, BackendSpec, WorkerCommand};
use tspbench::bench::{run_bench, Backends};
use tspbench::core::instance::generate_instance;
use tspbench::instance_file::{format_instance, read_instance, write_instance};
use tspbench::report::{metrics_csv, BenchPlan, ReportFile};
use tspbench::{worker, Error, Result};

/// Exact brute-force TSP solver with serial, threaded, multi-process and
/// hybrid backends, plus a speedup / efficiency / Karp-Flatt benchmark harness.
#[derive(Parser, Debug)]
#[command(
    name = "tspbench",
    version,
    subcommand_required = false,
    arg_required_else_help = true
)]
struct Cli {
    /// Run as a message-passing worker on stdin/stdout.
    #[arg(long, hide = true)]
    worker: bool,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a seeded random instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Mirror the upper triangle.
        #[arg(long)]
        symmetric: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Serial)]
        backend: Kind,
        #[arg(long, default_value_t = 1)]
        procs: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Time backends over a sweep of city counts.
    Bench {
        /// Comma-separated city counts.
        #[arg(long, value_delimiter = ',', default_values_t = [8, 9, 10, 11, 12])]
        n: Vec<usize>,
        /// Comma-separated backends: serial, threads:T, procs:P, hybrid:PxT.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "serial,threads:2,threads:4,procs:2,procs:4"
        )]
        backends: Vec<BackendSpec>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        warmup: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Use asymmetric instances.
        #[arg(long)]
        asymmetric: bool,
        /// Allow city counts of 13 or more.
        #[arg(long)]
        big: bool,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Raw per-run CSV path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Metrics CSV path.
        #[arg(long)]
        metrics_csv: Option<PathBuf>,
    },
    /// Derive the metrics table from a JSON report.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        /// Output CSV; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Serial,
    Threads,
    Procs,
    Hybrid,
}

const BIG_N: usize = 13;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.worker {
        return ExitCode::from(worker::run_stdio() as u8);
    }
    let Some(cmd) = cli.command else {
        eprintln!("tspbench: no subcommand given (see --help)");
        return ExitCode::from(1);
    };
    match run(cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tspbench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Gen {
            n,
            seed,
            symmetric,
            out,
        } => {
            let matrix = generate_instance(n, seed, symmetric)?;
            match out {
                Some(path) => write_instance(&path, &matrix),
                None => {
                    print!("{}", format_instance(&matrix));
                    Ok(())
                }
            }
        }
        Cmd::Solve {
            input,
            backend,
            procs,
            threads,
        } => {
            let matrix = read_instance(&input)?;
            let spec = match backend {
                Kind::Serial => BackendSpec::Serial,
                Kind::Threads => BackendSpec::SharedMemory { threads },
                Kind::Procs => BackendSpec::MessagePassing { processes: procs },
                Kind::Hybrid => BackendSpec::Hybrid {
                    processes: procs,
                    threads,
                },
            };
            // re-parse to apply the same validation as bench labels
            let spec: BackendSpec = spec.to_string().parse()?;
            let worker = WorkerCommand::from_env()?;
            let started = Instant::now();
            let exec = execute(&matrix, spec, &worker)?;
            let seconds = started.elapsed().as_secs_f64();
            let path: Vec<String> = exec.result.path.iter().map(usize::to_string).collect();
            println!("cost: {}", exec.result.cost);
            println!("path: {}", path.join(" "));
            println!("time: {seconds:.6} s");
            Ok(())
        }
        Cmd::Bench {
            n,
            backends,
            reps,
            warmup,
            seed,
            asymmetric,
            big,
            out,
            csv,
            metrics_csv: mcsv,
        } => {
            if let Some(&large) = n.iter().find(|&&v| v >= BIG_N) {
                if !big {
                    return Err(Error::Validation(format!(
                        "n = {large} runs for minutes to hours; pass --big to confirm"
                    )));
                }
            }
            let plan = BenchPlan {
                n_values: n,
                backends,
                repetitions: reps,
                warmup,
                seed,
                symmetric: !asymmetric,
            };
            let solver = Backends {
                worker: WorkerCommand::from_env()?,
            };
            let report = run_bench(&plan, &solver)?;
            match &out {
                Some(path) => write(path, &report.to_json())?,
                None => print!("{}", report.to_json()),
            }
            if let Some(path) = &csv {
                write(path, &report.raw_csv())?;
            }
            if let Some(path) = &mcsv {
                write(path, &metrics_csv(&report.metrics))?;
            }
            Ok(())
        }
        Cmd::Metrics { input, out } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Error::Validation(format!("cannot read {}: {e}", input.display())))?;
            let report = ReportFile::from_json(&text)?;
            let table = metrics_csv(&report.recompute_metrics()?);
            match out {
                Some(path) => write(&path, &table),
                None => {
                    print!("{table}");
                    Ok(())
                }
            }
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::Execution(format!("cannot write {}: {e}", path.display())))
}
