use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use helmstab_core::problems::Example;
use helmstab_harness::config::{parse_eps_range, parse_grid, EpsRange, ExperimentConfig};
use helmstab_harness::harness::{run_example, run_sweep, RunRecord};
use helmstab_harness::oracle_check;

#[derive(Parser, Debug)]
#[command(
    name = "helmstab",
    version,
    about = "Stabilized Cauchy problem for the Helmholtz equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reconstruct one of the reference examples from noisy Cauchy data.
    Run(RunArgs),
    /// Check the solvers against closed-form mode solutions.
    OracleCheck,
    /// Mean error over an evenly spaced range of noise levels.
    Sweep {
        #[arg(long, value_parser = parse_eps_range, value_name = "A:B:STEPS")]
        eps_range: EpsRange,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    example: u32,
    /// Wavenumber; defaults to the example's own.
    #[arg(long)]
    k: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    /// Defaults to k.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, value_parser = parse_grid, value_name = "MxN")]
    grid: Option<(usize, usize)>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    #[arg(long)]
    heatmaps: bool,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let Some(example) = Example::from_index(self.example) else {
            bail!("unknown example {}", self.example);
        };
        let mut c = ExperimentConfig::with_overrides(example, self.k, self.eta, self.grid, self.q);
        if let Some(eps) = &self.eps {
            c.eps = eps.clone();
        }
        if let Some(seeds) = &self.seeds {
            c.seeds = seeds.clone();
        }
        c.out_dir = Some(self.out.clone());
        c.heatmaps = self.heatmaps;
        Ok(c)
    }
}

fn report(record: &RunRecord) {
    let c = &record.config;
    println!(
        "example {} k={} eta={} grid={}x{} q={}",
        c.label, c.k, c.eta, c.m, c.n, c.q
    );
    for row in &record.metrics {
        println!("eps={} seed={} E={:.4}%", row.eps, row.seed, row.e_percent);
    }
    for s in &record.summary {
        println!(
            "eps={} mean E={:.4}% stddev={:.4} over {} seeds",
            s.eps, s.mean, s.stddev, s.seeds
        );
    }
    for w in &record.warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run(args) => {
            let record = run_example(&args.config()?)?;
            report(&record);
        }
        Command::Sweep { eps_range, run } => {
            let record = run_sweep(&run.config()?, eps_range)?;
            report(&record);
        }
        Command::OracleCheck => {
            let checks = oracle_check::run_all()?;
            let mut failed = 0;
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                println!("{tag} {}: {}", c.name, c.detail);
                failed += usize::from(!c.passed);
            }
            if failed > 0 {
                eprintln!("{failed} of {} checks failed", checks.len());
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
