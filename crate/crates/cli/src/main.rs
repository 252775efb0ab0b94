use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mhd2d::regions::SweepSpec;
use mhd2d_cli::commands::{self, BOUNDS_PER_REGION, BOUNDS_SEED, ENERGY_HORIZON, IDENTITY_STEP};
use mhd2d_cli::{CliError, RunConfig};

#[derive(Parser)]
#[command(name = "mhd2d", version, about = "2D incompressible MHD without resistivity: simulation and verification")]
struct Cli {
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Seed for random sweeps; overrides `initial.seed` for runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Drop the nonlinear terms.
    #[arg(long, global = true)]
    linear_only: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the full system and write norms, decay fits and energy balance.
    Simulate,
    /// Evaluate the linear semigroup at the sample times.
    LinearDecay,
    /// Re-fit decay exponents from an existing output directory.
    Report {
        /// Directory holding `norms.csv`; defaults to `--out`.
        dir: Option<PathBuf>,
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        t2: Option<f64>,
    },
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Args, Clone, Copy)]
struct SweepArgs {
    /// Random `(ξ⃗, t)` samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Extra samples near the degenerate circle `|ξ⃗| = 2|ξ|`.
    #[arg(long)]
    near: Option<usize>,
}

#[derive(Subcommand)]
enum Verify {
    /// Closed-form multipliers against the eigen-decomposition oracle.
    Multipliers(SweepArgs),
    /// Time-derivative identities of the multipliers by centered differences.
    Identities {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value_t = IDENTITY_STEP)]
        h: f64,
    },
    /// Per-region sup ratios against the envelopes and the bundled constants.
    Bounds {
        /// Frequency samples per region.
        #[arg(long, default_value_t = BOUNDS_PER_REGION)]
        per_region: usize,
        /// Write the measured constants here instead of checking them.
        #[arg(long)]
        freeze: Option<PathBuf>,
    },
    /// Duhamel reconstruction of sampled states from the recorded forcings.
    Duhamel,
    /// Energy balance over the run and its convergence order.
    Energy {
        #[arg(long, default_value_t = ENERGY_HORIZON)]
        horizon: f64,
    },
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli.config.as_deref().ok_or_else(|| CliError::Config("--config is required for this command".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.initial.seed = seed;
    }
    cfg.run.linear_only |= cli.linear_only;
    Ok(cfg)
}

fn sweep(cli: &Cli, a: SweepArgs) -> (u64, usize, usize) {
    let (seed, n, near) = commands::default_sweep();
    (cli.seed.unwrap_or(seed), a.samples.unwrap_or(n), a.near.unwrap_or(near))
}

fn print_decay(rows: &Option<Vec<mhd2d::analysis::DecayRow>>) {
    let Some(rows) = rows else { return };
    println!("{:<22} {:>10} {:>8} {:>8} {:>8}", "norm", "exponent", "theory", "delta", "R2");
    let opt = |v: Option<f64>| v.map(|v| format!("{v:.3}")).unwrap_or_else(|| "-".into());
    for r in rows {
        println!("{:<22} {:>10} {:>8} {:>8} {:>8}", r.norm, opt(r.exponent), opt(r.theory), opt(r.delta), opt(r.r2));
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let out: &Path = &cli.out;
    match &cli.command {
        Command::Simulate => {
            let o = commands::simulate(&load(cli)?, out)?;
            println!("{} steps, {} samples", o.steps, o.reports.len());
            if let Some(r) = o.max_energy_residual {
                println!("max energy residual {r:.3e}");
            }
            print_decay(&o.decay);
        }
        Command::LinearDecay => {
            let o = commands::linear_decay(&load(cli)?, out)?;
            println!("{} samples", o.reports.len());
            print_decay(&o.decay);
        }
        Command::Report { dir, t1, t2 } => {
            let rows = commands::report(dir.as_deref().unwrap_or(out), *t1, *t2)?;
            print_decay(&Some(rows));
        }
        Command::Verify(v) => match v {
            Verify::Multipliers(a) => {
                let (seed, n, near) = sweep(cli, *a);
                let s = commands::verify_multipliers(seed, n, near, out)?;
                println!(
                    "{} samples: oracle {:.2e}, trace {:.2e}, det {:.2e}",
                    s.samples, s.max_oracle, s.max_trace, s.max_det
                );
            }
            Verify::Identities { sweep: a, h } => {
                let (seed, n, near) = sweep(cli, *a);
                let s = commands::verify_identities(seed, n, near, *h, out)?;
                println!("{} samples: max residual {:.2e}, ratio {:.3}", s.samples, s.max_residual, s.richardson);
            }
            Verify::Bounds { per_region, freeze } => {
                let spec = SweepSpec::standard(cli.seed.unwrap_or(BOUNDS_SEED), *per_region);
                let reports = commands::verify_bounds_cmd(&spec, out, freeze.as_deref())?;
                for r in &reports {
                    println!("{:<4} i={} sup {:.4} growth {:.4}", r.region, r.i, r.sup_ratio, r.growth());
                }
            }
            Verify::Duhamel => {
                let rows = commands::verify_duhamel(&load(cli)?, out)?;
                let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
                println!("{} times: max relative error {worst:.3e}", rows.len());
            }
            Verify::Energy { horizon } => {
                let s = commands::verify_energy(&load(cli)?, out, *horizon)?;
                println!(
                    "max residual {:.3e}; on [0, {}]: {:.3e} and {:.3e}, ratio {:.3}",
                    s.max_residual, s.horizon, s.short.0, s.short.1, s.richardson
                );
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
