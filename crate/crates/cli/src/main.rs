use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use latcheck::config::seed_with_env_override;
use latcheck::{cmd_check, cmd_gen, cmd_suite, CheckArgs, CliError, Format, Outcome, SuiteConfig, EXIT_USAGE};
use latcheck_core::polynomials::InstanceKind;
use latcheck_core::tolerance::VERDICT_TOL;

#[derive(Parser)]
#[command(name = "latcheck", version, about = "Check orthogonal additivity of homogeneous polynomials on R^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(flatten)]
        grid: GridArgs,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every instance in a file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Probe seed; LATCHECK_SEED overrides it when set.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Generate and check a grid in memory, then run the identity suites.
    Suite {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value = "latcheck-suite.json")]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

/// Grid flags. Unset lists fall back to the subcommand's defaults: a single
/// cell (d 3, n 2, m 1, oa) for `gen`, the full default grid for `suite`.
#[derive(Args)]
struct GridArgs {
    #[arg(short = 'd', long = "dim", alias = "dims", value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(short = 'n', long = "degree", alias = "degrees", value_delimiter = ',')]
    degrees: Option<Vec<usize>>,
    #[arg(short = 'm', long = "codomain", alias = "codomains", value_delimiter = ',')]
    codomains: Option<Vec<usize>>,
    #[arg(long = "kind", alias = "kinds", value_delimiter = ',')]
    kinds: Option<Vec<InstanceKind>>,
    /// Perturbation sizes for perturbed instances [default: 0.001,0.5].
    #[arg(long = "epsilon", alias = "epsilons", value_delimiter = ',')]
    epsilons: Option<Vec<f64>>,
    /// Instances per grid cell.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Master seed; LATCHECK_SEED overrides it when set.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PolicyArgs {
    /// Verdict tolerance factor.
    #[arg(long, default_value_t = VERDICT_TOL)]
    tol: f64,
    /// Tuple lengths for the root-mean-power identity.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
    r_values: Vec<usize>,
}

fn grid_config(grid: GridArgs, defaults: SuiteConfig, policy: Option<&PolicyArgs>) -> Result<SuiteConfig, CliError> {
    Ok(SuiteConfig {
        dims: grid.dims.unwrap_or(defaults.dims),
        degrees: grid.degrees.unwrap_or(defaults.degrees),
        codomains: grid.codomains.unwrap_or(defaults.codomains),
        kinds: grid.kinds.unwrap_or(defaults.kinds),
        epsilons: grid.epsilons.unwrap_or(defaults.epsilons),
        count: grid.count,
        seed: seed_with_env_override(grid.seed)?,
        tol: policy.map_or(defaults.tol, |p| p.tol),
        r_values: policy.map_or(defaults.r_values, |p| p.r_values.clone()),
    })
}

fn gen_defaults() -> SuiteConfig {
    SuiteConfig {
        dims: vec![3],
        degrees: vec![2],
        codomains: vec![1],
        kinds: vec![InstanceKind::Oa],
        ..SuiteConfig::default()
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Gen { grid, out } => cmd_gen(&grid_config(grid, gen_defaults(), None)?, out.as_deref()),
        Command::Check {
            file,
            policy,
            seed,
            format,
            out,
            jobs,
        } => cmd_check(&CheckArgs {
            file,
            tol: policy.tol,
            seed: seed_with_env_override(seed)?,
            r_values: policy.r_values,
            format,
            out,
            jobs,
        }),
        Command::Suite {
            grid,
            policy,
            format,
            out,
            jobs,
        } => {
            let cfg = grid_config(grid, SuiteConfig::default(), Some(&policy))?;
            cmd_suite(&cfg, format, &out, jobs)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("latcheck: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
