use std::path::{Path, PathBuf};

use rayon::prelude::*;

use latcheck_core::characterize::{check_polynomial, Budget, ConditionReport};
use latcheck_core::polynomials::generate;

use crate::config::SuiteConfig;
use crate::error::{CliError, EXIT_OK, EXIT_VERIFICATION_FAILED};
use crate::identities;
use crate::instance_file::{read_instances, render_instances, Instance, InstanceRecord};
use crate::report::{self, CheckReport, Provenance, SuiteReport, Totals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Text for stdout (empty when everything went to `--out`).
    pub stdout: String,
    pub exit_code: u8,
}

fn write_or_return(out: Option<&Path>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Write {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} worker threads: {e}")))
}

/// Checks instances on a pool of `jobs` threads (0 = one per core) and
/// returns the reports sorted by id.
pub fn check_instances(instances: &[Instance], budget: &Budget, jobs: usize) -> Result<Vec<ConditionReport>, CliError> {
    let mut reports = pool(jobs)?.install(|| {
        instances
            .par_iter()
            .map(|inst| check_polynomial(inst.id.clone(), &inst.spec, &inst.poly, budget))
            .collect::<Result<Vec<_>, _>>()
    })?;
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

pub fn generate_instances(cfg: &SuiteConfig) -> Result<(Vec<Instance>, usize), CliError> {
    cfg.validate()?;
    let plan = cfg.plan();
    let instances = plan
        .instances
        .into_iter()
        .map(|p| {
            let poly = generate(&p.spec)?;
            Ok(Instance {
                id: p.id,
                spec: p.spec,
                poly,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok((instances, plan.skipped_cells))
}

pub fn cmd_gen(cfg: &SuiteConfig, out: Option<&Path>) -> Result<Outcome, CliError> {
    let (instances, skipped) = generate_instances(cfg)?;
    if skipped > 0 {
        eprintln!("latcheck: skipped {skipped} perturbed cell(s) with d < 2 or n < 2 (no mixed index)");
    }
    let records: Vec<InstanceRecord> = instances
        .iter()
        .map(|i| InstanceRecord::from_instance(&i.id, &i.spec, &i.poly))
        .collect();
    Ok(Outcome {
        stdout: write_or_return(out, render_instances(&records))?,
        exit_code: EXIT_OK,
    })
}

pub struct CheckArgs {
    pub file: PathBuf,
    pub tol: f64,
    pub seed: u64,
    pub r_values: Vec<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
}

pub fn cmd_check(args: &CheckArgs) -> Result<Outcome, CliError> {
    // Only the checking policy matters here; the grid fields stay default.
    let cfg = SuiteConfig {
        tol: args.tol,
        seed: args.seed,
        r_values: args.r_values.clone(),
        ..SuiteConfig::default()
    };
    cfg.validate()?;
    let instances = read_instances(&args.file)?;
    let reports = check_instances(&instances, &cfg.budget(), args.jobs)?;
    let totals = Totals::of(&reports);
    let exit_code = if totals.failed == 0 { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
    let text = match args.format {
        Format::Json => report::to_json(&CheckReport {
            provenance: Provenance::new(cfg.tol, cfg.seed, &cfg.r_values),
            totals,
            reports,
        }),
        Format::Csv => report::to_csv(&reports),
    };
    Ok(Outcome {
        stdout: write_or_return(args.out.as_deref(), text)?,
        exit_code,
    })
}

pub fn run_suite(cfg: &SuiteConfig, jobs: usize) -> Result<SuiteReport, CliError> {
    let (instances, skipped_cells) = generate_instances(cfg)?;
    let reports = check_instances(&instances, &cfg.budget(), jobs)?;
    let identities = identities::run_all(cfg.seed);
    let totals = Totals::of(&reports);
    let passed = totals.failed == 0 && identities.iter().all(|i| i.passed);
    Ok(SuiteReport {
        provenance: Provenance::new(cfg.tol, cfg.seed, &cfg.r_values),
        config: cfg.clone(),
        skipped_cells,
        passed,
        totals,
        identities,
        cells: report::cells(&reports),
        reports,
    })
}

/// Prints the summary table on stdout and writes the full report to `out`
/// (JSON, or per-instance CSV).
pub fn cmd_suite(cfg: &SuiteConfig, format: Format, out: &Path, jobs: usize) -> Result<Outcome, CliError> {
    let suite = run_suite(cfg, jobs)?;
    let text = match format {
        Format::Json => report::to_json(&suite),
        Format::Csv => report::to_csv(&suite.reports),
    };
    write_or_return(Some(out), text)?;
    let mut stdout = report::summary_table(&suite);
    stdout.push_str(&format!("report written to {}\n", out.display()));
    Ok(Outcome {
        stdout,
        exit_code: if suite.passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
    })
}
