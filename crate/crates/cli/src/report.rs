use serde::Serialize;

use latcheck_core::characterize::{ConditionReport, CONDITION_NAMES};
use latcheck_core::polynomials::PRNG_NAME;

use crate::config::SuiteConfig;
use crate::identities::IdentityResult;

/// Header fields shared by `check` and `suite` reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub prng: &'static str,
    pub tol: f64,
    pub seed: u64,
    pub r_values: Vec<usize>,
}

impl Provenance {
    pub fn new(tol: f64, seed: u64, r_values: &[usize]) -> Self {
        Self {
            tool: "latcheck",
            version: latcheck_core::VERSION,
            prng: PRNG_NAME,
            tol,
            seed,
            r_values: r_values.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Totals {
    pub fn of(reports: &[ConditionReport]) -> Self {
        let passed = reports.iter().filter(|r| r.passed).count();
        Self {
            instances: reports.len(),
            passed,
            failed: reports.len() - passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub totals: Totals,
    pub reports: Vec<ConditionReport>,
}

/// Aggregate of one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub kind: String,
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub epsilon: f64,
    pub instances: usize,
    pub passed: usize,
    pub max_residuals: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub config: SuiteConfig,
    pub skipped_cells: usize,
    pub passed: bool,
    pub totals: Totals,
    pub identities: Vec<IdentityResult>,
    pub cells: Vec<CellSummary>,
    pub reports: Vec<ConditionReport>,
}

pub fn cells(reports: &[ConditionReport]) -> Vec<CellSummary> {
    let mut out: Vec<CellSummary> = Vec::new();
    for r in reports {
        let key = (r.kind.to_string(), r.d, r.n, r.m, r.epsilon);
        let cell = match out
            .iter_mut()
            .find(|c| (c.kind.clone(), c.d, c.n, c.m, c.epsilon) == key)
        {
            Some(c) => c,
            None => {
                out.push(CellSummary {
                    kind: key.0,
                    d: r.d,
                    n: r.n,
                    m: r.m,
                    epsilon: r.epsilon,
                    instances: 0,
                    passed: 0,
                    max_residuals: [0.0; 4],
                });
                out.last_mut().expect("just pushed")
            }
        };
        cell.instances += 1;
        cell.passed += usize::from(r.passed);
        for (acc, x) in cell.max_residuals.iter_mut().zip(r.residuals) {
            *acc = acc.max(x);
        }
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    // Non-finite residuals (a NaN probe) are stored as infinity; JSON has no
    // such number, so serde_json writes null.
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_csv(reports: &[ConditionReport]) -> String {
    let mut header = vec!["id", "kind", "d", "n", "m", "seed", "epsilon"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    for prefix in ["verdict", "residual", "tolerance"] {
        header.extend(CONDITION_NAMES.iter().map(|c| format!("{prefix}_{c}")));
    }
    header.extend(["agree", "expected", "passed"].map(String::from));
    let mut out = header.join(",");
    out.push('\n');
    for r in reports {
        let mut row = vec![
            r.id.clone(),
            r.kind.to_string(),
            r.d.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.seed.to_string(),
            r.epsilon.to_string(),
        ];
        row.extend(r.verdicts.iter().map(|v| v.to_string()));
        row.extend(r.residuals.iter().map(|v| format!("{v:e}")));
        row.extend(r.tolerances.iter().map(|v| format!("{v:e}")));
        row.push(r.agree.to_string());
        row.push(r.expected.map(|e| e.to_string()).unwrap_or_default());
        row.push(r.passed.to_string());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Plain-text table for the terminal: one line per cell.
pub fn summary_table(report: &SuiteReport) -> String {
    let mut out = format!(
        "{:<10} {:>2} {:>2} {:>2} {:>8} {:>6}  {:>10} {:>10} {:>10} {:>10}\n",
        "kind", "d", "n", "m", "eps", "pass", "res_i", "res_ii", "res_iii", "res_iv"
    );
    for c in &report.cells {
        let mark = if c.passed == c.instances { "" } else { "  FAIL" };
        out.push_str(&format!(
            "{:<10} {:>2} {:>2} {:>2} {:>8} {:>3}/{:<2}  {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e}{mark}\n",
            c.kind,
            c.d,
            c.n,
            c.m,
            c.epsilon,
            c.passed,
            c.instances,
            c.max_residuals[0],
            c.max_residuals[1],
            c.max_residuals[2],
            c.max_residuals[3],
        ));
    }
    for id in &report.identities {
        out.push_str(&format!(
            "identity {:<26} cases {:>4}  worst/bound {:.3e}  {}\n",
            id.name,
            id.cases,
            id.worst_ratio,
            if id.passed { "ok" } else { "FAIL" }
        ));
    }
    out.push_str(&format!(
        "{} of {} instances passed, {} cells skipped; suite {}\n",
        report.totals.passed,
        report.totals.instances,
        report.skipped_cells,
        if report.passed { "PASSED" } else { "FAILED" }
    ));
    out
}
