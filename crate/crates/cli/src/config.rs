use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use latcheck_core::characterize::Budget;
use latcheck_core::polynomials::{InstanceKind, InstanceSpec};
use latcheck_core::tolerance::VERDICT_TOL;

use crate::error::CliError;

/// Environment variable that overrides `--seed` when set.
pub const SEED_ENV: &str = "LATCHECK_SEED";

/// Grid of instances plus the checking policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub degrees: Vec<usize>,
    pub codomains: Vec<usize>,
    pub kinds: Vec<InstanceKind>,
    pub epsilons: Vec<f64>,
    pub count: usize,
    pub seed: u64,
    pub tol: f64,
    pub r_values: Vec<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dims: (1..=6).collect(),
            degrees: (2..=6).collect(),
            codomains: (1..=3).collect(),
            kinds: InstanceKind::ALL.to_vec(),
            epsilons: vec![1e-3, 0.5],
            count: 1,
            seed: 0,
            tol: VERDICT_TOL,
            r_values: (1..=6).collect(),
        }
    }
}

/// One generated instance spec with its stable id.
#[derive(Debug, Clone, PartialEq)]
pub struct PlannedInstance {
    pub id: String,
    pub spec: InstanceSpec,
}

/// Cells of the grid that cannot be generated (perturbed with `d < 2` or
/// `n < 2`) are skipped and counted.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub instances: Vec<PlannedInstance>,
    pub skipped_cells: usize,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let nonempty = [
            ("--dim", self.dims.is_empty()),
            ("--degree", self.degrees.is_empty()),
            ("--codomain", self.codomains.is_empty()),
            ("--kind", self.kinds.is_empty()),
            ("--r-values", self.r_values.is_empty()),
        ];
        if let Some((flag, _)) = nonempty.iter().find(|(_, empty)| *empty) {
            return Err(CliError::Usage(format!("{flag} needs at least one value")));
        }
        if self.kinds.contains(&InstanceKind::Perturbed) && self.epsilons.is_empty() {
            return Err(CliError::Usage("--epsilon needs at least one value".into()));
        }
        if self.count == 0 {
            return Err(CliError::Usage("--count must be at least 1".into()));
        }
        if let Some(&bad) = self
            .dims
            .iter()
            .chain(&self.degrees)
            .chain(&self.codomains)
            .find(|&&v| v == 0)
        {
            return Err(CliError::Usage(format!("dimensions and degrees must be positive, got {bad}")));
        }
        if let Some(&bad) = self.degrees.iter().find(|&&n| n > latcheck_core::multilinear::MAX_POLARIZATION_ORDER) {
            return Err(CliError::Usage(format!(
                "degree {bad} exceeds the supported maximum of {}",
                latcheck_core::multilinear::MAX_POLARIZATION_ORDER
            )));
        }
        if let Some(&bad) = self.epsilons.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(CliError::Usage(format!("--epsilon values must be positive, got {bad}")));
        }
        if let Some(&bad) = self.r_values.iter().find(|&&r| r == 0) {
            return Err(CliError::Usage(format!("--r-values must be positive, got {bad}")));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be nonnegative, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn budget(&self) -> Budget {
        Budget {
            seed: self.seed,
            tol: self.tol,
            r_values: self.r_values.clone(),
            ..Budget::default()
        }
    }

    /// Expands the grid in a fixed order (kind, d, n, m, ε, index); instance
    /// seeds are drawn in that order from a generator seeded with `seed`.
    pub fn plan(&self) -> Plan {
        let mut master = ChaCha8Rng::seed_from_u64(self.seed);
        let mut instances = Vec::new();
        let mut skipped_cells = 0;
        for &kind in &self.kinds {
            for &d in &self.dims {
                for &n in &self.degrees {
                    for &m in &self.codomains {
                        let epsilons: &[f64] = if kind == InstanceKind::Perturbed {
                            &self.epsilons
                        } else {
                            &[0.0]
                        };
                        for &epsilon in epsilons {
                            if kind == InstanceKind::Perturbed && (d < 2 || n < 2) {
                                skipped_cells += 1;
                                continue;
                            }
                            for _ in 0..self.count {
                                let spec = InstanceSpec::new(kind, d, n, m, master.next_u64())
                                    .with_epsilon(epsilon);
                                let id = format!("{:05}-{kind}-d{d}-n{n}-m{m}", instances.len());
                                instances.push(PlannedInstance { id, spec });
                            }
                        }
                    }
                }
            }
        }
        Plan {
            instances,
            skipped_cells,
        }
    }
}

/// Applies the seed override from the environment, if present.
pub fn seed_with_env_override(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}={raw:?} is not a 64-bit unsigned integer"))),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(CliError::Usage(format!("{SEED_ENV}: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_skips_degenerate_perturbed_cells() {
        let cfg = SuiteConfig::default();
        cfg.validate().unwrap();
        let plan = cfg.plan();
        // d = 1 perturbed cells: 5 degrees × 3 codomains × 2 epsilons.
        assert_eq!(plan.skipped_cells, 30);
        assert_eq!(plan.instances.len(), 90 + 90 + 75 * 2);
        let mut ids: Vec<_> = plan.instances.iter().map(|p| p.id.clone()).collect();
        let sorted = {
            let mut s = ids.clone();
            s.sort();
            s
        };
        assert_eq!(ids, sorted);
        ids.dedup();
        assert_eq!(ids.len(), plan.instances.len());
    }

    #[test]
    fn plan_is_deterministic() {
        let cfg = SuiteConfig { seed: 7, ..SuiteConfig::default() };
        assert_eq!(cfg.plan(), cfg.plan());
        let other = SuiteConfig { seed: 8, ..SuiteConfig::default() };
        assert_ne!(cfg.plan().instances[0].spec.seed, other.plan().instances[0].spec.seed);
    }

    #[test]
    fn invalid_configs_are_usage_errors() {
        let bad = [
            SuiteConfig { dims: vec![], ..SuiteConfig::default() },
            SuiteConfig { count: 0, ..SuiteConfig::default() },
            SuiteConfig { degrees: vec![0], ..SuiteConfig::default() },
            SuiteConfig { degrees: vec![11], ..SuiteConfig::default() },
            SuiteConfig { epsilons: vec![-1.0], ..SuiteConfig::default() },
            SuiteConfig { tol: -1.0, ..SuiteConfig::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(CliError::Usage(_))), "{cfg:?}");
        }
    }
}
