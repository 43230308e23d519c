//! Instance files: a JSON array of records, each carrying the generating
//! spec and the tensor as sparse entries over sorted 0-based multi-indices.
//! Numbers that must round-trip exactly (seeds, coefficients, ε) are
//! decimal strings.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use latcheck_core::multilinear::{HomogeneousPolynomial, SymmetricMultilinearMap};
use latcheck_core::polynomials::{InstanceKind, InstanceSpec};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub id: String,
    pub spec: SpecRecord,
    pub tensor: Vec<EntryRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecRecord {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub kind: String,
    pub epsilon: String,
    pub seed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub index: Vec<usize>,
    pub value: Vec<String>,
}

/// A validated record.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: String,
    pub spec: InstanceSpec,
    pub poly: HomogeneousPolynomial,
}

impl InstanceRecord {
    pub fn from_instance(id: &str, spec: &InstanceSpec, poly: &HomogeneousPolynomial) -> Self {
        let tensor = poly
            .map()
            .entries()
            .map(|(index, value)| EntryRecord {
                index: index.to_vec(),
                value: value.iter().map(|v| v.to_string()).collect(),
            })
            .collect();
        Self {
            id: id.to_string(),
            spec: SpecRecord {
                d: spec.d,
                n: spec.n,
                m: spec.m,
                kind: spec.kind.to_string(),
                epsilon: spec.epsilon.to_string(),
                seed: spec.seed.to_string(),
            },
            tensor,
        }
    }

    /// Validates the record; `position` is its 0-based place in the file.
    pub fn to_instance(&self, position: usize) -> Result<Instance, CliError> {
        let fail = |message: String| CliError::Format {
            record: format!("record {position} (id {:?})", self.id),
            message,
        };
        if self.id.is_empty() {
            return Err(fail("empty id".into()));
        }
        let s = &self.spec;
        let kind: InstanceKind = s
            .kind
            .parse()
            .map_err(|_| fail(format!("spec.kind {:?} is not one of oa, perturbed, random", s.kind)))?;
        let epsilon = parse_number(&s.epsilon).map_err(|e| fail(format!("spec.epsilon: {e}")))?;
        let seed: u64 = s
            .seed
            .parse()
            .map_err(|_| fail(format!("spec.seed {:?} is not a 64-bit unsigned integer", s.seed)))?;
        let spec = InstanceSpec::new(kind, s.d, s.n, s.m, seed).with_epsilon(epsilon);
        spec.validate().map_err(|e| fail(format!("spec: {e}")))?;
        if s.n > latcheck_core::multilinear::MAX_POLARIZATION_ORDER {
            return Err(fail(format!(
                "spec.n = {} exceeds the supported maximum of {}",
                s.n,
                latcheck_core::multilinear::MAX_POLARIZATION_ORDER
            )));
        }

        let mut map = SymmetricMultilinearMap::zero(s.n, s.d, s.m).map_err(|e| fail(e.to_string()))?;
        let mut seen = BTreeSet::new();
        for (k, entry) in self.tensor.iter().enumerate() {
            let at = |message: String| fail(format!("tensor entry {k}: {message}"));
            if entry.index.len() != s.n {
                return Err(at(format!(
                    "index has {} components, degree is {}",
                    entry.index.len(),
                    s.n
                )));
            }
            if entry.index.windows(2).any(|w| w[0] > w[1]) {
                return Err(at(format!("index {:?} is not sorted", entry.index)));
            }
            if let Some(&j) = entry.index.iter().find(|&&j| j >= s.d) {
                return Err(at(format!("index component {j} is out of range for d = {}", s.d)));
            }
            if !seen.insert(entry.index.clone()) {
                return Err(at(format!("index {:?} appears more than once", entry.index)));
            }
            if entry.value.len() != s.m {
                return Err(at(format!(
                    "value has {} components, codomain dimension is {}",
                    entry.value.len(),
                    s.m
                )));
            }
            let value = entry
                .value
                .iter()
                .enumerate()
                .map(|(c, v)| parse_number(v).map_err(|e| at(format!("value[{c}]: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            map.set(entry.index.clone(), value).map_err(|e| at(e.to_string()))?;
        }
        Ok(Instance {
            id: self.id.clone(),
            spec,
            poly: HomogeneousPolynomial::new(map),
        })
    }
}

fn parse_number(raw: &str) -> Result<f64, String> {
    match raw.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{raw:?} is not finite ({v})")),
        Err(_) => Err(format!("{raw:?} is not a decimal number")),
    }
}

pub fn parse_instances(text: &str, source: &str) -> Result<Vec<Instance>, CliError> {
    let records: Vec<InstanceRecord> = serde_json::from_str(text).map_err(|e| CliError::Format {
        record: source.to_string(),
        message: format!("malformed instance file: {e}"),
    })?;
    let instances = records
        .iter()
        .enumerate()
        .map(|(i, r)| r.to_instance(i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ids = BTreeSet::new();
    for (i, inst) in instances.iter().enumerate() {
        if !ids.insert(inst.id.as_str()) {
            return Err(CliError::Format {
                record: format!("record {i} (id {:?})", inst.id),
                message: "duplicate id".into(),
            });
        }
    }
    Ok(instances)
}

pub fn read_instances(path: &Path) -> Result<Vec<Instance>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instances(&text, &path.display().to_string())
}

pub fn render_instances(records: &[InstanceRecord]) -> String {
    let mut out = serde_json::to_string_pretty(records).expect("records serialize");
    out.push('\n');
    out
}
