//! Seeded instance generators.
//!
//! All coefficients are small integers (plus the perturbation `ε`), so the
//! root-free identities can be checked exactly. Randomness comes from
//! ChaCha8 seeded with the instance seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::sorted_multi_indices;
use crate::error::{Error, Result};
use crate::multilinear::{HomogeneousPolynomial, SymmetricMultilinearMap};

/// Name of the generator recorded in reports.
pub const PRNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

/// Range of the diagonal coefficients of orthogonally additive instances.
pub const OA_COEFF_RANGE: std::ops::RangeInclusive<i64> = -5..=5;
/// Range of every coefficient of random instances.
pub const RANDOM_COEFF_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    /// Orthogonally additive: a diagonal tensor.
    Oa,
    /// A diagonal tensor plus `ε` on one mixed multi-index.
    Perturbed,
    /// Every sorted multi-index gets a random coefficient.
    Random,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 3] = [InstanceKind::Oa, InstanceKind::Perturbed, InstanceKind::Random];

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Oa => "oa",
            InstanceKind::Perturbed => "perturbed",
            InstanceKind::Random => "random",
        }
    }

    /// The verdict every condition must reach for this kind, if any.
    pub fn expected_verdict(self) -> Option<bool> {
        match self {
            InstanceKind::Oa => Some(true),
            InstanceKind::Perturbed => Some(false),
            InstanceKind::Random => None,
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oa" => Ok(InstanceKind::Oa),
            "perturbed" => Ok(InstanceKind::Perturbed),
            "random" => Ok(InstanceKind::Random),
            other => Err(Error::InvalidSpec(format!("unknown instance kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub kind: InstanceKind,
    /// Perturbation size; only meaningful for [`InstanceKind::Perturbed`].
    pub epsilon: f64,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind, d: usize, n: usize, m: usize, seed: u64) -> Self {
        Self {
            d,
            n,
            m,
            kind,
            epsilon: 0.0,
            seed,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.n == 0 || self.m == 0 {
            return Err(Error::InvalidSpec(format!(
                "d, n, m must be at least 1 (got d={}, n={}, m={})",
                self.d, self.n, self.m
            )));
        }
        if self.kind == InstanceKind::Perturbed {
            if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
                return Err(Error::InvalidSpec(format!(
                    "perturbed instances need epsilon > 0, got {}",
                    self.epsilon
                )));
            }
            if self.d < 2 || self.n < 2 {
                return Err(Error::NoMixedIndex { d: self.d, n: self.n });
            }
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn nonzero_vector(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    loop {
        let v: Vec<i64> = (0..m).map(|_| rng.gen_range(OA_COEFF_RANGE)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(|x| x as f64).collect();
        }
    }
}

fn diagonal_map(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> Result<SymmetricMultilinearMap> {
    let coeffs: Vec<Vec<f64>> = (0..spec.d).map(|_| nonzero_vector(rng, spec.m)).collect();
    SymmetricMultilinearMap::diagonal(spec.n, &coeffs)
}

fn require_kind(spec: &InstanceSpec, kind: InstanceKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::InvalidSpec(format!(
            "expected kind {kind}, got {}",
            spec.kind
        )));
    }
    spec.validate()
}

/// `P(f) = Σ_j c_j f_j^n` with nonzero integer `c_j ∈ [-5, 5]^m`.
pub fn gen_oa(spec: &InstanceSpec) -> Result<HomogeneousPolynomial> {
    require_kind(spec, InstanceKind::Oa)?;
    Ok(HomogeneousPolynomial::new(diagonal_map(spec, &mut spec.rng())?))
}

/// The mixed multi-index that [`gen_perturbed`] perturbs for this spec.
pub fn perturbed_index(spec: &InstanceSpec) -> Result<Vec<usize>> {
    Ok(perturbed_parts(spec)?.1)
}

fn perturbed_parts(spec: &InstanceSpec) -> Result<(SymmetricMultilinearMap, Vec<usize>)> {
    require_kind(spec, InstanceKind::Perturbed)?;
    let mut rng = spec.rng();
    let map = diagonal_map(spec, &mut rng)?;
    let mixed: Vec<Vec<usize>> = sorted_multi_indices(spec.d, spec.n)
        .into_iter()
        .filter(|idx| idx.first() != idx.last())
        .collect();
    let index = mixed
        .choose(&mut rng)
        .cloned()
        .ok_or(Error::NoMixedIndex { d: spec.d, n: spec.n })?;
    Ok((map, index))
}

/// A diagonal instance with `ε` added to every codomain component of one
/// seeded mixed multi-index. The basis vectors of that index witness the
/// failure of orthogonal additivity.
pub fn gen_perturbed(spec: &InstanceSpec) -> Result<HomogeneousPolynomial> {
    let (mut map, index) = perturbed_parts(spec)?;
    map.add_at(index, &vec![spec.epsilon; spec.m])?;
    Ok(HomogeneousPolynomial::new(map))
}

/// Every sorted multi-index gets an integer coefficient in `[-3, 3]^m`.
pub fn gen_random(spec: &InstanceSpec) -> Result<HomogeneousPolynomial> {
    require_kind(spec, InstanceKind::Random)?;
    let mut rng = spec.rng();
    let mut map = SymmetricMultilinearMap::zero(spec.n, spec.d, spec.m)?;
    for index in sorted_multi_indices(spec.d, spec.n) {
        let v: Vec<f64> = (0..spec.m)
            .map(|_| rng.gen_range(RANDOM_COEFF_RANGE) as f64)
            .collect();
        map.set(index, v)?;
    }
    Ok(HomogeneousPolynomial::new(map))
}

/// Dispatches on `spec.kind`.
pub fn generate(spec: &InstanceSpec) -> Result<HomogeneousPolynomial> {
    match spec.kind {
        InstanceKind::Oa => gen_oa(spec),
        InstanceKind::Perturbed => gen_perturbed(spec),
        InstanceKind::Random => gen_random(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::funcalc::PowerTuple;
    use crate::lattice::{elem, LatticeElement};

    #[test]
    fn oa_instances_are_diagonal_and_annihilate_disjoint_mixed_powers() {
        for seed in 0..20 {
            let spec = InstanceSpec::new(InstanceKind::Oa, 4, 3, 2, seed);
            let p = gen_oa(&spec).unwrap();
            assert!(p.map().is_diagonal());
            assert_eq!(p.map().stored_len(), 4);
            let f = elem(&[1.0, -2.0, 0.0, 0.0]);
            let g = elem(&[0.0, 0.0, 3.0, 0.5]);
            for k in 1..3 {
                let v = p.map().evaluate_power(&PowerTuple::pair(&f, 3 - k, &g, k)).unwrap();
                assert_eq!(v, vec![0.0, 0.0]);
            }
            for (_, c) in p.map().entries() {
                assert!(c.iter().any(|&x| x != 0.0));
                assert!(c.iter().all(|&x| x.fract() == 0.0 && x.abs() <= 5.0));
            }
        }
    }

    #[test]
    fn one_dimensional_oa_is_a_monomial() {
        let p = gen_oa(&InstanceSpec::new(InstanceKind::Oa, 1, 4, 1, 3)).unwrap();
        let c = p.map().get(&[0, 0, 0, 0]).unwrap()[0];
        assert_eq!(p.eval(&elem(&[2.0])).unwrap(), vec![c * 16.0]);
    }

    #[test]
    fn diagonal_quadratic_value() {
        let p = HomogeneousPolynomial::new(
            SymmetricMultilinearMap::diagonal(2, &[vec![1.0], vec![1.0]]).unwrap(),
        );
        assert_eq!(p.eval(&elem(&[1.0, 2.0])).unwrap(), vec![5.0]);
    }

    #[test]
    fn perturbation_is_readable_and_witnessed() {
        let spec = InstanceSpec::new(InstanceKind::Perturbed, 2, 2, 1, 11).with_epsilon(0.5);
        let p = gen_perturbed(&spec).unwrap();
        assert_eq!(perturbed_index(&spec).unwrap(), vec![0, 1]);
        let e1 = LatticeElement::basis(2, 0);
        let e2 = LatticeElement::basis(2, 1);
        assert_eq!(p.map().evaluate(&[e1.clone(), e2.clone()]).unwrap(), vec![0.5]);
        // P(e1 + e2) - P(e1) - P(e2) = 2ε.
        let defect = p.eval(&e1.add(&e2).unwrap()).unwrap()[0] - p.eval(&e1).unwrap()[0] - p.eval(&e2).unwrap()[0];
        assert_eq!(defect, 1.0);
    }

    #[test]
    fn perturbation_shares_the_oa_diagonal() {
        for seed in 0..10 {
            let base = InstanceSpec::new(InstanceKind::Oa, 3, 3, 2, seed);
            let pert = InstanceSpec { kind: InstanceKind::Perturbed, epsilon: 1e-3, ..base.clone() };
            let oa = gen_oa(&base).unwrap();
            let pt = gen_perturbed(&pert).unwrap();
            let index = perturbed_index(&pert).unwrap();
            assert!(index.first() != index.last());
            for (idx, v) in pt.map().entries() {
                if idx == index.as_slice() {
                    assert_eq!(v, &[1e-3, 1e-3]);
                } else {
                    assert_eq!(v, oa.map().get(idx).unwrap().as_slice());
                }
            }
        }
    }

    #[test]
    fn perturbed_needs_a_mixed_index() {
        let spec = InstanceSpec::new(InstanceKind::Perturbed, 1, 3, 1, 0).with_epsilon(0.5);
        assert_eq!(gen_perturbed(&spec).unwrap_err(), Error::NoMixedIndex { d: 1, n: 3 });
        let spec = InstanceSpec::new(InstanceKind::Perturbed, 3, 1, 1, 0).with_epsilon(0.5);
        assert!(gen_perturbed(&spec).is_err());
        let spec = InstanceSpec::new(InstanceKind::Perturbed, 3, 2, 1, 0);
        assert!(matches!(gen_perturbed(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn random_instances_are_deterministic_and_full() {
        let spec = InstanceSpec::new(InstanceKind::Random, 3, 3, 2, 99);
        assert_eq!(gen_random(&spec).unwrap(), gen_random(&spec).unwrap());
        assert_eq!(gen_random(&spec).unwrap().map().stored_len() as u128, binomial(5, 3));
        let small = gen_random(&InstanceSpec::new(InstanceKind::Random, 2, 2, 1, 1)).unwrap();
        assert!(small.map().stored_len() <= 3);
        let other = gen_random(&InstanceSpec { seed: 100, ..spec }).unwrap();
        assert_ne!(other, gen_random(&InstanceSpec::new(InstanceKind::Random, 3, 3, 2, 99)).unwrap());
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let spec = InstanceSpec::new(InstanceKind::Random, 2, 2, 1, 0);
        assert!(gen_oa(&spec).is_err());
        assert!(generate(&spec).is_ok());
        assert!(generate(&InstanceSpec::new(InstanceKind::Oa, 0, 2, 1, 0)).is_err());
        assert_eq!("perturbed".parse::<InstanceKind>().unwrap(), InstanceKind::Perturbed);
        assert!("other".parse::<InstanceKind>().is_err());
    }
}
