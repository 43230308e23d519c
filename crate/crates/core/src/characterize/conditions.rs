//! The four equivalent conditions for an n-homogeneous polynomial `P` with
//! associated symmetric map `T`:
//!
//! 1. `P(f + g) = P(f) + P(g)` whenever `f ⊥ g`;
//! 2. `P(S_n(f_1..f_r)) = Σ P(f_k)` and `P(G_n(f_1..f_n)) = T(f_1..f_n)` on `E⁺`;
//! 3. `P(|z|) = T_C(z^{n/2} z̄^{n/2})` (even n), or
//!    `P(|z|) = T_C(z^{(n-1)/2} z̄^{(n-1)/2} |z|)` (odd n);
//! 4. `T(f^{n-k} g^k) = 0` for `1 ≤ k ≤ n-1` whenever `f ⊥ g`.
//!
//! Each predicate probes a deterministic set of inputs and reports the
//! largest violation it found.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Budget;
use crate::combinatorics::sorted_multi_indices;
use crate::complexify::ComplexElement;
use crate::error::Result;
use crate::funcalc::{geometric_mean_of, root_mean_power, PowerTuple};
use crate::lattice::LatticeElement;
use crate::multilinear::{HomogeneousPolynomial, SymmetricMultilinearMap};
use crate::tolerance::{max_abs, max_abs_diff};

/// Basis-tuple probes for condition (ii) are skipped above this many
/// sorted multi-indices.
pub const MAX_BASIS_TUPLES: usize = 20_000;

/// Inputs that produced the largest residual of a condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub inputs: Vec<Vec<f64>>,
}

/// Result of one condition check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    /// Largest sup-norm violation over all probes.
    pub residual: f64,
    /// `max |coefficient| · (max input sup-norm)^n` over the probes.
    pub magnitude: f64,
    /// Effective threshold `tol · (1 + magnitude)`.
    pub tolerance: f64,
    pub probes: usize,
    pub witness: Option<Witness>,
}

struct Tracker {
    coeff: f64,
    degree: i32,
    max_input: f64,
    residual: f64,
    probes: usize,
    witness: Option<Witness>,
}

impl Tracker {
    fn new(t: &SymmetricMultilinearMap) -> Self {
        Self {
            coeff: t.max_abs_coeff(),
            degree: t.order() as i32,
            max_input: 0.0,
            residual: 0.0,
            probes: 0,
            witness: None,
        }
    }

    fn observe<'a>(
        &mut self,
        residual: f64,
        inputs: impl IntoIterator<Item = &'a LatticeElement>,
        witness: impl FnOnce() -> Witness,
    ) {
        self.probes += 1;
        for x in inputs {
            self.max_input = self.max_input.max(x.norm_inf());
        }
        // NaN residuals must register as violations.
        if residual > self.residual || residual.is_nan() {
            self.residual = if residual.is_nan() { f64::INFINITY } else { residual };
            self.witness = Some(witness());
        }
    }

    fn finish(self, tol: f64) -> ConditionOutcome {
        let magnitude = self.coeff * self.max_input.powi(self.degree);
        let tolerance = tol * (1.0 + magnitude);
        ConditionOutcome {
            holds: self.residual <= tolerance,
            residual: self.residual,
            magnitude,
            tolerance,
            probes: self.probes,
            witness: self.witness,
        }
    }
}

fn witness(label: impl Into<String>, inputs: &[&LatticeElement]) -> Witness {
    Witness {
        label: label.into(),
        inputs: inputs.iter().map(|x| x.coords().to_vec()).collect(),
    }
}

fn rng_for(budget: &Budget, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    rng.set_stream(stream);
    rng
}

/// Nontrivial complementary supports of `0..d` as bit masks: all `2^d - 2` of
/// them when `d` is at most the exhaustive cap, otherwise a seeded sample.
fn support_splits(d: usize, budget: &Budget, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if d < 2 {
        return Vec::new();
    }
    if d <= budget.exhaustive_dim_cap.min(63) {
        return (1..(1u64 << d) - 1).collect();
    }
    (0..budget.sampled_splits)
        .map(|_| loop {
            let mask: u64 = rng.gen::<u64>() & ((1u64 << d.min(63)) - 1);
            if mask != 0 && mask.count_ones() < d as u32 {
                break mask;
            }
        })
        .collect()
}

/// A disjoint pair supported on `mask` and its complement. Draw 0 is the
/// pair of indicator vectors; later draws use magnitudes in `[0.5, 2]` with
/// independent random signs.
fn disjoint_pair(
    d: usize,
    mask: u64,
    draw: usize,
    rng: &mut ChaCha8Rng,
) -> (LatticeElement, LatticeElement) {
    let mut f = vec![0.0; d];
    let mut g = vec![0.0; d];
    for j in 0..d {
        let v = if draw == 0 {
            1.0
        } else {
            let mag = rng.gen_range(0.5..=2.0);
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        };
        if mask & (1 << j) != 0 {
            f[j] = v;
        } else {
            g[j] = v;
        }
    }
    (
        LatticeElement::new(f).expect("finite"),
        LatticeElement::new(g).expect("finite"),
    )
}

fn positive_element(d: usize, rng: &mut ChaCha8Rng) -> LatticeElement {
    let coords = (0..d)
        .map(|_| {
            if rng.gen_bool(0.25) {
                0.0
            } else {
                rng.gen_range(0.0..2.0)
            }
        })
        .collect();
    LatticeElement::new(coords).expect("finite")
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    max_abs_diff(a, b)
}

/// Condition (i): orthogonal additivity over disjoint pairs.
pub fn cond_i_orth_additive(p: &HomogeneousPolynomial, budget: &Budget) -> Result<ConditionOutcome> {
    let t = p.map();
    let d = t.domain_dim();
    let mut rng = rng_for(budget, 1);
    let mut tracker = Tracker::new(t);
    for mask in support_splits(d, budget, &mut rng) {
        for draw in 0..budget.magnitude_draws.max(1) {
            let (f, g) = disjoint_pair(d, mask, draw, &mut rng);
            let sum = p.eval(&f.add(&g)?)?;
            let pf = p.eval(&f)?;
            let pg = p.eval(&g)?;
            let split: Vec<f64> = pf.iter().zip(&pg).map(|(a, b)| a + b).collect();
            tracker.observe(sup_diff(&sum, &split), [&f, &g], || witness("f, g", &[&f, &g]));
        }
    }
    Ok(tracker.finish(budget.tol))
}

/// Condition (ii): the root-mean-power and geometric-mean identities on the
/// positive cone. The `S_n` identity uses the first `r` elements of each
/// tuple and the `G_n` identity the first `n`.
pub fn cond_ii_power_means(
    p: &HomogeneousPolynomial,
    t: &SymmetricMultilinearMap,
    budget: &Budget,
) -> Result<ConditionOutcome> {
    let n = t.order();
    let d = t.domain_dim();
    let mut rng = rng_for(budget, 2);
    let mut tracker = Tracker::new(t);

    let check_sum = |args: &[LatticeElement], tracker: &mut Tracker| -> Result<()> {
        let mean = root_mean_power(n, args)?;
        let lhs = p.eval(&mean)?;
        let mut rhs = vec![0.0; t.codomain_dim()];
        for a in args {
            for (r, v) in rhs.iter_mut().zip(p.eval(a)?) {
                *r += v;
            }
        }
        let refs: Vec<&LatticeElement> = args.iter().collect();
        tracker.observe(
            sup_diff(&lhs, &rhs),
            args.iter().chain(std::iter::once(&mean)),
            || witness(format!("S_n identity, r = {}", args.len()), &refs),
        );
        Ok(())
    };
    let check_product = |args: &[LatticeElement], tracker: &mut Tracker| -> Result<()> {
        let mean = geometric_mean_of(n, args)?;
        let lhs = p.eval(&mean)?;
        let rhs = t.evaluate(args)?;
        let refs: Vec<&LatticeElement> = args.iter().collect();
        tracker.observe(sup_diff(&lhs, &rhs), args.iter().chain(std::iter::once(&mean)), || {
            witness("G_n identity", &refs)
        });
        Ok(())
    };

    // Basis tuples reach every entry of T, in particular every mixed one.
    let indices = sorted_multi_indices(d, n);
    if indices.len() <= MAX_BASIS_TUPLES {
        for index in indices {
            let args: Vec<_> = index.iter().map(|&i| LatticeElement::basis(d, i)).collect();
            check_product(&args, &mut tracker)?;
        }
    }
    // Indicator vectors of complementary supports.
    for mask in support_splits(d, budget, &mut rng) {
        let (f, g) = disjoint_pair(d, mask, 0, &mut rng);
        check_sum(&[f, g], &mut tracker)?;
    }
    let width = budget.r_values.iter().copied().max().unwrap_or(1).max(n);
    for _ in 0..budget.random_tuples {
        let tuple: Vec<_> = (0..width).map(|_| positive_element(d, &mut rng)).collect();
        for &r in &budget.r_values {
            check_sum(&tuple[..r.clamp(1, width)], &mut tracker)?;
        }
        check_product(&tuple[..n], &mut tracker)?;
    }
    Ok(tracker.finish(budget.tol))
}

/// `T_C(z^m z̄^m)` for even `n`, `T_C(z^m z̄^m |z|)` for odd `n`.
pub fn complex_side(t: &SymmetricMultilinearMap, z: &ComplexElement) -> Result<crate::multilinear::ComplexCodomainValue> {
    let n = t.order();
    let m = n / 2;
    let mut args = Vec::with_capacity(n);
    args.extend(std::iter::repeat_n(z.clone(), m));
    args.extend(std::iter::repeat_n(z.conjugate(), m));
    if n % 2 == 1 {
        args.push(ComplexElement::real(z.modulus()));
    }
    t.complex_evaluate(&args)
}

/// Condition (iii): the complexified modulus identity.
///
/// Probes are the singleton splits `e_j + i(1 - e_j)`, seeded `z` whose
/// imaginary part has full support, and real mixed-sign `z`.
pub fn cond_iii_complex(
    p: &HomogeneousPolynomial,
    t: &SymmetricMultilinearMap,
    budget: &Budget,
) -> Result<ConditionOutcome> {
    let d = t.domain_dim();
    let mut rng = rng_for(budget, 3);
    let mut tracker = Tracker::new(t);
    let mut probes = Vec::new();
    if d >= 2 {
        for j in 0..d {
            let (f, g) = disjoint_pair(d, 1 << j, 0, &mut rng);
            probes.push(ComplexElement::new(f, g)?);
        }
    }
    for _ in 0..budget.random_z {
        let re: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let im: Vec<f64> = (0..d)
            .map(|_| {
                let mag = rng.gen_range(0.5..=2.0);
                if rng.gen_bool(0.5) {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        probes.push(ComplexElement::new(LatticeElement::new(re)?, LatticeElement::new(im)?)?);
    }
    for _ in 0..budget.real_z {
        let re: Vec<f64> = (0..d)
            .map(|j| {
                let mag = rng.gen_range(0.5..=2.0);
                if j % 2 == 0 {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        probes.push(ComplexElement::real(LatticeElement::new(re)?));
    }
    for z in &probes {
        let modulus = z.modulus();
        let lhs = p.eval(&modulus)?;
        let rhs = complex_side(t, z)?;
        let residual = sup_diff(&lhs, &rhs.re).max(max_abs(&rhs.im));
        tracker.observe(residual, [z.re(), z.im(), &modulus], || {
            witness("re z, im z", &[z.re(), z.im()])
        });
    }
    Ok(tracker.finish(budget.tol))
}

/// Condition (iv): mixed powers of disjoint elements vanish.
pub fn cond_iv_annihilation(t: &SymmetricMultilinearMap, budget: &Budget) -> Result<ConditionOutcome> {
    let n = t.order();
    let d = t.domain_dim();
    let mut rng = rng_for(budget, 4);
    let mut tracker = Tracker::new(t);
    for mask in support_splits(d, budget, &mut rng) {
        for draw in 0..budget.magnitude_draws.max(1) {
            let (f, g) = disjoint_pair(d, mask, draw, &mut rng);
            for k in 1..n {
                let v = t.evaluate_power(&PowerTuple::pair(&f, n - k, &g, k))?;
                tracker.observe(max_abs(&v), [&f, &g], || {
                    witness(format!("f, g with k = {k}"), &[&f, &g])
                });
            }
        }
    }
    Ok(tracker.finish(budget.tol))
}
