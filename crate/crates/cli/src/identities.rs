//! Standalone identity suites run by `latcheck suite` next to the instance
//! grid. Each returns the largest observed residual against its bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use latcheck_core::characterize::{
    binomial_expansion_residual, binomial_psi_check, even_binomial_check, slices_from_line_samples,
    vandermonde_coeffs,
};
use latcheck_core::combinatorics::{factorial, sorted_multi_indices};
use latcheck_core::complexify::{lemma_modulus_rhs, ComplexElement};
use latcheck_core::funcalc::PowerTuple;
use latcheck_core::lattice::LatticeElement;
use latcheck_core::multilinear::{polarization_sums, HomogeneousPolynomial, SymmetricMultilinearMap};
use latcheck_core::tolerance::{max_abs, max_abs_diff, ABS_FLOOR, REL_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub cases: usize,
    /// Largest residual divided by its allowed bound; `passed` iff ≤ 1.
    pub worst_ratio: f64,
    pub passed: bool,
}

impl IdentityResult {
    fn new(name: &'static str, cases: usize, worst_ratio: f64) -> Self {
        Self {
            name,
            cases,
            worst_ratio,
            passed: worst_ratio <= 1.0,
        }
    }
}

const CASES: usize = 100;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(100 + stream);
    r
}

fn element(rng: &mut ChaCha8Rng, d: usize, bound: f64) -> LatticeElement {
    LatticeElement::new((0..d).map(|_| rng.gen_range(-bound..=bound)).collect()).expect("finite")
}

fn integer_tensor(rng: &mut ChaCha8Rng, n: usize, d: usize, m: usize) -> SymmetricMultilinearMap {
    let mut t = SymmetricMultilinearMap::zero(n, d, m).expect("positive sizes");
    for index in sorted_multi_indices(d, n) {
        let value: Vec<f64> = (0..m).map(|_| rng.gen_range(-5i32..=5) as f64).collect();
        t.set(index, value).expect("valid index");
    }
    t
}

fn rel_ratio(got: &[f64], want: &[f64], rel: f64) -> f64 {
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs() / (rel * w.abs()).max(ABS_FLOOR))
        .fold(0.0, f64::max)
}

/// Both modulus representations against the closed form, `n ∈ 1..=8`.
pub fn modulus_representations(seed: u64) -> IdentityResult {
    let mut r = rng(seed, 1);
    let mut worst: f64 = 0.0;
    for _ in 0..CASES {
        let d = r.gen_range(1..=8);
        let z = ComplexElement::new(element(&mut r, d, 10.0), element(&mut r, d, 10.0)).expect("same dim");
        let want = z.modulus();
        for n in 1..=8 {
            let got = lemma_modulus_rhs(n, &z).expect("valid n");
            worst = worst.max(rel_ratio(got.coords(), want.coords(), REL_TOL));
        }
    }
    IdentityResult::new("modulus_representations", CASES * 8, worst)
}

/// Exact integer identities: odd `n ≤ 15` and the even counterpart.
pub fn binomial_identities() -> IdentityResult {
    let odd = (1..=15).step_by(2).all(|n| binomial_psi_check(n).expect("odd"));
    let even = (2..=16).step_by(2).all(|n| even_binomial_check(n).expect("even"));
    IdentityResult::new("binomial_identities", 16, if odd && even { 0.0 } else { f64::INFINITY })
}

/// Integer tensors recovered from their polynomial by polarization. Every
/// unnormalized sum must be an exact multiple of `n! 2^n`.
pub fn polarization_round_trips(seed: u64) -> IdentityResult {
    let mut r = rng(seed, 2);
    let mut worst: f64 = 0.0;
    for _ in 0..CASES {
        let (n, d, m) = (r.gen_range(1..=6), r.gen_range(1..=6), r.gen_range(1..=3));
        let t = integer_tensor(&mut r, n, d, m);
        let p = HomogeneousPolynomial::new(t.clone());
        let norm = (factorial(n as u64) << n) as f64;
        let sums = polarization_sums(n, &|x: &LatticeElement| p.eval(x).expect("dim"), d, m).expect("valid");
        for (index, sum) in sums {
            let want = t.get(&index).expect("valid index");
            let divisible = sum.iter().all(|s| s % norm == 0.0);
            let got: Vec<f64> = sum.iter().map(|s| s / norm).collect();
            let ratio = if divisible { rel_ratio(&got, &want, 1e-8) } else { f64::INFINITY };
            worst = worst.max(ratio);
        }
    }
    IdentityResult::new("polarization_round_trips", CASES, worst)
}

/// `T((f+g)^n) = Σ C(n,k) T(f^{n-k} g^k)` against `1e-9 · scale`.
pub fn multi_binomial(seed: u64) -> IdentityResult {
    let mut r = rng(seed, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..CASES {
        let (n, d, m) = (r.gen_range(1..=6), r.gen_range(1..=6), r.gen_range(1..=3));
        let t = integer_tensor(&mut r, n, d, m);
        let (f, g) = (element(&mut r, d, 2.0), element(&mut r, d, 2.0));
        let residual = binomial_expansion_residual(&t, &f, &g).expect("same dim");
        let scale = t.max_abs_coeff() * f.norm_inf().max(g.norm_inf()).powi(n as i32);
        worst = worst.max(residual / (1e-9 * scale).max(ABS_FLOOR));
    }
    IdentityResult::new("multi_binomial", CASES, worst)
}

/// Zero samples give exact zeros; line samples recover the slices.
pub fn vandermonde_extraction(seed: u64) -> IdentityResult {
    let mut r = rng(seed, 4);
    let zeros_exact = (0..=6).all(|n| {
        let samples: Vec<_> = (1..=n + 1).map(|l| (l as f64, vec![0.0; 3])).collect();
        vandermonde_coeffs(n, &samples)
            .expect("valid nodes")
            .iter()
            .flatten()
            .all(|&v| v == 0.0)
    });
    let mut worst: f64 = if zeros_exact { 0.0 } else { f64::INFINITY };
    for _ in 0..CASES {
        let (n, d, m) = (r.gen_range(1..=6), r.gen_range(1..=6), r.gen_range(1..=3));
        let t = integer_tensor(&mut r, n, d, m);
        let (f, g) = (element(&mut r, d, 1.0), element(&mut r, d, 1.0));
        let slices = slices_from_line_samples(&t, &f, &g).expect("valid");
        let direct: Vec<Vec<f64>> = (0..=n)
            .map(|k| t.evaluate_power(&PowerTuple::pair(&f, n - k, &g, k)).expect("valid"))
            .collect();
        // Relative to the largest slice of the same line: a single slice can
        // cancel to near zero, and no sample set resolves it more finely.
        let size = direct.iter().map(|v| max_abs(v)).fold(0.0, f64::max);
        let bound = (1e-8 * size).max(ABS_FLOOR);
        for (got, want) in slices.iter().zip(&direct) {
            worst = worst.max(max_abs_diff(got, want) / bound);
        }
    }
    IdentityResult::new("vandermonde_extraction", CASES, worst)
}

pub fn run_all(seed: u64) -> Vec<IdentityResult> {
    vec![
        modulus_representations(seed),
        binomial_identities(),
        polarization_round_trips(seed),
        multi_binomial(seed),
        vandermonde_extraction(seed),
    ]
}
