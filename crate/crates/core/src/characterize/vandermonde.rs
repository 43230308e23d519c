//! Coefficient extraction from samples of a vector-valued polynomial in `λ`.
//!
//! Given `v_0 + λ v_1 + ... + λ^n v_n` at distinct positive nodes, recover
//! the `v_k`. With exactly `n + 1` nodes the system is solved with the
//! Björck–Pereyra recurrences, which map all-zero data to all-zero
//! coefficients exactly. Oversampled systems are solved in the least-squares
//! sense.

use nalgebra::DMatrix;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::funcalc::PowerTuple;
use crate::lattice::LatticeElement;
use crate::multilinear::SymmetricMultilinearMap;

/// Returns `[v_0, ..., v_n]` for samples `(λ_i, Σ_k λ_i^k v_k)`.
pub fn vandermonde_coeffs(n: usize, samples: &[(f64, Vec<f64>)]) -> Result<Vec<Vec<f64>>> {
    if samples.len() < n + 1 {
        return Err(Error::TooFewSamples {
            needed: n + 1,
            found: samples.len(),
        });
    }
    let m = samples[0].1.len();
    for (i, (lambda, value)) in samples.iter().enumerate() {
        if !(*lambda > 0.0 && lambda.is_finite()) || samples[..i].iter().any(|(l, _)| l == lambda) {
            return Err(Error::BadNode(*lambda));
        }
        if value.len() != m {
            return Err(Error::CodomainMismatch {
                expected: m,
                found: value.len(),
            });
        }
    }
    if samples.len() == n + 1 {
        Ok(bjorck_pereyra(samples, m))
    } else {
        least_squares(n, samples, m)
    }
}

fn bjorck_pereyra(samples: &[(f64, Vec<f64>)], m: usize) -> Vec<Vec<f64>> {
    let n = samples.len() - 1;
    let x: Vec<f64> = samples.iter().map(|(l, _)| *l).collect();
    let mut out = vec![vec![0.0; m]; n + 1];
    for c in 0..m {
        let mut a: Vec<f64> = samples.iter().map(|(_, v)| v[c]).collect();
        // Newton divided differences.
        for k in 0..n {
            for i in (k + 1..=n).rev() {
                a[i] = (a[i] - a[i - 1]) / (x[i] - x[i - k - 1]);
            }
        }
        // Newton form to monomial coefficients.
        for k in (0..n).rev() {
            for i in k..n {
                a[i] -= a[i + 1] * x[k];
            }
        }
        for (k, v) in a.into_iter().enumerate() {
            out[k][c] = v;
        }
    }
    out
}

fn least_squares(n: usize, samples: &[(f64, Vec<f64>)], m: usize) -> Result<Vec<Vec<f64>>> {
    let rows = samples.len();
    let v = DMatrix::from_fn(rows, n + 1, |i, k| samples[i].0.powi(k as i32));
    let b = DMatrix::from_fn(rows, m, |i, c| samples[i].1[c]);
    let solution = v
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|_| Error::Singular)?;
    Ok((0..=n)
        .map(|k| (0..m).map(|c| solution[(k, c)]).collect())
        .collect())
}

/// Recovers the slices `T(f^{n-k} g^k)`, `k = 0..=n`, from values of
/// `λ ↦ T((f + λg)^n)` at `λ ∈ {1, ..., n+1}` alone.
pub fn slices_from_line_samples(
    t: &SymmetricMultilinearMap,
    f: &LatticeElement,
    g: &LatticeElement,
) -> Result<Vec<Vec<f64>>> {
    let n = t.order();
    let samples = (1..=n + 1)
        .map(|l| {
            let lambda = l as f64;
            let point = f.add(&g.scale(lambda))?;
            Ok((lambda, t.evaluate_power(&PowerTuple::power(&point, n))?))
        })
        .collect::<Result<Vec<_>>>()?;
    let coeffs = vandermonde_coeffs(n, &samples)?;
    Ok(coeffs
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let w = binomial(n as u64, k as u64) as f64;
            v.into_iter().map(|x| x / w).collect()
        })
        .collect())
}
