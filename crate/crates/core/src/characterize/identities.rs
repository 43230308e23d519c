//! Integer identities behind the coefficient comparisons, checked exactly.

use crate::combinatorics::{binomial, psi};
use crate::error::{Error, Result};
use crate::funcalc::PowerTuple;
use crate::lattice::LatticeElement;
use crate::multilinear::SymmetricMultilinearMap;
use crate::tolerance::max_abs_diff;

fn c(n: usize, k: usize) -> i128 {
    binomial(n as u64, k as u64) as i128
}

/// For odd `n`, checks for every `k ∈ 1..n`:
/// `C(n,k) - (-1)^k (C(n-1,k) - C(n-1,k-1)) = 2 C(n-1, ψ(k))`.
pub fn binomial_psi_check(n: usize) -> Result<bool> {
    if n % 2 == 0 {
        return Err(Error::Parity { n, expected: "odd" });
    }
    Ok((1..n).all(|k| {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let lhs = c(n, k) - sign * (c(n - 1, k) - c(n - 1, k - 1));
        lhs == 2 * c(n - 1, psi(k as u64) as usize)
    }))
}

/// For even `n`, checks that `(1 - (-1)^k) C(n,k)` vanishes for even `k` and
/// equals `2 C(n,k)` for odd `k`, and that `C(n, 2k) > C(n/2, k)` for
/// `1 ≤ k < n/2`, so every mixed even-order slice keeps a nonzero
/// coefficient after the two expansions are subtracted.
pub fn even_binomial_check(n: usize) -> Result<bool> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Parity { n, expected: "even, at least 2" });
    }
    let parity_ok = (0..=n).all(|k| {
        let weight = if k % 2 == 0 { 0 } else { 2 };
        let term = (1 - if k % 2 == 0 { 1 } else { -1 }) * c(n, k);
        term == weight * c(n, k)
    });
    let m = n / 2;
    let gap_ok = (1..m).all(|k| c(n, 2 * k) > c(m, k));
    Ok(parity_ok && gap_ok)
}

/// `‖T((f+g)^n) - Σ_k C(n,k) T(f^{n-k} g^k)‖∞`.
pub fn binomial_expansion_residual(
    t: &SymmetricMultilinearMap,
    f: &LatticeElement,
    g: &LatticeElement,
) -> Result<f64> {
    let n = t.order();
    let direct = t.evaluate_power(&PowerTuple::power(&f.add(g)?, n))?;
    let mut expanded = vec![0.0; t.codomain_dim()];
    for k in 0..=n {
        let slice = t.evaluate_power(&PowerTuple::pair(f, n - k, g, k))?;
        let weight = binomial(n as u64, k as u64) as f64;
        for (e, s) in expanded.iter_mut().zip(&slice) {
            *e += weight * s;
        }
    }
    Ok(max_abs_diff(&direct, &expanded))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: expand both sides from Pascal's triangle.
    fn pascal(rows: usize) -> Vec<Vec<i128>> {
        let mut t = vec![vec![1i128]];
        for r in 1..=rows {
            let prev = &t[r - 1];
            let mut row = vec![1i128; r + 1];
            for k in 1..r {
                row[k] = prev[k - 1] + prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn psi_identity_matches_pascal_oracle() {
        let p = pascal(16);
        for n in (3..=15).step_by(2) {
            for k in 1..n {
                let psi_k = if k % 2 == 1 { k } else { k - 1 };
                let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
                let lhs = p[n][k] - sign * (p[n - 1][k] - p[n - 1][k - 1]);
                assert_eq!(lhs, 2 * p[n - 1][psi_k], "n={n} k={k}");
            }
            assert!(binomial_psi_check(n).unwrap());
        }
        // n = 3 by hand: k=1: 3 + (2 - 1) = 4 = 2·C(2,1); k=2: 3 - (1 - 2) = 4.
        assert!(binomial_psi_check(3).unwrap());
        assert!(binomial_psi_check(5).unwrap());
    }

    #[test]
    fn psi_check_rejects_even() {
        assert!(matches!(binomial_psi_check(4), Err(Error::Parity { n: 4, .. })));
    }

    #[test]
    fn even_counterpart() {
        for n in (2..=16).step_by(2) {
            assert!(even_binomial_check(n).unwrap(), "n={n}");
        }
        assert!(even_binomial_check(3).is_err());
    }
}
