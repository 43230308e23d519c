//! Complexification `E + iE` of the model lattice.
//!
//! The modulus `|f + ig| = sup_θ (cos θ) f + (sin θ) g` is attained
//! coordinatewise at `θ = atan2(g, f)`, so it is computed in closed form as
//! `S_2(f, g)`. The two modulus representations below express `|z|` through
//! `S_n` and `G_n` of binomially weighted power tuples; they are evaluated as
//! written and checked against the closed form in tests.

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::funcalc::{geometric_mean, root_mean_power, PowerTuple};
use crate::lattice::LatticeElement;

/// `z = re + i·im`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexElement {
    re: LatticeElement,
    im: LatticeElement,
}

impl ComplexElement {
    pub fn new(re: LatticeElement, im: LatticeElement) -> Result<Self> {
        re.check_dim(&im)?;
        Ok(Self { re, im })
    }

    /// Embeds a real element with zero imaginary part.
    pub fn real(re: LatticeElement) -> Self {
        let im = LatticeElement::zero(re.dim());
        Self { re, im }
    }

    pub fn re(&self) -> &LatticeElement {
        &self.re
    }

    pub fn im(&self) -> &LatticeElement {
        &self.im
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    /// `f - ig`.
    pub fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Coordinatewise `sqrt(re² + im²)`.
    pub fn modulus(&self) -> LatticeElement {
        root_mean_power(2, &[self.re.clone(), self.im.clone()])
            .expect("real and imaginary parts share a dimension")
    }
}

/// `|z|` for even `n` with `m = n/2`, written as
/// `S_n{ G_n(C(m,k) f^{n-2k} g^{2k}) : k = 0..m }`.
pub fn lemma_modulus_even_rhs(n: usize, z: &ComplexElement) -> Result<LatticeElement> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Parity { n, expected: "even, at least 2" });
    }
    let m = n / 2;
    let (f, g) = (z.re(), z.im());
    let terms = (0..=m)
        .map(|k| {
            let pt = PowerTuple::pair(f, n - 2 * k, g, 2 * k)
                .with_scale(binomial(m as u64, k as u64) as f64);
            geometric_mean(n, &pt)
        })
        .collect::<Result<Vec<_>>>()?;
    root_mean_power(n, &terms)
}

/// `|z|` for odd `n` with `m = (n-1)/2`, written as
/// `S_n{ G_n(C(m,k) f^{n-1-2k} g^{2k} |z|) : k = 0..m }`.
pub fn lemma_modulus_odd_rhs(n: usize, z: &ComplexElement) -> Result<LatticeElement> {
    if n % 2 != 1 {
        return Err(Error::Parity { n, expected: "odd" });
    }
    let m = (n - 1) / 2;
    let (f, g) = (z.re(), z.im());
    let modulus = z.modulus();
    let terms = (0..=m)
        .map(|k| {
            let pt = PowerTuple::pair(f, n - 1 - 2 * k, g, 2 * k)
                .with_extra(modulus.clone())
                .with_scale(binomial(m as u64, k as u64) as f64);
            geometric_mean(n, &pt)
        })
        .collect::<Result<Vec<_>>>()?;
    root_mean_power(n, &terms)
}

/// Dispatches on the parity of `n`.
pub fn lemma_modulus_rhs(n: usize, z: &ComplexElement) -> Result<LatticeElement> {
    if n % 2 == 0 {
        lemma_modulus_even_rhs(n, z)
    } else {
        lemma_modulus_odd_rhs(n, z)
    }
}
