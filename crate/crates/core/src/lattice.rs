//! The model vector lattice: `R^d` with the coordinatewise order.
//!
//! Everything here is built from min, max, negation, addition and scalar
//! multiplication, so results are exact in binary floating point and can be
//! compared with `==`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `R^d` ordered coordinatewise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LatticeElement {
    coords: Vec<f64>,
}

impl LatticeElement {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyElement);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { coords })
    }

    /// The zero element of `R^dim`. Panics if `dim == 0`.
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "lattice dimension must be positive");
        Self {
            coords: vec![0.0; dim],
        }
    }

    /// The `j`-th unit vector of `R^dim` (0-based).
    pub fn basis(dim: usize, j: usize) -> Self {
        assert!(j < dim, "basis index {j} out of range for dimension {dim}");
        let mut e = Self::zero(dim);
        e.coords[j] = 1.0;
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Membership in the positive cone.
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&x| x >= 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0.0)
    }

    /// Sup norm.
    pub fn norm_inf(&self) -> f64 {
        self.coords.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub(crate) fn map(&self, op: impl Fn(f64) -> f64) -> Self {
        Self {
            coords: self.coords.iter().map(|&x| op(x)).collect(),
        }
    }

    /// `self ∨ other`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::max)
    }

    /// `self ∧ other`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::min)
    }

    /// `|self| = self ∨ (-self)`.
    pub fn abs(&self) -> Self {
        self.map(f64::abs)
    }

    pub fn neg(&self) -> Self {
        // `0.0 - x` keeps zero coordinates as +0.0.
        self.map(|x| 0.0 - x)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, lambda: f64) -> Self {
        self.map(|x| lambda * x)
    }

    /// Positive part `self ∨ 0`.
    pub fn positive_part(&self) -> Self {
        self.map(|x| x.max(0.0))
    }

    /// Negative part `(-self) ∨ 0`.
    pub fn negative_part(&self) -> Self {
        self.map(|x| (0.0 - x).max(0.0))
    }

    /// Returns `(f⁺, f⁻)` with `f = f⁺ - f⁻` and `f⁺ ∧ f⁻ = 0`.
    pub fn decompose(&self) -> (Self, Self) {
        (self.positive_part(), self.negative_part())
    }

    /// `f ⊥ g` up to `tol`: every coordinate of `|f| ∧ |g|` is at most `tol`.
    pub fn is_disjoint(&self, other: &Self, tol: f64) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a.abs().min(b.abs()) <= tol))
    }
}

impl TryFrom<Vec<f64>> for LatticeElement {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl From<LatticeElement> for Vec<f64> {
    fn from(e: LatticeElement) -> Self {
        e.coords
    }
}

/// Convenience constructor for literals in tests and examples. Panics on
/// invalid input.
pub fn elem(coords: &[f64]) -> LatticeElement {
    LatticeElement::new(coords.to_vec()).expect("valid lattice element")
}

/// Checks that every element of `args` has the same dimension and returns it.
pub(crate) fn common_dim<'a>(args: impl IntoIterator<Item = &'a LatticeElement>) -> Result<usize> {
    let mut iter = args.into_iter();
    let first = iter.next().ok_or(Error::EmptyArguments)?;
    for e in iter {
        first.check_dim(e)?;
    }
    Ok(first.dim())
}
