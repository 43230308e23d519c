//! Comparison policy for quantities that went through an n-th root.
//!
//! Pure min/max/±/scalar results are compared exactly. Anything that passed
//! through a root is compared coordinatewise with a relative tolerance and an
//! absolute floor.

use serde::{Deserialize, Serialize};

use crate::lattice::LatticeElement;

/// Relative tolerance for root-bearing element comparisons.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor for root-bearing element comparisons.
pub const ABS_FLOOR: f64 = 1e-12;
/// Verdict tolerance factor for the characterization predicates; the
/// effective tolerance is `VERDICT_TOL * (1 + magnitude_scale)`.
pub const VERDICT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: REL_TOL,
            abs: ABS_FLOOR,
        }
    }
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance { rel: 0.0, abs: 0.0 };

    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        let diff = (a - b).abs();
        diff <= self.abs || diff <= self.rel * a.abs().max(b.abs())
    }

    pub fn close_slices(&self, a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| self.close(x, y))
    }

    pub fn close_elements(&self, a: &LatticeElement, b: &LatticeElement) -> bool {
        self.close_slices(a.coords(), b.coords())
    }
}

/// `max_i |a_i - b_i|`; slices are assumed to have equal length.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_and_floor() {
        let t = Tolerance::default();
        assert!(t.close(1.0, 1.0 + 5e-10));
        assert!(!t.close(1.0, 1.0 + 5e-9));
        assert!(t.close(0.0, 5e-13));
        assert!(!t.close(0.0, 5e-12));
        assert!(t.close(1e6, 1e6 + 1e-4));
        assert!(Tolerance::EXACT.close(2.0, 2.0));
        assert!(!Tolerance::EXACT.close(2.0, 2.0 + f64::EPSILON * 2.0));
    }
}
