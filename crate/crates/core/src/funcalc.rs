//! Root mean power and geometric mean, evaluated coordinatewise.
//!
//! On `R^d` the functional calculus reduces to the scalar formulas
//! `S_n(x_1..x_r) = (Σ|x_k|^n)^(1/n)` and `G_n(x_1..x_n) = (Π|x_k|)^(1/n)`
//! applied in each coordinate. Terms are sorted before they are summed or
//! multiplied so both means are exactly invariant under reordering their
//! arguments, and the n-th root is taken once per coordinate at the end.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{common_dim, LatticeElement};

/// A multiset of lattice elements with multiplicities, an optional
/// nonnegative scalar and an optional distinguished extra entry.
///
/// `PowerTuple::pair(f, n - k, g, k)` is the argument list "n - k copies of
/// f and k copies of g"; `with_extra(z)` appends one more entry `z`, and
/// `with_scale(a)` multiplies the first entry by `a` in the geometric mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerTuple {
    entries: Vec<(LatticeElement, usize)>,
    scale: f64,
    extra: Option<LatticeElement>,
}

impl Default for PowerTuple {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
            scale: 1.0,
            extra: None,
        }
    }
}

impl PowerTuple {
    pub fn new() -> Self {
        Self::default()
    }

    /// Entries with multiplicity zero are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (LatticeElement, usize)>) -> Self {
        let mut pt = Self::new();
        for (e, mult) in entries {
            pt = pt.with(e, mult);
        }
        pt
    }

    /// `f^s g^t`.
    pub fn pair(f: &LatticeElement, s: usize, g: &LatticeElement, t: usize) -> Self {
        Self::new().with(f.clone(), s).with(g.clone(), t)
    }

    /// Every argument equal to `f`.
    pub fn power(f: &LatticeElement, n: usize) -> Self {
        Self::new().with(f.clone(), n)
    }

    pub fn with(mut self, e: LatticeElement, mult: usize) -> Self {
        if mult > 0 {
            self.entries.push((e, mult));
        }
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_extra(mut self, z: LatticeElement) -> Self {
        self.extra = Some(z);
        self
    }

    pub fn entries(&self) -> &[(LatticeElement, usize)] {
        &self.entries
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn extra(&self) -> Option<&LatticeElement> {
        self.extra.as_ref()
    }

    /// Total multiplicity, counting the extra entry once.
    pub fn arity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum::<usize>() + usize::from(self.extra.is_some())
    }

    pub fn dim(&self) -> Result<usize> {
        common_dim(self.entries.iter().map(|(e, _)| e).chain(self.extra.iter()))
    }

    /// The argument list with multiplicities expanded; the extra entry comes last.
    pub fn expand(&self) -> Vec<LatticeElement> {
        let mut out = Vec::with_capacity(self.arity());
        for (e, mult) in &self.entries {
            out.extend(std::iter::repeat_n(e.clone(), *mult));
        }
        out.extend(self.extra.iter().cloned());
        out
    }

    pub(crate) fn validate(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if !(self.scale >= 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidScale(self.scale));
        }
        let dim = self.dim()?;
        if self.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: self.arity(),
            });
        }
        Ok(dim)
    }
}

/// Real n-th root of a nonnegative number.
pub fn nth_root(x: f64, n: usize) -> f64 {
    debug_assert!(x >= 0.0);
    match n {
        1 => x,
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ if x == 0.0 => 0.0,
        _ => {
            let y = x.powf(1.0 / n as f64);
            // One Newton step removes the rounding of 1/n in the exponent.
            y - (y.powi(n as i32) - x) / (n as f64 * y.powi(n as i32 - 1))
        }
    }
}

fn sorted_sum(terms: &mut [f64]) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

fn sorted_product(factors: &mut [f64]) -> f64 {
    factors.sort_by(f64::total_cmp);
    factors.iter().product()
}

/// `S_n(x_1, ..., x_r)`, coordinatewise `(Σ_k |x_k|^n)^(1/n)`.
pub fn root_mean_power(n: usize, args: &[LatticeElement]) -> Result<LatticeElement> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let dim = common_dim(args)?;
    let mut terms = vec![0.0; args.len()];
    let coords = (0..dim)
        .map(|j| {
            for (t, x) in terms.iter_mut().zip(args) {
                *t = x.coords()[j].abs().powi(n as i32);
            }
            nth_root(sorted_sum(&mut terms), n)
        })
        .collect();
    LatticeElement::new(coords)
}

/// `G_n` of a power tuple: coordinatewise
/// `(scale · Π_k |x_k|^{mult_k} · |z|)^(1/n)`, where `z` is the optional extra
/// entry.
pub fn geometric_mean(n: usize, pt: &PowerTuple) -> Result<LatticeElement> {
    let dim = pt.validate(n)?;
    let mut factors = Vec::with_capacity(pt.entries.len() + 2);
    let coords = (0..dim)
        .map(|j| {
            factors.clear();
            factors.extend(
                pt.entries
                    .iter()
                    .map(|(e, mult)| e.coords()[j].abs().powi(*mult as i32)),
            );
            factors.extend(pt.extra.iter().map(|z| z.coords()[j].abs()));
            factors.push(pt.scale);
            nth_root(sorted_product(&mut factors), n)
        })
        .collect();
    LatticeElement::new(coords)
}

/// `G_n(x_1, ..., x_n)` with every multiplicity equal to one.
pub fn geometric_mean_of(n: usize, args: &[LatticeElement]) -> Result<LatticeElement> {
    geometric_mean(n, &PowerTuple::from_entries(args.iter().map(|a| (a.clone(), 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::elem;
    use crate::tolerance::Tolerance;
    use proptest::prelude::*;

    fn close(a: &LatticeElement, b: &LatticeElement) -> bool {
        Tolerance::default().close_elements(a, b)
    }

    #[test]
    fn root_mean_power_examples() {
        assert_eq!(root_mean_power(2, &[elem(&[3.0]), elem(&[4.0])]).unwrap(), elem(&[5.0]));
        let f = elem(&[-1.5, 0.0, 2.25]);
        assert!(close(&root_mean_power(5, &[f.clone()]).unwrap(), &f.abs()));
        // Coordinatewise (1 + 1)^(1/3) and (8 + 0)^(1/3).
        let got = root_mean_power(3, &[elem(&[1.0, 2.0]), elem(&[1.0, 0.0])]).unwrap();
        assert!(close(&got, &elem(&[2f64.powf(1.0 / 3.0), 2.0])));
    }

    #[test]
    fn root_mean_power_errors() {
        assert_eq!(root_mean_power(2, &[]).unwrap_err(), Error::EmptyArguments);
        assert!(matches!(
            root_mean_power(2, &[elem(&[1.0]), elem(&[1.0, 2.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(root_mean_power(0, &[elem(&[1.0])]).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn geometric_mean_examples() {
        let pt = PowerTuple::new().with(elem(&[4.0]), 1).with(elem(&[9.0]), 1);
        assert_eq!(geometric_mean(2, &pt).unwrap(), elem(&[6.0]));

        let f = elem(&[-3.0, 0.5, 0.0, 7.0]);
        assert!(close(&geometric_mean(7, &PowerTuple::power(&f, 7)).unwrap(), &f.abs()));

        let f = elem(&[1.0, -2.0, 3.5]);
        let g = elem(&[0.25, 4.0, -1.0]);
        let scaled = geometric_mean(4, &PowerTuple::pair(&f, 2, &g, 2).with_scale(16.0)).unwrap();
        let unscaled = geometric_mean(4, &PowerTuple::pair(&f, 2, &g, 2)).unwrap();
        assert!(close(&scaled, &unscaled.scale(2.0)));
        // Oracle: 16^(1/4) * (|f||g|)^(1/2) per coordinate.
        let oracle: Vec<f64> = f
            .coords()
            .iter()
            .zip(g.coords())
            .map(|(a, b)| 2.0 * (a.abs() * b.abs()).sqrt())
            .collect();
        assert!(close(&scaled, &LatticeElement::new(oracle).unwrap()));
    }

    #[test]
    fn geometric_mean_extra_entry_counts_once() {
        let f = elem(&[2.0]);
        let z = elem(&[4.0]);
        let pt = PowerTuple::power(&f, 2).with_extra(z);
        assert_eq!(pt.arity(), 3);
        // (2 * 2 * 4)^(1/3)
        assert!(close(&geometric_mean(3, &pt).unwrap(), &elem(&[16f64.cbrt()])));
    }

    #[test]
    fn geometric_mean_errors() {
        let f = elem(&[1.0]);
        assert_eq!(
            geometric_mean(3, &PowerTuple::power(&f, 2)).unwrap_err(),
            Error::ArityMismatch { expected: 3, found: 2 }
        );
        assert!(matches!(
            geometric_mean(2, &PowerTuple::power(&f, 2).with_scale(-1.0)),
            Err(Error::InvalidScale(_))
        ));
        assert_eq!(geometric_mean(1, &PowerTuple::new()).unwrap_err(), Error::EmptyArguments);
    }

    #[test]
    fn zero_coordinates_give_zero() {
        let g = geometric_mean_of(2, &[elem(&[0.0, 3.0]), elem(&[5.0, 3.0])]).unwrap();
        assert_eq!(g, elem(&[0.0, 3.0]));
        assert_eq!(root_mean_power(4, &[LatticeElement::zero(2)]).unwrap(), LatticeElement::zero(2));
    }

    #[test]
    fn nth_root_accuracy() {
        for n in 1..=12 {
            for &x in &[0.5, 1.0, 2.0, 17.0, 1e-6, 1e6] {
                let r = nth_root(x, n);
                assert!((r.powi(n as i32) - x).abs() <= 1e-13 * x.max(1.0), "n={n} x={x}");
            }
        }
    }

    fn elements(count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<LatticeElement>> {
        (1usize..6).prop_flat_map(move |d| {
            prop::collection::vec(
                prop::collection::vec(-10.0f64..10.0, d).prop_map(|c| LatticeElement::new(c).unwrap()),
                count.clone(),
            )
        })
    }

    proptest! {
        #[test]
        fn root_mean_power_is_positively_homogeneous(args in elements(1..6), lambda in 0.0f64..5.0, n in 1usize..8) {
            let scaled: Vec<_> = args.iter().map(|a| a.scale(lambda)).collect();
            let lhs = root_mean_power(n, &scaled).unwrap();
            let rhs = root_mean_power(n, &args).unwrap().scale(lambda);
            prop_assert!(close(&lhs, &rhs));
        }

        #[test]
        fn means_are_permutation_invariant(args in elements(1..7), shift in 0usize..7) {
            let n = args.len();
            let mut rotated = args.clone();
            rotated.rotate_left(shift % n);
            rotated.swap(0, n - 1);
            prop_assert_eq!(root_mean_power(3, &args).unwrap(), root_mean_power(3, &rotated).unwrap());
            prop_assert_eq!(geometric_mean_of(n, &args).unwrap(), geometric_mean_of(n, &rotated).unwrap());
        }

        #[test]
        fn am_gm_coordinatewise(args in elements(1..7)) {
            let n = args.len();
            let gm = geometric_mean_of(n, &args).unwrap();
            for j in 0..gm.dim() {
                let am = args.iter().map(|a| a.coords()[j].abs()).sum::<f64>() / n as f64;
                prop_assert!(gm.coords()[j] <= am + 1e-12 * am.max(1.0));
            }
        }

        #[test]
        fn means_are_sign_blind(args in elements(1..6), which in 0usize..6) {
            let n = args.len();
            let mut flipped = args.clone();
            flipped[which % n] = flipped[which % n].neg();
            prop_assert_eq!(root_mean_power(4, &args).unwrap(), root_mean_power(4, &flipped).unwrap());
            prop_assert_eq!(geometric_mean_of(n, &args).unwrap(), geometric_mean_of(n, &flipped).unwrap());
        }
    }
}
