//! Symmetric n-linear maps `R^d × ... × R^d → R^m`, their homogeneous
//! polynomials, polarization and complexification.
//!
//! A map is stored by sorted multi-index: the entry for `(i_1 ≤ ... ≤ i_n)`
//! is the common value of the tensor at every permutation of that tuple, so
//! symmetry holds by construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, distinct_permutations, factorial, runs};
use crate::error::{Error, Result};
use crate::funcalc::PowerTuple;
use crate::lattice::LatticeElement;
use crate::complexify::ComplexElement;
use crate::tolerance::max_abs;

/// Orders above this are rejected by [`polarize`] (2^n probe sums).
pub const MAX_POLARIZATION_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMultilinearMap {
    order: usize,
    domain_dim: usize,
    codomain_dim: usize,
    coeffs: BTreeMap<Vec<usize>, Vec<f64>>,
}

impl SymmetricMultilinearMap {
    /// The zero map of the given order and dimensions.
    pub fn zero(order: usize, domain_dim: usize, codomain_dim: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroDegree);
        }
        if domain_dim == 0 || codomain_dim == 0 {
            return Err(Error::InvalidSpec(format!(
                "dimensions must be positive (domain {domain_dim}, codomain {codomain_dim})"
            )));
        }
        Ok(Self {
            order,
            domain_dim,
            codomain_dim,
            coeffs: BTreeMap::new(),
        })
    }

    /// `Σ_j c_j e_j^{⊗n}` with one codomain vector per coordinate.
    pub fn diagonal(order: usize, coeffs: &[Vec<f64>]) -> Result<Self> {
        let m = coeffs.first().map_or(0, Vec::len);
        let mut t = Self::zero(order, coeffs.len(), m)?;
        for (j, c) in coeffs.iter().enumerate() {
            t.set(vec![j; order], c.clone())?;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    fn canonical(&self, mut index: Vec<usize>) -> Result<Vec<usize>> {
        index.sort_unstable();
        if index.len() != self.order || index.iter().any(|&i| i >= self.domain_dim) {
            return Err(Error::InvalidIndex {
                index,
                order: self.order,
                dim: self.domain_dim,
            });
        }
        Ok(index)
    }

    fn check_value(&self, value: &[f64]) -> Result<()> {
        if value.len() != self.codomain_dim {
            return Err(Error::CodomainMismatch {
                expected: self.codomain_dim,
                found: value.len(),
            });
        }
        if let Some((index, &v)) = value.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value: v });
        }
        Ok(())
    }

    /// Sets the entry at `index` (in any order) and all its permutations.
    pub fn set(&mut self, index: Vec<usize>, value: Vec<f64>) -> Result<()> {
        let index = self.canonical(index)?;
        self.check_value(&value)?;
        self.coeffs.insert(index, value);
        Ok(())
    }

    /// Adds `value` to the entry at `index`.
    pub fn add_at(&mut self, index: Vec<usize>, value: &[f64]) -> Result<()> {
        let index = self.canonical(index)?;
        self.check_value(value)?;
        let m = self.codomain_dim;
        let slot = self.coeffs.entry(index).or_insert_with(|| vec![0.0; m]);
        for (s, v) in slot.iter_mut().zip(value) {
            *s += v;
        }
        Ok(())
    }

    /// The entry at `index` (in any order); absent entries are zero.
    pub fn get(&self, index: &[usize]) -> Result<Vec<f64>> {
        let index = self.canonical(index.to_vec())?;
        Ok(self
            .coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(|| vec![0.0; self.codomain_dim]))
    }

    /// Stored entries in lexicographic order of their sorted multi-index.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &[f64])> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v.as_slice()))
    }

    pub fn stored_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |acc, v| acc.max(max_abs(v)))
    }

    /// True when every nonzero entry sits on a constant multi-index `(j, ..., j)`.
    pub fn is_diagonal(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(k, v)| k.windows(2).all(|w| w[0] == w[1]) || v.iter().all(|&x| x == 0.0))
    }

    fn check_args(&self, args: &[LatticeElement]) -> Result<()> {
        if args.len() != self.order {
            return Err(Error::ArityMismatch {
                expected: self.order,
                found: args.len(),
            });
        }
        for a in args {
            if a.dim() != self.domain_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.domain_dim,
                    found: a.dim(),
                });
            }
        }
        Ok(())
    }

    /// `T(f_1, ..., f_n)`.
    ///
    /// Contracts one slot at a time, last argument first. Contracting a
    /// symmetric map in one slot leaves a map symmetric in the others, so
    /// every intermediate is again stored by sorted multi-index, in a dense
    /// array addressed by rank.
    pub fn evaluate(&self, args: &[LatticeElement]) -> Result<Vec<f64>> {
        self.check_args(args)?;
        let (n, d, m) = (self.order, self.domain_dim, self.codomain_dim);
        let ranks = RankTable::new(d + n, n);
        let mut cur = vec![0.0; multiset_count(d, n) * m];
        for (index, value) in &self.coeffs {
            let r = ranks.rank(index);
            cur[r * m..(r + 1) * m].copy_from_slice(value);
        }
        let mut merged = Vec::with_capacity(n);
        for level in (0..n).rev() {
            let x = args[level].coords();
            let mut next = vec![0.0; multiset_count(d, level) * m];
            for head in crate::combinatorics::sorted_multi_indices(d, level) {
                let r = ranks.rank(&head);
                let out = &mut next[r * m..(r + 1) * m];
                for (j, &xj) in x.iter().enumerate() {
                    if xj == 0.0 {
                        continue;
                    }
                    merged.clear();
                    merged.extend_from_slice(&head);
                    let at = merged.partition_point(|&i| i <= j);
                    merged.insert(at, j);
                    let src = ranks.rank(&merged);
                    for (o, v) in out.iter_mut().zip(&cur[src * m..(src + 1) * m]) {
                        *o += v * xj;
                    }
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// `scale · T(f^s g^t ... z)`: the power tuple is expanded into an
    /// argument list. The scale multiplies the value linearly.
    pub fn evaluate_power(&self, pt: &PowerTuple) -> Result<Vec<f64>> {
        if pt.arity() != self.order {
            return Err(Error::ArityMismatch {
                expected: self.order,
                found: pt.arity(),
            });
        }
        let mut out = self.evaluate(&pt.expand())?;
        if pt.scale() != 1.0 {
            out.iter_mut().for_each(|v| *v *= pt.scale());
        }
        Ok(out)
    }

    /// `T_C(z_1, ..., z_n) = Σ_{ε ∈ {0,1}^n} i^{Σε} T(f^1_{ε_1}, ..., f^n_{ε_n})`
    /// where `z_k = f^k_0 + i f^k_1`.
    pub fn complex_evaluate(&self, zargs: &[ComplexElement]) -> Result<ComplexCodomainValue> {
        if zargs.len() != self.order {
            return Err(Error::ArityMismatch {
                expected: self.order,
                found: zargs.len(),
            });
        }
        let mut re = vec![0.0; self.codomain_dim];
        let mut im = vec![0.0; self.codomain_dim];
        let mut args = Vec::with_capacity(self.order);
        for mask in 0u32..(1u32 << self.order) {
            args.clear();
            args.extend(zargs.iter().enumerate().map(|(k, z)| {
                if mask & (1 << k) != 0 {
                    z.im().clone()
                } else {
                    z.re().clone()
                }
            }));
            let value = self.evaluate(&args)?;
            let (target, sign) = match mask.count_ones() % 4 {
                0 => (&mut re, 1.0),
                1 => (&mut im, 1.0),
                2 => (&mut re, -1.0),
                _ => (&mut im, -1.0),
            };
            for (t, v) in target.iter_mut().zip(&value) {
                *t += sign * v;
            }
        }
        Ok(ComplexCodomainValue { re, im })
    }
}

/// A value of the complexified codomain `R^m + i R^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexCodomainValue {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexCodomainValue {
    pub fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.iter().map(|v| 0.0 - v).collect(),
        }
    }
}

/// Number of sorted multi-indices of length `order` over `0..dim`.
fn multiset_count(dim: usize, order: usize) -> usize {
    if order == 0 {
        return 1;
    }
    binomial((dim + order - 1) as u64, order as u64) as usize
}

/// Position of a sorted multi-index among all sorted multi-indices of the
/// same length: the combinatorial number system applied to the strictly
/// increasing sequence `i_k + k`. Independent of the dimension.
struct RankTable {
    // binom[a][b] = C(a, b) for a < rows, b <= cols.
    binom: Vec<Vec<usize>>,
}

impl RankTable {
    fn new(rows: usize, cols: usize) -> Self {
        let binom = (0..rows)
            .map(|a| (0..=cols).map(|b| binomial(a as u64, b as u64) as usize).collect())
            .collect();
        Self { binom }
    }

    fn rank(&self, index: &[usize]) -> usize {
        index
            .iter()
            .enumerate()
            .map(|(k, &i)| self.binom[i + k][k + 1])
            .sum()
    }
}

/// The n-homogeneous polynomial `P(f) = T(f, ..., f)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousPolynomial {
    map: SymmetricMultilinearMap,
}

impl HomogeneousPolynomial {
    pub fn new(map: SymmetricMultilinearMap) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &SymmetricMultilinearMap {
        &self.map
    }

    pub fn into_map(self) -> SymmetricMultilinearMap {
        self.map
    }

    pub fn degree(&self) -> usize {
        self.map.order
    }

    /// `P(f)`: each stored entry contributes its coefficient times the number
    /// of distinct permutations of its multi-index times `Π f[i_k]`.
    pub fn eval(&self, f: &LatticeElement) -> Result<Vec<f64>> {
        if f.dim() != self.map.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.map.domain_dim,
                found: f.dim(),
            });
        }
        let x = f.coords();
        let mut out = vec![0.0; self.map.codomain_dim];
        for (index, value) in &self.map.coeffs {
            let monomial = index.iter().map(|&i| x[i]).product::<f64>();
            if monomial == 0.0 {
                continue;
            }
            let weight = distinct_permutations(index) as f64 * monomial;
            for (o, v) in out.iter_mut().zip(value) {
                *o += v * weight;
            }
        }
        Ok(out)
    }
}

/// Free-function form of [`HomogeneousPolynomial::eval`].
pub fn poly_eval(p: &HomogeneousPolynomial, f: &LatticeElement) -> Result<Vec<f64>> {
    p.eval(f)
}

fn checked_probe<P>(poly: &P, x: &LatticeElement, m: usize) -> Result<Vec<f64>>
where
    P: Fn(&LatticeElement) -> Vec<f64>,
{
    let v = poly(x);
    if v.len() != m {
        return Err(Error::CodomainMismatch {
            expected: m,
            found: v.len(),
        });
    }
    Ok(v)
}

/// The unnormalized polarization sum `Σ_{ε ∈ {±1}^n} (Π ε_k) P(Σ ε_k f_k)`.
/// Dividing by `n! 2^n` gives `P̌(f_1, ..., f_n)`.
pub fn polarization_sum<P>(poly: &P, args: &[LatticeElement], m: usize) -> Result<Vec<f64>>
where
    P: Fn(&LatticeElement) -> Vec<f64>,
{
    let n = args.len();
    if n == 0 {
        return Err(Error::EmptyArguments);
    }
    let d = crate::lattice::common_dim(args)?;
    let mut total = vec![0.0; m];
    for mask in 0u32..(1u32 << n) {
        let mut probe = vec![0.0; d];
        for (k, a) in args.iter().enumerate() {
            let sign = if mask & (1 << k) != 0 { -1.0 } else { 1.0 };
            for (p, x) in probe.iter_mut().zip(a.coords()) {
                *p += sign * x;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let value = checked_probe(poly, &LatticeElement::new(probe)?, m)?;
        for (t, v) in total.iter_mut().zip(&value) {
            *t += sign * v;
        }
    }
    Ok(total)
}

/// `P̌(f_1, ..., f_n)` by the polarization formula.
pub fn polarized_value<P>(poly: &P, args: &[LatticeElement], m: usize) -> Result<Vec<f64>>
where
    P: Fn(&LatticeElement) -> Vec<f64>,
{
    let n = args.len();
    let norm = factorial(n as u64) as f64 * 2f64.powi(n as i32);
    Ok(polarization_sum(poly, args, m)?
        .into_iter()
        .map(|v| v / norm)
        .collect())
}

/// Polarization sum at the basis tuple `(e_{i_1}, ..., e_{i_n})`.
///
/// Sign patterns are grouped by how many copies of each repeated basis
/// vector are negated; a group with `j` of `μ` copies negated has
/// `C(μ, j)` members, all with the same probe point. The result equals the
/// ungrouped `2^n`-term sum.
fn basis_polarization_sum<P>(poly: &P, index: &[usize], d: usize, m: usize) -> Result<Vec<f64>>
where
    P: Fn(&LatticeElement) -> Vec<f64>,
{
    let mults = runs(index);
    let mut distinct = index.to_vec();
    distinct.dedup();
    let mut negated = vec![0usize; mults.len()];
    let mut total = vec![0.0; m];
    loop {
        let mut probe = vec![0.0; d];
        let mut weight: i128 = 1;
        for ((&coord, &mu), &j) in distinct.iter().zip(&mults).zip(&negated) {
            probe[coord] = mu as f64 - 2.0 * j as f64;
            weight *= binomial(mu as u64, j as u64) as i128;
            if j % 2 == 1 {
                weight = -weight;
            }
        }
        let value = checked_probe(poly, &LatticeElement::new(probe)?, m)?;
        for (t, v) in total.iter_mut().zip(&value) {
            *t += weight as f64 * v;
        }
        // Odometer over 0..=mu for each distinct coordinate.
        let Some(pos) = (0..negated.len()).find(|&p| negated[p] < mults[p]) else {
            break;
        };
        negated[pos] += 1;
        negated[..pos].iter_mut().for_each(|j| *j = 0);
    }
    Ok(total)
}

/// Unnormalized polarization sums for every sorted multi-index over `0..d`.
/// The tensor entry at each index is the sum divided by `n! 2^n`.
pub fn polarization_sums<P>(
    n: usize,
    poly: &P,
    d: usize,
    m: usize,
) -> Result<Vec<(Vec<usize>, Vec<f64>)>>
where
    P: Fn(&LatticeElement) -> Vec<f64>,
{
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > MAX_POLARIZATION_ORDER {
        return Err(Error::InvalidSpec(format!(
            "polarization order {n} exceeds the cap of {MAX_POLARIZATION_ORDER}"
        )));
    }
    if d == 0 || m == 0 {
        return Err(Error::InvalidSpec("dimensions must be positive".into()));
    }
    crate::combinatorics::sorted_multi_indices(d, n)
        .into_iter()
        .map(|index| {
            let sum = basis_polarization_sum(poly, &index, d, m)?;
            Ok((index, sum))
        })
        .collect()
}

/// Recovers the symmetric n-linear map associated with an n-homogeneous
/// `poly: R^d → R^m` from its values alone.
pub fn polarize<P>(n: usize, poly: &P, d: usize, m: usize) -> Result<SymmetricMultilinearMap>
where
    P: Fn(&LatticeElement) -> Vec<f64>,
{
    let norm = factorial(n as u64) as f64 * 2f64.powi(n as i32);
    let mut t = SymmetricMultilinearMap::zero(n, d, m)?;
    for (index, sum) in polarization_sums(n, poly, d, m)? {
        if sum.iter().any(|&v| v != 0.0) {
            t.set(index, sum.into_iter().map(|v| v / norm).collect())?;
        }
    }
    Ok(t)
}
