//! Numerical toolkit for orthogonally additive homogeneous polynomials on
//! the vector lattice `R^d`.
//!
//! * [`lattice`]: elements of `R^d` with the coordinatewise order.
//! * [`funcalc`]: root mean power `S_n` and geometric mean `G_n`.
//! * [`complexify`]: `E + iE`, the modulus and its `S_n`/`G_n` representations.
//! * [`multilinear`]: symmetric n-linear maps, polarization, complexification.
//! * [`polynomials`]: seeded instance generators.
//! * [`characterize`]: the four equivalent conditions and the harness that
//!   checks they agree.

pub mod characterize;
pub mod combinatorics;
pub mod complexify;
pub mod error;
pub mod funcalc;
pub mod lattice;
pub mod multilinear;
pub mod polynomials;
pub mod tolerance;

pub use characterize::{equivalence_harness, Budget, ConditionReport};
pub use complexify::ComplexElement;
pub use error::{Error, Result};
pub use funcalc::{geometric_mean, root_mean_power, PowerTuple};
pub use lattice::LatticeElement;
pub use multilinear::{polarize, ComplexCodomainValue, HomogeneousPolynomial, SymmetricMultilinearMap};
pub use polynomials::{InstanceKind, InstanceSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
