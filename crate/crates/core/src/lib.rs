//! Exact geometric lifting of canonical-basis parametrizations.
//!
//! The crate computes, in exact arithmetic, the piecewise-linear maps that
//! relate Lusztig and string parametrizations of a Weyl module's canonical
//! basis: transition maps obtained by tropicalizing subtraction-free rational
//! maps, the tropical image of the map `zeta(x) = [x^{iota T}]_+`, and the
//! affine formula for the Schützenberger involution. Everything is checked
//! against a matrix realization of the group and a type-A tableau crystal.
//!
//! Matrix code is generic over [`scalar::Field`]; the aliases below fix the
//! exact choices used throughout.

pub mod cartan;
pub mod crystal;
pub mod error;
pub mod lifting;
pub mod parametrize;
pub mod poly;
pub mod scalar;
pub mod suite;
pub mod tropical;

pub use cartan::{BraidMove, CartanDatum, Series, Weight, WeylElement, Word};
pub use crystal::{CrystalGraph, Tableau};
pub use error::{Error, Result};
pub use lifting::{GroupMatrix, MoveKind, RationalMap, Realization, Side};
pub use parametrize::{AffineMap, LusztigParam, StringParam};
pub use scalar::{Field, Ring, Scalar};
pub use tropical::{AffineForm, PlComponent, PlMap, SfExpr};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Exact rational group matrix.
pub type Matrix = GroupMatrix<Rational>;
/// Floating point group matrix, for quick numeric exploration only.
pub type FloatMatrix = GroupMatrix<f64>;
/// Multivariate integer polynomial.
pub type Polynomial = poly::Poly;
/// Quotient of integer polynomials.
pub type RationalFunction = poly::RatFunc;
/// Exact rational function matrix used by the symbolic solver.
pub type SymbolicMatrix = GroupMatrix<RationalFunction>;
