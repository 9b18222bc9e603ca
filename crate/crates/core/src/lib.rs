//! Exact Lefschetz polynomials of maps induced on `G`-invariants of tensor
//! powers of graded vector spaces, computed from cycle indices and checked
//! against an explicit signed-permutation model.
//!
//! The algebra is generic over a [`Scalar`] coefficient field. The aliases
//! below fix it to exact rationals, which is what every counting and
//! verification path uses; the `*F64` aliases are for quick floating-point
//! evaluation.
//!
//! ```
//! use polya_core::{groups::{GroupKind, PermGroup, DEFAULT_GROUP_CAP}, Poly};
//!
//! let s3 = PermGroup::named(GroupKind::Symmetric, 3, DEFAULT_GROUP_CAP).unwrap();
//! let z: Poly = s3.cycle_index();
//! assert_eq!(z.to_string(), "1/6*x_1^3 + 1/2*x_1*x_2 + 1/3*x_3");
//! ```

pub mod algebra;
pub mod enumeration;
mod error;
pub mod formulas;
pub mod groups;
pub mod kunneth;
pub mod lefschetz;
mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::{Canonical, Scalar};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational coefficients.
pub type Rational = BigRational;

pub type Poly = algebra::MultiPoly<Rational>;
pub type Series = algebra::TruncatedSeries<Rational>;
pub type Matrix = algebra::SquareMatrix<Rational>;
pub type Map = lefschetz::GradedMap<Rational>;
pub type Lefschetz = lefschetz::LefschetzPoly<Rational>;
pub type GeneratingFunction = formulas::RationalGF<Rational>;

pub type PolyF64 = algebra::MultiPoly<f64>;
pub type SeriesF64 = algebra::TruncatedSeries<f64>;
pub type MatrixF64 = algebra::SquareMatrix<f64>;
pub type MapF64 = lefschetz::GradedMap<f64>;
pub type LefschetzF64 = lefschetz::LefschetzPoly<f64>;
