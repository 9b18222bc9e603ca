//! Coefficient scalars.
//!
//! Everything in the algebra layer is generic over [`Scalar`], a field
//! containing the rationals. `BigRational` gives exact results and is what the
//! crate-root aliases use; `f64`/`f32` are accepted for quick numerical work
//! where exact cancellation is not required.

use std::fmt::{self, Debug};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// A field of characteristic zero usable as a polynomial coefficient.
pub trait Scalar:
    Clone + PartialEq + Debug + Send + Sync + 'static + Num + Neg<Output = Self> + FromPrimitive
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_integer(n: &BigInt) -> Self;

    fn from_i64_exact(n: i64) -> Self {
        Self::from_i64(n).expect("i64 embeds in every scalar type")
    }

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64_exact(num) / Self::from_i64_exact(den)
    }

    /// Parses an integer, `p/q`, or (for inexact types) decimal literal.
    fn parse_literal(s: &str) -> Option<Self>;

    /// Canonical text form: `p/q` in lowest terms, `p` when `q = 1`.
    fn write_canonical(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    fn is_negative_scalar(&self) -> bool;

    /// Exact integer value, if this scalar is one.
    fn as_integer(&self) -> Option<BigInt>;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n, d))
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }

    fn write_canonical(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational is always reduced with a positive denominator
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }

    fn is_negative_scalar(&self) -> bool {
        self.is_negative()
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_integer(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn parse_literal(s: &str) -> Option<Self> {
                let s = s.trim();
                match s.split_once('/') {
                    Some((n, d)) => {
                        Some(n.trim().parse::<$t>().ok()? / d.trim().parse::<$t>().ok()?)
                    }
                    None => s.parse().ok(),
                }
            }

            fn write_canonical(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }

            fn is_negative_scalar(&self) -> bool {
                *self < 0.0
            }

            fn as_integer(&self) -> Option<BigInt> {
                if self.fract() == 0.0 && self.is_finite() {
                    BigInt::from_f64(*self as f64)
                } else {
                    None
                }
            }
        }
    };
}

impl_float_scalar!(f64);
impl_float_scalar!(f32);

/// Display adapter for a scalar in canonical form.
pub struct Canonical<'a, C: Scalar>(pub &'a C);

impl<C: Scalar> fmt::Display for Canonical<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_canonical(f)
    }
}
