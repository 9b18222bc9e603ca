use std::fmt;

use super::poly::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Power series in `t` truncated after `t^order`, with polynomial coefficients.
///
/// Always stores exactly `order + 1` coefficients.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    vars: Vars,
    coeffs: Vec<MultiPoly<C>>,
}

impl<C: Scalar> TruncatedSeries<C> {
    /// Pads with zeros or drops terms beyond `order`.
    pub fn new(vars: &Vars, order: usize, mut coeffs: Vec<MultiPoly<C>>) -> Result<Self> {
        for c in &coeffs {
            if c.vars() != vars {
                return Err(Error::VariableMismatch {
                    left: c.vars().to_string(),
                    right: vars.to_string(),
                });
            }
        }
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, MultiPoly::zero(vars));
        Ok(TruncatedSeries {
            vars: vars.clone(),
            coeffs,
        })
    }

    pub fn zero(vars: &Vars, order: usize) -> Self {
        TruncatedSeries {
            vars: vars.clone(),
            coeffs: vec![MultiPoly::zero(vars); order + 1],
        }
    }

    pub fn one(vars: &Vars, order: usize) -> Self {
        Self::monomial(vars, order, 0, MultiPoly::one(vars))
    }

    /// `c·t^k` (zero if `k > order`).
    pub fn monomial(vars: &Vars, order: usize, k: usize, c: MultiPoly<C>) -> Self {
        let mut s = Self::zero(vars, order);
        if k <= order {
            s.coeffs[k] = c.embed(vars).expect("coefficient over series vars");
        }
        s
    }

    /// Reads a polynomial in `t` as a series; the coefficient variables are
    /// the polynomial's variables with `t` removed.
    pub fn from_poly_in(p: &MultiPoly<C>, t: &str, order: usize) -> Result<Self> {
        let (rest, cs) = p.coefficients_in(t)?;
        Self::new(&rest, order, cs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly<C> {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly<C>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<MultiPoly<C>> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            });
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&MultiPoly<C>, &MultiPoly<C>) -> MultiPoly<C>,
    ) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&MultiPoly<C>) -> MultiPoly<C>) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = Self::zero(&self.vars, n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant coefficient must be a nonzero
    /// constant polynomial.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or(Error::NotInvertible)?;
        let inv0 = C::one() / a0;
        let n = self.order();
        let mut b = Self::zero(&self.vars, n);
        b.coeffs[0] = MultiPoly::constant(&self.vars, inv0.clone());
        for k in 1..=n {
            let mut acc = MultiPoly::zero(&self.vars);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &b.coeffs[k - j]);
                }
            }
            b.coeffs[k] = acc.scale(&-inv0.clone());
        }
        Ok(b)
    }

    /// `exp` of a series with zero constant term, via `n·b_n = Σ k·a_k·b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut b = Self::one(&self.vars, n);
        for m in 1..=n {
            let mut acc = MultiPoly::zero(&self.vars);
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    let term = &self.coeffs[k] * &b.coeffs[m - k];
                    acc = &acc + &term.scale(&C::from_i64_exact(k as i64));
                }
            }
            b.coeffs[m] = acc.scale(&C::ratio(1, m as i64));
        }
        Ok(b)
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != MultiPoly::one(&self.vars) {
            return Err(Error::NotInvertible);
        }
        // log(a)' = a'/a
        let n = self.order();
        let inv = self.inverse()?;
        let mut deriv = Self::zero(&self.vars, n);
        for k in 1..=n {
            deriv.coeffs[k - 1] = self.coeffs[k].scale(&C::from_i64_exact(k as i64));
        }
        let q = deriv.mul(&inv)?;
        let mut out = Self::zero(&self.vars, n);
        for k in 1..=n {
            out.coeffs[k] = q.coeffs[k - 1].scale(&C::ratio(1, k as i64));
        }
        Ok(out)
    }

    /// Integer power; negative exponents go through [`inverse`](Self::inverse).
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(&self.vars, self.order());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The series with `t` replaced by `-t`.
    pub fn negate_t(&self) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Changes the truncation order, padding with zeros if it grows.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(&self.vars, order, self.coeffs.clone()).expect("same vars")
    }

    /// Re-expresses every coefficient over `target`.
    pub fn embed(&self, target: &Vars) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            vars: target.clone(),
            coeffs,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }
}

impl<C: Scalar> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl<C: Scalar> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{:?}]({})", self.vars, self)
    }
}
