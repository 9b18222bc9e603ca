use std::fmt;

use super::poly::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense square matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<C> {
    vars: Vars,
    dim: usize,
    entries: Vec<MultiPoly<C>>,
}

impl<C: Scalar> SquareMatrix<C> {
    pub fn new(vars: &Vars, dim: usize, entries: Vec<MultiPoly<C>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::SizeMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let entries = entries
            .iter()
            .map(|e| e.embed(vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(SquareMatrix {
            vars: vars.clone(),
            dim,
            entries,
        })
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<MultiPoly<C>>>) -> Result<Self> {
        let dim = rows.len();
        for r in &rows {
            if r.len() != dim {
                return Err(Error::SizeMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
        }
        Self::new(vars, dim, rows.into_iter().flatten().collect())
    }

    /// Constant matrix from integer rows.
    pub fn from_i64_rows(vars: &Vars, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            vars,
            rows.iter()
                .map(|r| r.iter().map(|&x| MultiPoly::from_i64(vars, x)).collect())
                .collect(),
        )
    }

    pub fn zero(vars: &Vars, dim: usize) -> Self {
        SquareMatrix {
            vars: vars.clone(),
            dim,
            entries: vec![MultiPoly::zero(vars); dim * dim],
        }
    }

    pub fn identity(vars: &Vars, dim: usize) -> Self {
        Self::diagonal(vars, vec![MultiPoly::one(vars); dim])
    }

    pub fn diagonal(vars: &Vars, diag: Vec<MultiPoly<C>>) -> Self {
        let dim = diag.len();
        let mut m = Self::zero(vars, dim);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = d.embed(vars).expect("diagonal entry over matrix vars");
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<C> {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[MultiPoly<C>] {
        &self.entries
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::SizeMismatch {
                expected: self.dim,
                found: other.dim,
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

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(SquareMatrix {
            vars: self.vars.clone(),
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &MultiPoly<C>) -> Self {
        SquareMatrix {
            vars: self.vars.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.dim;
        let mut out = Self::zero(&self.vars, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(&self.vars, self.dim);
        for _ in 0..k {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    pub fn trace(&self) -> MultiPoly<C> {
        (0..self.dim).fold(MultiPoly::zero(&self.vars), |acc, i| &acc + self.get(i, i))
    }

    /// Power sums `Tr(A^r)` for `r = 1..=count`.
    pub fn power_traces(&self, count: usize) -> Vec<MultiPoly<C>> {
        let mut out = Vec::with_capacity(count);
        let mut p = self.clone();
        for r in 1..=count {
            out.push(p.trace());
            if r < count {
                p = p.mul(self).expect("same shape");
            }
        }
        out
    }

    /// Coefficients `c_0..c_dim` of `det(I - tA)`, from the power sums
    /// `Tr(A^r)` through Newton's identities.
    pub fn char_coefficients(&self) -> Vec<MultiPoly<C>> {
        let d = self.dim;
        let p = self.power_traces(d);
        // e_k: elementary symmetric functions of the eigenvalues
        let mut e = vec![MultiPoly::one(&self.vars)];
        for k in 1..=d {
            let mut acc = MultiPoly::zero(&self.vars);
            for i in 1..=k {
                let term = &e[k - i] * &p[i - 1];
                acc = if i % 2 == 1 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            e.push(acc.scale(&C::ratio(1, k as i64)));
        }
        e.into_iter()
            .enumerate()
            .map(|(k, ek)| if k % 2 == 1 { -ek } else { ek })
            .collect()
    }

    pub fn determinant(&self) -> MultiPoly<C> {
        let c = self.char_coefficients();
        let top = c[self.dim].clone();
        if self.dim % 2 == 1 {
            -top
        } else {
            top
        }
    }
}

/// `det(I - tA)` as a polynomial over `A`'s variables plus `t`, keeping
/// terms up to `t^max_degree` (all of them when `max_degree >= dim`).
pub fn det_one_minus_ta<C: Scalar>(
    a: &SquareMatrix<C>,
    t: &str,
    max_degree: usize,
) -> Result<MultiPoly<C>> {
    if a.vars.contains(t) {
        return Err(Error::InvalidInput(format!(
            "matrix entries already use `{t}`"
        )));
    }
    let vars = a.vars.with(&[t]);
    let mut cs = a.char_coefficients();
    cs.truncate(max_degree + 1);
    MultiPoly::from_coefficients_in(&vars, t, &cs)
}

impl<C: Scalar> fmt::Debug for SquareMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
