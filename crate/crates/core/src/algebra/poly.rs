use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Canonical, Scalar};

/// An ordered list of named formal variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Vars::new(Vec::<String>::new())
    }

    /// `prefix_1, ..., prefix_n`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Vars::new((1..=n).map(|i| format!("{prefix}_{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// This list followed by `extra` (names already present are skipped).
    pub fn with(&self, extra: &[&str]) -> Self {
        let mut out: Vec<String> = self.0.to_vec();
        for e in extra {
            if !out.iter().any(|v| v == e) {
                out.push((*e).to_string());
            }
        }
        Vars::new(out)
    }

    /// This list with `name` removed.
    pub fn without(&self, name: &str) -> Self {
        Vars::new(self.0.iter().filter(|v| *v != name).cloned())
    }

    /// Variables of `self` followed by those of `other` not already present.
    pub fn union(&self, other: &Vars) -> Self {
        let extra: Vec<&str> = other.0.iter().map(String::as_str).collect();
        self.with(&extra)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(", "))
    }
}

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// Graded-lex comparison, highest total degree first; ties go to the larger
/// exponent on the earlier variable.
pub fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Sparse multivariate polynomial over a [`Scalar`] field.
///
/// No zero coefficients are ever stored, so structural equality is
/// mathematical equality (for exact scalars).
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    vars: Vars,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn from_i64(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, C::from_i64_exact(c))
    }

    pub fn monomial(vars: &Vars, exps: Exponents, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(Self::monomial(vars, exps, C::one()))
    }

    /// Builds a polynomial from raw terms, combining duplicates and dropping zeros.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, C)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    /// Terms in canonical (graded-lex, descending) order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The value if this polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> Option<u32> {
        let idx = self.vars.index_of(name)?;
        Some(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    fn add_term(&mut self, exps: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that actually occurs.
    pub fn embed(&self, target: &Vars) -> Result<Self> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|v| target.index_of(v))
            .collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => ne[j] = x,
                    None => return Err(Error::UnknownVariable(self.vars.names()[i].clone())),
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Substitutes polynomials for variables. Every assigned polynomial must
    /// live over `target`; unassigned variables map to the same-named
    /// variable of `target`.
    pub fn substitute(
        &self,
        assignment: &HashMap<String, MultiPoly<C>>,
        target: &Vars,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            match assignment.get(name) {
                Some(p) => {
                    if p.vars != *target {
                        return Err(Error::VariableMismatch {
                            left: p.vars.to_string(),
                            right: target.to_string(),
                        });
                    }
                    images.push(Some(p.clone()));
                }
                None => images.push(if target.contains(name) {
                    Some(Self::var(target, name)?)
                } else {
                    None
                }),
            }
        }
        // cache powers per variable; cycle-index substitutions reuse them heavily
        let mut powers: Vec<Vec<MultiPoly<C>>> = vec![Vec::new(); self.vars.len()];
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let img = images[i]
                    .as_ref()
                    .ok_or_else(|| Error::UnknownVariable(self.vars.names()[i].clone()))?;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Self::one(target));
                }
                while cache.len() <= x as usize {
                    let next = cache.last().unwrap() * img;
                    cache.push(next);
                }
                term = &term * &cache[x as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a point given in variable order.
    pub fn evaluate(&self, values: &[C]) -> Result<C> {
        if values.len() != self.vars.len() {
            return Err(Error::SizeMismatch {
                expected: self.vars.len(),
                found: values.len(),
            });
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &x) in values.iter().zip(e) {
                for _ in 0..x {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Splits off `name`: returns the coefficients of `name^0, name^1, ...`
    /// as polynomials over the remaining variables.
    pub fn coefficients_in(&self, name: &str) -> Result<(Vars, Vec<MultiPoly<C>>)> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let rest = self.vars.without(name);
        let deg = self.degree_in(name).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&rest); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne.remove(idx) as usize;
            out[k].add_term(ne, c.clone());
        }
        Ok((rest, out))
    }

    /// Inverse of [`coefficients_in`]: `Σ coeffs[k]·name^k` over `vars`.
    pub fn from_coefficients_in(vars: &Vars, name: &str, coeffs: &[MultiPoly<C>]) -> Result<Self> {
        let x = Self::var(vars, name)?;
        let mut out = Self::zero(vars);
        let mut xp = Self::one(vars);
        for c in coeffs {
            out = &out + &(&c.embed(vars)? * &xp);
            xp = &xp * &x;
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative_scalar();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = e.iter().all(|&x| x == 0);
            let mut first = true;
            if is_const || !abs.is_one() {
                Canonical(&abs).fmt(f)?;
                first = false;
            }
            for (name, &x) in self.vars.names().iter().zip(e) {
                if x == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if x == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{:?}]({})", self.vars, self)
    }
}

// Operator forms panic on variable-list mismatch; use the `checked_*`
// methods at API boundaries.
impl<C: Scalar> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.checked_add(rhs).expect("MultiPoly add")
    }
}

impl<C: Scalar> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.checked_sub(rhs).expect("MultiPoly sub")
    }
}

impl<C: Scalar> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.checked_mul(rhs).expect("MultiPoly mul")
    }
}

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}
