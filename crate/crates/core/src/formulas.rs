//! Closed forms: the cycle-index trace formula, its per-element version, the
//! rational generating functions for symmetric and alternating powers, and
//! the Hodge-refined series.

use std::collections::HashMap;

use crate::algebra::{det_one_minus_ta, MultiPoly, TruncatedSeries, Vars};
use crate::error::{Error, Result};
use crate::groups::{PermGroup, Permutation};
use crate::lefschetz::{
    betti_to_identity_map, hodge_to_map, lefschetz_vars, GradedMap, HodgeDiamond, LefschetzPoly, U,
};
use crate::scalar::Scalar;

/// Name of the generating-function variable.
pub const T: &str = "t";

/// `L_u(g·φ^{⊗n}) = Π_r L_{u^r}(φ^r)^{m_r(g)}`.
pub fn conjugacy_trace_formula<C: Scalar>(g: &Permutation, phi: &GradedMap<C>) -> LefschetzPoly<C> {
    let ct = g.cycle_type();
    let mut acc = LefschetzPoly::one(phi.vars()).expect("graded map vars are valid");
    for (i, &m) in ct.counts().iter().enumerate() {
        if m > 0 {
            acc = acc
                .mul(&phi.lefschetz_at(i as u32 + 1).pow(m as u32))
                .expect("same vars");
        }
    }
    acc
}

/// `Z_G(L_u(φ), L_{u^2}(φ^2), …, L_{u^n}(φ^n))`: the Lefschetz polynomial of
/// `φ^{⊗n}` restricted to the `G`-invariants.
pub fn invariant_lefschetz_formula<C: Scalar>(
    group: &PermGroup,
    phi: &GradedMap<C>,
    n: usize,
) -> Result<LefschetzPoly<C>> {
    if group.degree() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: group.degree(),
        });
    }
    substitute_lefschetz(&group.cycle_index::<C>(), phi)
}

/// Substitutes `x_r ↦ L_{u^r}(φ^r)` into a polynomial over `x_1..x_n`.
pub fn substitute_lefschetz<C: Scalar>(
    cycle_index: &MultiPoly<C>,
    phi: &GradedMap<C>,
) -> Result<LefschetzPoly<C>> {
    let target = lefschetz_vars(phi.vars())?;
    let mut asg = HashMap::new();
    for (r, name) in cycle_index.vars().names().iter().enumerate() {
        asg.insert(name.clone(), phi.lefschetz_at(r as u32 + 1).into_poly());
    }
    LefschetzPoly::from_poly(cycle_index.substitute(&asg, &target)?)
}

/// A rational function in `t` together with its truncated expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalGF<C: Scalar> {
    /// Polynomial over `base ++ [u, t]`.
    pub numerator: MultiPoly<C>,
    /// Polynomial over `base ++ [u, t]` with constant term 1 in `t`.
    pub denominator: MultiPoly<C>,
    /// Coefficients over `base ++ [u]`.
    pub expansion: TruncatedSeries<C>,
}

impl<C: Scalar> RationalGF<C> {
    /// The `t^n` coefficient as a Lefschetz polynomial.
    pub fn coefficient(&self, n: usize) -> LefschetzPoly<C> {
        LefschetzPoly::from_poly(self.expansion.coeff(n).clone())
            .expect("expansion is over base ++ [u]")
    }
}

/// `det(I - s·φ_i u^i t)` over `base ++ [u, t]`, for `s = ±1`.
fn det_factor<C: Scalar>(phi: &GradedMap<C>, degree: usize, sign: i64) -> Result<MultiPoly<C>> {
    let gf_vars = lefschetz_vars(phi.vars())?.with(&[T]);
    let block = phi.block(degree);
    let d = det_one_minus_ta(&block, T, block.dim())?.embed(&gf_vars)?;
    let u = MultiPoly::var(&gf_vars, U)?;
    let t = MultiPoly::var(&gf_vars, T)?;
    let scaled_t = (&u.pow(degree as u32) * &t).scale(&C::from_i64_exact(sign));
    d.substitute(&HashMap::from([(T.to_string(), scaled_t)]), &gf_vars)
}

/// `(Π_{i odd} det(I - φ_i u^i t), Π_{i even} det(I - φ_i u^i t))` with sign
/// `s` in place of the minus.
fn det_products<C: Scalar>(phi: &GradedMap<C>, sign: i64) -> Result<(MultiPoly<C>, MultiPoly<C>)> {
    let gf_vars = lefschetz_vars(phi.vars())?.with(&[T]);
    let mut odd = MultiPoly::one(&gf_vars);
    let mut even = MultiPoly::one(&gf_vars);
    for i in 0..phi.blocks().len() {
        let f = det_factor(phi, i, sign)?;
        if i % 2 == 1 {
            odd = &odd * &f;
        } else {
            even = &even * &f;
        }
    }
    Ok((odd, even))
}

/// `Σ_n L_u(φ^{⊗n}|_{Sym}) t^n = Π_{i odd} det(I - φ_i u^i t) / Π_{i even} det(I - φ_i u^i t)`.
pub fn sym_generating_function<C: Scalar>(
    phi: &GradedMap<C>,
    order: usize,
) -> Result<RationalGF<C>> {
    let (numerator, denominator) = det_products(phi, 1)?;
    let num = TruncatedSeries::from_poly_in(&numerator, T, order)?;
    let den = TruncatedSeries::from_poly_in(&denominator, T, order)?;
    let expansion = num.mul(&den.inverse()?)?;
    Ok(RationalGF {
        numerator,
        denominator,
        expansion,
    })
}

fn lefschetz_times_t<C: Scalar>(phi: &GradedMap<C>, order: usize) -> Result<TruncatedSeries<C>> {
    let l = phi.lefschetz().into_poly();
    Ok(TruncatedSeries::monomial(&l.vars().clone(), order, 1, l))
}

/// `S(t) + 1/S(-t) - 1 - L_u(φ)·t`, where `S` is the symmetric-power series.
/// The `t^n` coefficient is the `A_n`-invariant Lefschetz polynomial for
/// `n ≥ 2`; coefficients 0 and 1 are those of the trivial groups `A_0`, `A_1`.
pub fn alt_generating_function<C: Scalar>(
    phi: &GradedMap<C>,
    order: usize,
) -> Result<TruncatedSeries<C>> {
    let s = sym_generating_function(phi, order)?.expansion;
    let vars = s.vars().clone();
    s.add(&s.negate_t().inverse()?)?
        .sub(&TruncatedSeries::one(&vars, order))?
        .sub(&lefschetz_times_t(phi, order)?)
}

/// The same series from the explicit products
/// `Π det(I - φ_i u^i t)^{-(-1)^i} + Π det(I + φ_i u^i t)^{(-1)^i} - 1 - L_u(φ)·t`.
pub fn alt_generating_function_det_form<C: Scalar>(
    phi: &GradedMap<C>,
    order: usize,
) -> Result<TruncatedSeries<C>> {
    let series = |p: &MultiPoly<C>| TruncatedSeries::from_poly_in(p, T, order);
    let (odd_m, even_m) = det_products(phi, 1)?;
    let (odd_p, even_p) = det_products(phi, -1)?;
    let first = series(&odd_m)?.mul(&series(&even_m)?.inverse()?)?;
    let second = series(&even_p)?.mul(&series(&odd_p)?.inverse()?)?;
    let vars = first.vars().clone();
    first
        .add(&second)?
        .sub(&TruncatedSeries::one(&vars, order))?
        .sub(&lefschetz_times_t(phi, order)?)
}

/// The literal reading that subtracts `1 + L_u(φ)` from the constant
/// coefficient only. Only the coefficients `n ≥ 2` agree with
/// [`alt_generating_function`].
pub fn alt_generating_function_raw<C: Scalar>(
    phi: &GradedMap<C>,
    order: usize,
) -> Result<TruncatedSeries<C>> {
    let s = sym_generating_function(phi, order)?.expansion;
    let vars = s.vars().clone();
    let l = phi.lefschetz().into_poly();
    let shift = TruncatedSeries::monomial(&vars, order, 0, &MultiPoly::one(&vars) + &l);
    s.add(&s.negate_t().inverse()?)?.sub(&shift)
}

/// `χ_u(X^n/G) = Z_G(χ_u(X), χ_{u^2}(X), …)` from the Betti numbers of `X`.
pub fn quotient_poincare<C: Scalar>(
    group: &PermGroup,
    betti: &[usize],
    n: usize,
) -> Result<LefschetzPoly<C>> {
    invariant_lefschetz_formula(group, &betti_to_identity_map(betti), n)
}

/// `Π_{p,q} (1 - x^p y^q u^{p+q} t)^{-(-1)^{p+q} h^{p,q}}` expanded to `order`,
/// coefficients over `[x, y, u]`.
pub fn cheah_hodge_series<C: Scalar>(
    hodge: &HodgeDiamond,
    order: usize,
) -> Result<TruncatedSeries<C>> {
    let vars = Vars::new(["x", "y", U]);
    let mut acc = TruncatedSeries::one(&vars, order);
    for (&(p, q), &h) in hodge {
        if h == 0 {
            continue;
        }
        let i = p + q;
        let mono = MultiPoly::monomial(&vars, vec![p, q, i], -C::one());
        let factor = TruncatedSeries::new(&vars, order, vec![MultiPoly::one(&vars), mono])?;
        let e = if i % 2 == 0 { -(h as i64) } else { h as i64 };
        acc = acc.mul(&factor.pow_int(e)?)?;
    }
    Ok(acc)
}

/// `χ_u(X^n/G, x, y) = Z_G(χ_u(X, x, y), χ_{u^2}(X, x^2, y^2), …)`.
pub fn hodge_quotient<C: Scalar>(
    group: &PermGroup,
    hodge: &HodgeDiamond,
    n: usize,
) -> Result<LefschetzPoly<C>> {
    invariant_lefschetz_formula(group, &hodge_to_map(hodge), n)
}

/// Hodge numbers `h^{p,q}` read back from a Hodge–Deligne polynomial over `[x, y, u]`.
pub fn hodge_numbers<C: Scalar>(poly: &LefschetzPoly<C>) -> Result<HodgeDiamond> {
    let mut out = HodgeDiamond::new();
    let vars = poly.poly().vars();
    let (xi, yi, ui) = match (vars.index_of("x"), vars.index_of("y"), vars.index_of(U)) {
        (Some(x), Some(y), Some(u)) if vars.len() == 3 => (x, y, u),
        _ => {
            return Err(Error::InvalidInput(format!(
                "expected a polynomial over x, y, u; got [{vars}]"
            )))
        }
    };
    for (e, c) in poly.poly().terms() {
        let (p, q, i) = (e[xi], e[yi], e[ui]);
        if p + q != i {
            return Err(Error::InvalidInput(format!(
                "term with x^{p} y^{q} has u-degree {i}"
            )));
        }
        let v = if i % 2 == 1 { -c.clone() } else { c.clone() };
        let h = v
            .as_integer()
            .ok_or_else(|| Error::NonIntegral(format!("{v:?}")))?;
        let h: usize = h
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("negative Hodge number at ({p},{q})")))?;
        out.insert((p, q), h);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SquareMatrix;
    use crate::groups::{GroupKind, DEFAULT_GROUP_CAP};
    use num_rational::BigRational;

    type L = LefschetzPoly<BigRational>;

    fn lp(s: &str) -> L {
        L::parse(s, &Vars::empty()).unwrap()
    }

    fn group(k: GroupKind, n: usize) -> PermGroup {
        PermGroup::named(k, n, DEFAULT_GROUP_CAP).unwrap()
    }

    fn q_map() -> GradedMap<BigRational> {
        let base = Vars::new(["q"]);
        let q = MultiPoly::var(&base, "q").unwrap();
        GradedMap::new(&base, vec![SquareMatrix::diagonal(&base, vec![q])]).unwrap()
    }

    #[test]
    fn per_element_examples() {
        let phi = betti_to_identity_map::<BigRational>(&[1, 2, 1]);
        assert_eq!(
            conjugacy_trace_formula(&Permutation::identity(3), &phi),
            phi.lefschetz().pow(3)
        );
        let odd = betti_to_identity_map::<BigRational>(&[0, 2]);
        assert_eq!(
            conjugacy_trace_formula(&Permutation::parse("(1 2)", 2).unwrap(), &odd),
            lp("-2*u^2")
        );
        let p1 = betti_to_identity_map::<BigRational>(&[1, 0, 1]);
        assert_eq!(
            conjugacy_trace_formula(&Permutation::parse("(1 2 3)", 3).unwrap(), &p1),
            lp("1 + u^6")
        );
    }

    #[test]
    fn invariant_formula_examples() {
        let p1 = betti_to_identity_map::<BigRational>(&[1, 0, 1]);
        let s2 = group(GroupKind::Symmetric, 2);
        assert_eq!(
            invariant_lefschetz_formula(&s2, &p1, 2).unwrap(),
            lp("1 + u^2 + u^4")
        );
        let a3 = group(GroupKind::Alternating, 3);
        assert_eq!(
            invariant_lefschetz_formula(&a3, &p1, 3).unwrap(),
            lp("((1 + u^2)^3 + 2*(1 + u^6))/3")
        );
        let triv = group(GroupKind::Trivial, 1);
        assert_eq!(
            invariant_lefschetz_formula(&triv, &p1, 1).unwrap(),
            p1.lefschetz()
        );
        assert!(invariant_lefschetz_formula(&triv, &p1, 2).is_err());
    }

    #[test]
    fn projective_line_symmetric_powers() {
        let gf =
            sym_generating_function(&betti_to_identity_map::<BigRational>(&[1, 0, 1]), 6).unwrap();
        for n in 0..=6 {
            let expect = (0..=n).fold(lp("0"), |acc, j| {
                acc.add(&lp(&format!("u^{}", 2 * j))).unwrap()
            });
            assert_eq!(gf.coefficient(n), expect);
        }
    }

    #[test]
    fn point_and_scalar_map() {
        let gf = sym_generating_function(&betti_to_identity_map::<BigRational>(&[1]), 4).unwrap();
        assert!((0..=4).all(|n| gf.coefficient(n) == lp("1")));

        let gf = sym_generating_function(&q_map(), 5).unwrap();
        let base = Vars::new(["q"]);
        for n in 0..=5 {
            assert_eq!(
                gf.coefficient(n),
                L::parse(&format!("q^{n}"), &base).unwrap()
            );
        }
        let alt = alt_generating_function(&q_map(), 5).unwrap();
        assert_eq!(alt, gf.expansion);
    }

    #[test]
    fn alternating_low_coefficients() {
        let phi = betti_to_identity_map::<BigRational>(&[1, 1, 2]);
        let alt = alt_generating_function(&phi, 4).unwrap();
        assert_eq!(alt.coeff(0), &MultiPoly::one(alt.vars()));
        assert_eq!(alt.coeff(1), phi.lefschetz().poly());
        assert_eq!(alt, alt_generating_function_det_form(&phi, 4).unwrap());
        let raw = alt_generating_function_raw(&phi, 4).unwrap();
        assert_eq!(raw.coeff(3), alt.coeff(3));
        assert_ne!(raw.coeff(0), alt.coeff(0));
    }

    #[test]
    fn quotient_poincare_examples() {
        assert_eq!(
            quotient_poincare::<BigRational>(&group(GroupKind::Symmetric, 2), &[1, 0, 1], 2)
                .unwrap(),
            lp("1 + u^2 + u^4")
        );
        assert_eq!(
            quotient_poincare::<BigRational>(&group(GroupKind::Cyclic, 4), &[2], 4).unwrap(),
            lp("6")
        );
        assert_eq!(
            quotient_poincare::<BigRational>(&group(GroupKind::Symmetric, 3), &[1], 3).unwrap(),
            lp("1")
        );
    }

    #[test]
    fn hodge_examples() {
        let xy = Vars::new(["x", "y"]);
        let point: HodgeDiamond = [((0, 0), 1)].into();
        let s = cheah_hodge_series::<BigRational>(&point, 4).unwrap();
        assert!((0..=4).all(|n| s.coeff(n) == &MultiPoly::one(s.vars())));

        let line: HodgeDiamond = [((0, 0), 1), ((1, 1), 1)].into();
        let s = cheah_hodge_series::<BigRational>(&line, 3).unwrap();
        assert_eq!(
            s.coeff(2),
            L::parse("1 + x*y*u^2 + x^2*y^2*u^4", &xy).unwrap().poly()
        );

        let elliptic: HodgeDiamond = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)].into();
        let a2 = group(GroupKind::Alternating, 2);
        let triv = group(GroupKind::Trivial, 2);
        let h = hodge_quotient::<BigRational>(&triv, &elliptic, 2).unwrap();
        assert_eq!(h, hodge_to_map::<BigRational>(&elliptic).lefschetz().pow(2));
        assert_eq!(hodge_quotient::<BigRational>(&a2, &elliptic, 2).unwrap(), h);
    }

    #[test]
    fn hodge_numbers_read_back() {
        let elliptic: HodgeDiamond = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)].into();
        let chi = hodge_to_map::<BigRational>(&elliptic).lefschetz();
        assert_eq!(hodge_numbers(&chi).unwrap(), elliptic);
        assert!(hodge_numbers(&lp("1 + u")).is_err());
    }
}
