use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::field::{ExtensionField, PrimeField};
use super::polya::cycle_index_value;
use crate::algebra::{MultiPoly, TruncatedSeries, Vars};
use crate::error::{Error, Result};
use crate::groups::PermGroup;
use crate::scalar::Scalar;

/// Default bound on the number of tuples visited by exhaustive loops.
pub const DEFAULT_ENUM_BUDGET: u128 = 10_000_000;

/// `|X(F_{q^r})|` for `r = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    q: u64,
    counts: Vec<BigInt>,
}

impl CountVector {
    pub fn new(q: u64, counts: Vec<BigInt>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidInput("count vector must be nonempty".into()));
        }
        if counts.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(
                "point counts must be nonnegative".into(),
            ));
        }
        Ok(CountVector { q, counts })
    }

    pub fn from_u64(q: u64, counts: &[u64]) -> Result<Self> {
        Self::new(q, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Counts `N_r = Σ_k c_k·q^{rk}` for a polynomial point count
    /// `Σ_k c_k q^k` (e.g. `[1, 0, 1]` is `q^2 + 1`).
    pub fn from_polynomial_count(q: u64, coeffs: &[i64], n: usize) -> Result<Self> {
        let counts = (1..=n as u32)
            .map(|r| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| BigInt::from(c) * BigInt::from(q).pow(r * k as u32))
                    .sum()
            })
            .collect();
        Self::new(q, counts)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

fn as_rationals(counts: &CountVector) -> Vec<BigRational> {
    counts
        .counts
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

/// `Z_G(N_1, …, N_n)` as an exact rational.
pub fn quotient_point_value(group: &PermGroup, counts: &CountVector) -> Result<BigRational> {
    cycle_index_value(group, &as_rationals(counts))
}

/// `|(X^n/G)(F_q)| = Z_G(N_1, …, N_n)`; non-integral values mean the counts
/// cannot come from a variety.
pub fn quotient_point_count(group: &PermGroup, counts: &CountVector) -> Result<BigInt> {
    let v = quotient_point_value(group, counts)?;
    v.as_integer()
        .ok_or_else(|| Error::NonIntegral(v.to_string()))
}

fn need(counts: &CountVector, order: usize) -> Result<()> {
    if counts.len() < order {
        return Err(Error::SizeMismatch {
            expected: order,
            found: counts.len(),
        });
    }
    Ok(())
}

/// `Z_X(t) = exp(Σ_r N_r t^r / r)`.
pub fn zeta_from_counts<C: Scalar>(
    counts: &CountVector,
    order: usize,
) -> Result<TruncatedSeries<C>> {
    need(counts, order)?;
    let v = Vars::empty();
    let mut arg = vec![MultiPoly::zero(&v)];
    for (r, n) in counts.counts.iter().take(order).enumerate() {
        arg.push(MultiPoly::constant(
            &v,
            C::from_integer(n) / C::from_i64_exact(r as i64 + 1),
        ));
    }
    let z = TruncatedSeries::new(&v, order, arg)?.exp()?;
    if cfg!(debug_assertions) && C::EXACT {
        // Kapranov: the t^n coefficient is Z_{S_n}(N_1, …, N_n)
        let vals: Vec<C> = counts.counts.iter().map(C::from_integer).collect();
        for n in 1..=order.min(6) {
            let zs = crate::groups::symmetric_cycle_index::<C>(n);
            debug_assert_eq!(z.coeff(n).constant_term(), zs.evaluate(&vals[..n])?);
        }
    }
    Ok(z)
}

/// `Z_X(t) + 1/Z_X(-t) - 1 - N_1·t`, whose `t^n` coefficient counts points of
/// `X^n/A_n` for `n ≥ 2`.
pub fn alt_zeta_from_counts<C: Scalar>(
    counts: &CountVector,
    order: usize,
) -> Result<TruncatedSeries<C>> {
    let z = zeta_from_counts::<C>(counts, order)?;
    let v = z.vars().clone();
    let n1 = MultiPoly::constant(&v, C::from_integer(&counts.counts[0]));
    z.add(&z.negate_t().inverse()?)?
        .sub(&TruncatedSeries::one(&v, order))?
        .sub(&TruncatedSeries::monomial(&v, order, 1, n1))
}

/// Integer coefficients reduced mod `p`, with exponent vectors.
fn reduce_mod_p(f: &PrimeField, poly: &MultiPoly<BigRational>) -> Result<Vec<(u64, Vec<u32>)>> {
    let p = BigInt::from(f.order());
    poly.terms()
        .map(|(e, c)| {
            let c = c
                .as_integer()
                .ok_or_else(|| Error::NonIntegral(c.to_string()))?;
            let r: u64 = ((c % &p + &p) % &p).try_into().expect("residue fits");
            Ok((r, e.clone()))
        })
        .filter(|t| !matches!(t, Ok((0, _))))
        .collect()
}

/// Exhaustive `|X(F_{q^r})|` for `r = 1..=r_max`, where `X ⊂ A^m` is cut out
/// by `equations` (integer coefficients, all over the same `m` variables).
pub fn brute_force_affine_counts(
    equations: &[MultiPoly<BigRational>],
    vars: &Vars,
    q: u64,
    r_max: usize,
    budget: u128,
) -> Result<CountVector> {
    let base = PrimeField::new(q)?;
    for e in equations {
        if e.vars() != vars {
            return Err(Error::VariableMismatch {
                left: e.vars().to_string(),
                right: vars.to_string(),
            });
        }
    }
    let m = vars.len();
    let reduced = equations
        .iter()
        .map(|e| reduce_mod_p(&base, e))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let size = (q as u128).checked_pow((m * r) as u32).unwrap_or(u128::MAX);
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
        let field = ExtensionField::new(base, r)?;
        let elements: Vec<Vec<u64>> = (0..field.size()).map(|k| field.element(k)).collect();
        let max_exp = reduced
            .iter()
            .flatten()
            .flat_map(|(_, e)| e.iter().copied())
            .max()
            .unwrap_or(0);
        // powers[k][j] = element_k^j
        let powers: Vec<Vec<Vec<u64>>> = elements
            .iter()
            .map(|a| {
                let mut v = vec![field.one()];
                for _ in 0..max_exp {
                    let next = field.mul(v.last().unwrap(), a);
                    v.push(next);
                }
                v
            })
            .collect();
        let qr = field.size() as usize;
        let mut point = vec![0usize; m];
        let mut count = BigInt::zero();
        loop {
            let on = reduced.iter().all(|eq| {
                let mut acc = field.zero();
                for (c, e) in eq {
                    let mut term = field.from_base(*c);
                    for (i, &x) in e.iter().enumerate() {
                        if x > 0 {
                            term = field.mul(&term, &powers[point[i]][x as usize]);
                        }
                    }
                    acc = field.add(&acc, &term);
                }
                acc.iter().all(|&c| c == 0)
            });
            if on {
                count += 1;
            }
            // odometer over (F_{q^r})^m
            let mut i = 0;
            while i < m {
                point[i] += 1;
                if point[i] < qr {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
        counts.push(count);
    }
    CountVector::new(q, counts)
}
