use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::groups::PermGroup;
use crate::scalar::Scalar;

/// `Z_G` evaluated at `values[0], values[1], …` for `x_1, x_2, …`.
pub fn cycle_index_value(group: &PermGroup, values: &[BigRational]) -> Result<BigRational> {
    let n = group.degree();
    if values.len() < n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: values.len(),
        });
    }
    group.cycle_index::<BigRational>().evaluate(&values[..n])
}

fn integral(v: BigRational) -> Result<BigInt> {
    v.as_integer()
        .ok_or_else(|| Error::NonIntegral(v.to_string()))
}

/// Number of colorings of `{1..n}` with `colors` colors up to `G`:
/// `Z_G(N, N, …, N)`.
pub fn polya_count(group: &PermGroup, colors: u64) -> BigInt {
    let c = BigRational::from_integer(colors.into());
    integral(cycle_index_value(group, &vec![c; group.degree()]).expect("length n"))
        .expect("orbit counts are integers")
}

/// `Z_G(p_1, p_2, …)` with `p_j = t_1^j + … + t_r^j`: the coefficient of
/// `t_1^{k_1}…t_r^{k_r}` counts orbits of colorings using color `i` exactly
/// `k_i` times.
pub fn polya_weight_poly<C: Scalar>(group: &PermGroup, colors: usize) -> Result<MultiPoly<C>> {
    if colors == 0 {
        return Err(Error::InvalidInput("need at least one color".into()));
    }
    let tv = Vars::indexed("t", colors);
    let ts: Vec<MultiPoly<C>> = tv
        .names()
        .iter()
        .map(|v| MultiPoly::var(&tv, v))
        .collect::<Result<_>>()?;
    let z = group.cycle_index::<C>();
    let asg: HashMap<String, MultiPoly<C>> = z
        .vars()
        .names()
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let pj = ts
                .iter()
                .fold(MultiPoly::zero(&tv), |acc, t| &acc + &t.pow(j as u32 + 1));
            (name.clone(), pj)
        })
        .collect();
    z.substitute(&asg, &tv)
}
