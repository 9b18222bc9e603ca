use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::PrimeField;
use crate::algebra::{MultiPoly, SquareMatrix, Vars};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sylvester matrix of `f` and `g` given by coefficient lists, highest
/// degree first.
pub fn sylvester_matrix(
    vars: &Vars,
    f: &[MultiPoly<BigRational>],
    g: &[MultiPoly<BigRational>],
) -> Result<SquareMatrix<BigRational>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(f, n), (g, m)] {
        for s in 0..shifts {
            let mut row = vec![MultiPoly::zero(vars); size];
            for (k, c) in coeffs.iter().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    SquareMatrix::from_rows(vars, rows)
}

/// Discriminant of `x^n + t_1 x^{n-1} + … + t_n` as a polynomial in
/// `t_1..t_n`: `(-1)^{n(n-1)/2} Res(f, f')`.
pub fn discriminant_poly(n: usize) -> Result<MultiPoly<BigRational>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "discriminant needs degree >= 2, got {n}"
        )));
    }
    let vars = Vars::indexed("t", n);
    let mut f = vec![MultiPoly::one(&vars)];
    for i in 1..=n {
        f.push(MultiPoly::var(&vars, &format!("t_{i}"))?);
    }
    let df: Vec<_> = f[..n]
        .iter()
        .enumerate()
        .map(|(k, c)| c.scale(&BigRational::from_integer(BigInt::from(n - k))))
        .collect();
    let res = sylvester_matrix(&vars, &f, &df)?.determinant();
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    })
}

/// Fibers of `Δ_n : F_q^n → F_q` over zero, the nonzero squares and the
/// non-squares, plus the number of points on `y^2 = Δ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    pub zero: u64,
    pub qr: u64,
    pub qnr: u64,
    pub double_cover: u64,
}

/// Exhaustive census of discriminant values over `F_q^n`. Fails if the zero
/// fiber is not `q^{n-1}`, if the residue and non-residue fibers differ, or
/// if the double cover does not have `q^n` points.
pub fn discriminant_census(n: usize, q: u64, budget: u128) -> Result<Census> {
    let f = PrimeField::new(q)?;
    if q == 2 {
        return Err(Error::EvenCharacteristic(q));
    }
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let disc = discriminant_poly(n)?;
    let p = BigInt::from(q);
    let terms: Vec<(u64, Vec<u32>)> = disc
        .terms()
        .map(|(e, c)| {
            let c = c
                .as_integer()
                .expect("discriminant has integer coefficients");
            let r: u64 = ((c % &p + &p) % &p).try_into().expect("residue fits");
            (r, e.clone())
        })
        .collect();
    let sqrt_counts = f.sqrt_counts();
    let mut chars = vec![0i8; q as usize];
    for (a, c) in chars.iter_mut().enumerate() {
        *c = f.quadratic_character(a as u64)?;
    }

    let mut census = Census {
        zero: 0,
        qr: 0,
        qnr: 0,
        double_cover: 0,
    };
    let mut point = vec![0u64; n];
    loop {
        let mut v = 0u64;
        for (c, e) in &terms {
            let mut t = *c;
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = f.mul(t, *x);
                }
            }
            v = f.add(v, t);
        }
        match chars[v as usize] {
            0 => census.zero += 1,
            1 => census.qr += 1,
            _ => census.qnr += 1,
        }
        census.double_cover += sqrt_counts[v as usize] as u64;

        let mut i = 0;
        while i < n {
            point[i] += 1;
            if point[i] < q {
                break;
            }
            point[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }

    let qn = q.pow(n as u32);
    if census.zero != qn / q {
        return Err(Error::Postcondition(format!(
            "zero fiber has {} points, expected {}",
            census.zero,
            qn / q
        )));
    }
    if census.qr != census.qnr {
        return Err(Error::Postcondition(format!(
            "{} residues vs {} non-residues",
            census.qr, census.qnr
        )));
    }
    if census.double_cover != qn {
        return Err(Error::Postcondition(format!(
            "double cover has {} points, expected {qn}",
            census.double_cover
        )));
    }
    Ok(census)
}
