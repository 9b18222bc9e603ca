//! Small finite fields for exhaustive point counting.

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Z/p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    /// `sqrt_counts()[a]` is the number of `y` with `y² = a`, by squaring
    /// every element.
    pub fn sqrt_counts(&self) -> Vec<u32> {
        let mut out = vec![0; self.p as usize];
        for y in 0..self.p {
            out[self.mul(y, y) as usize] += 1;
        }
        out
    }

    /// Legendre symbol of `a`: 0, +1 for nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: u64) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic(2));
        }
        let a = a % self.p;
        if a == 0 {
            return Ok(0);
        }
        Ok(if (1..self.p).any(|y| self.mul(y, y) == a) {
            1
        } else {
            -1
        })
    }
}

/// Quadratic character over `F_q`, `q` an odd prime.
pub fn quadratic_character(a: u64, q: u64) -> Result<i8> {
    PrimeField::new(q)?.quadratic_character(a)
}

/// `F_{p^r} = F_p[z]/(m(z))`. Elements are coefficient vectors of length `r`
/// (lowest degree first) and are numbered `Σ c_i p^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    base: PrimeField,
    degree: usize,
    /// Monic, `degree + 1` coefficients, lowest first.
    modulus: Vec<u64>,
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(f: &PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = f.add(r[shift + i], f.neg(f.mul(lead, c)));
            }
        }
        r.pop();
    }
    r
}

fn monic_from_index(p: u64, degree: usize, mut k: u64) -> Vec<u64> {
    let mut c = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        c.push(k % p);
        k /= p;
    }
    c.push(1);
    c
}

/// Irreducibility by trial division by every monic polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(f: &PrimeField, m: &[u64]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for k in 0..f.order().pow(d as u32) {
            let divisor = monic_from_index(f.order(), d, k);
            if poly_rem(f, m, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtensionField {
    /// Uses the lexicographically smallest irreducible monic modulus, comparing
    /// `(c_0, c_1, …, c_{r-1})` from the constant term up.
    pub fn new(base: PrimeField, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput(
                "extension degree must be positive".into(),
            ));
        }
        let p = base.order();
        let count = p
            .checked_pow(degree as u32)
            .ok_or_else(|| Error::InvalidInput(format!("F_{p}^{degree} is too large")))?;
        for k in 0..count {
            let mut m = monic_from_index(p, degree, k);
            m[..degree].reverse();
            if is_irreducible(&base, &m) {
                return Ok(ExtensionField {
                    base,
                    degree,
                    modulus: m,
                });
            }
        }
        Err(Error::InvalidInput(format!(
            "no irreducible polynomial of degree {degree} over F_{p}"
        )))
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.base.order().pow(self.degree as u32)
    }

    pub fn element(&self, mut k: u64) -> Vec<u64> {
        let p = self.base.order();
        (0..self.degree)
            .map(|_| {
                let c = k % p;
                k /= p;
                c
            })
            .collect()
    }

    pub fn from_base(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        v[0] = c % self.base.order();
        v
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.degree]
    }

    pub fn one(&self) -> Vec<u64> {
        self.from_base(1)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = &self.base;
        let mut prod = vec![0; 2 * self.degree - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        let mut r = poly_rem(f, &prod, &self.modulus);
        r.resize(self.degree, 0);
        r
    }

    pub fn pow(&self, a: &[u64], k: u32) -> Vec<u64> {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }
}
