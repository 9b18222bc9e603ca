//! Graded vector spaces with finitely many nonzero degrees, degree-0 graded
//! endomorphisms, and their Lefschetz polynomials `L_u(φ) = Σ (-u)^i Tr(φ_i)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{MultiPoly, SquareMatrix, Vars};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Name of the Lefschetz variable.
pub const U: &str = "u";

/// Hodge numbers `h^{p,q}` keyed by `(p, q)`.
pub type HodgeDiamond = BTreeMap<(u32, u32), usize>;

/// Dimensions `d_0..d_D` of the graded pieces; trailing zeros are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedSpace {
    dims: Vec<usize>,
}

impl GradedSpace {
    pub fn new(mut dims: Vec<usize>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        GradedSpace { dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `None` for the zero space.
    pub fn top_degree(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// A polynomial in `u` whose coefficients are polynomials over some base
/// variables. Stored as one [`MultiPoly`] over `base ++ [u]`.
#[derive(Clone, PartialEq)]
pub struct LefschetzPoly<C> {
    poly: MultiPoly<C>,
}

impl<C: Scalar> LefschetzPoly<C> {
    /// Wraps a polynomial whose last variable is `u`.
    pub fn from_poly(poly: MultiPoly<C>) -> Result<Self> {
        match poly.vars().names().last() {
            Some(last) if last == U => Ok(LefschetzPoly { poly }),
            _ => Err(Error::UnknownVariable(U.to_string())),
        }
    }

    /// `Σ coeffs[k] u^k` with coefficients over `base`.
    pub fn from_coefficients(base: &Vars, coeffs: &[MultiPoly<C>]) -> Result<Self> {
        let vars = lefschetz_vars(base)?;
        Ok(LefschetzPoly {
            poly: MultiPoly::from_coefficients_in(&vars, U, coeffs)?,
        })
    }

    pub fn zero(base: &Vars) -> Result<Self> {
        Ok(LefschetzPoly {
            poly: MultiPoly::zero(&lefschetz_vars(base)?),
        })
    }

    pub fn one(base: &Vars) -> Result<Self> {
        Ok(LefschetzPoly {
            poly: MultiPoly::one(&lefschetz_vars(base)?),
        })
    }

    /// Parses e.g. `1 - 2*u + u^2` over `base ++ [u]`.
    pub fn parse(s: &str, base: &Vars) -> Result<Self> {
        Ok(LefschetzPoly {
            poly: MultiPoly::parse(s, &lefschetz_vars(base)?)?,
        })
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<C> {
        self.poly
    }

    pub fn base_vars(&self) -> Vars {
        self.poly.vars().without(U)
    }

    pub fn degree(&self) -> Option<u32> {
        if self.poly.is_zero() {
            None
        } else {
            self.poly.degree_in(U)
        }
    }

    /// Coefficients of `u^0, u^1, ...` over the base variables.
    pub fn coefficients(&self) -> Vec<MultiPoly<C>> {
        self.poly.coefficients_in(U).expect("u present").1
    }

    /// Coefficient of `u^k`.
    pub fn coefficient(&self, k: usize) -> MultiPoly<C> {
        self.coefficients()
            .get(k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.base_vars()))
    }

    /// Value at `u = 1`.
    pub fn at_u_one(&self) -> MultiPoly<C> {
        self.coefficients()
            .iter()
            .fold(MultiPoly::zero(&self.base_vars()), |acc, c| &acc + c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(LefschetzPoly {
            poly: self.poly.checked_mul(&other.poly)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(LefschetzPoly {
            poly: self.poly.checked_add(&other.poly)?,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        LefschetzPoly {
            poly: self.poly.pow(k),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        LefschetzPoly {
            poly: self.poly.scale(c),
        }
    }
}

impl<C: Scalar> fmt::Display for LefschetzPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl<C: Scalar> fmt::Debug for LefschetzPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LefschetzPoly({})", self.poly)
    }
}

/// `base ++ [u]`, rejecting bases that already use the reserved names.
pub fn lefschetz_vars(base: &Vars) -> Result<Vars> {
    for reserved in [U, "t"] {
        if base.contains(reserved) {
            return Err(Error::InvalidInput(format!(
                "coefficient variables may not use `{reserved}`"
            )));
        }
    }
    Ok(base.with(&[U]))
}

/// A degree-0 graded endomorphism `φ = ⊕ φ_i`, one square block per degree.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedMap<C: Scalar> {
    vars: Vars,
    blocks: Vec<SquareMatrix<C>>,
}

impl<C: Scalar> GradedMap<C> {
    /// Dimensions are read off the block sizes; trailing empty blocks are dropped.
    pub fn new(vars: &Vars, mut blocks: Vec<SquareMatrix<C>>) -> Result<Self> {
        lefschetz_vars(vars)?;
        for b in &blocks {
            if b.vars() != vars {
                return Err(Error::VariableMismatch {
                    left: b.vars().to_string(),
                    right: vars.to_string(),
                });
            }
        }
        while blocks.last().is_some_and(|b| b.dim() == 0) {
            blocks.pop();
        }
        Ok(GradedMap {
            vars: vars.clone(),
            blocks,
        })
    }

    pub fn identity(space: &GradedSpace, vars: &Vars) -> Result<Self> {
        Self::new(
            vars,
            space
                .dims()
                .iter()
                .map(|&d| SquareMatrix::identity(vars, d))
                .collect(),
        )
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn blocks(&self) -> &[SquareMatrix<C>] {
        &self.blocks
    }

    /// The block acting on degree `i` (an empty matrix beyond the top degree).
    pub fn block(&self, i: usize) -> SquareMatrix<C> {
        self.blocks
            .get(i)
            .cloned()
            .unwrap_or_else(|| SquareMatrix::zero(&self.vars, 0))
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.blocks.iter().map(SquareMatrix::dim).collect())
    }

    /// Blockwise `φ_i^r`.
    pub fn power(&self, r: u32) -> Self {
        GradedMap {
            vars: self.vars.clone(),
            blocks: self.blocks.iter().map(|b| b.pow(r)).collect(),
        }
    }

    /// Blockwise product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.mul(b))
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Self, c: &C) -> Result<Self> {
        let c = MultiPoly::constant(&self.vars, c.clone());
        self.zip_blocks(other, |a, b| a.add(&b.scale(&c)))
    }

    fn zip_blocks(
        &self,
        other: &Self,
        f: impl Fn(&SquareMatrix<C>, &SquareMatrix<C>) -> Result<SquareMatrix<C>>,
    ) -> Result<Self> {
        if self.space() != other.space() {
            return Err(Error::InvalidInput(format!(
                "graded maps act on different spaces {:?} and {:?}",
                self.space().dims(),
                other.space().dims()
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Self::new(&self.vars, blocks)
    }

    /// `L_u(φ) = Σ_i (-u)^i Tr(φ_i)`.
    pub fn lefschetz(&self) -> LefschetzPoly<C> {
        self.lefschetz_at(1)
    }

    /// `L_{u^r}(φ^r) = Σ_i (-u^r)^i Tr(φ_i^r)`.
    pub fn lefschetz_at(&self, r: u32) -> LefschetzPoly<C> {
        assert!(r >= 1, "lefschetz_at needs r >= 1");
        let vars = self.vars.with(&[U]);
        let mut coeffs = vec![MultiPoly::zero(&self.vars); self.blocks.len() * r as usize + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            let tr = b.pow(r).trace();
            coeffs[i * r as usize] = if i % 2 == 1 { -tr } else { tr };
        }
        LefschetzPoly {
            poly: MultiPoly::from_coefficients_in(&vars, U, &coeffs).expect("u appended"),
        }
    }
}

/// Identity map on the space with the given Betti numbers; its Lefschetz
/// polynomial is the Poincaré polynomial `χ_u`.
pub fn betti_to_identity_map<C: Scalar>(betti: &[usize]) -> GradedMap<C> {
    GradedMap::identity(&GradedSpace::new(betti.to_vec()), &Vars::empty()).expect("empty base vars")
}

/// The Hodge operator `⊕ x^p y^q · id` on `H^{p,q}`, graded by `p + q`.
pub fn hodge_to_map<C: Scalar>(hodge: &HodgeDiamond) -> GradedMap<C> {
    let vars = Vars::new(["x", "y"]);
    let top = hodge.keys().map(|&(p, q)| (p + q) as usize).max();
    let mut diags: Vec<Vec<MultiPoly<C>>> = vec![Vec::new(); top.map_or(0, |t| t + 1)];
    for (&(p, q), &h) in hodge {
        let m = MultiPoly::monomial(&vars, vec![p, q], C::one());
        diags[(p + q) as usize].extend(std::iter::repeat_n(m, h));
    }
    GradedMap::new(
        &vars,
        diags
            .into_iter()
            .map(|d| SquareMatrix::diagonal(&vars, d))
            .collect(),
    )
    .expect("x, y are not reserved")
}
