//! Brute-force ground truth for the trace formulas.
//!
//! `V^{⊗n}` is materialized one total degree at a time. A permutation `g`
//! acts on pure tensors of basis vectors by
//! `g·(v_1 ⊗ … ⊗ v_n) = (-1)^{Q_g(deg v_1, …, deg v_n)} v_{g⁻¹(1)} ⊗ … ⊗ v_{g⁻¹(n)}`,
//! with `Q_g(x) = Σ_{i<j, g(i)>g(j)} x_i x_j`. Traces of `g∘φ^{⊗n}` and of
//! `φ^{⊗n}∘e_G` are then read off explicit (sparse) matrices.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::groups::{PermGroup, Permutation};
use crate::lefschetz::{GradedMap, GradedSpace, LefschetzPoly};
use crate::scalar::Scalar;

/// Default bound on `dim(V)^n`.
pub const DEFAULT_ORACLE_CAP: usize = 20_000;

/// One tensor factor: a basis vector `index` of `V_degree`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Slot {
    pub degree: usize,
    pub index: usize,
}

/// A pure tensor of homogeneous basis vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TensorBasisIndex(pub Vec<Slot>);

impl TensorBasisIndex {
    pub fn degrees(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.degree).collect()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|s| s.degree).sum()
    }
}

/// `Q_g(d_1, …, d_n) = Σ_{i<j} ε_ij(g) d_i d_j` with `ε_ij(g) = 1` iff `g(i) > g(j)`.
pub fn q_form(g: &Permutation, degrees: &[usize]) -> u64 {
    let n = g.degree();
    assert_eq!(degrees.len(), n, "one degree per tensor slot");
    let mut q = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if g.image0(i) > g.image0(j) {
                q += (degrees[i] * degrees[j]) as u64;
            }
        }
    }
    q
}

/// The image of a basis tensor under `g`, with its Koszul sign.
pub fn act_on(g: &Permutation, b: &TensorBasisIndex) -> (TensorBasisIndex, i8) {
    let n = g.degree();
    assert_eq!(b.0.len(), n, "tensor rank must equal permutation degree");
    let sign = if q_form(g, &b.degrees()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    // slot g(i) receives v_i, so position j holds v_{g⁻¹(j)}
    let mut out = b.0.clone();
    for (i, s) in b.0.iter().enumerate() {
        out[g.image0(i)] = *s;
    }
    (TensorBasisIndex(out), sign)
}

/// The signed basis permutation induced by one group element.
#[derive(Clone, Debug)]
pub struct SignedPermutationAction {
    pub element: Permutation,
    pub map: HashMap<TensorBasisIndex, (TensorBasisIndex, i8)>,
}

impl SignedPermutationAction {
    pub fn apply(&self, b: &TensorBasisIndex) -> (TensorBasisIndex, i8) {
        self.map[b].clone()
    }
}

fn check_cap(space: &GradedSpace, n: usize, cap: usize) -> Result<()> {
    let size = (space.total_dim() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::OracleCapExceeded {
            size: size.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    Ok(())
}

fn all_basis_tensors(space: &GradedSpace, n: usize) -> Vec<TensorBasisIndex> {
    let slots: Vec<Slot> = space
        .dims()
        .iter()
        .enumerate()
        .flat_map(|(degree, &d)| (0..d).map(move |index| Slot { degree, index }))
        .collect();
    let mut out = vec![TensorBasisIndex(Vec::with_capacity(n))];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|b| {
                slots.iter().map(move |s| {
                    let mut v = b.0.clone();
                    v.push(*s);
                    TensorBasisIndex(v)
                })
            })
            .collect();
    }
    out
}

pub fn act(
    g: &Permutation,
    space: &GradedSpace,
    n: usize,
    cap: usize,
) -> Result<SignedPermutationAction> {
    if g.degree() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    check_cap(space, n, cap)?;
    let map = all_basis_tensors(space, n)
        .into_iter()
        .map(|b| {
            let img = act_on(g, &b);
            (b, img)
        })
        .collect();
    Ok(SignedPermutationAction {
        element: g.clone(),
        map,
    })
}

/// Checks `act(σ)∘act(τ) = act(στ)` on every basis tensor, for all `σ, τ ∈ G`.
pub fn representation_check(
    group: &PermGroup,
    space: &GradedSpace,
    n: usize,
    cap: usize,
) -> Result<bool> {
    if group.degree() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: group.degree(),
        });
    }
    check_cap(space, n, cap)?;
    let basis = all_basis_tensors(space, n);
    for s in group.elements() {
        for t in group.elements() {
            let st = s.compose(t)?;
            for b in &basis {
                let (tb, sign_t) = act_on(t, b);
                let (stb, sign_s) = act_on(s, &tb);
                if (stb, sign_s * sign_t) != act_on(&st, b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Column-sparse square matrix used for the per-degree blocks of `V^{⊗n}`.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<C: Scalar> {
    vars: Vars,
    cols: Vec<BTreeMap<usize, MultiPoly<C>>>,
}

impl<C: Scalar> SparseMatrix<C> {
    fn zero(vars: &Vars, dim: usize) -> Self {
        SparseMatrix {
            vars: vars.clone(),
            cols: vec![BTreeMap::new(); dim],
        }
    }

    fn add_entry(&mut self, row: usize, col: usize, v: MultiPoly<C>) {
        let e = self.cols[col]
            .entry(row)
            .or_insert_with(|| MultiPoly::zero(&self.vars));
        *e = &*e + &v;
        if e.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> MultiPoly<C> {
        self.cols[col]
            .get(&row)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars, self.dim());
        for (j, col) in other.cols.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    out.add_entry(*i, j, a * b);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> MultiPoly<C> {
        self.cols
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.get(&j))
            .fold(MultiPoly::zero(&self.vars), |acc, x| &acc + x)
    }

    /// `Tr(P·self)` where `P` sends basis vector `i` to `sign_i · e_{π(i)}`.
    pub fn trace_after_signed_permutation(&self, p: &[(usize, i8)]) -> MultiPoly<C> {
        let mut acc = MultiPoly::zero(&self.vars);
        for (i, &(pi, sign)) in p.iter().enumerate() {
            if let Some(v) = self.cols[pi].get(&i) {
                acc = if sign < 0 { &acc - v } else { &acc + v };
            }
        }
        acc
    }

    /// Whether `P·self = self·P` for the signed permutation `P`.
    pub fn commutes_with_signed_permutation(&self, p: &[(usize, i8)]) -> bool {
        (0..self.dim()).all(|j| {
            // column j of P·self: row i of column j moves to π(i) with sign_i
            let left: BTreeMap<usize, MultiPoly<C>> = self.cols[j]
                .iter()
                .map(|(&i, v)| (p[i].0, if p[i].1 < 0 { -v } else { v.clone() }))
                .collect();
            // column j of self·P is sign_j times column π(j)
            let (pj, sj) = p[j];
            let right = &self.cols[pj];
            left.len() == right.len()
                && left.iter().all(|(i, v)| {
                    right
                        .get(i)
                        .is_some_and(|w| if sj < 0 { *v == -w } else { v == w })
                })
        })
    }
}

/// The graded pieces `(V^{⊗n})_r` of a tensor power, with `φ^{⊗n}` on each.
pub struct TensorPower<'a, C: Scalar> {
    phi: &'a GradedMap<C>,
    n: usize,
    pieces: BTreeMap<usize, Vec<TensorBasisIndex>>,
    position: HashMap<TensorBasisIndex, usize>,
}

impl<'a, C: Scalar> TensorPower<'a, C> {
    pub fn new(phi: &'a GradedMap<C>, n: usize, cap: usize) -> Result<Self> {
        let space = phi.space();
        check_cap(&space, n, cap)?;
        let mut pieces: BTreeMap<usize, Vec<TensorBasisIndex>> = BTreeMap::new();
        for b in all_basis_tensors(&space, n) {
            pieces.entry(b.total_degree()).or_default().push(b);
        }
        let position = pieces
            .values()
            .flat_map(|basis| basis.iter().enumerate().map(|(i, b)| (b.clone(), i)))
            .collect();
        Ok(TensorPower {
            phi,
            n,
            pieces,
            position,
        })
    }

    /// Total degrees `r` with a nonzero piece.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.pieces.keys().copied()
    }

    pub fn piece_dim(&self, r: usize) -> usize {
        self.pieces.get(&r).map_or(0, Vec::len)
    }

    /// The Künneth action of `g` on `(V^{⊗n})_r` as `(image index, sign)` per basis vector.
    pub fn signed_permutation(&self, g: &Permutation, r: usize) -> Vec<(usize, i8)> {
        self.pieces[&r]
            .iter()
            .map(|b| {
                let (img, sign) = act_on(g, b);
                (self.position[&img], sign)
            })
            .collect()
    }

    /// The Künneth action of `g` on `(V^{⊗n})_r`.
    pub fn permutation_matrix(&self, g: &Permutation, r: usize) -> SparseMatrix<C> {
        let basis = &self.pieces[&r];
        let mut m = SparseMatrix::zero(self.phi.vars(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            let (img, sign) = act_on(g, b);
            m.add_entry(
                self.position[&img],
                j,
                MultiPoly::from_i64(self.phi.vars(), sign as i64),
            );
        }
        m
    }

    /// `(φ^{⊗n})_r`.
    pub fn tensor_matrix(&self, r: usize) -> SparseMatrix<C> {
        let vars = self.phi.vars();
        let basis = &self.pieces[&r];
        let blocks: Vec<_> = (0..self.phi.blocks().len())
            .map(|i| self.phi.block(i))
            .collect();
        let mut m = SparseMatrix::zero(vars, basis.len());
        for (j, b) in basis.iter().enumerate() {
            // φ(v_k) = Σ_c φ_{d_k}[c][idx_k] e_c, expanded slot by slot
            let mut partial: Vec<(Vec<Slot>, MultiPoly<C>)> =
                vec![(Vec::with_capacity(self.n), MultiPoly::one(vars))];
            for s in &b.0 {
                let block = &blocks[s.degree];
                let mut next = Vec::new();
                for (slots, coeff) in &partial {
                    for row in 0..block.dim() {
                        let e = block.get(row, s.index);
                        if e.is_zero() {
                            continue;
                        }
                        let mut v = slots.clone();
                        v.push(Slot {
                            degree: s.degree,
                            index: row,
                        });
                        next.push((v, coeff * e));
                    }
                }
                partial = next;
            }
            for (slots, coeff) in partial {
                m.add_entry(self.position[&TensorBasisIndex(slots)], j, coeff);
            }
        }
        m
    }

    /// `e_G = (1/|G|) Σ_g g` on `(V^{⊗n})_r`.
    pub fn averaging_matrix(&self, group: &PermGroup, r: usize) -> SparseMatrix<C> {
        let vars = self.phi.vars();
        let mut m = SparseMatrix::zero(vars, self.piece_dim(r));
        for g in group.elements() {
            let p = self.permutation_matrix(g, r);
            for (j, col) in p.cols.into_iter().enumerate() {
                for (i, v) in col {
                    m.add_entry(i, j, v);
                }
            }
        }
        let inv = C::ratio(1, group.order() as i64);
        for col in &mut m.cols {
            for v in col.values_mut() {
                *v = v.scale(&inv);
            }
        }
        m
    }

    fn assemble(
        &self,
        mut per_degree: impl FnMut(usize) -> Result<MultiPoly<C>>,
    ) -> Result<LefschetzPoly<C>> {
        let base = self.phi.vars();
        let top = self.pieces.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![MultiPoly::zero(base); top + 1];
        for r in self.degrees().collect::<Vec<_>>() {
            let tr = per_degree(r)?;
            coeffs[r] = if r % 2 == 1 { -tr } else { tr };
        }
        LefschetzPoly::from_coefficients(base, &coeffs)
    }
}

/// `L_u(g·φ^{⊗n})` from explicit per-degree matrices. Also confirms that `g`
/// commutes with `φ^{⊗n}` on every piece.
pub fn oracle_trace<C: Scalar>(
    g: &Permutation,
    phi: &GradedMap<C>,
    n: usize,
    cap: usize,
) -> Result<LefschetzPoly<C>> {
    Ok(oracle_traces(std::slice::from_ref(g), phi, n, cap)?.remove(0))
}

/// [`oracle_trace`] for several elements, sharing the tensor-power matrices.
pub fn oracle_traces<C: Scalar>(
    elements: &[Permutation],
    phi: &GradedMap<C>,
    n: usize,
    cap: usize,
) -> Result<Vec<LefschetzPoly<C>>> {
    if let Some(g) = elements.iter().find(|g| g.degree() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    let tp = TensorPower::new(phi, n, cap)?;
    let tensors: BTreeMap<usize, SparseMatrix<C>> =
        tp.degrees().map(|r| (r, tp.tensor_matrix(r))).collect();
    elements
        .iter()
        .map(|g| {
            tp.assemble(|r| {
                let t = &tensors[&r];
                let p = tp.signed_permutation(g, r);
                if !t.commutes_with_signed_permutation(&p) {
                    return Err(Error::Postcondition(format!(
                        "{g} does not commute with the tensor power in degree {r}"
                    )));
                }
                Ok(t.trace_after_signed_permutation(&p))
            })
        })
        .collect()
}

/// `L_u(φ^{⊗n}|_{(V^{⊗n})^G})`, computed as `Tr(φ^{⊗n} ∘ e_G)` on the full space.
pub fn invariant_lefschetz_oracle<C: Scalar>(
    group: &PermGroup,
    phi: &GradedMap<C>,
    n: usize,
    cap: usize,
) -> Result<LefschetzPoly<C>> {
    if group.degree() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: group.degree(),
        });
    }
    let tp = TensorPower::new(phi, n, cap)?;
    tp.assemble(|r| {
        Ok(tp
            .tensor_matrix(r)
            .mul(&tp.averaging_matrix(group, r))
            .trace())
    })
}
