//! Permutations of `{1..n}`, explicitly enumerated subgroups of `S_n`, and
//! their cycle indices.
//!
//! Permutations use 1-based semantics at the API surface (`image(i)` is
//! `g(i)` for `i` in `1..=n`) and store 0-based image arrays internally.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{MultiPoly, TruncatedSeries, Vars};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default bound on enumerated group sizes.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From one-line notation: `images[i - 1] = g(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..{n}"
                )));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation { images: out })
    }

    /// From disjoint-or-not cycles (1-based), composed left to right as written
    /// in standard notation, i.e. the rightmost cycle acts first.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut g = Permutation::identity(n);
        for c in cycles.iter().rev() {
            let mut seen = HashSet::new();
            for &x in c {
                if x == 0 || x > n || !seen.insert(x) {
                    return Err(Error::InvalidPermutation(format!(
                        "bad cycle {c:?} for degree {n}"
                    )));
                }
            }
            let mut h = Permutation::identity(n);
            for (k, &x) in c.iter().enumerate() {
                h.images[x - 1] = c[(k + 1) % c.len()] - 1;
            }
            g = h.compose(&g)?;
        }
        Ok(g)
    }

    /// Accepts one-line `[2,1,3]` or cycle notation `(1 2)(3 4)`; `()` and
    /// `e` denote the identity.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s == "()" || s.is_empty() {
            return Ok(Permutation::identity(n));
        }
        if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let images = body
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidPermutation(format!("{s}: {e}")))?;
            if images.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: images.len(),
                });
            }
            return Self::from_images(&images);
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::InvalidPermutation(format!("cannot parse `{s}`")))?;
            let cycle = inner
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(str::parse::<usize>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidPermutation(format!("{s}: {e}")))?;
            cycles.push(cycle);
            rest = inner.1.trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `g(i)` for `i` in `1..=n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self ∘ h)(i) = self(h(i))`.
    pub fn compose(&self, h: &Permutation) -> Result<Permutation> {
        if self.degree() != h.degree() {
            return Err(Error::SizeMismatch {
                expected: self.degree(),
                found: h.degree(),
            });
        }
        Ok(Permutation {
            images: h.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `w ∘ self ∘ w⁻¹`.
    pub fn conjugate_by(&self, w: &Permutation) -> Result<Permutation> {
        w.compose(self)?.compose(&w.inverse())
    }

    /// All cycles including fixed points, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut m = vec![0; self.degree()];
        for c in self.cycles() {
            m[c.len() - 1] += 1;
        }
        CycleType { m }
    }

    pub fn is_even(&self) -> bool {
        // a k-cycle is a product of k-1 transpositions
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `m[i - 1]` is the number of `i`-cycles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    m: Vec<usize>,
}

impl CycleType {
    pub fn counts(&self) -> &[usize] {
        &self.m
    }

    /// Number of cycles of length `len` (1-based).
    pub fn count(&self, len: usize) -> usize {
        self.m.get(len - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.m.iter().enumerate().map(|(i, &k)| (i + 1) * k).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Symmetric,
    Alternating,
    Cyclic,
    Dihedral,
    Trivial,
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "symmetric" => GroupKind::Symmetric,
            "alternating" => GroupKind::Alternating,
            "cyclic" => GroupKind::Cyclic,
            "dihedral" => GroupKind::Dihedral,
            "trivial" => GroupKind::Trivial,
            other => return Err(Error::UnsupportedGroup(format!("unknown kind `{other}`"))),
        })
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Symmetric => "symmetric",
            GroupKind::Alternating => "alternating",
            GroupKind::Cyclic => "cyclic",
            GroupKind::Dihedral => "dihedral",
            GroupKind::Trivial => "trivial",
        })
    }
}

/// A subgroup of `S_n` stored as its full, sorted element list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Breadth-first closure of `generators` under composition.
    pub fn closure(generators: &[Permutation], n: usize, size_cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g)?;
                if seen.insert(y.clone()) {
                    if seen.len() > size_cap {
                        return Err(Error::GroupTooLarge { cap: size_cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_closed_set(n, seen.into_iter().collect()))
    }

    fn from_closed_set(n: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        PermGroup { n, elements }
    }

    pub fn named(kind: GroupKind, n: usize, size_cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedGroup(format!("{kind} group of degree 0")));
        }
        match kind {
            GroupKind::Trivial => Ok(PermGroup {
                n,
                elements: vec![Permutation::identity(n)],
            }),
            GroupKind::Symmetric | GroupKind::Alternating => {
                let order: u128 = (1..=n as u128).product();
                let order = if kind == GroupKind::Alternating && n > 1 {
                    order / 2
                } else {
                    order
                };
                if order > size_cap as u128 {
                    return Err(Error::GroupTooLarge { cap: size_cap });
                }
                let mut all = all_permutations(n);
                if kind == GroupKind::Alternating {
                    all.retain(Permutation::is_even);
                }
                Ok(Self::from_closed_set(n, all))
            }
            GroupKind::Cyclic => {
                let rot =
                    Permutation::from_images(&(1..=n).map(|i| i % n + 1).collect::<Vec<_>>())?;
                Self::closure(&[rot], n, size_cap)
            }
            GroupKind::Dihedral => {
                if n < 3 {
                    return Err(Error::UnsupportedGroup(format!(
                        "dihedral group needs n >= 3, got {n}"
                    )));
                }
                let rot =
                    Permutation::from_images(&(1..=n).map(|i| i % n + 1).collect::<Vec<_>>())?;
                let refl =
                    Permutation::from_images(&(1..=n).map(|i| n + 1 - i).collect::<Vec<_>>())?;
                Self::closure(&[rot, refl], n, size_cap)
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Checks closure under composition and inverses.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inverse())
                && self
                    .elements
                    .iter()
                    .all(|b| a.compose(b).map(|c| self.contains(&c)).unwrap_or(false))
        })
    }

    /// Multiplicity of each cycle type among the elements.
    pub fn cycle_type_census(&self) -> BTreeMap<CycleType, usize> {
        let mut out = BTreeMap::new();
        for g in &self.elements {
            *out.entry(g.cycle_type()).or_insert(0) += 1;
        }
        out
    }

    /// `Z_G = (1/|G|) Σ_g Π x_i^{m_i(g)}` over `x_1..x_n`.
    pub fn cycle_index<C: Scalar>(&self) -> MultiPoly<C> {
        let vars = Vars::indexed("x", self.n);
        let order = self.order() as i64;
        MultiPoly::from_terms(
            &vars,
            self.cycle_type_census().into_iter().map(|(ct, k)| {
                let exps = ct.counts().iter().map(|&m| m as u32).collect();
                (exps, C::ratio(k as i64, order))
            }),
        )
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: cur.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// `Σ_n Z_{S_n} t^n = exp(Σ_r x_r t^r / r)`, coefficients over `x_1..x_N`.
pub fn cycle_index_series_symmetric<C: Scalar>(order: usize) -> TruncatedSeries<C> {
    let vars = Vars::indexed("x", order);
    let mut arg = Vec::with_capacity(order + 1);
    arg.push(MultiPoly::zero(&vars));
    for r in 1..=order {
        let x = MultiPoly::var(&vars, &format!("x_{r}")).expect("indexed var");
        arg.push(x.scale(&C::ratio(1, r as i64)));
    }
    TruncatedSeries::new(&vars, order, arg)
        .and_then(|s| s.exp())
        .expect("zero constant term")
}

/// `Z_{S_n}` over `x_1..x_n`, read off the exponential generating series.
pub fn symmetric_cycle_index<C: Scalar>(n: usize) -> MultiPoly<C> {
    let s = cycle_index_series_symmetric::<C>(n);
    s.coeff(n).clone()
}

/// `x_r ↦ (-1)^{r+1} x_r` on `x_1..x_n`.
fn alternate_signs<C: Scalar>(p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    let vars = p.vars().clone();
    let mut asg = HashMap::new();
    for (r, name) in vars.names().iter().enumerate() {
        if (r + 1) % 2 == 0 {
            asg.insert(name.clone(), -MultiPoly::var(&vars, name)?);
        }
    }
    p.substitute(&asg, &vars)
}

/// `Z_{A_n} = Z_{S_n}(x_1, x_2, x_3, ...) + Z_{S_n}(x_1, -x_2, x_3, ...)`,
/// without enumerating `A_n`.
pub fn alternating_cycle_index<C: Scalar>(n: usize) -> Result<MultiPoly<C>> {
    if n < 2 {
        return Err(Error::UnsupportedGroup(format!(
            "the signed cycle-index identity needs n >= 2, got {n}"
        )));
    }
    let zs = symmetric_cycle_index::<C>(n);
    Ok(&zs + &alternate_signs(&zs)?)
}

/// Checks `Z_{A•}(t) = Z_{S•}(t) + 1/Z_{S•}(-t) - 1 - x_1 t` coefficientwise
/// for `n ≤ order` (with `Z_{A_0} = 1`, `Z_{A_1} = x_1`).
pub fn alternating_series_identity_check<C: Scalar>(order: usize) -> Result<bool> {
    let s = cycle_index_series_symmetric::<C>(order);
    let vars = s.vars().clone();
    let rhs = s.add(&s.negate_t().inverse()?)?;
    for n in 0..=order {
        let mut coeff = rhs.coeff(n).clone();
        let expected = match n {
            0 => {
                coeff = &coeff - &MultiPoly::one(&vars);
                MultiPoly::one(&vars)
            }
            1 => {
                let x1 = MultiPoly::var(&vars, "x_1")?;
                coeff = &coeff - &x1;
                x1
            }
            _ => alternating_cycle_index::<C>(n)?.embed(&vars)?,
        };
        if coeff != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
