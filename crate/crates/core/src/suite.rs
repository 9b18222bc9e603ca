//! Seeded random instances and the formula-vs-oracle equivalence suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{MultiPoly, SquareMatrix, Vars};
use crate::error::Result;
use crate::formulas::{conjugacy_trace_formula, invariant_lefschetz_formula};
use crate::groups::{GroupKind, PermGroup, Permutation, DEFAULT_GROUP_CAP};
use crate::kunneth::{invariant_lefschetz_oracle, oracle_trace};
use crate::lefschetz::{GradedMap, GradedSpace};

/// Shape of the random instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Tensor powers `n` run over `min_n..=max_n`.
    pub min_n: usize,
    pub max_n: usize,
    /// Upper bound on `dim V_i`, one entry per degree; its length fixes the top degree.
    pub degree_bounds: Vec<usize>,
    pub max_total_dim: usize,
    pub maps_per_group: usize,
    pub random_groups: usize,
    /// Bound on numerators and denominators of matrix entries.
    pub max_entry: i64,
    /// Also compare every `g ∈ S_n` element by element.
    pub per_element: bool,
    pub oracle_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            min_n: 1,
            max_n: 3,
            degree_bounds: vec![1, 1, 1],
            max_total_dim: 3,
            maps_per_group: 2,
            random_groups: 2,
            max_entry: 9,
            per_element: true,
            oracle_cap: crate::kunneth::DEFAULT_ORACLE_CAP,
        }
    }
}

/// Outcome for one (group, map) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub label: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub instances: Vec<InstanceOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|i| i.passed).count()
    }

    pub fn total(&self) -> usize {
        self.instances.len()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }
}

pub fn random_rational(rng: &mut impl Rng, bound: i64) -> BigRational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound.max(1));
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random dimensions within the bounds, total in `1..=max_total_dim`.
pub fn random_space(
    rng: &mut impl Rng,
    degree_bounds: &[usize],
    max_total_dim: usize,
) -> GradedSpace {
    assert!(
        max_total_dim >= 1 && degree_bounds.iter().any(|&b| b > 0),
        "nonempty shape"
    );
    loop {
        let dims: Vec<usize> = degree_bounds
            .iter()
            .map(|&b| rng.gen_range(0..=b))
            .collect();
        let total: usize = dims.iter().sum();
        if (1..=max_total_dim).contains(&total) {
            return GradedSpace::new(dims);
        }
    }
}

/// Random rational graded map on a random space.
pub fn random_graded_map(
    rng: &mut impl Rng,
    degree_bounds: &[usize],
    max_total_dim: usize,
    max_entry: i64,
) -> GradedMap<BigRational> {
    let space = random_space(rng, degree_bounds, max_total_dim);
    let vars = Vars::empty();
    let blocks = space
        .dims()
        .iter()
        .map(|&d| {
            let entries = (0..d * d)
                .map(|_| MultiPoly::constant(&vars, random_rational(rng, max_entry)))
                .collect();
            SquareMatrix::new(&vars, d, entries).expect("d*d entries")
        })
        .collect();
    GradedMap::new(&vars, blocks).expect("empty vars")
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("shuffle is a bijection")
}

/// Subgroup generated by one or two random permutations.
pub fn random_subgroup(rng: &mut impl Rng, n: usize) -> PermGroup {
    let k = rng.gen_range(1..=2);
    let gens: Vec<_> = (0..k).map(|_| random_permutation(rng, n)).collect();
    PermGroup::closure(&gens, n, DEFAULT_GROUP_CAP).expect("subgroups of small S_n fit the cap")
}

/// The named and random groups exercised at degree `n`.
pub fn suite_groups(
    rng: &mut impl Rng,
    n: usize,
    random_groups: usize,
) -> Vec<(String, PermGroup)> {
    let mut kinds = vec![
        GroupKind::Symmetric,
        GroupKind::Alternating,
        GroupKind::Cyclic,
    ];
    if n >= 3 {
        kinds.push(GroupKind::Dihedral);
    }
    kinds.push(GroupKind::Trivial);
    let mut out: Vec<_> = kinds
        .into_iter()
        .map(|k| {
            (
                format!("{k}({n})"),
                PermGroup::named(k, n, DEFAULT_GROUP_CAP).expect("small named group"),
            )
        })
        .collect();
    for i in 0..random_groups {
        let g = random_subgroup(rng, n);
        out.push((format!("random#{i}({n}, order {})", g.order()), g));
    }
    out
}

/// Runs the equivalence suite: for each group and random map, the cycle-index
/// formula must equal the averaging-projector oracle, and (for `S_n`) every
/// element's trace formula must equal its explicit trace.
pub fn run_equivalence_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SuiteReport::default();
    for n in config.min_n..=config.max_n {
        let sym = PermGroup::named(GroupKind::Symmetric, n, DEFAULT_GROUP_CAP)?;
        for (label, group) in suite_groups(&mut rng, n, config.random_groups) {
            for m in 0..config.maps_per_group {
                let phi = random_graded_map(
                    &mut rng,
                    &config.degree_bounds,
                    config.max_total_dim,
                    config.max_entry,
                );
                let formula = invariant_lefschetz_formula(&group, &phi, n)?;
                let oracle = invariant_lefschetz_oracle(&group, &phi, n, config.oracle_cap)?;
                let mut passed = formula == oracle;
                if config.per_element && label.starts_with("symmetric") {
                    for g in sym.elements() {
                        passed &= conjugacy_trace_formula(g, &phi)
                            == oracle_trace(g, &phi, n, config.oracle_cap)?;
                    }
                }
                report.instances.push(InstanceOutcome {
                    label: format!("{label} map#{m} dims {:?}", phi.space().dims()),
                    passed,
                });
            }
        }
    }
    Ok(report)
}
