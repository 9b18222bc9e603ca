//! Counting applications: Pólya colorings, point counts of quotients over
//! finite fields, zeta series, and the discriminant census.

mod discriminant;
mod field;
mod points;
mod polya;

pub use discriminant::{discriminant_census, discriminant_poly, sylvester_matrix, Census};
pub use field::{is_irreducible, is_prime, quadratic_character, ExtensionField, PrimeField};
pub use points::{
    alt_zeta_from_counts, brute_force_affine_counts, quotient_point_count, quotient_point_value,
    zeta_from_counts, CountVector, DEFAULT_ENUM_BUDGET,
};
pub use polya::{cycle_index_value, polya_count, polya_weight_poly};
