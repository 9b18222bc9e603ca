//! Exact algebra: multivariate polynomials, truncated power series in `t`,
//! and square matrices whose characteristic data comes from power sums.

mod matrix;
mod parse;
mod poly;
mod series;

pub use matrix::{det_one_minus_ta, SquareMatrix};
pub use parse::identifiers;
pub use poly::{grlex_desc, Exponents, MultiPoly, Vars};
pub use series::TruncatedSeries;
