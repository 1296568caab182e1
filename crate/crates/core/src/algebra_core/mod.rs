//! Coefficients, formal sums, permutations and Koszul signs.

mod coeffs;
mod formal_sum;
mod koszul;
mod perm;

pub use coeffs::Coefficients;
pub use formal_sum::FormalSum;
pub use koszul::{koszul_sign, koszul_sign_of_order, GradedDegrees};
pub use perm::{block_permutation, perm_compose_full, perm_compose_partial, Permutation};
