use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::{Error, Result};

/// Degrees attached to a list of graded symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDegrees(pub Vec<i64>);

/// Sign of reordering graded symbols: the new sequence has at position `i`
/// the symbol originally at position `reordering(i)`. Each pair of symbols
/// whose relative order flips contributes `(−1)^{d·e}`.
pub fn koszul_sign(degrees: &GradedDegrees, reordering: &Permutation) -> Result<i64> {
    if degrees.0.len() != reordering.arity() {
        return Err(Error::ArityMismatch { expected: reordering.arity(), got: degrees.0.len() });
    }
    let order: Vec<usize> = reordering.as_slice().iter().map(|&v| v as usize - 1).collect();
    Ok(koszul_sign_of_order(&degrees.0, &order))
}

/// Zero-based variant of [`koszul_sign`] without validation.
pub fn koszul_sign_of_order(degrees: &[i64], order: &[usize]) -> i64 {
    let mut odd = false;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] && degrees[order[a]] & 1 == 1 && degrees[order[b]] & 1 == 1 {
                odd = !odd;
            }
        }
    }
    if odd {
        -1
    } else {
        1
    }
}
