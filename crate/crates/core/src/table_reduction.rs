//! The table reduction morphism from the Barratt–Eccles operad to the
//! surjection operad, and a section of it on basis elements.

use smallvec::SmallVec;

use crate::algebra_core::{Coefficients, FormalSum, Permutation};
use crate::barratt_eccles::{EElement, ESimplex};
use crate::surjections::{Seq, Surjection, XElement};
use crate::Result;

/// Table reductions of a simplex, each with coefficient `+1`; degenerate
/// results are dropped. A degenerate input gives zero.
pub fn tr(w: &ESimplex, coeffs: Coefficients) -> XElement {
    let mut out = FormalSum::zero(coeffs);
    if w.is_degenerate() {
        return out;
    }
    let r = w.arity();
    let mut seq: Seq = SmallVec::new();
    rows(w.perms(), 0, r, 0u64, &mut seq, &mut |s| {
        if let Some(u) = Surjection::from_seq(r, s.clone()) {
            out.add_term(u, 1);
        }
    });
    out
}

/// Fills rows `i..` given the set of excluded values (bit `x` = value `x`).
fn rows(perms: &[Permutation], i: usize, r: usize, excluded: u64, seq: &mut Seq, emit: &mut dyn FnMut(&Seq)) {
    let available: SmallVec<[u8; 8]> =
        perms[i].as_slice().iter().copied().filter(|&x| excluded & (1 << x) == 0).collect();
    let base = seq.len();
    if i + 1 == perms.len() {
        seq.extend(available.iter().copied());
        emit(seq);
        seq.truncate(base);
        return;
    }
    for len in 1..=available.len() {
        seq.extend(available[..len].iter().copied());
        let mut ex = excluded;
        for &x in &available[..len - 1] {
            ex |= 1 << x;
        }
        rows(perms, i + 1, r, ex, seq, emit);
        seq.truncate(base);
    }
}

pub fn tr_linear(x: &EElement) -> XElement {
    x.flat_map(|w| tr(w, x.coefficients()))
}

/// The simplex `w` with `tr(w) = u` built by moving caesuras into place,
/// starting from the permutation of final occurrences.
pub fn section(u: &Surjection) -> ESimplex {
    let mask = u.caesura_mask();
    let caesuras: Vec<usize> = (0..u.len()).filter(|&p| mask[p]).collect();
    let seq = u.as_slice();
    // permutations tracked as sorted position sets
    let mut positions: Vec<usize> = (0..u.len()).filter(|&p| !mask[p]).collect();
    let to_perm = |ps: &[usize]| Permutation::from_raw(ps.iter().map(|&p| seq[p]).collect());
    let mut perms = vec![to_perm(&positions)];
    for &c in caesuras.iter().rev() {
        let slot = positions.iter().position(|&p| seq[p] == seq[c]).expect("value present");
        positions[slot] = c;
        positions.sort_unstable();
        perms.push(to_perm(&positions));
    }
    perms.reverse();
    ESimplex::from_perms_unchecked(perms)
}

/// Checked variant of [`section`] rejecting input that is not a valid basis surjection.
pub fn section_checked(arity: usize, seq: Vec<usize>) -> Result<ESimplex> {
    Surjection::new(arity, seq).map(|u| section(&u))
}
