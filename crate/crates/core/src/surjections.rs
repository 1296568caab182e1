//! The surjection operad: nondegenerate surjections with their table
//! arrangements, caesura-signed differential and substitution composition.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra_core::{FormalSum, Permutation};
use crate::barratt_eccles::CellDescriptor;
use crate::{Error, Result};

pub(crate) type Seq = SmallVec<[u8; 16]>;

/// A nondegenerate surjection `(u(1),…,u(r+d))` onto `{1,…,r}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSurjection", into = "RawSurjection")]
pub struct Surjection {
    arity: u8,
    seq: Seq,
}

#[derive(Serialize, Deserialize)]
struct RawSurjection {
    arity: usize,
    seq: Vec<usize>,
}

impl TryFrom<RawSurjection> for Surjection {
    type Error = Error;
    fn try_from(raw: RawSurjection) -> Result<Self> {
        Surjection::new(raw.arity, raw.seq)
    }
}

impl From<Surjection> for RawSurjection {
    fn from(u: Surjection) -> RawSurjection {
        RawSurjection { arity: u.arity(), seq: u.to_vec() }
    }
}

/// Element of `X(r)_d`.
pub type XElement = FormalSum<Surjection>;

/// Rows of a surjection, each ending at a caesura except the last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableArrangement {
    pub rows: Vec<Vec<usize>>,
    pub caesuras: Vec<usize>,
}

impl Surjection {
    pub fn new(arity: usize, seq: Vec<usize>) -> Result<Self> {
        if arity == 0 || arity > u8::MAX as usize || seq.iter().any(|&x| x == 0 || x > arity) {
            return Err(Error::InvalidSurjection(seq));
        }
        let raw: Seq = seq.iter().map(|&x| x as u8).collect();
        Surjection::from_seq(arity, raw).ok_or(Error::InvalidSurjection(seq))
    }

    /// `None` when the sequence is degenerate or misses a value.
    pub(crate) fn from_seq(arity: usize, seq: Seq) -> Option<Self> {
        if seq.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let mut seen = [false; 256];
        for &x in &seq {
            seen[x as usize] = true;
        }
        if (1..=arity).any(|v| !seen[v]) {
            return None;
        }
        Some(Surjection { arity: arity as u8, seq })
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        Surjection { arity: p.arity() as u8, seq: p.as_slice().iter().copied().collect() }
    }

    /// `θ_d = (1,2,1,2,…)` of length `d+2`.
    pub fn theta(d: usize) -> Self {
        Surjection { arity: 2, seq: (0..d + 2).map(|i| (i % 2 + 1) as u8).collect() }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn degree(&self) -> usize {
        self.seq.len() - self.arity()
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.seq
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.seq.iter().map(|&x| x as usize).collect()
    }

    /// `u(i)` for `1 ≤ i ≤ r+d`.
    pub fn at(&self, i: usize) -> usize {
        self.seq[i - 1] as usize
    }

    /// Caesura flags by position: entries that are not the final occurrence
    /// of their value.
    pub fn caesura_mask(&self) -> SmallVec<[bool; 16]> {
        let mut seen = [false; 256];
        let mut mask: SmallVec<[bool; 16]> = SmallVec::from_elem(false, self.seq.len());
        for (p, &x) in self.seq.iter().enumerate().rev() {
            mask[p] = seen[x as usize];
            seen[x as usize] = true;
        }
        mask
    }

    /// Row index of every position in the table arrangement.
    pub fn line_indices(&self) -> SmallVec<[usize; 16]> {
        let mut line = 0;
        self.caesura_mask()
            .iter()
            .map(|&c| {
                let l = line;
                if c {
                    line += 1;
                }
                l
            })
            .collect()
    }

    pub fn table_arrangement(&self) -> TableArrangement {
        let mask = self.caesura_mask();
        let mut rows = vec![Vec::new()];
        let mut caesuras = Vec::new();
        for (p, &x) in self.seq.iter().enumerate() {
            rows.last_mut().unwrap().push(x as usize);
            if mask[p] {
                caesuras.push(x as usize);
                rows.push(Vec::new());
            }
        }
        TableArrangement { rows, caesuras }
    }

    /// The subsequence of entries equal to `i` or `j`.
    pub fn pair_projection(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        if i >= j || j > self.arity() || i == 0 {
            return Err(Error::Invalid(format!("pair ({i},{j}) out of range for arity {}", self.arity())));
        }
        Ok(self.seq.iter().map(|&x| x as usize).filter(|&x| x == i || x == j).collect())
    }

    fn pair_variations(&self) -> BTreeMap<(usize, usize), usize> {
        let r = self.arity();
        let mut out = BTreeMap::new();
        for i in 1..=r {
            for j in i + 1..=r {
                let proj = self.seq.iter().filter(|&&x| x as usize == i || x as usize == j);
                let mut prev = None;
                let mut n = 0;
                for x in proj {
                    if prev.is_some_and(|p| p != x) {
                        n += 1;
                    }
                    prev = Some(x);
                }
                out.insert((i, j), n);
            }
        }
        out
    }

    /// The permutation of final occurrences in reading order.
    pub fn final_permutation(&self) -> Permutation {
        let mask = self.caesura_mask();
        let vals = self.seq.iter().zip(mask.iter()).filter(|(_, &c)| !c).map(|(&x, _)| x);
        Permutation::from_raw(vals.collect())
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.seq.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Signed nondegenerate faces of a surjection.
pub fn x_boundary(u: &Surjection) -> Vec<(Surjection, i64)> {
    let mask = u.caesura_mask();
    let mut sign_at: SmallVec<[i64; 16]> = SmallVec::from_elem(0, u.len());
    let mut last_sign = [0i64; 256];
    let mut caesura_count = 0;
    for (p, &x) in u.seq.iter().enumerate() {
        if mask[p] {
            sign_at[p] = if caesura_count % 2 == 0 { 1 } else { -1 };
            caesura_count += 1;
            last_sign[x as usize] = sign_at[p];
        } else {
            // zero when the value occurs only here
            sign_at[p] = -last_sign[x as usize];
        }
    }
    let mut out = Vec::new();
    for p in 0..u.len() {
        if sign_at[p] == 0 {
            continue;
        }
        let mut seq = u.seq.clone();
        seq.remove(p);
        if let Some(f) = Surjection::from_seq(u.arity(), seq) {
            out.push((f, sign_at[p]));
        }
    }
    out
}

pub fn x_differential(x: &XElement) -> XElement {
    let mut out = FormalSum::zero(x.coefficients());
    for (u, &c) in x {
        for (f, s) in x_boundary(u) {
            out.add_term(f, c * s);
        }
    }
    out
}

/// One term of `u ∘_k v` before normalization: the substituted sequence, the
/// sign, and the split points `j_0 ≤ … ≤ j_n` (zero-based).
#[derive(Clone, Debug)]
pub struct CompositeTerm {
    pub seq: Vec<usize>,
    pub sign: i64,
    pub splits: Vec<usize>,
}

/// All splittings of `v` across the occurrences of `k` in `u`.
pub fn x_composite_terms(u: &Surjection, k: usize, v: &Surjection) -> Result<Vec<CompositeTerm>> {
    if k == 0 || k > u.arity() {
        return Err(Error::SlotOutOfRange { k, arity: u.arity() });
    }
    let occ: Vec<usize> = (0..u.len()).filter(|&p| u.seq[p] as usize == k).collect();
    let n = occ.len();
    let lu = u.line_indices();
    let lv = v.line_indices();
    // degrees of the u-components U_0,…,U_n cut at the occurrences of k
    let mut cuts = vec![0];
    cuts.extend(occ.iter().copied());
    cuts.push(u.len() - 1);
    let udeg: Vec<usize> = cuts.windows(2).map(|w| lu[w[1]] - lu[w[0]]).collect();
    let mut suffix = vec![0usize; n + 2];
    for m in (0..=n).rev() {
        suffix[m] = suffix[m + 1] + udeg[m];
    }
    let (s, kk) = (v.arity(), k as u8);
    let mut out = Vec::new();
    let mut splits = vec![0usize; n + 1];
    splits[n] = v.len() - 1;
    loop {
        let mut exp = 0;
        for m in 1..=n {
            let vdeg = lv[splits[m]] - lv[splits[m - 1]];
            exp += vdeg * suffix[m];
        }
        let mut seq = Vec::with_capacity(u.len() + v.len());
        let mut m = 0;
        for &x in u.seq.iter() {
            if x == kk {
                m += 1;
                seq.extend(v.seq[splits[m - 1]..=splits[m]].iter().map(|&y| (y + kk - 1) as usize));
            } else if x > kk {
                seq.push((x + s as u8 - 1) as usize);
            } else {
                seq.push(x as usize);
            }
        }
        out.push(CompositeTerm { seq, sign: if exp % 2 == 0 { 1 } else { -1 }, splits: splits.clone() });
        // next monotone split vector with splits[0] = 0, splits[n] = len-1
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            if splits[i] < splits[n] {
                splits[i] += 1;
                for t in i + 1..n {
                    splits[t] = splits[i];
                }
                break;
            }
        }
    }
}

fn compose_surjections(u: &Surjection, k: usize, v: &Surjection, coeff: i64, out: &mut XElement) -> Result<()> {
    let arity = u.arity() + v.arity() - 1;
    for t in x_composite_terms(u, k, v)? {
        let seq: Seq = t.seq.iter().map(|&x| x as u8).collect();
        if let Some(w) = Surjection::from_seq(arity, seq) {
            out.add_term(w, coeff * t.sign);
        }
    }
    Ok(())
}

pub fn x_compose_partial(u: &XElement, k: usize, v: &XElement) -> Result<XElement> {
    if u.coefficients() != v.coefficients() {
        return Err(Error::CharacteristicMismatch(
            u.coefficients().characteristic(),
            v.coefficients().characteristic(),
        ));
    }
    let mut out = FormalSum::zero(u.coefficients());
    for (a, &ca) in u {
        for (b, &cb) in v {
            compose_surjections(a, k, b, u.coefficients().mul(ca, cb), &mut out)?;
        }
    }
    Ok(out)
}

/// Recovers `(u, v)` from a term of `u ∘_k v` with `v` of arity `s`.
pub fn x_decompose(w: &Surjection, k: usize, s: usize) -> Option<(Surjection, Surjection)> {
    let (lo, hi) = (k, k + s - 1);
    let mut useq: Seq = SmallVec::new();
    let mut vseq: Seq = SmallVec::new();
    for &x in &w.seq {
        let x = x as usize;
        let ux = if x < lo {
            x
        } else if x <= hi {
            k
        } else {
            x - (s - 1)
        };
        if !(ux == k && useq.last() == Some(&(k as u8))) {
            useq.push(ux as u8);
        }
        if (lo..=hi).contains(&x) {
            let vx = (x - (k - 1)) as u8;
            if vseq.last() != Some(&vx) {
                vseq.push(vx);
            }
        }
    }
    Some((Surjection::from_seq(w.arity() - s + 1, useq)?, Surjection::from_seq(s, vseq)?))
}

pub fn x_sigma_action(sigma: &Permutation, x: &XElement) -> Result<XElement> {
    let mut out = FormalSum::zero(x.coefficients());
    for (u, &c) in x {
        if u.arity() != sigma.arity() {
            return Err(Error::ArityMismatch { expected: sigma.arity(), got: u.arity() });
        }
        let seq = u.seq.iter().map(|&v| sigma.apply(v as usize) as u8).collect();
        out.add_term(Surjection { arity: u.arity, seq }, c);
    }
    Ok(out)
}

/// Smallest `n` with every pair projection having at most `n` variations.
pub fn x_complexity(u: &Surjection) -> usize {
    u.pair_variations().values().copied().max().unwrap_or(1).max(1)
}

/// Membership in the cell `F_(μ,σ) X`.
pub fn x_cell_member(u: &Surjection, cell: &CellDescriptor) -> Result<bool> {
    if u.arity() != cell.arity() {
        return Err(Error::ArityMismatch { expected: cell.arity(), got: u.arity() });
    }
    let last = u.final_permutation();
    for ((i, j), var) in u.pair_variations() {
        let mu = cell.mu_of(i, j)?;
        let ok = var <= mu || (var == mu + 1 && last.orders_pair(i, j) == cell.sigma.orders_pair(i, j));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Calls `f` on every basis surjection of `X(r)_d`, in lexicographic order.
pub fn for_each_x_basis(r: usize, d: usize, mut f: impl FnMut(&Surjection)) {
    fn rec(r: usize, len: usize, cur: &mut Seq, f: &mut dyn FnMut(&Surjection)) {
        if cur.len() == len {
            if let Some(u) = Surjection::from_seq(r, cur.clone()) {
                f(&u);
            }
            return;
        }
        for x in 1..=r as u8 {
            if cur.last() != Some(&x) {
                cur.push(x);
                rec(r, len, cur, f);
                cur.pop();
            }
        }
    }
    rec(r, r + d, &mut SmallVec::new(), &mut f);
}

pub fn x_basis(r: usize, d: usize) -> Vec<Surjection> {
    let mut out = Vec::new();
    for_each_x_basis(r, d, |u| out.push(u.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Coefficients;

    fn u(r: usize, seq: &[usize]) -> Surjection {
        Surjection::new(r, seq.to_vec()).unwrap()
    }

    fn el(terms: &[(Surjection, i64)]) -> XElement {
        FormalSum::from_terms(Coefficients::INTEGERS, terms.iter().cloned())
    }

    fn one(x: Surjection) -> XElement {
        el(&[(x, 1)])
    }

    #[test]
    fn validation() {
        assert!(Surjection::new(2, vec![1, 1, 2]).is_err());
        assert!(Surjection::new(3, vec![1, 2, 1]).is_err());
        assert!(Surjection::new(2, vec![1, 3]).is_err());
    }

    #[test]
    fn table_arrangements() {
        let t = u(4, &[1, 3, 2, 1, 4, 2, 1]).table_arrangement();
        assert_eq!(t.rows, vec![vec![1], vec![3, 2], vec![1], vec![4, 2, 1]]);
        assert_eq!(t.caesuras, vec![1, 2, 1]);
        let t = u(3, &[2, 3, 1]).table_arrangement();
        assert_eq!(t.rows, vec![vec![2, 3, 1]]);
        assert!(t.caesuras.is_empty());
        assert_eq!(u(2, &[1, 2, 1]).table_arrangement().rows, vec![vec![1], vec![2, 1]]);
    }

    #[test]
    fn caesura_count_is_degree() {
        for r in 1..=3 {
            for d in 0..=3 {
                for_each_x_basis(r, d, |x| {
                    assert_eq!(x.caesura_mask().iter().filter(|&&c| c).count(), d);
                    assert_eq!(x.final_permutation().arity(), r);
                });
            }
        }
    }

    #[test]
    fn differential_examples() {
        let got = x_differential(&one(u(4, &[1, 3, 2, 1, 4, 2, 1])));
        let expected = el(&[
            (u(4, &[3, 2, 1, 4, 2, 1]), 1),
            (u(4, &[1, 3, 1, 4, 2, 1]), -1),
            (u(4, &[1, 3, 2, 4, 2, 1]), 1),
            (u(4, &[1, 3, 2, 1, 4, 1]), 1),
            (u(4, &[1, 3, 2, 1, 4, 2]), -1),
        ]);
        assert_eq!(got, expected);
        assert!(x_differential(&one(u(3, &[2, 1, 3]))).is_zero());
        assert_eq!(
            x_differential(&one(u(2, &[1, 2, 1]))),
            el(&[(u(2, &[2, 1]), 1), (u(2, &[1, 2]), -1)])
        );
    }

    #[test]
    fn differential_squares_to_zero_small() {
        for r in 1..=3 {
            for d in 0..=4 {
                for_each_x_basis(r, d, |x| {
                    assert!(x_differential(&x_differential(&one(x.clone()))).is_zero(), "{x:?}");
                });
            }
        }
    }

    #[test]
    fn composition_example() {
        let got = x_compose_partial(&one(u(3, &[1, 2, 1, 3])), 1, &one(u(2, &[1, 2, 1]))).unwrap();
        let expected = el(&[
            (u(4, &[1, 3, 1, 2, 1, 4]), 1),
            (u(4, &[1, 2, 3, 2, 1, 4]), -1),
            (u(4, &[1, 2, 1, 3, 1, 4]), -1),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn composition_units_and_degree_zero() {
        let id1 = one(u(1, &[1]));
        let x = one(u(3, &[1, 2, 1, 3, 2]));
        for k in 1..=3 {
            assert_eq!(x_compose_partial(&x, k, &id1).unwrap(), x);
        }
        assert_eq!(x_compose_partial(&id1, 1, &x).unwrap(), x);
        let got = x_compose_partial(&one(u(3, &[3, 2, 1])), 2, &one(u(3, &[1, 3, 2]))).unwrap();
        assert_eq!(got, one(u(5, &[5, 2, 4, 3, 1])));
    }

    #[test]
    fn decomposition_round_trip() {
        for (a, b) in [(u(3, &[1, 2, 1, 3]), u(2, &[1, 2, 1])), (u(2, &[2, 1, 2]), u(2, &[2, 1, 2]))] {
            for k in 1..=a.arity() {
                for t in x_composite_terms(&a, k, &b).unwrap() {
                    let seq: Seq = t.seq.iter().map(|&x| x as u8).collect();
                    if let Some(w) = Surjection::from_seq(a.arity() + b.arity() - 1, seq) {
                        assert_eq!(x_decompose(&w, k, b.arity()), Some((a.clone(), b.clone())));
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_action() {
        let x = one(u(2, &[1, 2, 1]));
        assert_eq!(x_sigma_action(&Permutation::tau(), &x).unwrap(), one(u(2, &[2, 1, 2])));
        assert_eq!(x_sigma_action(&Permutation::identity(2), &x).unwrap(), x);
    }

    #[test]
    fn complexity_and_projection() {
        assert_eq!(x_complexity(&u(2, &[1, 2, 1, 2])), 3);
        assert_eq!(x_complexity(&u(4, &[2, 1, 3, 4, 3, 2])), 2);
        assert_eq!(x_complexity(&u(3, &[3, 1, 2])), 1);
        let w = u(4, &[2, 1, 3, 4, 3, 1]);
        assert_eq!(w.pair_projection(1, 3).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(w.pair_projection(1, 2).unwrap(), vec![2, 1, 1]);
        assert!(w.pair_projection(3, 1).is_err());
    }

    #[test]
    fn cell_examples() {
        let tau = CellDescriptor::uniform(Permutation::tau(), 1);
        assert!(x_cell_member(&u(2, &[1, 2, 1]), &tau).unwrap());
        let id2 = CellDescriptor::uniform(Permutation::identity(2), 2);
        assert!(x_cell_member(&u(2, &[1, 2, 1, 2]), &id2).unwrap());
        let id1 = CellDescriptor::uniform(Permutation::identity(2), 1);
        assert!(!x_cell_member(&u(2, &[1, 2, 1]), &id1).unwrap());
    }

    #[test]
    fn theta() {
        assert_eq!(Surjection::theta(0), u(2, &[1, 2]));
        assert_eq!(Surjection::theta(3), u(2, &[1, 2, 1, 2, 1]));
    }

    #[test]
    fn json_roundtrip() {
        let x = u(4, &[1, 3, 2, 1, 4, 2, 1]);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"arity":4,"seq":[1,3,2,1,4,2,1]}"#);
        assert_eq!(serde_json::from_str::<Surjection>(&j).unwrap(), x);
    }
}
