use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::{Error, Result};

/// A permutation of `{1,…,r}` stored as its value sequence `(σ(1),…,σ(r))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(SmallVec<[u8; 8]>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let r = values.len();
        let mut seen = vec![false; r + 1];
        for &v in &values {
            if v == 0 || v > r || seen[v] || v > u8::MAX as usize {
                return Err(Error::NotAPermutation(values));
            }
            seen[v] = true;
        }
        Ok(Permutation(values.iter().map(|&v| v as u8).collect()))
    }

    pub(crate) fn from_raw(values: SmallVec<[u8; 8]>) -> Self {
        debug_assert!(Permutation::new(values.iter().map(|&v| v as usize).collect()).is_ok());
        Permutation(values)
    }

    pub fn identity(r: usize) -> Self {
        Permutation((1..=r as u8).collect())
    }

    /// The transposition `(2,1)`.
    pub fn tau() -> Self {
        Permutation(SmallVec::from_slice(&[2, 1]))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    /// `σ(i)` for `1 ≤ i ≤ r`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv: SmallVec<[u8; 8]> = SmallVec::from_elem(0, self.arity());
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: other.arity() });
        }
        Ok(Permutation(other.0.iter().map(|&v| self.0[v as usize - 1]).collect()))
    }

    pub fn sign(&self) -> i64 {
        let inversions = (0..self.0.len())
            .flat_map(|i| (i + 1..self.0.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Order of `i` and `j` in the value sequence, as the permutation `(i,j)`
    /// (`true`) or `(j,i)` (`false`).
    pub fn orders_pair(&self, i: usize, j: usize) -> bool {
        let pos = |x: usize| self.0.iter().position(|&v| v as usize == x);
        pos(i) < pos(j)
    }

    /// All permutations of arity `r` in lexicographic order.
    pub fn all(r: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=r as u8).collect();
        loop {
            out.push(Permutation(SmallVec::from_slice(&cur)));
            // next permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    /// `v_1 ⊕ … ⊕ v_r`: the block-diagonal permutation.
    pub fn direct_sum(parts: &[Permutation]) -> Self {
        let mut out = SmallVec::new();
        let mut shift = 0u8;
        for p in parts {
            out.extend(p.0.iter().map(|&v| v + shift));
            shift += p.arity() as u8;
        }
        Permutation(out)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.to_vec()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The block permutation `σ_*(s_1,…,s_r)`: each value `k` of `σ` becomes the
/// run of the `s_k` consecutive values of block `k`.
pub fn block_permutation(sigma: &Permutation, sizes: &[usize]) -> Result<Permutation> {
    if sizes.len() != sigma.arity() {
        return Err(Error::ArityMismatch { expected: sigma.arity(), got: sizes.len() });
    }
    let mut offsets = vec![0usize; sizes.len() + 1];
    for (k, s) in sizes.iter().enumerate() {
        offsets[k + 1] = offsets[k] + s;
    }
    let values = sigma
        .as_slice()
        .iter()
        .flat_map(|&k| (offsets[k as usize - 1] + 1)..=offsets[k as usize])
        .collect();
    Permutation::new(values)
}

/// `u ∘_k v` in the permutation operad.
pub fn perm_compose_partial(u: &Permutation, k: usize, v: &Permutation) -> Result<Permutation> {
    if k == 0 || k > u.arity() {
        return Err(Error::SlotOutOfRange { k, arity: u.arity() });
    }
    Ok(compose_partial_unchecked(u, k, v))
}

pub(crate) fn compose_partial_unchecked(u: &Permutation, k: usize, v: &Permutation) -> Permutation {
    let (k, s) = (k as u8, v.arity() as u8);
    let mut out = SmallVec::with_capacity(u.arity() + v.arity() - 1);
    for &x in u.as_slice() {
        if x == k {
            out.extend(v.as_slice().iter().map(|&y| y + k - 1));
        } else if x > k {
            out.push(x + s - 1);
        } else {
            out.push(x);
        }
    }
    Permutation(out)
}

/// `u(v_1,…,v_r)` by iterated partial compositions, highest slot first.
pub fn perm_compose_full(u: &Permutation, vs: &[Permutation]) -> Result<Permutation> {
    if vs.len() != u.arity() {
        return Err(Error::ArityMismatch { expected: u.arity(), got: vs.len() });
    }
    let mut acc = u.clone();
    for (k, v) in vs.iter().enumerate().rev() {
        acc = compose_partial_unchecked(&acc, k + 1, v);
    }
    Ok(acc)
}
