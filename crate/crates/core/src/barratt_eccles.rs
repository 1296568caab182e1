//! The Barratt–Eccles operad: normalized homogeneous bar complexes of the
//! symmetric groups.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra_core::{Coefficients, FormalSum, Permutation};
use crate::{Error, Result};

/// A tuple `(w_0,…,w_d)` of permutations of a common arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSimplex", into = "RawSimplex")]
pub struct ESimplex {
    perms: Vec<Permutation>,
}

#[derive(Serialize, Deserialize)]
struct RawSimplex {
    arity: usize,
    perms: Vec<Permutation>,
}

impl TryFrom<RawSimplex> for ESimplex {
    type Error = Error;
    fn try_from(raw: RawSimplex) -> Result<Self> {
        let s = ESimplex::new(raw.perms)?;
        if s.arity() != raw.arity {
            return Err(Error::ArityMismatch { expected: raw.arity, got: s.arity() });
        }
        Ok(s)
    }
}

impl From<ESimplex> for RawSimplex {
    fn from(s: ESimplex) -> RawSimplex {
        RawSimplex { arity: s.arity(), perms: s.perms }
    }
}

/// Element of `E(r)_d`.
pub type EElement = FormalSum<ESimplex>;

impl ESimplex {
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        let Some(first) = perms.first() else {
            return Err(Error::Invalid("a simplex needs at least one permutation".into()));
        };
        let r = first.arity();
        if let Some(bad) = perms.iter().find(|p| p.arity() != r) {
            return Err(Error::ArityMismatch { expected: r, got: bad.arity() });
        }
        Ok(ESimplex { perms })
    }

    /// Convenience constructor from value sequences.
    pub fn from_vecs(rows: &[&[usize]]) -> Result<Self> {
        ESimplex::new(rows.iter().map(|r| Permutation::new(r.to_vec())).collect::<Result<_>>()?)
    }

    pub(crate) fn from_perms_unchecked(perms: Vec<Permutation>) -> Self {
        ESimplex { perms }
    }

    pub fn arity(&self) -> usize {
        self.perms[0].arity()
    }

    pub fn degree(&self) -> usize {
        self.perms.len() - 1
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn is_degenerate(&self) -> bool {
        self.perms.windows(2).any(|w| w[0] == w[1])
    }

    /// The face `(w_a,…,w_b)`.
    pub fn slice(&self, a: usize, b: usize) -> ESimplex {
        ESimplex { perms: self.perms[a..=b].to_vec() }
    }

    fn face(&self, i: usize) -> ESimplex {
        let mut perms = Vec::with_capacity(self.perms.len() - 1);
        perms.extend(self.perms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()));
        ESimplex { perms }
    }

    /// Number of variations of the pair projection `w_ij` for every `i < j`.
    pub fn pair_variations(&self) -> BTreeMap<(usize, usize), usize> {
        let r = self.arity();
        let invs: Vec<Permutation> = self.perms.iter().map(Permutation::inverse).collect();
        let mut out = BTreeMap::new();
        for i in 1..=r {
            for j in i + 1..=r {
                let orders = invs.iter().map(|inv| inv.apply(i) < inv.apply(j));
                out.insert((i, j), count_changes(orders));
            }
        }
        out
    }
}

fn count_changes(mut it: impl Iterator<Item = bool>) -> usize {
    let Some(mut prev) = it.next() else { return 0 };
    let mut n = 0;
    for x in it {
        if x != prev {
            n += 1;
        }
        prev = x;
    }
    n
}

impl fmt::Debug for ESimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.perms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p:?}")?;
        }
        write!(f, ")")
    }
}

/// Homogeneity check: every term shares one arity and one degree.
fn homogeneous_shape(x: &EElement) -> Result<Option<(usize, usize)>> {
    let mut shape = None;
    for (s, _) in x {
        let sh = (s.arity(), s.degree());
        match shape {
            None => shape = Some(sh),
            Some(prev) if prev != sh => {
                return Err(Error::Invalid(format!(
                    "inhomogeneous element: (arity, degree) {prev:?} and {sh:?}"
                )))
            }
            _ => {}
        }
    }
    Ok(shape)
}

pub fn e_normalize(x: &EElement) -> Result<EElement> {
    homogeneous_shape(x)?;
    Ok(x.filter(|s| !s.is_degenerate()))
}

/// Nondegenerate faces of a simplex with their signs.
pub fn e_boundary(s: &ESimplex) -> impl Iterator<Item = (ESimplex, i64)> + '_ {
    let d = s.degree();
    let n = s.perms.len();
    (0..n).filter(move |_| d > 0).filter_map(move |i| {
        // removing w_i degenerates exactly when its neighbours agree
        if i > 0 && i + 1 < n && s.perms[i - 1] == s.perms[i + 1] {
            return None;
        }
        Some((s.face(i), if i % 2 == 0 { 1 } else { -1 }))
    })
}

pub fn e_differential(x: &EElement) -> EElement {
    let mut out = FormalSum::zero(x.coefficients());
    for (s, &c) in x {
        for (f, sign) in e_boundary(s) {
            out.add_term(f, c * sign);
        }
    }
    out
}

/// `Δ(w_0,…,w_n) = Σ_d (w_0,…,w_d) ⊗ (w_d,…,w_n)`.
pub fn e_diagonal(s: &ESimplex, coeffs: Coefficients) -> FormalSum<(ESimplex, ESimplex)> {
    FormalSum::from_terms(coeffs, diagonal_terms(s).map(|t| (t, 1)))
}

pub fn e_diagonal_linear(x: &EElement) -> FormalSum<(ESimplex, ESimplex)> {
    x.flat_map(|s| e_diagonal(s, x.coefficients()))
}

fn diagonal_terms(s: &ESimplex) -> impl Iterator<Item = (ESimplex, ESimplex)> + '_ {
    let n = s.degree();
    (0..=n).map(move |d| (s.slice(0, d), s.slice(d, n)))
}

/// The diagonal terms used to evaluate `p` on a Hopf tensor product
/// `A ⊗ B`: pairs `(p_(1), p_(2))`, each with coefficient `+1`. Arguments
/// `a_1⊗b_1,…,a_r⊗b_r` are regrouped as `p_(1)(a_1,…,a_r) ⊗ p_(2)(b_1,…,b_r)`
/// with the sign given by [`hopf_regroup_sign`].
pub fn e_tensor_eval_rule(p: &ESimplex) -> Vec<(ESimplex, ESimplex)> {
    diagonal_terms(p).collect()
}

/// Koszul sign of `(p1⊗p2)⊗(a_1⊗b_1)⊗…⊗(a_r⊗b_r) ↦ (p1⊗a_1⊗…⊗a_r)⊗(p2⊗b_1⊗…⊗b_r)`.
pub fn hopf_regroup_sign(deg_p2: usize, a_degrees: &[i64], b_degrees: &[i64]) -> i64 {
    let mut exp = deg_p2 as i64 * a_degrees.iter().sum::<i64>();
    for (i, b) in b_degrees.iter().enumerate() {
        exp += b * a_degrees[i + 1..].iter().sum::<i64>();
    }
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn e_sigma_action(sigma: &Permutation, x: &EElement) -> Result<EElement> {
    let mut out = FormalSum::zero(x.coefficients());
    for (s, &c) in x {
        if s.arity() != sigma.arity() {
            return Err(Error::ArityMismatch { expected: sigma.arity(), got: s.arity() });
        }
        let perms = s.perms.iter().map(|w| sigma.compose(w)).collect::<Result<_>>()?;
        out.add_term(ESimplex { perms }, c);
    }
    Ok(out)
}

/// Monotone lattice paths from `(0,0)` to `(d,e)` in lexicographic order of
/// their step strings (`false` = horizontal, `true` = vertical), each with the
/// signature of the shuffle moving horizontal steps in front.
pub fn lattice_paths(d: usize, e: usize) -> Vec<(Vec<bool>, i64)> {
    fn rec(d: usize, e: usize, cur: &mut Vec<bool>, verticals: usize, inv: usize, out: &mut Vec<(Vec<bool>, i64)>) {
        if d == 0 && e == 0 {
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        if d > 0 {
            cur.push(false);
            rec(d - 1, e, cur, verticals, inv + verticals, out);
            cur.pop();
        }
        if e > 0 {
            cur.push(true);
            rec(d, e - 1, cur, verticals + 1, inv, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, e, &mut Vec::new(), 0, 0, &mut out);
    out
}

fn compose_simplices(u: &ESimplex, k: usize, v: &ESimplex, coeff: i64, out: &mut EElement) {
    use crate::algebra_core::perm_compose_partial;
    for (path, sign) in lattice_paths(u.degree(), v.degree()) {
        let (mut x, mut y) = (0, 0);
        let mut perms = Vec::with_capacity(path.len() + 1);
        perms.push(perm_compose_partial(&u.perms[0], k, &v.perms[0]).expect("slot checked"));
        for vertical in path {
            if vertical {
                y += 1;
            } else {
                x += 1;
            }
            perms.push(perm_compose_partial(&u.perms[x], k, &v.perms[y]).expect("slot checked"));
        }
        let s = ESimplex { perms };
        if !s.is_degenerate() {
            out.add_term(s, coeff * sign);
        }
    }
}

/// `u ∘_k v` by the lattice-path (Eilenberg–Zilber shuffle) formula.
pub fn e_compose_partial(u: &EElement, k: usize, v: &EElement) -> Result<EElement> {
    if u.coefficients() != v.coefficients() {
        return Err(Error::CharacteristicMismatch(
            u.coefficients().characteristic(),
            v.coefficients().characteristic(),
        ));
    }
    let mut out = FormalSum::zero(u.coefficients());
    for (a, &ca) in u {
        if k == 0 || k > a.arity() {
            return Err(Error::SlotOutOfRange { k, arity: a.arity() });
        }
        for (b, &cb) in v {
            compose_simplices(a, k, b, u.coefficients().mul(ca, cb), &mut out);
        }
    }
    Ok(out)
}

/// `u(v_1,…,v_r)` by iterated partial compositions, highest slot first.
pub fn e_compose_full(u: &EElement, vs: &[EElement]) -> Result<EElement> {
    let mut acc = u.clone();
    for (k, v) in vs.iter().enumerate().rev() {
        acc = e_compose_partial(&acc, k + 1, v)?;
    }
    Ok(acc)
}

/// Smallest `n` with every pair projection having at most `n−1` variations.
pub fn e_complexity(s: &ESimplex) -> usize {
    s.pair_variations().values().map(|v| v + 1).max().unwrap_or(1)
}

/// A cell `(μ, σ)` of the complexity filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDescriptor {
    #[serde(with = "pair_list")]
    pub mu: BTreeMap<(usize, usize), usize>,
    pub sigma: Permutation,
}

impl CellDescriptor {
    pub fn uniform(sigma: Permutation, mu: usize) -> Self {
        let r = sigma.arity();
        let mu = (1..=r).flat_map(|i| (i + 1..=r).map(move |j| ((i, j), mu))).collect();
        CellDescriptor { mu, sigma }
    }

    pub fn arity(&self) -> usize {
        self.sigma.arity()
    }

    pub(crate) fn mu_of(&self, i: usize, j: usize) -> Result<usize> {
        self.mu
            .get(&(i, j))
            .copied()
            .ok_or_else(|| Error::Invalid(format!("cell has no μ value for pair ({i},{j})")))
    }
}

/// `μ` as a list `[[[i,j],m],…]`, since JSON keys must be strings.
mod pair_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(mu: &BTreeMap<(usize, usize), usize>, s: S) -> Result<S::Ok, S::Error> {
        mu.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), usize>, D::Error> {
        Ok(Vec::<((usize, usize), usize)>::deserialize(d)?.into_iter().collect())
    }
}

/// Membership in the cell `F_(μ,σ) E`.
pub fn e_cell_member(s: &ESimplex, cell: &CellDescriptor) -> Result<bool> {
    if s.arity() != cell.arity() {
        return Err(Error::ArityMismatch { expected: cell.arity(), got: s.arity() });
    }
    let last = s.perms.last().unwrap();
    for ((i, j), var) in s.pair_variations() {
        let mu = cell.mu_of(i, j)?;
        let ok = var + 1 <= mu
            || (var == mu && last.orders_pair(i, j) == cell.sigma.orders_pair(i, j));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn e_augmentation(x: &EElement) -> i64 {
    x.filter(|s| s.degree() == 0).sum_of_coefficients()
}

/// Calls `f` on every nondegenerate simplex of `E(r)_d`, in lexicographic order.
pub fn for_each_e_basis(r: usize, d: usize, mut f: impl FnMut(&ESimplex)) {
    let perms = Permutation::all(r);
    let mut cur = ESimplex { perms: Vec::with_capacity(d + 1) };
    fn rec(perms: &[Permutation], d: usize, cur: &mut ESimplex, f: &mut dyn FnMut(&ESimplex)) {
        if cur.perms.len() == d + 1 {
            f(cur);
            return;
        }
        for p in perms {
            if cur.perms.last() == Some(p) {
                continue;
            }
            cur.perms.push(p.clone());
            rec(perms, d, cur, f);
            cur.perms.pop();
        }
    }
    rec(&perms, d, &mut cur, &mut f);
}

pub fn e_basis(r: usize, d: usize) -> Vec<ESimplex> {
    let mut out = Vec::new();
    for_each_e_basis(r, d, |s| out.push(s.clone()));
    out
}
