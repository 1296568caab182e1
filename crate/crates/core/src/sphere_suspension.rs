//! Sphere and cone algebras, cap products with the `ε_s` cochains, the
//! operadic suspension, and path objects of finite E-algebras.

use std::collections::BTreeMap;

use crate::algebra_core::{koszul_sign_of_order, Coefficients, FormalSum, Permutation};
use crate::barratt_eccles::{e_compose_partial, e_tensor_eval_rule, hopf_regroup_sign, EElement, ESimplex};
use crate::interval_cut::cochain_eval;
use crate::linalg::{self, induced_rank, ChainComplex, Field, Matrix};
use crate::simplicial_sets::{Cochain, Simplex, SimplicialModel};
use crate::surjections::{Surjection, XElement};
use crate::{Error, Result};

fn parity(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ε_s(w) = sgn(w_0(1),…,w_{s−1}(1))` on simplices of degree `s−1`, zero
/// otherwise; `ε_0` is the augmentation.
pub fn epsilon(s: usize, w: &ESimplex) -> i64 {
    if s == 0 {
        return i64::from(w.degree() == 0);
    }
    if w.degree() + 1 != s || w.arity() < s {
        return 0;
    }
    let firsts: Vec<usize> = w.perms().iter().map(|p| p.apply(1)).collect();
    if firsts.iter().any(|&v| v > s) {
        return 0;
    }
    match Permutation::new(firsts) {
        Ok(p) => p.sign(),
        Err(_) => 0,
    }
}

/// Coefficient of `e` in `w(e,…,e)` on `S(1)`: `(−1)^{r(r−1)/2} ε_r(w)`.
fn sphere1_eval(w: &ESimplex) -> i64 {
    let r = w.arity();
    parity(r * (r - 1) / 2) * epsilon(r, w)
}

/// Coefficient of `e^n` in `w(e^n,…,e^n)`, through the isomorphism
/// `S(n) ≅ S(1)^{⊗n}`, `e^n ↦ (−1)^{n(n−1)/2} e^{⊗n}`, and the iterated diagonal.
pub fn sphere_eval(n: usize, w: &ESimplex) -> Result<i64> {
    if n == 0 {
        return Err(Error::Invalid("sphere algebras start at n = 1".into()));
    }
    Ok(parity(n * (n - 1) / 2 * (w.arity() - 1)) * tensor_power_eval(n, w))
}

/// Coefficient of `e^{⊗n}` in `w(e^{⊗n},…,e^{⊗n})` on `S(1)^{⊗n}`.
pub fn tensor_power_eval(n: usize, w: &ESimplex) -> i64 {
    if n == 0 {
        return epsilon(0, w);
    }
    sphere_eval_rec(n, w)
}

fn sphere_eval_rec(n: usize, w: &ESimplex) -> i64 {
    let r = w.arity();
    if n == 1 {
        return sphere1_eval(w);
    }
    if w.degree() != n * (r - 1) {
        return 0;
    }
    let mut total = 0;
    for (p1, p2) in e_tensor_eval_rule(w) {
        if p1.degree() != r - 1 {
            continue;
        }
        let a = sphere1_eval(&p1);
        if a == 0 {
            continue;
        }
        let b = sphere_eval_rec(n - 1, &p2);
        let sign = hopf_regroup_sign(p2.degree(), &vec![1; r], &vec![(n - 1) as i64; r]);
        total += sign * a * b;
    }
    total
}

/// Generators of the cone algebra `C(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum ConeGen {
    #[serde(rename = "c")]
    C,
    #[serde(rename = "e")]
    E,
}

impl ConeGen {
    pub fn degree(self) -> usize {
        match self {
            ConeGen::C => 0,
            ConeGen::E => 1,
        }
    }
}

/// `w(e,…,e,c,…,c)` with `s` leading `e`'s: `(−1)^{s(s−1)/2} ε_s(w)·e`, and
/// `ε_0(w)·c` when `s = 0`.
fn cone_eval_standard(w: &ESimplex, s: usize) -> (ConeGen, i64) {
    if s == 0 {
        (ConeGen::C, epsilon(0, w))
    } else {
        (ConeGen::E, parity(s * (s - 1) / 2) * epsilon(s, w))
    }
}

/// The value of `w` on an arbitrary pattern of `e`'s and `c`'s for each
/// reordering `ρ` bringing the arguments to standard order, using
/// `w(b) = ±(ρ^{-1}·w)(b_ρ(1),…,b_ρ(r))` with the Koszul sign of the reordering.
pub fn cone_eval_reductions(w: &ESimplex, args: &[ConeGen]) -> Result<Vec<(ConeGen, i64)>> {
    let r = w.arity();
    if args.len() != r {
        return Err(Error::ArityMismatch { expected: r, got: args.len() });
    }
    let es: Vec<usize> = (0..r).filter(|&i| args[i] == ConeGen::E).collect();
    let cs: Vec<usize> = (0..r).filter(|&i| args[i] == ConeGen::C).collect();
    let degrees: Vec<i64> = args.iter().map(|a| a.degree() as i64).collect();
    let mut out = Vec::new();
    for pe in orderings(&es) {
        for pc in orderings(&cs) {
            // rho(i) = position of the i-th standard argument
            let rho: Vec<usize> = pe.iter().chain(&pc).copied().collect();
            let sign = koszul_sign_of_order(&degrees, &rho);
            let inv = Permutation::new(rho.iter().map(|&i| i + 1).collect())?.inverse();
            let moved = ESimplex::new(w.perms().iter().map(|p| inv.compose(p)).collect::<Result<_>>()?)?;
            let (g, c) = cone_eval_standard(&moved, es.len());
            out.push((g, sign * c));
        }
    }
    Ok(out)
}

fn orderings(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    Permutation::all(items.len())
        .iter()
        .map(|p| p.as_slice().iter().map(|&v| items[v as usize - 1]).collect())
        .collect()
}

/// `w` evaluated on `C(1)`. Fails if two equivariance reductions disagree.
pub fn cone_eval(w: &ESimplex, args: &[ConeGen]) -> Result<(ConeGen, i64)> {
    let all = cone_eval_reductions(w, args)?;
    let first = all[0];
    if all.iter().any(|&v| v != first) {
        return Err(Error::Invalid(format!("equivariance reductions disagree for {w:?} on {args:?}")));
    }
    Ok(first)
}

/// `φ∩w = φ(w_0,…,w_d)·(w_d,…,w_n)` for a cochain `φ` of degree `d`.
pub fn cap(phi: impl Fn(&ESimplex) -> i64, d: usize, w: &ESimplex, coeffs: Coefficients) -> EElement {
    let n = w.degree();
    if d > n {
        return FormalSum::zero(coeffs);
    }
    FormalSum::term(coeffs, w.slice(d, n), phi(&w.slice(0, d)))
}

/// `ε_s ∩ w`.
pub fn cap_epsilon(s: usize, w: &ESimplex, coeffs: Coefficients) -> EElement {
    if s == 0 {
        return FormalSum::single(coeffs, w.clone());
    }
    cap(|f| epsilon(s, f), s - 1, w, coeffs)
}

/// The suspension morphism `w ↦ ε_r∩w` into `Λ*E`, linearly extended.
pub fn suspension_morphism_e(x: &EElement) -> SuspendedElement {
    let inner = x.flat_map(|w| cap_epsilon(w.arity(), w, x.coefficients()));
    SuspendedElement { inner }
}

/// `ε_r∩u = sgn(u(1),…,u(r))·(u(r),…,u(r+d))` when the first `r` values
/// form a permutation, zero otherwise.
pub fn suspension_morphism_x(u: &Surjection, coeffs: Coefficients) -> XElement {
    let r = u.arity();
    let seq = u.to_vec();
    let Ok(prefix) = Permutation::new(seq[..r].to_vec()) else {
        return FormalSum::zero(coeffs);
    };
    match Surjection::new(r, seq[r - 1..].to_vec()) {
        Ok(tail) => FormalSum::term(coeffs, tail, prefix.sign()),
        Err(_) => FormalSum::zero(coeffs),
    }
}

/// An element `Λ*w` of the operadic suspension: `inner ∈ E(r)_d` sits in
/// degree `d+r−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspendedElement {
    pub inner: EElement,
}

/// Sign of `(Λ*w)(e⊗a_1,…,e⊗a_r) = ±e⊗w(a_1,…,a_r)`, exponent
/// `r(r−1)/2 + d·r + Σ_i |a_i|·(r−i)`.
pub fn lambda_eval_sign(r: usize, d: usize, arg_degrees: &[i64]) -> i64 {
    let mut exp = (r * (r - 1) / 2 + d * r) as i64;
    for (i, a) in arg_degrees.iter().enumerate() {
        exp += a * (r - 1 - i) as i64;
    }
    parity(exp.rem_euclid(2) as usize)
}

/// Exponent relating `Λ*u ∘_k Λ*v` to `Λ*(u ∘_k v)` on arguments of the given
/// degrees; it does not depend on them.
fn lambda_compose_exponent(r: usize, du: usize, k: usize, s: usize, dv: usize, degs: &[i64]) -> i64 {
    let before: i64 = degs[..k - 1].iter().map(|a| a + 1).sum();
    let inner: i64 = degs[k - 1..k - 1 + s].iter().sum();
    let b = inner - dv as i64;
    let mut outer: Vec<i64> = degs[..k - 1].to_vec();
    outer.push(b);
    outer.extend_from_slice(&degs[k - 1 + s..]);
    let exp_of = |sign: i64| if sign == 1 { 0 } else { 1 };
    (dv + s - 1) as i64 * before
        + exp_of(lambda_eval_sign(s, dv, &degs[k - 1..k - 1 + s]))
        + exp_of(lambda_eval_sign(r, du, &outer))
        + dv as i64 * degs[..k - 1].iter().sum::<i64>()
        + exp_of(lambda_eval_sign(r + s - 1, du + dv, degs))
}

/// `Λ*u ∘_k Λ*v = λ·Λ*(u ∘_k v)`.
pub fn lambda_compose_sign(r: usize, du: usize, k: usize, s: usize, dv: usize) -> i64 {
    parity(lambda_compose_exponent(r, du, k, s, dv, &vec![0; r + s - 1]).rem_euclid(2) as usize)
}

impl SuspendedElement {
    pub fn coefficients(&self) -> Coefficients {
        self.inner.coefficients()
    }

    pub fn compose_partial(&self, k: usize, other: &SuspendedElement) -> Result<SuspendedElement> {
        let coeffs = self.coefficients();
        let mut out = FormalSum::zero(coeffs);
        for (u, &cu) in &self.inner {
            for (v, &cv) in &other.inner {
                if k == 0 || k > u.arity() {
                    return Err(Error::SlotOutOfRange { k, arity: u.arity() });
                }
                let sign = lambda_compose_sign(u.arity(), u.degree(), k, v.arity(), v.degree());
                let uv = e_compose_partial(
                    &FormalSum::single(coeffs, u.clone()),
                    k,
                    &FormalSum::single(coeffs, v.clone()),
                )?;
                out.add_scaled(&uv, sign * coeffs.mul(cu, cv));
            }
        }
        Ok(SuspendedElement { inner: out })
    }

    /// `σ·Λ*w = sgn(σ)·Λ*(σ·w)`.
    pub fn sigma_action(&self, sigma: &Permutation) -> Result<SuspendedElement> {
        let acted = crate::barratt_eccles::e_sigma_action(sigma, &self.inner)?;
        Ok(SuspendedElement { inner: acted.scale(sigma.sign()) })
    }
}

/// A finite-dimensional algebra over the Barratt–Eccles operad, given by
/// its graded basis, differential and evaluation products.
pub trait FiniteEAlgebra {
    fn coefficients(&self) -> Coefficients;
    fn dim(&self) -> usize;
    /// Upper degree of a basis element.
    fn degree(&self, i: usize) -> usize;
    fn name(&self, i: usize) -> String;
    fn differential(&self, i: usize) -> FormalSum<usize>;
    /// `w(b_{i_1},…,b_{i_r})` on basis elements.
    fn evaluate(&self, w: &ESimplex, args: &[usize]) -> Result<FormalSum<usize>>;
}

/// Multilinear extension of [`FiniteEAlgebra::evaluate`].
pub fn evaluate_linear<A: FiniteEAlgebra + ?Sized>(
    alg: &A,
    w: &EElement,
    args: &[FormalSum<usize>],
) -> Result<FormalSum<usize>> {
    let coeffs = alg.coefficients();
    let mut out = FormalSum::zero(coeffs);
    let terms: Vec<Vec<(usize, i64)>> = args.iter().map(|a| a.iter().map(|(&i, &c)| (i, c)).collect()).collect();
    let mut idx = vec![0; args.len()];
    if terms.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let basis: Vec<usize> = idx.iter().zip(&terms).map(|(&j, t)| t[j].0).collect();
        let c = idx.iter().zip(&terms).fold(1, |acc, (&j, t)| coeffs.mul(acc, t[j].1));
        for (s, &cw) in w {
            out.add_scaled(&alg.evaluate(s, &basis)?, coeffs.mul(c, cw));
        }
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < terms[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            return Ok(out);
        }
    }
}

pub fn differential_linear<A: FiniteEAlgebra + ?Sized>(alg: &A, x: &FormalSum<usize>) -> FormalSum<usize> {
    let mut out = FormalSum::zero(alg.coefficients());
    for (&i, &c) in x {
        out.add_scaled(&alg.differential(i), c);
    }
    out
}

/// The ground ring in degree 0, on which degree-0 operations act by `1`.
#[derive(Clone, Debug)]
pub struct GroundField {
    pub coeffs: Coefficients,
}

impl FiniteEAlgebra for GroundField {
    fn coefficients(&self) -> Coefficients {
        self.coeffs
    }
    fn dim(&self) -> usize {
        1
    }
    fn degree(&self, _: usize) -> usize {
        0
    }
    fn name(&self, _: usize) -> String {
        "1".into()
    }
    fn differential(&self, _: usize) -> FormalSum<usize> {
        FormalSum::zero(self.coeffs)
    }
    fn evaluate(&self, w: &ESimplex, args: &[usize]) -> Result<FormalSum<usize>> {
        check_arity(w, args)?;
        Ok(FormalSum::term(self.coeffs, 0, epsilon(0, w)))
    }
}

fn check_arity(w: &ESimplex, args: &[usize]) -> Result<()> {
    if w.arity() != args.len() {
        return Err(Error::ArityMismatch { expected: w.arity(), got: args.len() });
    }
    Ok(())
}

/// `S(n) = 𝔽·e^n`.
#[derive(Clone, Debug)]
pub struct SphereAlgebra {
    pub n: usize,
    pub coeffs: Coefficients,
}

impl FiniteEAlgebra for SphereAlgebra {
    fn coefficients(&self) -> Coefficients {
        self.coeffs
    }
    fn dim(&self) -> usize {
        1
    }
    fn degree(&self, _: usize) -> usize {
        self.n
    }
    fn name(&self, _: usize) -> String {
        format!("e^{}", self.n)
    }
    fn differential(&self, _: usize) -> FormalSum<usize> {
        FormalSum::zero(self.coeffs)
    }
    fn evaluate(&self, w: &ESimplex, args: &[usize]) -> Result<FormalSum<usize>> {
        check_arity(w, args)?;
        Ok(FormalSum::term(self.coeffs, 0, sphere_eval(self.n, w)?))
    }
}

/// `C(1) = 𝔽·c ⊕ 𝔽·e` with basis order `c, e` and `δc = −e`, matching the
/// reduced cochains of the pointed interval.
#[derive(Clone, Debug)]
pub struct ConeAlgebra {
    pub coeffs: Coefficients,
}

impl ConeAlgebra {
    fn gen(i: usize) -> ConeGen {
        if i == 0 {
            ConeGen::C
        } else {
            ConeGen::E
        }
    }
}

impl FiniteEAlgebra for ConeAlgebra {
    fn coefficients(&self) -> Coefficients {
        self.coeffs
    }
    fn dim(&self) -> usize {
        2
    }
    fn degree(&self, i: usize) -> usize {
        i
    }
    fn name(&self, i: usize) -> String {
        ["c", "e"][i].into()
    }
    fn differential(&self, i: usize) -> FormalSum<usize> {
        if i == 0 {
            FormalSum::term(self.coeffs, 1, -1)
        } else {
            FormalSum::zero(self.coeffs)
        }
    }
    fn evaluate(&self, w: &ESimplex, args: &[usize]) -> Result<FormalSum<usize>> {
        check_arity(w, args)?;
        let gens: Vec<ConeGen> = args.iter().map(|&i| Self::gen(i)).collect();
        let (g, c) = cone_eval(w, &gens)?;
        Ok(FormalSum::term(self.coeffs, g as usize, c))
    }
}

/// Normalized cochains of a model, reduced (vanishing on the base point) if
/// asked, with the dual basis of the nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct CochainAlgebra {
    model: SimplicialModel,
    coeffs: Coefficients,
    basis: Vec<Simplex>,
    index: BTreeMap<Simplex, usize>,
}

impl CochainAlgebra {
    pub fn new(model: SimplicialModel, coeffs: Coefficients, reduced: bool) -> Self {
        let base = if reduced { model.base_point() } else { None };
        let basis: Vec<Simplex> = (0..=model.dim())
            .flat_map(|d| model.simplices(d).to_vec())
            .filter(|s| Some(s) != base.as_ref())
            .collect();
        let index = basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        CochainAlgebra { model, coeffs, basis, index }
    }

    pub fn model(&self) -> &SimplicialModel {
        &self.model
    }

    pub fn basis(&self) -> &[Simplex] {
        &self.basis
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    fn from_cochain(&self, f: &Cochain) -> FormalSum<usize> {
        let mut out = FormalSum::zero(self.coeffs);
        for (s, &c) in &f.values {
            if let Some(i) = self.index_of(s) {
                out.add_term(i, c);
            }
        }
        out
    }
}

impl FiniteEAlgebra for CochainAlgebra {
    fn coefficients(&self) -> Coefficients {
        self.coeffs
    }
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn degree(&self, i: usize) -> usize {
        self.basis[i].dim()
    }
    fn name(&self, i: usize) -> String {
        let names: Vec<String> = self.basis[i].vertices().map(|v| self.model.vertex_name(v)).collect();
        format!("[{}]*", names.join(","))
    }
    fn differential(&self, i: usize) -> FormalSum<usize> {
        let f = Cochain::dual(&self.basis[i], self.coeffs);
        self.from_cochain(&self.model.cochain_differential(&f))
    }
    fn evaluate(&self, w: &ESimplex, args: &[usize]) -> Result<FormalSum<usize>> {
        check_arity(w, args)?;
        let fs: Vec<Cochain> = args.iter().map(|&i| Cochain::dual(&self.basis[i], self.coeffs)).collect();
        let refs: Vec<&Cochain> = fs.iter().collect();
        let g = cochain_eval(&FormalSum::single(self.coeffs, w.clone()), &refs, &self.model)?;
        Ok(self.from_cochain(&g))
    }
}

/// `A⊗B` with the operations distributed by the diagonal of `E`; basis
/// element `(i, j)` has index `i·dim B + j`.
pub struct TensorAlgebra {
    pub left: Box<dyn FiniteEAlgebra>,
    pub right: Box<dyn FiniteEAlgebra>,
}

impl TensorAlgebra {
    pub fn new(left: Box<dyn FiniteEAlgebra>, right: Box<dyn FiniteEAlgebra>) -> Result<Self> {
        if left.coefficients() != right.coefficients() {
            return Err(Error::CharacteristicMismatch(
                left.coefficients().characteristic(),
                right.coefficients().characteristic(),
            ));
        }
        Ok(TensorAlgebra { left, right })
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.dim() + j
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.right.dim(), k % self.right.dim())
    }
}

impl FiniteEAlgebra for TensorAlgebra {
    fn coefficients(&self) -> Coefficients {
        self.left.coefficients()
    }
    fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }
    fn degree(&self, k: usize) -> usize {
        let (i, j) = self.split(k);
        self.left.degree(i) + self.right.degree(j)
    }
    fn name(&self, k: usize) -> String {
        let (i, j) = self.split(k);
        format!("{}⊗{}", self.left.name(i), self.right.name(j))
    }
    fn differential(&self, k: usize) -> FormalSum<usize> {
        let (i, j) = self.split(k);
        let mut out = FormalSum::zero(self.coefficients());
        for (&a, &c) in &self.left.differential(i) {
            out.add_term(self.index(a, j), c);
        }
        let sign = parity(self.left.degree(i));
        for (&b, &c) in &self.right.differential(j) {
            out.add_term(self.index(i, b), sign * c);
        }
        out
    }
    fn evaluate(&self, w: &ESimplex, args: &[usize]) -> Result<FormalSum<usize>> {
        check_arity(w, args)?;
        let (a, b): (Vec<usize>, Vec<usize>) = args.iter().map(|&k| self.split(k)).unzip();
        let a_deg: Vec<i64> = a.iter().map(|&i| self.left.degree(i) as i64).collect();
        let b_deg: Vec<i64> = b.iter().map(|&j| self.right.degree(j) as i64).collect();
        let mut out = FormalSum::zero(self.coefficients());
        for (p1, p2) in e_tensor_eval_rule(w) {
            let x = self.left.evaluate(&p1, &a)?;
            if x.is_zero() {
                continue;
            }
            let y = self.right.evaluate(&p2, &b)?;
            let sign = hopf_regroup_sign(p2.degree(), &a_deg, &b_deg);
            for (&i, &ci) in &x {
                for (&j, &cj) in &y {
                    out.add_term(self.index(i, j), sign * ci * cj);
                }
            }
        }
        Ok(out)
    }
}

/// `C*A = C(1)⊗A`.
pub fn cone_of_algebra(a: Box<dyn FiniteEAlgebra>) -> Result<TensorAlgebra> {
    let coeffs = a.coefficients();
    TensorAlgebra::new(Box::new(ConeAlgebra { coeffs }), a)
}

/// `Σ*A = S(1)⊗A`.
pub fn suspension_of_algebra(a: Box<dyn FiniteEAlgebra>) -> Result<TensorAlgebra> {
    let coeffs = a.coefficients();
    TensorAlgebra::new(Box::new(SphereAlgebra { n: 1, coeffs }), a)
}

/// `Σ*A → C*A`, `e⊗a ↦ e⊗a`, on basis indices of `A`.
pub fn suspension_into_cone(a_index: usize, a_dim: usize) -> usize {
    a_dim + a_index
}

/// `C*A → A`, `c⊗a ↦ a`, `e⊗a ↦ 0`.
pub fn cone_to_base(k: usize, a_dim: usize) -> Option<usize> {
    (k < a_dim).then_some(k)
}

/// Closed form of the operations on `Σ*A`:
/// `w(e⊗a_1,…,e⊗a_r) = λ·e⊗(ε_r∩w)(a_1,…,a_r)` with the sign of
/// [`lambda_eval_sign`] for the capped element.
pub fn suspension_eval<A: FiniteEAlgebra + ?Sized>(a: &A, w: &ESimplex, args: &[usize]) -> Result<FormalSum<usize>> {
    check_arity(w, args)?;
    let r = w.arity();
    let degs: Vec<i64> = args.iter().map(|&i| a.degree(i) as i64).collect();
    let mut out = FormalSum::zero(a.coefficients());
    let capped = cap_epsilon(r, w, a.coefficients());
    for (v, &c) in &capped {
        let sign = lambda_eval_sign(r, v.degree(), &degs);
        out.add_scaled(&a.evaluate(v, args)?, sign * c);
    }
    Ok(out)
}

/// The path object `Ã = N*(Δ¹)⊗A` with `s_0: A → Ã` and the vertex
/// evaluations `d_0, d_1: Ã → A`.
pub struct PathObject {
    pub tilde: TensorAlgebra,
    base_dim: usize,
}

/// Basis of `N*(Δ¹)` in [`CochainAlgebra`] order.
const V0: usize = 0;
const V1: usize = 1;

impl PathObject {
    pub fn new(a: Box<dyn FiniteEAlgebra>) -> Result<Self> {
        let coeffs = a.coefficients();
        let base_dim = a.dim();
        let interval = CochainAlgebra::new(SimplicialModel::interval(), coeffs, false);
        Ok(PathObject { tilde: TensorAlgebra::new(Box::new(interval), a)?, base_dim })
    }

    pub fn base(&self) -> &dyn FiniteEAlgebra {
        self.tilde.right.as_ref()
    }

    /// `s_0(a) = (v_0* + v_1*)⊗a`.
    pub fn s0(&self, a: usize) -> FormalSum<usize> {
        let coeffs = self.tilde.coefficients();
        FormalSum::from_terms(coeffs, [(self.tilde.index(V0, a), 1), (self.tilde.index(V1, a), 1)])
    }

    /// Evaluation at vertex 1.
    pub fn d0(&self, k: usize) -> FormalSum<usize> {
        self.vertex(k, V1)
    }

    /// Evaluation at vertex 0.
    pub fn d1(&self, k: usize) -> FormalSum<usize> {
        self.vertex(k, V0)
    }

    fn vertex(&self, k: usize, v: usize) -> FormalSum<usize> {
        let (i, a) = self.tilde.split(k);
        let coeffs = self.tilde.coefficients();
        if i == v {
            FormalSum::single(coeffs, a)
        } else {
            FormalSum::zero(coeffs)
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }
}

/// The cochain complex of an algebra presented as a chain complex with
/// reversed grading: position `j` holds upper degree `top − j`.
pub fn reversed_complex<A: FiniteEAlgebra + ?Sized>(a: &A, top: usize) -> ChainComplex {
    let by_degree = basis_by_degree(a, top);
    let dims: Vec<usize> = (0..=top).map(|j| by_degree[top - j].len()).collect();
    let mut boundary = vec![Matrix::zeros(0, dims[0])];
    for j in 1..=top {
        let (src, dst) = (&by_degree[top - j], &by_degree[top - j + 1]);
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (col, &i) in src.iter().enumerate() {
            for (&t, &c) in &a.differential(i) {
                let row = dst.iter().position(|&x| x == t).expect("differential raises degree by one");
                m.add_to(row, col, c);
            }
        }
        boundary.push(m);
    }
    ChainComplex::new(dims, boundary).expect("shapes agree")
}

fn basis_by_degree<A: FiniteEAlgebra + ?Sized>(a: &A, top: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); top + 1];
    for i in 0..a.dim() {
        out[a.degree(i)].push(i);
    }
    out
}

fn top_degree<A: FiniteEAlgebra + ?Sized>(a: &A) -> usize {
    (0..a.dim()).map(|i| a.degree(i)).max().unwrap_or(0)
}

/// Cohomology ranks by upper degree.
pub fn cohomology_ranks<A: FiniteEAlgebra + ?Sized>(a: &A, field: Field) -> Vec<usize> {
    let top = top_degree(a);
    let mut b = reversed_complex(a, top).betti(field);
    b.reverse();
    b
}

/// Rank in degree `degree` of the map induced by a degree-preserving chain
/// map `f` given on basis elements.
pub fn induced_cohomology_rank<A, B>(
    a: &A,
    b: &B,
    f: impl Fn(usize) -> FormalSum<usize>,
    degree: usize,
    field: Field,
) -> usize
where
    A: FiniteEAlgebra + ?Sized,
    B: FiniteEAlgebra + ?Sized,
{
    let top = top_degree(a).max(top_degree(b)).max(degree);
    let ca = reversed_complex(a, top);
    let cb = reversed_complex(b, top);
    let (ba, bb) = (basis_by_degree(a, top), basis_by_degree(b, top));
    let maps: Vec<Matrix> = (0..=top)
        .map(|j| {
            let (src, dst) = (&ba[top - j], &bb[top - j]);
            let mut m = Matrix::zeros(dst.len(), src.len());
            for (col, &i) in src.iter().enumerate() {
                for (&t, &c) in &f(i) {
                    if let Some(row) = dst.iter().position(|&x| x == t) {
                        m.add_to(row, col, c);
                    }
                }
            }
            m
        })
        .collect();
    induced_rank(&ca, &cb, &maps, top - degree, field)
}

/// Rank in each degree of a degree-preserving map given on basis elements.
pub fn degreewise_rank<A, B>(a: &A, b: &B, f: impl Fn(usize) -> FormalSum<usize>, degree: usize, field: Field) -> usize
where
    A: FiniteEAlgebra + ?Sized,
    B: FiniteEAlgebra + ?Sized,
{
    let src: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) == degree).collect();
    let dst: Vec<usize> = (0..b.dim()).filter(|&i| b.degree(i) == degree).collect();
    let cols: Vec<Vec<i64>> = src
        .iter()
        .map(|&i| {
            let v = f(i);
            dst.iter().map(|t| v.coeff(t)).collect()
        })
        .collect();
    linalg::rank(&Matrix::from_columns(dst.len(), &cols), field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barratt_eccles::{e_basis, e_differential, for_each_e_basis};
    use crate::table_reduction::{tr, tr_linear};

    const Z: Coefficients = Coefficients::INTEGERS;

    fn s(rows: &[&[usize]]) -> ESimplex {
        ESimplex::from_vecs(rows).unwrap()
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(2, &s(&[&[1, 2], &[2, 1]])), 1);
        assert_eq!(epsilon(2, &s(&[&[2, 1], &[1, 2]])), -1);
        assert_eq!(epsilon(1, &s(&[&[1, 3, 2]])), 1);
        assert_eq!(epsilon(1, &s(&[&[2, 1, 3]])), 0);
        assert_eq!(epsilon(0, &s(&[&[2, 1]])), 1);
        assert_eq!(epsilon(0, &s(&[&[2, 1], &[1, 2]])), 0);
        assert_eq!(epsilon(2, &s(&[&[1, 2, 3], &[3, 1, 2]])), 0);
    }

    #[test]
    fn sphere_values() {
        assert_eq!(sphere_eval(1, &s(&[&[1]])).unwrap(), 1);
        assert_eq!(sphere_eval(1, &s(&[&[1, 2], &[2, 1]])).unwrap(), -1);
        assert_eq!(sphere_eval(1, &s(&[&[1, 2]])).unwrap(), 0);
        assert!(sphere_eval(0, &s(&[&[1]])).is_err());
    }

    #[test]
    fn cone_values() {
        use ConeGen::{C, E};
        assert_eq!(cone_eval(&s(&[&[2, 1]]), &[C, C]).unwrap(), (C, 1));
        assert_eq!(cone_eval(&s(&[&[1, 2]]), &[E, C]).unwrap(), (E, 1));
        assert_eq!(cone_eval(&s(&[&[2, 1]]), &[E, C]).unwrap(), (E, 0));
        let w = s(&[&[1, 2], &[2, 1]]);
        assert_eq!(cone_eval(&w, &[E, E]).unwrap(), (E, sphere_eval(1, &w).unwrap()));
    }

    #[test]
    fn cap_products() {
        let w = s(&[&[1, 2], &[2, 1], &[1, 2]]);
        assert_eq!(cap_epsilon(2, &w, Z), FormalSum::single(Z, s(&[&[2, 1], &[1, 2]])));
        assert_eq!(cap_epsilon(0, &w, Z), FormalSum::single(Z, w.clone()));
        assert!(cap_epsilon(3, &s(&[&[1, 2, 3]]), Z).is_zero());
    }

    #[test]
    fn suspension_on_surjections() {
        let u = Surjection::new(2, vec![1, 2, 1]).unwrap();
        assert_eq!(suspension_morphism_x(&u, Z), FormalSum::single(Z, Surjection::new(2, vec![2, 1]).unwrap()));
        assert!(suspension_morphism_x(&Surjection::new(2, vec![1, 2]).unwrap(), Z).is_zero());
        assert_eq!(
            suspension_morphism_x(&Surjection::new(1, vec![1]).unwrap(), Z),
            FormalSum::single(Z, Surjection::new(1, vec![1]).unwrap())
        );
    }

    #[test]
    fn suspension_square_commutes() {
        for r in 1..=3 {
            for d in 0..=3 {
                for_each_e_basis(r, d, |w| {
                    let lhs = tr(w, Z).flat_map(|u| suspension_morphism_x(u, Z));
                    let rhs = tr_linear(&suspension_morphism_e(&FormalSum::single(Z, w.clone())).inner);
                    assert_eq!(lhs, rhs, "{w:?}");
                });
            }
        }
    }

    #[test]
    fn lambda_compose_sign_is_independent_of_arguments() {
        for r in 1..=3 {
            for s in 1..=3 {
                for k in 1..=r {
                    for du in 0..=2 {
                        for dv in 0..=2 {
                            let base = lambda_compose_exponent(r, du, k, s, dv, &vec![0; r + s - 1]).rem_euclid(2);
                            for mask in 0..(1 << (r + s - 1)) {
                                let degs: Vec<i64> = (0..r + s - 1).map(|i| (mask >> i) & 1).collect();
                                let e = lambda_compose_exponent(r, du, k, s, dv, &degs).rem_euclid(2);
                                assert_eq!(e, base);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_an_operad_morphism() {
        for (r, s) in [(1, 2), (2, 1), (2, 2), (2, 3), (3, 2)] {
            for du in (r - 1)..=(r + 1) {
                for dv in (s - 1)..=(s + 1) {
                    for u in e_basis(r, du).iter().step_by(7).take(6) {
                        for v in e_basis(s, dv).iter().step_by(5).take(6) {
                            for k in 1..=r {
                                let ux = FormalSum::single(Z, u.clone());
                                let vx = FormalSum::single(Z, v.clone());
                                let lhs = suspension_morphism_e(&e_compose_partial(&ux, k, &vx).unwrap());
                                let rhs = suspension_morphism_e(&ux).compose_partial(k, &suspension_morphism_e(&vx)).unwrap();
                                assert_eq!(lhs, rhs, "{u:?} ∘{k} {v:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    fn all_args(dim: usize, r: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..r {
            out = out.into_iter().flat_map(|a| (0..dim).map(move |i| [a.clone(), vec![i]].concat())).collect();
        }
        out
    }

    fn check_leibniz(alg: &dyn FiniteEAlgebra, rmax: usize, dmax: usize) {
        let coeffs = alg.coefficients();
        for r in 1..=rmax {
            for d in 0..=dmax {
                for w in e_basis(r, d) {
                    let wx = FormalSum::single(coeffs, w.clone());
                    let dw = e_differential(&wx);
                    for args in all_args(alg.dim(), r) {
                        let a: Vec<FormalSum<usize>> = args.iter().map(|&i| FormalSum::single(coeffs, i)).collect();
                        let lhs = differential_linear(alg, &evaluate_linear(alg, &wx, &a).unwrap());
                        let mut rhs = evaluate_linear(alg, &dw, &a).unwrap();
                        let mut before = 0;
                        for i in 0..r {
                            let mut b = a.clone();
                            b[i] = alg.differential(args[i]);
                            rhs.add_scaled(&evaluate_linear(alg, &wx, &b).unwrap(), parity(d + before));
                            before += alg.degree(args[i]);
                        }
                        assert_eq!(lhs, rhs, "{w:?} on {args:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn leibniz_for_cone_and_tensor_algebras() {
        check_leibniz(&ConeAlgebra { coeffs: Z }, 3, 3);
        let t = TensorAlgebra::new(Box::new(ConeAlgebra { coeffs: Z }), Box::new(ConeAlgebra { coeffs: Z })).unwrap();
        check_leibniz(&t, 2, 2);
    }

    #[test]
    fn suspension_closed_form() {
        let a = CochainAlgebra::new(SimplicialModel::standard(1), Z, false);
        let sa = suspension_of_algebra(Box::new(a.clone())).unwrap();
        for r in 1..=3 {
            for d in 0..=3 {
                for w in e_basis(r, d) {
                    for args in all_args(a.dim(), r) {
                        let lifted: Vec<usize> = args.iter().map(|&i| sa.index(0, i)).collect();
                        let got = sa.evaluate(&w, &lifted).unwrap();
                        let expected = suspension_eval(&a, &w, &args).unwrap().map_basis(|&i| sa.index(0, i));
                        assert_eq!(got, expected, "{w:?} on {args:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn cone_differential() {
        let a = CochainAlgebra::new(SimplicialModel::standard(1), Z, false);
        let n = a.dim();
        let ca = cone_of_algebra(Box::new(a.clone())).unwrap();
        // δ(c⊗x) = c⊗δx − e⊗x under δc = −e
        for x in 0..n {
            let mut expected = a.differential(x).map_basis(|&i| ca.index(0, i));
            expected.add_term(ca.index(1, x), -1);
            assert_eq!(ca.differential(ca.index(0, x)), expected);
        }
    }

    #[test]
    fn path_object_contracts() {
        let a = CochainAlgebra::new(SimplicialModel::sphere(1).unwrap(), Coefficients::F2, false);
        let p = PathObject::new(Box::new(a)).unwrap();
        for i in 0..p.base_dim() {
            let s0 = p.s0(i);
            let back0 = s0.flat_map(|&k| p.d0(k));
            let back1 = s0.flat_map(|&k| p.d1(k));
            assert_eq!(back0, FormalSum::single(Coefficients::F2, i));
            assert_eq!(back1, FormalSum::single(Coefficients::F2, i));
        }
        let ranks = cohomology_ranks(&p.tilde, Field::F2);
        let mut base = cohomology_ranks(p.base(), Field::F2);
        base.resize(ranks.len(), 0);
        assert_eq!(ranks, base);
        for d in 0..ranks.len() {
            assert_eq!(induced_cohomology_rank(p.base(), &p.tilde, |i| p.s0(i), d, Field::F2), ranks[d]);
        }
    }

    #[test]
    fn ground_field_path_object() {
        let p = PathObject::new(Box::new(GroundField { coeffs: Z })).unwrap();
        let dims: Vec<usize> = (0..=1).map(|d| (0..p.tilde.dim()).filter(|&k| p.tilde.degree(k) == d).count()).collect();
        assert_eq!(dims, vec![2, 1]);
        assert_eq!(cohomology_ranks(&p.tilde, Field::Q), vec![1, 0]);
    }

    #[test]
    fn closed_forms_match_cochains() {
        let s1 = CochainAlgebra::new(SimplicialModel::sphere(1).unwrap(), Z, true);
        let d1 = CochainAlgebra::new(SimplicialModel::interval(), Z, true);
        let cone = ConeAlgebra { coeffs: Z };
        for r in 1..=3 {
            for d in 0..=3 {
                for w in e_basis(r, d) {
                    assert_eq!(s1.evaluate(&w, &vec![0; r]).unwrap(), SphereAlgebra { n: 1, coeffs: Z }.evaluate(&w, &vec![0; r]).unwrap(), "{w:?}");
                    for args in all_args(2, r) {
                        assert_eq!(d1.evaluate(&w, &args).unwrap(), cone.evaluate(&w, &args).unwrap(), "{w:?} {args:?}");
                    }
                }
            }
        }
        for n in 2..=3 {
            let sn = CochainAlgebra::new(SimplicialModel::sphere(n).unwrap(), Z, true);
            for r in 1..=3 {
                for d in 0..=3.max(n * (r - 1)).min(4) {
                    for w in e_basis(r, d) {
                        assert_eq!(sn.evaluate(&w, &vec![0; r]).unwrap(), SphereAlgebra { n, coeffs: Z }.evaluate(&w, &vec![0; r]).unwrap(), "{n} {w:?}");
                    }
                }
            }
        }
    }
}
