//! Interval cuts: the action of surjections on normalized chains, the dual
//! action on cochains, and the cup, cup-i and Steenrod square operations.

use smallvec::SmallVec;

use crate::algebra_core::{Coefficients, FormalSum};
use crate::barratt_eccles::EElement;
use crate::simplicial_sets::{Cochain, Simplex, SimplicialModel};
use crate::surjections::{Surjection, XElement};
use crate::table_reduction::tr_linear;
use crate::{Error, Result};

/// Tensor products of nondegenerate simplices.
pub type ChainTensor = FormalSum<Vec<Simplex>>;

type Ops = SmallVec<[u8; 12]>;

/// Cut points `0 = n_0 ≤ n_1 ≤ … ≤ n_{r+d} = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCut {
    pub points: Vec<usize>,
}

impl IntervalCut {
    /// Checks that the cut is monotone and fits `u` applied to an `n`-simplex.
    pub fn new(points: Vec<usize>, u: &Surjection, n: usize) -> Result<Self> {
        let ok = points.len() == u.len() + 1
            && points.first() == Some(&0)
            && points.last() == Some(&n)
            && points.windows(2).all(|w| w[0] <= w[1]);
        if ok {
            Ok(IntervalCut { points })
        } else {
            Err(Error::Invalid(format!("cut {points:?} does not fit {u:?} on a {n}-simplex")))
        }
    }

    fn check(&self, u: &Surjection) -> Result<()> {
        if self.points.len() != u.len() + 1 {
            return Err(Error::Invalid(format!("cut {:?} does not fit {u:?}", self.points)));
        }
        Ok(())
    }
}

/// Calls `f` on every cut of `{0,…,n}` into `len` intervals, in
/// lexicographic order of the inner cut points.
pub fn for_each_cut(len: usize, n: usize, mut f: impl FnMut(&IntervalCut)) {
    fn rec(points: &mut Vec<usize>, len: usize, n: usize, f: &mut dyn FnMut(&IntervalCut)) {
        if points.len() == len {
            points.push(n);
            let cut = IntervalCut { points: points.clone() };
            f(&cut);
            points.pop();
            return;
        }
        let lo = *points.last().expect("starts at 0");
        for p in lo..=n {
            points.push(p);
            rec(points, len, n, f);
            points.pop();
        }
    }
    rec(&mut vec![0], len, n, &mut f);
}

/// Interval lengths: `n_i − n_{i−1} + 1` for inner intervals, `n_i − n_{i−1}`
/// for final ones.
pub fn interval_lengths(u: &Surjection, cut: &IntervalCut) -> Result<Vec<usize>> {
    cut.check(u)?;
    let mask = u.caesura_mask();
    Ok((0..u.len()).map(|i| cut.points[i + 1] - cut.points[i] + usize::from(mask[i])).collect())
}

/// Permutation sign of sorting the intervals by label, times the position
/// sign `(−1)^{Σ n_i}` over inner intervals.
pub fn cut_sign(u: &Surjection, cut: &IntervalCut) -> Result<i64> {
    let lengths = interval_lengths(u, cut)?;
    let mask = u.caesura_mask();
    Ok(sign_of(u.as_slice(), &mask, &cut.points, &lengths))
}

fn sign_of(labels: &[u8], mask: &[bool], points: &[usize], lengths: &[usize]) -> i64 {
    let mut exp = 0usize;
    for i in 0..labels.len() {
        if mask[i] {
            exp += points[i + 1];
        }
        for j in i + 1..labels.len() {
            if labels[i] > labels[j] {
                exp += lengths[i] * lengths[j];
            }
        }
    }
    if exp % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Enumerates the signed terms of `AW(u)` on an `n`-simplex as lists of
/// vertex positions per factor. With `prune`, cuts producing a repeated
/// position in some factor are skipped. With `dims`, only terms whose factor
/// dimensions match are produced.
fn for_each_term(
    u: &Surjection,
    n: usize,
    prune: bool,
    dims: Option<&[usize]>,
    f: &mut dyn FnMut(&[Ops], i64),
) {
    struct State<'a> {
        labels: &'a [u8],
        mask: SmallVec<[bool; 16]>,
        n: usize,
        prune: bool,
        dims: Option<&'a [usize]>,
        points: SmallVec<[usize; 16]>,
        lengths: SmallVec<[usize; 16]>,
        factors: Vec<Ops>,
        acc: SmallVec<[usize; 8]>,
    }
    fn rec(s: &mut State, i: usize, f: &mut dyn FnMut(&[Ops], i64)) {
        let len = s.labels.len();
        if i == len {
            if let Some(dims) = s.dims {
                if s.acc.iter().zip(dims).any(|(a, d)| a != d) {
                    return;
                }
            }
            let sign = sign_of(s.labels, &s.mask, &s.points, &s.lengths);
            f(&s.factors, sign);
            return;
        }
        let start = s.points[i];
        let k = s.labels[i] as usize - 1;
        if s.prune && s.factors[k].last() == Some(&(start as u8)) {
            return;
        }
        let ends = if i + 1 == len { s.n..=s.n } else { start..=s.n };
        for end in ends {
            let length = end - start + usize::from(s.mask[i]);
            if let Some(dims) = s.dims {
                if s.acc[k] + length > dims[k] {
                    break;
                }
            }
            let base = s.factors[k].len();
            s.factors[k].extend((start..=end).map(|v| v as u8));
            s.points.push(end);
            s.lengths.push(length);
            s.acc[k] += length;
            rec(s, i + 1, f);
            s.acc[k] -= length;
            s.lengths.pop();
            s.points.pop();
            s.factors[k].truncate(base);
        }
    }
    let r = u.arity();
    if dims.is_some_and(|d| d.len() != r) {
        return;
    }
    let mut points = SmallVec::new();
    points.push(0);
    let mut s = State {
        labels: u.as_slice(),
        mask: u.caesura_mask(),
        n,
        prune,
        dims,
        points,
        lengths: SmallVec::new(),
        factors: vec![Ops::new(); r],
        acc: SmallVec::from_elem(0, r),
    };
    rec(&mut s, 0, f);
}

/// Terms of `AW(u)` applied to the simplex with the given (possibly
/// repeated) vertex sequence, degenerate factors included. Each factor is
/// the vertex sequence it selects.
pub fn aw_apply_vertices(u: &Surjection, vertices: &[usize], coeffs: Coefficients) -> FormalSum<Vec<Vec<usize>>> {
    let mut out = FormalSum::zero(coeffs);
    if vertices.is_empty() {
        return out;
    }
    for_each_term(u, vertices.len() - 1, false, None, &mut |factors, sign| {
        let t = factors.iter().map(|ops| ops.iter().map(|&c| vertices[c as usize]).collect()).collect();
        out.add_term(t, sign);
    });
    out
}

/// `AW(u)(x) = Σ ± x(C_(1))⊗…⊗x(C_(r))`, dropping tuples with a degenerate factor.
pub fn aw_apply(u: &Surjection, x: &Simplex, model: &SimplicialModel, coeffs: Coefficients) -> Result<ChainTensor> {
    if !model.contains(x) {
        return Err(Error::InvalidSimplex(format!("{x:?} is not a simplex of the model")));
    }
    let mut out = FormalSum::zero(coeffs);
    add_aw_terms(u, x, model, 1, None, &mut out);
    Ok(out)
}

fn add_aw_terms(
    u: &Surjection,
    x: &Simplex,
    model: &SimplicialModel,
    coeff: i64,
    dims: Option<&[usize]>,
    out: &mut ChainTensor,
) {
    for_each_term(u, x.dim(), true, dims, &mut |factors, sign| {
        let mut t = Vec::with_capacity(factors.len());
        for ops in factors {
            let ops: SmallVec<[usize; 12]> = ops.iter().map(|&c| c as usize).collect();
            match model.evaluate_unchecked(x, &ops) {
                Some(y) => t.push(y),
                None => return,
            }
        }
        out.add_term(t, coeff * sign);
    });
}

/// Linear extension of [`aw_apply`].
pub fn aw_apply_linear(w: &XElement, x: &Simplex, model: &SimplicialModel) -> Result<ChainTensor> {
    if !model.contains(x) {
        return Err(Error::InvalidSimplex(format!("{x:?} is not a simplex of the model")));
    }
    let mut out = FormalSum::zero(w.coefficients());
    for (u, &c) in w {
        add_aw_terms(u, x, model, c, None, &mut out);
    }
    Ok(out)
}

/// Derivation rule `δ(c_1⊗…⊗c_r) = Σ ±c_1⊗…⊗∂c_i⊗…⊗c_r` with the sign
/// `(−1)^{|c_1|+…+|c_{i−1}|}`.
pub fn tensor_differential(model: &SimplicialModel, t: &ChainTensor) -> ChainTensor {
    let mut out = FormalSum::zero(t.coefficients());
    for (tuple, &c) in t {
        let mut before = 0;
        for i in 0..tuple.len() {
            let sign = if before % 2 == 0 { c } else { -c };
            for (face, s) in model.boundary(&tuple[i]) {
                let mut next = tuple.clone();
                next[i] = face;
                out.add_term(next, sign * s);
            }
            before += tuple[i].dim();
        }
    }
    out
}

/// Substitutes `g` into factor `k` (1-based) of every tuple of `t`, with the
/// Koszul sign `(−1)^{deg g·(|c_1|+…+|c_{k−1}|)}`.
pub fn tensor_substitute(
    t: &ChainTensor,
    k: usize,
    deg_g: usize,
    mut g: impl FnMut(&Simplex) -> ChainTensor,
) -> ChainTensor {
    let mut out = FormalSum::zero(t.coefficients());
    for (tuple, &c) in t {
        let before: usize = tuple[..k - 1].iter().map(Simplex::dim).sum();
        let sign = if (deg_g * before) % 2 == 0 { c } else { -c };
        for (inner, &ci) in &g(&tuple[k - 1]) {
            let mut next = tuple[..k - 1].to_vec();
            next.extend(inner.iter().cloned());
            next.extend(tuple[k..].iter().cloned());
            out.add_term(next, sign * ci);
        }
    }
    out
}

fn homogeneous_x(w: &XElement) -> Result<Option<(usize, usize)>> {
    let mut it = w.basis();
    let Some(first) = it.next() else { return Ok(None) };
    let shape = (first.arity(), first.degree());
    if it.any(|u| (u.arity(), u.degree()) != shape) {
        return Err(Error::Invalid("operation is not homogeneous".into()));
    }
    Ok(Some(shape))
}

/// `⟨w(f_1,…,f_r), x⟩ = (−1)^{d·Σ|f_k|} ⟨f_1⊗…⊗f_r, AW(w)(x)⟩` for
/// `w ∈ X(r)_d`. The result has degree `Σ|f_k| − d`; a negative degree gives
/// the zero cochain of degree 0.
pub fn cochain_eval_x(w: &XElement, fs: &[&Cochain], model: &SimplicialModel) -> Result<Cochain> {
    let coeffs = w.coefficients();
    if let Some(f) = fs.iter().find(|f| f.coefficients() != coeffs) {
        return Err(Error::CharacteristicMismatch(coeffs.characteristic(), f.coefficients().characteristic()));
    }
    let total: usize = fs.iter().map(|f| f.degree).sum();
    let Some((r, d)) = homogeneous_x(w)? else {
        return Ok(Cochain::zero(total, coeffs));
    };
    if r != fs.len() {
        return Err(Error::ArityMismatch { expected: r, got: fs.len() });
    }
    if total < d {
        return Ok(Cochain::zero(0, coeffs));
    }
    let degree = total - d;
    let dims: Vec<usize> = fs.iter().map(|f| f.degree).collect();
    let mut pair_exp = 0;
    for j in 0..r {
        pair_exp += dims[j] * dims[..j].iter().sum::<usize>();
    }
    let global = if (pair_exp + d * total) % 2 == 0 { 1 } else { -1 };
    let mut values = FormalSum::zero(coeffs);
    for x in model.simplices(degree) {
        let mut value = 0i64;
        for (u, &c) in w {
            for_each_term(u, x.dim(), true, Some(&dims), &mut |factors, sign| {
                let mut prod = c * sign;
                for (ops, f) in factors.iter().zip(fs) {
                    let ops: SmallVec<[usize; 12]> = ops.iter().map(|&c| c as usize).collect();
                    let v = match model.evaluate_unchecked(x, &ops) {
                        Some(y) => f.eval(&y),
                        None => 0,
                    };
                    if v == 0 {
                        return;
                    }
                    prod = coeffs.mul(prod, v);
                }
                value = coeffs.add(value, prod);
            });
        }
        values.add_term(x.clone(), global * value);
    }
    Ok(Cochain { degree, values })
}

/// Evaluation of a Barratt–Eccles operation through table reduction.
pub fn cochain_eval(w: &EElement, fs: &[&Cochain], model: &SimplicialModel) -> Result<Cochain> {
    cochain_eval_x(&tr_linear(w), fs, model)
}

/// Cup product, the operation of `(1,2)`.
pub fn cup(f: &Cochain, g: &Cochain, model: &SimplicialModel) -> Result<Cochain> {
    cup_i(f, g, 0, model)
}

/// Cup-i product, the operation of `θ_i = (1,2,1,2,…)`.
pub fn cup_i(f: &Cochain, g: &Cochain, i: usize, model: &SimplicialModel) -> Result<Cochain> {
    let theta = FormalSum::single(f.coefficients(), Surjection::theta(i));
    cochain_eval_x(&theta, &[f, g], model)
}

/// `Sq^k(f) = f ∪_{deg f − k} f` for a mod 2 cocycle `f`.
pub fn steenrod_square(k: usize, f: &Cochain, model: &SimplicialModel) -> Result<Cochain> {
    if f.coefficients().characteristic() != 2 {
        return Err(Error::BadCharacteristic(f.coefficients().characteristic()));
    }
    if k > f.degree {
        return Err(Error::Invalid(format!("Sq^{k} of a degree {} class", f.degree)));
    }
    if !model.cochain_differential(f).is_zero() {
        return Err(Error::InvalidCochain("not a cocycle".into()));
    }
    cup_i(f, f, f.degree - k, model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barratt_eccles::ESimplex;
    use crate::linalg::Field;
    use crate::surjections::{for_each_x_basis, x_differential};

    const Z: Coefficients = Coefficients::INTEGERS;

    fn x(r: usize, seq: &[usize]) -> Surjection {
        Surjection::new(r, seq.to_vec()).unwrap()
    }

    fn sx(v: &[usize]) -> Simplex {
        Simplex::new(v)
    }

    fn top(n: usize) -> Simplex {
        Simplex::new(&(0..=n).collect::<Vec<_>>())
    }

    #[test]
    fn lengths_and_signs() {
        let u = x(3, &[3, 1, 2, 3, 2]);
        let n = 9;
        for_each_cut(5, n, |cut| {
            let p = &cut.points;
            let l = interval_lengths(&u, cut).unwrap();
            let m1 = p[2] - p[1];
            let m2 = (p[3] - p[2] + 1) + (n - p[4]);
            let m3 = (p[1] + 1) + (p[4] - p[3]);
            assert_eq!((l[1], l[2] + l[4], l[0] + l[3]), (m1, m2, m3));
            let (n1, n2, n3, n4) = (p[1], p[2], p[3], p[4]);
            let perm = (n1 + 1) * (n2 - n1) + (n1 + 1) * (n3 - n2 + 1) + (n1 + 1) * (n - n4) + (n4 - n3) * (n - n4);
            let exp = n1 + n3 + perm;
            assert_eq!(cut_sign(&u, cut).unwrap(), if exp % 2 == 0 { 1 } else { -1 });
        });
        let cut = IntervalCut::new(vec![0, 2, 2, 5], &x(2, &[1, 2, 1]), 5).unwrap();
        assert_eq!(interval_lengths(&x(2, &[1, 2, 1]), &cut).unwrap(), vec![3, 0, 3]);
        assert!(IntervalCut::new(vec![0, 3, 2, 5], &x(2, &[1, 2, 1]), 5).is_err());
    }

    #[test]
    fn cup_one_exponents() {
        let u = x(2, &[1, 2, 1]);
        let v = x(2, &[1, 2, 1, 2]);
        let n = 6;
        for_each_cut(3, n, |cut| {
            let (i, j) = (cut.points[1], cut.points[2]);
            let exp = (n - j) * (j - i) + i;
            assert_eq!(cut_sign(&u, cut).unwrap(), if exp % 2 == 0 { 1 } else { -1 });
        });
        for_each_cut(4, n, |cut| {
            let (i, j, k) = (cut.points[1], cut.points[2], cut.points[3]);
            let exp = (k - j) * (j - i + 1) + i + j;
            assert_eq!(cut_sign(&v, cut).unwrap(), if exp % 2 == 0 { 1 } else { -1 });
        });
    }

    #[test]
    fn alexander_whitney() {
        for n in 0..=4 {
            let m = SimplicialModel::standard(n);
            let got = aw_apply(&x(2, &[1, 2]), &top(n), &m, Z).unwrap();
            let expected = FormalSum::from_terms(
                Z,
                (0..=n).map(|i| {
                    (vec![sx(&(0..=i).collect::<Vec<_>>()), sx(&(i..=n).collect::<Vec<_>>())], 1)
                }),
            );
            assert_eq!(got, expected);
            assert_eq!(aw_apply(&x(1, &[1]), &top(n), &m, Z).unwrap(), FormalSum::single(Z, vec![top(n)]));
        }
    }

    #[test]
    fn chain_map_on_simplices() {
        let m = SimplicialModel::standard(4);
        for r in 1..=3 {
            for d in 0..=2 {
                for_each_x_basis(r, d, |u| {
                    let ux = FormalSum::single(Z, u.clone());
                    let du = x_differential(&ux);
                    for k in 0..=4 {
                        for s in m.simplices(k) {
                            let lhs = tensor_differential(&m, &aw_apply(u, s, &m, Z).unwrap());
                            let mut rhs = aw_apply_linear(&du, s, &m).unwrap();
                            let sign = if d % 2 == 0 { 1 } else { -1 };
                            for (face, c) in m.boundary(s) {
                                rhs.add_scaled(&aw_apply(u, &face, &m, Z).unwrap(), sign * c);
                            }
                            assert_eq!(lhs, rhs, "{u:?} on {s:?}");
                        }
                    }
                });
            }
        }
    }

    #[test]
    fn degenerate_inputs_give_degenerate_factors() {
        let u = x(2, &[1, 2, 1]);
        let t = aw_apply_vertices(&u, &[0, 1, 1, 2], Z);
        assert!(!t.is_zero());
        for (tuple, _) in &t {
            assert!(tuple.iter().any(|f| f.windows(2).any(|w| w[0] == w[1])));
        }
    }

    #[test]
    fn cup_products_on_the_interval() {
        let m = SimplicialModel::interval();
        let c0 = Cochain::dual(&sx(&[0]), Z);
        let c = Cochain::dual(&sx(&[1]), Z);
        let e = Cochain::dual(&sx(&[0, 1]), Z);
        let one = m.unit_cochain(Z);
        assert_eq!(cup(&c0, &e, &m).unwrap(), e);
        assert_eq!(cup(&e, &c, &m).unwrap(), e);
        assert!(cup(&c, &e, &m).unwrap().is_zero());
        for f in [&c0, &c, &e] {
            assert_eq!(&cup(&one, f, &m).unwrap(), f);
            assert_eq!(&cup(f, &one, &m).unwrap(), f);
        }
        // Leibniz for δ(c·c) = δc·c + c·δc
        let lhs = m.cochain_differential(&cup(&c, &c, &m).unwrap());
        let rhs = cup(&m.cochain_differential(&c), &c, &m).unwrap().add(&cup(&c, &m.cochain_differential(&c), &m).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_i_vanishes_above_the_degrees() {
        let m = SimplicialModel::standard(3);
        for a in m.simplices(1) {
            for b in m.simplices(2) {
                let f = Cochain::dual(a, Z);
                let g = Cochain::dual(b, Z);
                for i in 2..=3 {
                    assert!(cup_i(&f, &g, i, &m).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn operations_through_table_reduction() {
        let m = SimplicialModel::standard(2);
        let mu0 = FormalSum::single(Z, ESimplex::from_vecs(&[&[1, 2]]).unwrap());
        let f = Cochain::dual(&sx(&[0, 1]), Z);
        let g = Cochain::dual(&sx(&[1, 2]), Z);
        assert_eq!(cochain_eval(&mu0, &[&f, &g], &m).unwrap(), cup(&f, &g, &m).unwrap());
        assert!(cochain_eval(&mu0, &[&f], &m).is_err());
    }

    #[test]
    fn squares_on_rp2() {
        let m = SimplicialModel::rp2();
        let f2 = Coefficients::F2;
        // a cocycle representing the generator of H¹: edges crossing a fixed cut
        let mut gen = None;
        let edges = m.simplices(1).to_vec();
        for mask in 1u32..(1 << edges.len()) {
            let f = Cochain {
                degree: 1,
                values: FormalSum::from_terms(
                    f2,
                    edges.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, e)| (e.clone(), 1)),
                ),
            };
            if m.cochain_differential(&f).is_zero() && !m.is_coboundary(&f, Field::F2) {
                gen = Some(f);
                break;
            }
        }
        let x1 = gen.expect("H¹ is nonzero");
        let sq = steenrod_square(1, &x1, &m).unwrap();
        assert!(m.cochain_differential(&sq).is_zero());
        assert!(!m.is_coboundary(&sq, Field::F2));
        assert_eq!(steenrod_square(0, &x1, &m).unwrap(), x1);
        assert!(steenrod_square(2, &x1, &m).is_err());
    }

    #[test]
    fn evaluation_is_a_chain_map() {
        use crate::barratt_eccles::{e_differential, for_each_e_basis};
        let m = SimplicialModel::standard(3);
        let duals: Vec<Cochain> = (0..=3).flat_map(|k| m.simplices(k).to_vec()).map(|s| Cochain::dual(&s, Z)).collect();
        for r in 1..=2 {
            for d in 0..=2 {
                for_each_e_basis(r, d, |w| {
                    let wx = FormalSum::single(Z, w.clone());
                    let dw = e_differential(&wx);
                    let mut idx = vec![0; r];
                    loop {
                        let fs: Vec<&Cochain> = idx.iter().map(|&i| &duals[i]).collect();
                        let total: usize = fs.iter().map(|f| f.degree).sum();
                        if total + 1 >= d {
                            let lhs = m.cochain_differential(&cochain_eval(&wx, &fs, &m).unwrap());
                            let mut rhs = cochain_eval(&dw, &fs, &m).unwrap();
                            let mut before = 0;
                            for i in 0..r {
                                let df = m.cochain_differential(fs[i]);
                                let mut gs = fs.clone();
                                gs[i] = &df;
                                let sign = if (d + before) % 2 == 0 { 1 } else { -1 };
                                rhs = rhs.add(&cochain_eval(&wx, &gs, &m).unwrap().scale(sign)).unwrap();
                                before += fs[i].degree;
                            }
                            assert_eq!(lhs.values, rhs.values, "{w:?} {fs:?}");
                        }
                        let mut j = 0;
                        while j < r {
                            idx[j] += 1;
                            if idx[j] < duals.len() {
                                break;
                            }
                            idx[j] = 0;
                            j += 1;
                        }
                        if j == r {
                            break;
                        }
                    }
                });
            }
        }
    }
}
