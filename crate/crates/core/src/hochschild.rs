//! Normalized Hochschild cochains of finite-dimensional unital associative
//! algebras: differential, cup product, braces and the Gerstenhaber bracket.

use serde::{Deserialize, Serialize};

use crate::algebra_core::{Coefficients, Permutation};
use crate::barratt_eccles::ESimplex;
use crate::{Error, Result};

/// Structure constants `mult[i][j][k]` of `b_i·b_j = Σ_k c_{ij}^k b_k`. The
/// unit is the first basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<i64>,
    pub mult: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativeAlgebra {
    spec: AlgebraSpec,
    coeffs: Coefficients,
}

impl AssociativeAlgebra {
    /// Validates shape, unit placement, unit laws and associativity.
    pub fn new(spec: AlgebraSpec, coeffs: Coefficients) -> Result<Self> {
        let n = spec.dim;
        let bad = |m: &str| Err(Error::InvalidAlgebra(m.into()));
        if n == 0 || spec.basis.len() != n || spec.unit.len() != n {
            return bad("dimension does not match basis or unit");
        }
        if spec.mult.len() != n || spec.mult.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return bad("structure constants have the wrong shape");
        }
        let mut spec = spec;
        for row in &mut spec.mult {
            for v in row.iter_mut() {
                for c in v.iter_mut() {
                    *c = coeffs.reduce(*c);
                }
            }
        }
        if spec.unit.iter().enumerate().any(|(k, &c)| coeffs.reduce(c) != i64::from(k == 0)) {
            return bad("the unit must be the first basis element");
        }
        let alg = AssociativeAlgebra { spec, coeffs };
        for i in 0..n {
            let e = alg.basis_vector(i);
            if alg.mul(&alg.basis_vector(0), &e) != e || alg.mul(&e, &alg.basis_vector(0)) != e {
                return bad("unit law fails");
            }
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k));
                    if alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c)) {
                        return Err(Error::InvalidAlgebra(format!("associativity fails on ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn from_json(json: &str, coeffs: Coefficients) -> Result<Self> {
        let spec: AlgebraSpec = serde_json::from_str(json).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
        Self::new(spec, coeffs)
    }

    /// Upper triangular 2×2 matrices, basis `1, E12, E22`.
    pub fn upper_triangular(coeffs: Coefficients) -> Self {
        let mut mult = vec![vec![vec![0; 3]; 3]; 3];
        for i in 0..3 {
            mult[0][i][i] = 1;
            mult[i][0][i] = 1;
        }
        mult[1][2][1] = 1;
        mult[2][2][2] = 1;
        let spec = AlgebraSpec { dim: 3, basis: vec!["1".into(), "E12".into(), "E22".into()], unit: vec![1, 0, 0], mult };
        Self::new(spec, coeffs).expect("upper triangular matrices form an algebra")
    }

    /// `F[x]/x³`, basis `1, x, x²`.
    pub fn truncated_polynomial(coeffs: Coefficients) -> Self {
        let mut mult = vec![vec![vec![0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 - i {
                mult[i][j][i + j] = 1;
            }
        }
        let spec = AlgebraSpec { dim: 3, basis: vec!["1".into(), "x".into(), "x^2".into()], unit: vec![1, 0, 0], mult };
        Self::new(spec, coeffs).expect("truncated polynomials form an algebra")
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeffs
    }

    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        (0..self.dim()).map(|k| i64::from(k == i)).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let ab = self.coeffs.mul(a[i], b[j]);
                for k in 0..n {
                    out[k] = self.coeffs.add(out[k], self.coeffs.mul(ab, self.spec.mult[i][j][k]));
                }
            }
        }
        out
    }

    fn mul_basis(&self, i: usize, j: usize) -> &[i64] {
        &self.spec.mult[i][j]
    }
}

/// A multilinear map `A^{⊗m} → A`, tabulated on basis tuples. The entry for
/// `(a_1,…,a_m)` is at row `Σ a_i·n^{m−i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HochschildCochain {
    pub arity: usize,
    pub dim: usize,
    pub table: Vec<Vec<i64>>,
}

impl HochschildCochain {
    pub fn zero(arity: usize, dim: usize) -> Self {
        HochschildCochain { arity, dim, table: vec![vec![0; dim]; dim.pow(arity as u32)] }
    }

    /// Builds a cochain and projects away the slots with a unit argument.
    pub fn new(arity: usize, dim: usize, table: Vec<Vec<i64>>, coeffs: Coefficients) -> Result<Self> {
        Ok(Self::raw(arity, dim, table, coeffs)?.normalized())
    }

    /// Builds a cochain without normalizing.
    pub fn raw(arity: usize, dim: usize, table: Vec<Vec<i64>>, coeffs: Coefficients) -> Result<Self> {
        if table.len() != dim.pow(arity as u32) || table.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidCochain("table has the wrong shape".into()));
        }
        let table = table.into_iter().map(|v| v.into_iter().map(|c| coeffs.reduce(c)).collect()).collect();
        Ok(HochschildCochain { arity, dim, table })
    }

    /// Degree `arity − 1` used in brace and bracket signs.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn args_of(&self, row: usize) -> Vec<usize> {
        let mut args = vec![0; self.arity];
        let mut r = row;
        for a in args.iter_mut().rev() {
            *a = r % self.dim;
            r /= self.dim;
        }
        args
    }

    pub fn row_of(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.dim + a)
    }

    pub fn value(&self, args: &[usize]) -> &[i64] {
        &self.table[self.row_of(args)]
    }

    pub fn normalized(mut self) -> Self {
        for row in 0..self.table.len() {
            if self.args_of(row).contains(&0) {
                self.table[row].iter_mut().for_each(|c| *c = 0);
            }
        }
        self
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.table.len()).all(|row| !self.args_of(row).contains(&0) || self.table[row].iter().all(|&c| c == 0))
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|v| v.iter().all(|&c| c == 0))
    }

    pub fn add(&self, other: &Self, coeffs: Coefficients) -> Result<Self> {
        self.combine(other, 1, coeffs)
    }

    pub fn sub(&self, other: &Self, coeffs: Coefficients) -> Result<Self> {
        self.combine(other, -1, coeffs)
    }

    fn combine(&self, other: &Self, s: i64, coeffs: Coefficients) -> Result<Self> {
        if (self.arity, self.dim) != (other.arity, other.dim) {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| coeffs.add(x, coeffs.mul(s, y))).collect())
            .collect();
        Ok(HochschildCochain { arity: self.arity, dim: self.dim, table })
    }

    pub fn scale(&self, c: i64, coeffs: Coefficients) -> Self {
        let table = self.table.iter().map(|v| v.iter().map(|&x| coeffs.mul(c, x)).collect()).collect();
        HochschildCochain { arity: self.arity, dim: self.dim, table }
    }
}

fn check_dim(alg: &AssociativeAlgebra, fs: &[&HochschildCochain]) -> Result<()> {
    match fs.iter().find(|f| f.dim != alg.dim()) {
        Some(f) => Err(Error::InvalidCochain(format!("cochain on a {}-dimensional algebra", f.dim))),
        None => Ok(()),
    }
}

fn add_into(acc: &mut [i64], v: &[i64], s: i64, coeffs: Coefficients) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = coeffs.add(*a, coeffs.mul(s, x));
    }
}

/// The multiplication `μ(a,b) = ab` as an (unnormalized) arity-2 cochain.
pub fn multiplication_cochain(alg: &AssociativeAlgebra) -> HochschildCochain {
    let n = alg.dim();
    let mut f = HochschildCochain::zero(2, n);
    for i in 0..n {
        for j in 0..n {
            f.table[i * n + j] = alg.mul_basis(i, j).to_vec();
        }
    }
    f
}

/// The identity map as an arity-1 cochain.
pub fn identity_cochain(alg: &AssociativeAlgebra) -> HochschildCochain {
    let n = alg.dim();
    HochschildCochain { arity: 1, dim: n, table: (0..n).map(|i| alg.basis_vector(i)).collect() }
}

/// `δf(a_0,…,a_m) = a_0·f(a_1,…,a_m) + Σ_i (−1)^i f(…,a_{i−1}a_i,…) + (−1)^{m+1} f(a_0,…,a_{m−1})·a_m`.
pub fn hochschild_differential(alg: &AssociativeAlgebra, f: &HochschildCochain) -> Result<HochschildCochain> {
    check_dim(alg, &[f])?;
    let (n, m, coeffs) = (alg.dim(), f.arity, alg.coefficients());
    let mut out = HochschildCochain::zero(m + 1, n);
    for row in 0..out.table.len() {
        let a = out.args_of(row);
        let mut acc = vec![0; n];
        add_into(&mut acc, &alg.mul(&alg.basis_vector(a[0]), f.value(&a[1..])), 1, coeffs);
        for i in 1..=m {
            let s = if i % 2 == 0 { 1 } else { -1 };
            let prod = alg.mul_basis(a[i - 1], a[i]);
            for (k, &c) in prod.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut args = a[..i - 1].to_vec();
                args.push(k);
                args.extend_from_slice(&a[i + 1..]);
                add_into(&mut acc, f.value(&args), s * c, coeffs);
            }
        }
        let s = if (m + 1) % 2 == 0 { 1 } else { -1 };
        add_into(&mut acc, &alg.mul(f.value(&a[..m]), &alg.basis_vector(a[m])), s, coeffs);
        out.table[row] = acc;
    }
    Ok(out)
}

/// `(f⌣g)(a_1,…,a_{m+n}) = f(a_1,…,a_m)·g(a_{m+1},…,a_{m+n})`.
pub fn hochschild_cup(alg: &AssociativeAlgebra, f: &HochschildCochain, g: &HochschildCochain) -> Result<HochschildCochain> {
    check_dim(alg, &[f, g])?;
    let mut out = HochschildCochain::zero(f.arity + g.arity, alg.dim());
    for row in 0..out.table.len() {
        let a = out.args_of(row);
        out.table[row] = alg.mul(f.value(&a[..f.arity]), g.value(&a[f.arity..]));
    }
    Ok(out)
}

/// `f{g_1,…,g_k}`: the sum over order-preserving insertions of the `g_l`
/// into inputs of `f`, with sign `(−1)^{Σ_l |g_l|·i_l}` where `i_l` counts
/// the arguments preceding `g_l`.
pub fn brace(alg: &AssociativeAlgebra, f: &HochschildCochain, gs: &[&HochschildCochain]) -> Result<HochschildCochain> {
    let mut all = vec![f];
    all.extend_from_slice(gs);
    check_dim(alg, &all)?;
    let (n, coeffs) = (alg.dim(), alg.coefficients());
    let arity = (f.arity + gs.iter().map(|g| g.arity).sum::<usize>()).saturating_sub(gs.len());
    if gs.len() > f.arity {
        return Ok(HochschildCochain::zero(arity, n));
    }
    let mut out = HochschildCochain::zero(arity, n);
    // slots of f receiving g_1,…,g_k
    let mut placements = Vec::new();
    choose_increasing(f.arity, gs.len(), &mut Vec::new(), &mut placements);
    for slots in placements {
        // arguments before g_l: f-slots before it plus earlier g arities
        let mut exp = 0i64;
        let mut extra = 0i64;
        for (l, &slot) in slots.iter().enumerate() {
            let start = slot as i64 + extra;
            exp += gs[l].degree() * start;
            extra += gs[l].degree();
        }
        let sign = if exp.rem_euclid(2) == 0 { 1 } else { -1 };
        for row in 0..out.table.len() {
            let a = out.args_of(row);
            // evaluate f on mixed inputs: plain arguments and vectors g_l(…)
            let mut inputs: Vec<Vec<i64>> = Vec::with_capacity(f.arity);
            let mut pos = 0;
            let mut l = 0;
            for slot in 0..f.arity {
                if l < slots.len() && slots[l] == slot {
                    let g = gs[l];
                    inputs.push(g.value(&a[pos..pos + g.arity]).to_vec());
                    pos += g.arity;
                    l += 1;
                } else {
                    inputs.push(alg.basis_vector(a[pos]));
                    pos += 1;
                }
            }
            let v = eval_multilinear(f, &inputs, coeffs);
            add_into(&mut out.table[row], &v, sign, coeffs);
        }
    }
    Ok(out)
}

fn choose_increasing(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let lo = cur.last().map_or(0, |&x| x + 1);
    for s in lo..n {
        cur.push(s);
        choose_increasing(n, k, cur, out);
        cur.pop();
    }
}

/// `f(v_1,…,v_m)` on arbitrary vectors.
fn eval_multilinear(f: &HochschildCochain, inputs: &[Vec<i64>], coeffs: Coefficients) -> Vec<i64> {
    let n = f.dim;
    let mut out = vec![0; n];
    let supports: Vec<Vec<(usize, i64)>> =
        inputs.iter().map(|v| v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()).collect();
    if supports.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0; inputs.len()];
    loop {
        let args: Vec<usize> = idx.iter().zip(&supports).map(|(&j, s)| s[j].0).collect();
        let c = idx.iter().zip(&supports).fold(1, |acc, (&j, s)| coeffs.mul(acc, s[j].1));
        add_into(&mut out, f.value(&args), c, coeffs);
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < supports[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            return out;
        }
    }
}

/// `[f,g] = f{g} − (−1)^{|f||g|} g{f}`.
pub fn gerstenhaber_bracket(
    alg: &AssociativeAlgebra,
    f: &HochschildCochain,
    g: &HochschildCochain,
) -> Result<HochschildCochain> {
    let coeffs = alg.coefficients();
    let fg = brace(alg, f, &[g])?;
    let gf = brace(alg, g, &[f])?;
    let s = if (f.degree() * g.degree()).rem_euclid(2) == 0 { 1 } else { -1 };
    fg.sub(&gf.scale(s, coeffs), coeffs)
}

/// `δ(f{g}) − (−1)^{|g|}(δf){g} − f{δg} + (−1)^{|f|(|g|+1)} f⌣g + (−1)^{|g|} g⌣f`,
/// which vanishes: braces are homotopies for the commutativity of the cup product.
pub fn brace_homotopy_residual(
    alg: &AssociativeAlgebra,
    f: &HochschildCochain,
    g: &HochschildCochain,
) -> Result<HochschildCochain> {
    let coeffs = alg.coefficients();
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    let (df, dg) = (hochschild_differential(alg, f)?, hochschild_differential(alg, g)?);
    hochschild_differential(alg, &brace(alg, f, &[g])?)?
        .sub(&brace(alg, &df, &[g])?.scale(sign(g.degree()), coeffs), coeffs)?
        .sub(&brace(alg, f, &[&dg])?, coeffs)?
        .add(&hochschild_cup(alg, f, g)?.scale(sign(f.degree() * (g.degree() + 1)), coeffs), coeffs)?
        .add(&hochschild_cup(alg, g, f)?.scale(sign(g.degree()), coeffs), coeffs)
}

/// `(f{g}){h} − f{g{h}} − f{g,h} − (−1)^{|g||h|} f{h,g}`, which vanishes.
pub fn pre_lie_residual(
    alg: &AssociativeAlgebra,
    f: &HochschildCochain,
    g: &HochschildCochain,
    h: &HochschildCochain,
) -> Result<HochschildCochain> {
    let coeffs = alg.coefficients();
    let s = if (g.degree() * h.degree()).rem_euclid(2) == 0 { 1 } else { -1 };
    brace(alg, &brace(alg, f, &[g])?, &[h])?
        .sub(&brace(alg, f, &[&brace(alg, g, &[h])?])?, coeffs)?
        .sub(&brace(alg, f, &[g, h])?, coeffs)?
        .sub(&brace(alg, f, &[h, g])?.scale(s, coeffs), coeffs)
}

/// `w_0 = id`, `w_i = (2,…,i+1,1,i+2,…,r)`: the simplex of `E(r)_{r−1}`
/// whose table reduction is `(1,2,1,3,1,…,1,r,1)`.
pub fn brace_element(r: usize) -> Result<ESimplex> {
    if r < 2 {
        return Err(Error::Invalid("the brace element needs r ≥ 2".into()));
    }
    let perms = (0..r)
        .map(|i| {
            let mut v: Vec<usize> = (2..=i + 1).collect();
            v.push(1);
            v.extend(i + 2..=r);
            Permutation::new(v)
        })
        .collect::<Result<_>>()?;
    ESimplex::new(perms)
}

/// `(1,2,1,3,1,…,1,r,1)`.
pub fn brace_surjection(r: usize) -> Vec<usize> {
    let mut v = vec![1];
    for k in 2..=r {
        v.push(k);
        v.push(1);
    }
    v
}
