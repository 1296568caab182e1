//! Finite simplicial sets presented by vertex selection: standard simplices,
//! spheres `Δⁿ/∂Δⁿ`, the pointed interval and ordered simplicial complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra_core::{Coefficients, FormalSum};
use crate::linalg::{self, ChainComplex, Field, Matrix};
use crate::{Error, Result};

/// A nondegenerate simplex, named by its strictly increasing vertex indices.
/// In a sphere the base point is `[0]` and the top cell `[0,…,n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(pub SmallVec<[u8; 8]>);

impl Simplex {
    pub fn new(vertices: &[usize]) -> Self {
        Simplex(vertices.iter().map(|&v| v as u8).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&v| v as usize)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Input format for ordered simplicial complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedComplexSpec {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Standard(usize),
    Sphere(usize),
    /// `Δ¹` with base point `Δ(0)`.
    Interval,
    Ordered { names: Vec<String>, facets: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct SimplicialModel {
    kind: ModelKind,
    simplices: Vec<Vec<Simplex>>,
    index: BTreeMap<Simplex, usize>,
}

pub type Chain = FormalSum<Simplex>;

/// A cochain of upper degree `degree`, stored as its values on the
/// nondegenerate simplices of that dimension.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    pub values: FormalSum<Simplex>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {:?}", self.degree, self.values)
    }
}

impl Cochain {
    pub fn zero(degree: usize, coeffs: Coefficients) -> Self {
        Cochain { degree, values: FormalSum::zero(coeffs) }
    }

    /// The cochain dual to a simplex.
    pub fn dual(x: &Simplex, coeffs: Coefficients) -> Self {
        Cochain { degree: x.dim(), values: FormalSum::single(coeffs, x.clone()) }
    }

    pub fn eval(&self, x: &Simplex) -> i64 {
        if x.dim() == self.degree {
            self.values.coeff(x)
        } else {
            0
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.values.coefficients()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidCochain("adding cochains of different degrees".into()));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(Cochain { degree, values: self.values.add(&other.values)? })
    }

    pub fn scale(&self, c: i64) -> Cochain {
        Cochain { degree: self.degree, values: self.values.scale(c) }
    }
}

impl SimplicialModel {
    pub fn standard(n: usize) -> Self {
        let all: Vec<usize> = (0..=n).collect();
        Self::from_facets(ModelKind::Standard(n), &[all])
    }

    pub fn sphere(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("spheres are modelled for n ≥ 1".into()));
        }
        let mut simplices = vec![Vec::new(); n + 1];
        simplices[0].push(Simplex::new(&[0]));
        simplices[n].push(Simplex::new(&(0..=n).collect::<Vec<_>>()));
        Ok(Self::with_simplices(ModelKind::Sphere(n), simplices))
    }

    pub fn interval() -> Self {
        Self::from_facets(ModelKind::Interval, &[vec![0, 1]])
    }

    pub fn ordered(spec: &OrderedComplexSpec) -> Result<Self> {
        let pos: BTreeMap<&str, usize> =
            spec.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if pos.len() != spec.vertices.len() {
            return Err(Error::Invalid("duplicate vertex names".into()));
        }
        if spec.vertices.len() > u8::MAX as usize {
            return Err(Error::Invalid("too many vertices".into()));
        }
        let mut facets = Vec::new();
        for f in &spec.facets {
            let mut idx = f
                .iter()
                .map(|v| pos.get(v.as_str()).copied().ok_or_else(|| Error::Invalid(format!("unknown vertex {v}"))))
                .collect::<Result<Vec<usize>>>()?;
            idx.sort_unstable();
            if idx.is_empty() || idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("bad facet {f:?}")));
            }
            facets.push(idx);
        }
        let kind = ModelKind::Ordered { names: spec.vertices.clone(), facets: facets.clone() };
        let mut model = Self::from_facets(kind, &facets);
        // isolated vertices
        for v in 0..spec.vertices.len() {
            let s = Simplex::new(&[v]);
            if !model.index.contains_key(&s) {
                model.simplices[0].push(s);
            }
        }
        model.simplices[0].sort();
        model.reindex();
        Ok(model)
    }

    /// The minimal 6-vertex triangulation of the real projective plane,
    /// vertices `1,…,6` in this order.
    pub fn rp2() -> Self {
        let faces = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
        ];
        let spec = OrderedComplexSpec {
            vertices: (1..=6).map(|v| v.to_string()).collect(),
            facets: faces.iter().map(|f| f.iter().map(|v| v.to_string()).collect()).collect(),
        };
        Self::ordered(&spec).expect("built-in triangulation")
    }

    fn from_facets(kind: ModelKind, facets: &[Vec<usize>]) -> Self {
        let mut set = BTreeSet::new();
        for f in facets {
            for mask in 1u32..(1 << f.len()) {
                let vs: Vec<usize> = (0..f.len()).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                set.insert(Simplex::new(&vs));
            }
        }
        let top = set.iter().map(Simplex::dim).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); top + 1];
        for s in set {
            simplices[s.dim()].push(s);
        }
        Self::with_simplices(kind, simplices)
    }

    fn with_simplices(kind: ModelKind, simplices: Vec<Vec<Simplex>>) -> Self {
        let mut m = SimplicialModel { kind, simplices, index: BTreeMap::new() };
        m.reindex();
        m
    }

    fn reindex(&mut self) {
        self.index = self.simplices.iter().flat_map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i))).collect();
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Nondegenerate simplices of dimension `d` in canonical order.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// The base point of pointed models.
    pub fn base_point(&self) -> Option<Simplex> {
        match self.kind {
            ModelKind::Sphere(_) | ModelKind::Interval => Some(Simplex::new(&[0])),
            _ => None,
        }
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.kind {
            ModelKind::Ordered { names, .. } => names[v].clone(),
            _ => v.to_string(),
        }
    }

    /// `x(c_0,…,c_m)`; `None` when the result is degenerate.
    pub fn evaluate(&self, x: &Simplex, ops: &[usize]) -> Result<Option<Simplex>> {
        if ops.is_empty() || ops.windows(2).any(|w| w[0] > w[1]) || ops.iter().any(|&c| c > x.dim()) {
            return Err(Error::BadOperator { ops: ops.to_vec(), dim: x.dim() });
        }
        if !self.contains(x) {
            return Err(Error::InvalidSimplex(format!("{x:?} is not a simplex of the model")));
        }
        Ok(self.evaluate_unchecked(x, ops))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &Simplex, ops: &[usize]) -> Option<Simplex> {
        if let ModelKind::Sphere(n) = self.kind {
            return if ops.len() == 1 {
                Some(Simplex::new(&[0]))
            } else if x.dim() == n && ops.len() == n + 1 && ops.iter().enumerate().all(|(i, &c)| i == c) {
                Some(x.clone())
            } else {
                None
            };
        }
        if ops.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Simplex(ops.iter().map(|&c| x.0[c]).collect()))
    }

    /// Signed faces `Σ (−1)^i d_i x` that survive normalization.
    pub fn boundary(&self, x: &Simplex) -> Vec<(Simplex, i64)> {
        let d = x.dim();
        let mut out: Vec<(Simplex, i64)> = Vec::new();
        if d == 0 {
            return out;
        }
        for i in 0..=d {
            let ops: Vec<usize> = (0..=d).filter(|&j| j != i).collect();
            if let Some(f) = self.evaluate_unchecked(x, &ops) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                match out.iter_mut().find(|(g, _)| *g == f) {
                    Some(t) => t.1 += sign,
                    None => out.push((f, sign)),
                }
            }
        }
        out.retain(|t| t.1 != 0);
        out
    }

    pub fn chain_differential(&self, c: &Chain) -> Chain {
        let mut out = FormalSum::zero(c.coefficients());
        for (x, &k) in c {
            for (f, s) in self.boundary(x) {
                out.add_term(f, k * s);
            }
        }
        out
    }

    /// `δf = −(−1)^{deg f} f∘∂`.
    pub fn cochain_differential(&self, f: &Cochain) -> Cochain {
        let sign = if f.degree % 2 == 0 { -1 } else { 1 };
        let mut values = FormalSum::zero(f.coefficients());
        for y in self.simplices(f.degree + 1) {
            let v: i64 = self.boundary(y).iter().map(|(x, s)| s * f.eval(x)).sum();
            values.add_term(y.clone(), sign * v);
        }
        Cochain { degree: f.degree + 1, values }
    }

    /// Constant cochain `1` on vertices.
    pub fn unit_cochain(&self, coeffs: Coefficients) -> Cochain {
        Cochain { degree: 0, values: FormalSum::from_terms(coeffs, self.simplices(0).iter().map(|v| (v.clone(), 1))) }
    }

    /// Normalized chain complex; reduced chains drop the base point.
    pub fn chain_complex(&self, reduced: bool) -> ChainComplex {
        let basis: Vec<Vec<Simplex>> = (0..=self.dim())
            .map(|d| {
                self.simplices(d)
                    .iter()
                    .filter(|s| !(reduced && Some((*s).clone()) == self.base_point()))
                    .cloned()
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mut boundary = vec![Matrix::zeros(0, dims[0])];
        for d in 1..dims.len() {
            let mut m = Matrix::zeros(dims[d - 1], dims[d]);
            for (j, x) in basis[d].iter().enumerate() {
                for (f, s) in self.boundary(x) {
                    if let Some(i) = basis[d - 1].iter().position(|g| *g == f) {
                        m.add_to(i, j, s);
                    }
                }
            }
            boundary.push(m);
        }
        ChainComplex::new(dims, boundary).expect("shapes agree")
    }

    pub fn homology_ranks(&self, field: Field) -> Vec<usize> {
        self.chain_complex(false).betti(field)
    }

    /// Whether `f` lies in the image of the cochain differential.
    pub fn is_coboundary(&self, f: &Cochain, field: Field) -> bool {
        if f.is_zero() {
            return true;
        }
        if f.degree == 0 || f.degree > self.dim() {
            return false;
        }
        let b = &self.chain_complex(false).boundary[f.degree];
        // rows of ∂ span the coboundaries
        let mut rows: Vec<Vec<i64>> = (0..b.rows).map(|i| (0..b.cols).map(|j| b.get(i, j)).collect()).collect();
        let before = linalg::rank(&Matrix::from_columns(b.cols, &rows), field);
        rows.push(self.simplices(f.degree).iter().map(|x| f.eval(x)).collect());
        linalg::rank(&Matrix::from_columns(b.cols, &rows), field) == before
    }
}

/// `⟨f_1⊗…⊗f_r, c_1⊗…⊗c_r⟩ = (−1)^{Σ_{i<j} deg f_j·deg c_i} Π ⟨f_k, c_k⟩`.
pub fn dual_pairing(fs: &[&Cochain], cs: &[Simplex]) -> i64 {
    if fs.len() != cs.len() {
        return 0;
    }
    let mut prod = 1i64;
    for (f, c) in fs.iter().zip(cs) {
        let v = f.eval(c);
        if v == 0 {
            return 0;
        }
        prod *= v;
    }
    let mut exp = 0;
    for j in 0..fs.len() {
        for c in &cs[..j] {
            exp += fs[j].degree * c.dim();
        }
    }
    if exp % 2 == 0 {
        prod
    } else {
        -prod
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Coefficients = Coefficients::INTEGERS;

    fn sx(v: &[usize]) -> Simplex {
        Simplex::new(v)
    }

    #[test]
    fn evaluation() {
        let d3 = SimplicialModel::standard(3);
        let x = sx(&[0, 1, 2, 3]);
        assert_eq!(d3.evaluate(&x, &[0, 1, 2, 3]).unwrap(), Some(x.clone()));
        assert_eq!(d3.evaluate(&x, &[0, 0, 1]).unwrap(), None);
        assert_eq!(d3.evaluate(&sx(&[1, 3]), &[1]).unwrap(), Some(sx(&[3])));
        assert!(d3.evaluate(&x, &[2, 1]).is_err());
        assert!(d3.evaluate(&x, &[0, 4]).is_err());
        let s2 = SimplicialModel::sphere(2).unwrap();
        let top = sx(&[0, 1, 2]);
        assert_eq!(s2.evaluate(&top, &[0, 1]).unwrap(), None);
        assert_eq!(s2.evaluate(&top, &[1]).unwrap(), Some(sx(&[0])));
        assert_eq!(s2.evaluate(&top, &[0, 1, 2]).unwrap(), Some(top.clone()));
    }

    #[test]
    fn functoriality() {
        let d4 = SimplicialModel::standard(4);
        let x = sx(&[0, 1, 2, 3, 4]);
        let phi = [0, 1, 3, 4];
        let psi = [1, 2, 3];
        let once = d4.evaluate(&x, &phi).unwrap().unwrap();
        let twice = d4.evaluate(&once, &psi).unwrap();
        let composed: Vec<usize> = psi.iter().map(|&i| phi[i]).collect();
        assert_eq!(twice, d4.evaluate(&x, &composed).unwrap());
    }

    #[test]
    fn differentials() {
        let d1 = SimplicialModel::interval();
        let e = FormalSum::single(Z, sx(&[0, 1]));
        assert_eq!(d1.chain_differential(&e), FormalSum::from_terms(Z, [(sx(&[1]), 1), (sx(&[0]), -1)]));
        for n in 1..=3 {
            let s = SimplicialModel::sphere(n).unwrap();
            let top = FormalSum::single(Z, sx(&(0..=n).collect::<Vec<_>>()));
            assert!(s.chain_differential(&top).is_zero());
        }
        // δ(c) = −e with the commutator sign
        let c = Cochain::dual(&sx(&[1]), Z);
        let dc = d1.cochain_differential(&c);
        assert_eq!(dc.degree, 1);
        assert_eq!(dc.eval(&sx(&[0, 1])), -1);
        let e = Cochain::dual(&sx(&[0, 1]), Z);
        assert!(d1.cochain_differential(&e).is_zero());
    }

    #[test]
    fn complexes_square_to_zero() {
        for m in [SimplicialModel::standard(4), SimplicialModel::sphere(3).unwrap(), SimplicialModel::rp2()] {
            assert!(m.chain_complex(false).squares_to_zero());
            for d in 0..m.dim() {
                for x in m.simplices(d) {
                    let f = Cochain::dual(x, Z);
                    assert!(m.cochain_differential(&m.cochain_differential(&f)).is_zero());
                }
            }
        }
    }

    #[test]
    fn cochain_differential_is_adjoint() {
        let m = SimplicialModel::rp2();
        for d in 0..2 {
            for x in m.simplices(d) {
                let f = Cochain::dual(x, Z);
                let df = m.cochain_differential(&f);
                let sign = if d % 2 == 0 { -1 } else { 1 };
                for y in m.simplices(d + 1) {
                    let dy: i64 = m.boundary(y).iter().map(|(z, s)| s * f.eval(z)).sum();
                    assert_eq!(df.eval(y), sign * dy);
                }
            }
        }
    }

    #[test]
    fn homology() {
        for f in [Field::Q, Field::F2, Field::F3] {
            assert_eq!(SimplicialModel::standard(3).homology_ranks(f), vec![1, 0, 0, 0]);
            assert_eq!(SimplicialModel::sphere(3).unwrap().homology_ranks(f), vec![1, 0, 0, 1]);
        }
        let rp2 = SimplicialModel::rp2();
        assert_eq!(rp2.simplices(1).len(), 15);
        assert_eq!(rp2.homology_ranks(Field::F2), vec![1, 1, 1]);
        assert_eq!(rp2.homology_ranks(Field::Q), vec![1, 0, 0]);
        assert_eq!(rp2.homology_ranks(Field::F3), vec![1, 0, 0]);
    }

    #[test]
    fn pairing_signs() {
        let e = Cochain::dual(&sx(&[0, 1]), Z);
        let c = Cochain::dual(&sx(&[1]), Z);
        assert_eq!(dual_pairing(&[&e], &[sx(&[0, 1])]), 1);
        assert_eq!(dual_pairing(&[&e, &e], &[sx(&[0, 1]), sx(&[0, 1])]), -1);
        assert_eq!(dual_pairing(&[&e, &c], &[sx(&[0, 1]), sx(&[1])]), 1);
        assert_eq!(dual_pairing(&[&e, &c], &[sx(&[1]), sx(&[0, 1])]), 0);
    }

    #[test]
    fn ordered_complex_input() {
        let spec: OrderedComplexSpec =
            serde_json::from_str(r#"{"vertices":["a","b","c"],"facets":[["a","b"],["b","c"],["a","c"]]}"#).unwrap();
        let circle = SimplicialModel::ordered(&spec).unwrap();
        assert_eq!(circle.homology_ranks(Field::Q), vec![1, 1]);
        let bad = OrderedComplexSpec { vertices: vec!["a".into()], facets: vec![vec!["z".into()]] };
        assert!(SimplicialModel::ordered(&bad).is_err());
    }
}
