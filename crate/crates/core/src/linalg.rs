//! Dense linear algebra over prime fields and the rationals: ranks, kernels
//! and homology of finite chain complexes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A coefficient field for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub const F2: Field = Field::Prime(2);
    pub const F3: Field = Field::Prime(3);
    pub const Q: Field = Field::Rationals;

    /// `0` selects the rationals.
    pub fn from_characteristic(p: u32) -> Result<Field> {
        match p {
            0 => Ok(Field::Rationals),
            p => crate::algebra_core::Coefficients::new(p).map(|_| Field::Prime(p)),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn name(self) -> String {
        match self {
            Field::Rationals => "Q".into(),
            Field::Prime(p) => format!("F{p}"),
        }
    }
}

/// Integer matrix with explicit shape (rows × cols), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: i64) {
        self.data[i * self.cols + j] += c;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..other.cols {
                        out.data[i * out.cols + j] += a * other.get(k, j);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
}

#[derive(Clone, PartialEq)]
struct Fp(u64, u64);

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

trait Arith<T> {
    fn from_i64(&self, x: i64) -> T;
    fn sub_mul(&self, a: &T, b: &T, c: &T) -> T; // a - b*c
    fn div(&self, a: &T, b: &T) -> T;
    fn to_i64_hint(&self, a: &T) -> Option<i64>;
}

struct PrimeArith(u64);

impl Arith<Fp> for PrimeArith {
    fn from_i64(&self, x: i64) -> Fp {
        Fp(x.rem_euclid(self.0 as i64) as u64, self.0)
    }
    fn sub_mul(&self, a: &Fp, b: &Fp, c: &Fp) -> Fp {
        let p = self.0 as u128;
        let bc = (b.0 as u128 * c.0 as u128) % p;
        Fp(((a.0 as u128 + p - bc) % p) as u64, self.0)
    }
    fn div(&self, a: &Fp, b: &Fp) -> Fp {
        Fp((a.0 as u128 * modpow(b.0, self.0 - 2, self.0) as u128 % self.0 as u128) as u64, self.0)
    }
    fn to_i64_hint(&self, a: &Fp) -> Option<i64> {
        Some(a.0 as i64)
    }
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

struct RatArith;

impl Arith<BigRational> for RatArith {
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
    fn to_i64_hint(&self, _: &BigRational) -> Option<i64> {
        None
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<T: Scalar, A: Arith<T>>(ar: &A, m: &mut [Vec<T>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv_row: Vec<T> = m[row].iter().map(|x| ar.div(x, &m[row][col])).collect();
        m[row] = inv_row;
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    let v = ar.sub_mul(&m[i][j], &f, &m[row][j]);
                    m[i][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn convert<T, A: Arith<T>>(ar: &A, m: &Matrix) -> Vec<Vec<T>> {
    (0..m.rows).map(|i| (0..m.cols).map(|j| ar.from_i64(m.get(i, j))).collect()).collect()
}

pub fn rank(m: &Matrix, field: Field) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match field {
        Field::Prime(p) => {
            let ar = PrimeArith(p as u64);
            rref(&ar, &mut convert(&ar, m), m.cols).len()
        }
        Field::Rationals => rref(&RatArith, &mut convert(&RatArith, m), m.cols).len(),
    }
}

/// A basis of the kernel, scaled to integer vectors (exact over the field).
/// Over a prime field the entries are representatives in `0..p`.
pub fn kernel_basis(m: &Matrix, field: Field) -> Vec<Vec<i64>> {
    fn basis<T: Scalar, A: Arith<T>>(ar: &A, m: &Matrix, lift: impl Fn(&[T]) -> Vec<i64>) -> Vec<Vec<i64>> {
        let mut a = convert(ar, m);
        let pivots = rref(ar, &mut a, m.cols);
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v: Vec<T> = vec![ar.from_i64(0); m.cols];
                v[f] = ar.from_i64(1);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = ar.sub_mul(&ar.from_i64(0), &a[r][f], &ar.from_i64(1));
                }
                lift(&v)
            })
            .collect()
    }
    match field {
        Field::Prime(p) => {
            let ar = PrimeArith(p as u64);
            basis(&ar, m, |v| v.iter().map(|x| ar.to_i64_hint(x).unwrap()).collect())
        }
        Field::Rationals => basis(&RatArith, m, |v| {
            let den = v.iter().fold(BigInt::one(), |acc, x| lcm(&acc, x.denom()));
            v.iter()
                .map(|x| {
                    let n = x.numer() * (&den / x.denom());
                    i64::try_from(n).expect("kernel vector entry exceeds i64")
                })
                .collect()
        }),
    }
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

/// A finite chain complex `C_0 ← C_1 ← …` with `boundary[d]: C_d → C_{d−1}`
/// (a `dims[d−1] × dims[d]` matrix; `boundary[0]` is `0 × dims[0]`).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundary: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundary: Vec<Matrix>) -> Result<Self> {
        if dims.len() != boundary.len() {
            return Err(Error::Invalid("one boundary matrix per degree expected".into()));
        }
        for (d, b) in boundary.iter().enumerate() {
            let rows = if d == 0 { 0 } else { dims[d - 1] };
            if b.rows != rows || b.cols != dims[d] {
                return Err(Error::Invalid(format!("boundary in degree {d} has the wrong shape")));
            }
        }
        Ok(ChainComplex { dims, boundary })
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    fn rank_out(&self, d: usize, field: Field) -> usize {
        rank(&self.boundary[d], field)
    }

    fn rank_in(&self, d: usize, field: Field) -> usize {
        if d + 1 < self.dims.len() {
            rank(&self.boundary[d + 1], field)
        } else {
            0
        }
    }

    /// Betti numbers in every degree.
    pub fn betti(&self, field: Field) -> Vec<usize> {
        (0..self.dims.len())
            .map(|d| self.dims[d] - self.rank_out(d, field) - self.rank_in(d, field))
            .collect()
    }

    pub fn squares_to_zero(&self) -> bool {
        (2..self.dims.len()).all(|d| self.boundary[d - 1].mul(&self.boundary[d]).is_zero())
    }
}

/// Rank of the map induced in homology by a chain map `f_d: C_d → D_d`
/// (`maps[d]` is `D.dims[d] × C.dims[d]`).
pub fn induced_rank(c: &ChainComplex, d: &ChainComplex, maps: &[Matrix], degree: usize, field: Field) -> usize {
    let cycles = kernel_basis(&c.boundary[degree], field);
    let image: Vec<Vec<i64>> = cycles
        .iter()
        .map(|z| {
            let f = &maps[degree];
            (0..f.rows).map(|i| (0..f.cols).map(|j| f.get(i, j) * z[j]).sum()).collect()
        })
        .collect();
    let boundaries: Vec<Vec<i64>> = if degree + 1 < d.dims.len() {
        let b = &d.boundary[degree + 1];
        (0..b.cols).map(|j| b.column(j)).collect()
    } else {
        Vec::new()
    };
    let rows = d.dims[degree];
    let both: Vec<Vec<i64>> = boundaries.iter().chain(image.iter()).cloned().collect();
    rank(&Matrix::from_columns(rows, &both), field) - rank(&Matrix::from_columns(rows, &boundaries), field)
}
