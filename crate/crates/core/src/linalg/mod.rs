//! Dense exact rational matrices: elimination, nullspaces, orthogonal
//! projections and the l1 / l-infinity operator norms.

mod sparse;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use sparse::SparseEchelon;

/// Row-major dense matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>], len: usize) -> Self {
        let mut m = RatMatrix::zeros(len, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, k: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: &Rational, other: &RatMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if k.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Exact product. Both factors are brought to a common denominator and
    /// multiplied as integer matrices, using `i128` accumulation whenever
    /// the entry sizes guarantee no overflow.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let (a, da) = scaled_integers(&self.data);
        let (b, db) = scaled_integers(&other.data);
        let den = da * db;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let inner_bits = (usize::BITS - k.max(1).leading_zeros()) as u64;
        let bits_a = a.iter().map(BigInt::bits).max().unwrap_or(0);
        let bits_b = b.iter().map(BigInt::bits).max().unwrap_or(0);
        let data = if bits_a <= 62 && bits_b <= 62 && bits_a + bits_b + inner_bits <= 125 {
            let a: Vec<i64> = a.iter().map(|x| x.to_i64().unwrap()).collect();
            let b: Vec<i64> = b.iter().map(|x| x.to_i64().unwrap()).collect();
            let mut acc = vec![0i128; n * m];
            for i in 0..n {
                let out = &mut acc[i * m..(i + 1) * m];
                for t in 0..k {
                    let x = a[i * k + t] as i128;
                    if x == 0 {
                        continue;
                    }
                    let brow = &b[t * m..(t + 1) * m];
                    for (o, &y) in out.iter_mut().zip(brow) {
                        if y != 0 {
                            *o += x * y as i128;
                        }
                    }
                }
            }
            acc.into_iter()
                .map(|c| {
                    if c == 0 {
                        Rational::zero()
                    } else {
                        Rational::from_bigints(BigInt::from(c), den.clone())
                    }
                })
                .collect()
        } else {
            let mut acc = vec![BigInt::zero(); n * m];
            for i in 0..n {
                for t in 0..k {
                    let x = &a[i * k + t];
                    if x.is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let y = &b[t * m + j];
                        if !y.is_zero() {
                            acc[i * m + j] += x * y;
                        }
                    }
                }
            }
            acc.into_iter()
                .map(|c| {
                    if c.is_zero() {
                        Rational::zero()
                    } else {
                        Rational::from_bigints(c, den.clone())
                    }
                })
                .collect()
        };
        RatMatrix {
            rows: n,
            cols: m,
            data,
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        nullspace(self)
    }

    /// Inverse of a square matrix; `DependentBasis` when singular.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        solve(self, &RatMatrix::identity(self.rows))
    }

    pub fn l1_norm(&self) -> Rational {
        l1_operator_norm(self)
    }

    pub fn linf_norm(&self) -> Rational {
        linf_operator_norm(self)
    }

    /// Absolute sum of column `c` (the l1 norm of the image of the c-th basis vector).
    pub fn column_abs_sum(&self, c: usize) -> Rational {
        (0..self.rows).map(|r| self[(r, c)].abs()).sum()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

/// Common denominator and scaled integer numerators.
fn scaled_integers(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for x in values {
        if !x.denom().is_one() {
            den = den.lcm(x.denom());
        }
    }
    let ints = values
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else if x.denom() == &den {
                x.numer().clone()
            } else {
                x.numer() * (&den / x.denom())
            }
        })
        .collect();
    (ints, den)
}

/// Gauss-Jordan elimination; the pivot is the first nonzero entry when
/// scanning columns left to right and rows top to bottom.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut rows = m.to_rows();
    let ncols = m.cols;
    let pivots = reduce_rows(&mut rows, ncols);
    let rank = pivots.len();
    Rref {
        matrix: if rows.is_empty() {
            RatMatrix::zeros(0, ncols)
        } else {
            RatMatrix::from_rows(rows)
        },
        pivots,
        rank,
    }
}

/// In-place Gauss-Jordan on the first `pivot_cols` columns; returns pivot columns.
fn reduce_rows(rows: &mut [Vec<Rational>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let factor = other[c].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, y) in other.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : M x = 0}`; one vector per free column.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let Rref { matrix, pivots, .. } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&matrix[(r, free)];
            }
            v
        })
        .collect()
}

/// Solves `A X = B` for square nonsingular `A`.
pub fn solve(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() || a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "solve {}x{} against {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let n = a.rows;
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|r| a.row(r).iter().chain(b.row(r)).cloned().collect())
        .collect();
    let pivots = reduce_rows(&mut rows, n);
    if pivots.len() < n {
        return Err(Error::DependentBasis);
    }
    Ok(RatMatrix::from_fn(n, b.cols, |r, c| rows[r][n + c].clone()))
}

/// Orthogonal projection onto the span of linearly independent vectors,
/// computed as `Bᵀ (B Bᵀ)⁻¹ B` where the basis vectors are the rows of `B`.
pub fn orth_project_onto_span(basis: &[Vec<Rational>]) -> Result<RatMatrix> {
    let n = match basis.first() {
        Some(v) => v.len(),
        None => return Err(Error::DimensionMismatch("empty basis has no ambient dimension".into())),
    };
    if basis.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch("basis vectors differ in length".into()));
    }
    let b = RatMatrix::from_rows(basis.to_vec());
    let gram = b.mul(&b.transpose());
    let x = solve(&gram, &b)?;
    Ok(b.transpose().mul(&x))
}

/// Operator norm on l1: the largest absolute column sum.
pub fn l1_operator_norm(m: &RatMatrix) -> Rational {
    (0..m.cols)
        .map(|c| m.column_abs_sum(c))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Operator norm on l-infinity: the largest absolute row sum.
pub fn linf_operator_norm(m: &RatMatrix) -> Rational {
    (0..m.rows)
        .map(|r| m.row(r).iter().map(Rational::abs).sum())
        .max()
        .unwrap_or_else(Rational::zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn l1_norm(v: &[Rational]) -> Rational {
    v.iter().map(Rational::abs).sum()
}

/// Rank of a family of equal-length vectors.
pub fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    let mut echelon = SparseEchelon::new(vectors.first().map_or(0, Vec::len));
    vectors.iter().filter(|v| echelon.insert_dense(v)).count()
}

/// Indices of a maximal linearly independent prefix-greedy subfamily.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut echelon = SparseEchelon::new(vectors.first().map_or(0, Vec::len));
    (0..vectors.len())
        .filter(|&i| echelon.insert_dense(&vectors[i]))
        .collect()
}
