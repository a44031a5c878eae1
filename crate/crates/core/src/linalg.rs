//! Exact linear algebra over the rationals.
//!
//! Every subspace is stored by the reduced row echelon form of a basis, so
//! equality of subspaces is equality of their canonical bases. The zero
//! subspace is a basis with no rows.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, int, Rational};

pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is {rows}x{cols}, expected square of size {expected}")]
    NotSquare {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("gram matrix is not positive definite (leading minor {order} is not positive)")]
    NotPositiveDefinite { order: usize },
    #[error("matrix is singular")]
    Singular,
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = int(1);
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let (x, dx) = clear_denominators(a);
    let (y, dy) = clear_denominators(b);
    let mut acc = BigInt::zero();
    for (p, q) in x.iter().zip(&y) {
        if !p.is_zero() && !q.is_zero() {
            acc += p * q;
        }
    }
    Rational::new(acc, dx * dy)
}

/// `v = w / d` with `w` integral and `d` the least common denominator.
pub(crate) fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = v
        .iter()
        .filter(|x| !x.denom().is_one())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let w = v
        .iter()
        .map(|x| {
            if x.denom() == &d {
                x.numer().clone()
            } else {
                x.numer() * (&d / x.denom())
            }
        })
        .collect();
    (w, d)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = int(1);
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let count = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    left: row.len(),
                    right: cols,
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: count,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let t = Self::from_rows(rows, columns.to_vec())?;
        Ok(t.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        self.row_vectors().map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let left: Vec<_> = self.row_vectors().map(clear_denominators).collect();
        let right: Vec<_> = (0..other.cols)
            .map(|c| clear_denominators(&other.column(c)))
            .collect();
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, (a, da)) in left.iter().enumerate() {
            for (c, (b, db)) in right.iter().enumerate() {
                let mut acc = BigInt::zero();
                for (x, y) in a.iter().zip(b) {
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
                if !acc.is_zero() {
                    out[(r, c)] = Rational::new(acc, da * db);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok(self.row_vectors().map(|row| dot(row, v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                if self[(r, c)] != self[(c, r)] {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
                expected: self.rows,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = int(1);
        }
        let pivots = reduce_in_place(&mut aug, n);
        if pivots.len() < n {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        rref(self).rows
    }

    /// Checks symmetry and positivity of every leading principal minor.
    ///
    /// Elimination without row exchanges has all pivots positive exactly when
    /// every leading principal minor is positive.
    pub fn check_spd(&self) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
                expected: self.rows,
            });
        }
        if let Some((row, col)) = self.first_asymmetry() {
            return Err(LinalgError::NotSymmetric { row, col });
        }
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            let pivot = a[(k, k)].clone();
            if !pivot.is_positive() {
                return Err(LinalgError::NotPositiveDefinite { order: k + 1 });
            }
            for r in k + 1..n {
                let factor = &a[(r, k)] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in k..n {
                    let delta = &factor * &a[(k, c)];
                    a[(r, c)] -= delta;
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .row_vectors()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        write!(f, "Matrix{:?}", rows)
    }
}

/// Gauss-Jordan on the leading `pivot_cols` columns, in place. Returns the
/// pivot columns; rows past the pivot count are zero in those columns.
fn reduce_in_place(m: &mut Matrix, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..pivot_cols {
        if row == m.rows {
            break;
        }
        let Some(found) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if found != row {
            for c in 0..m.cols {
                m.data.swap(found * m.cols + c, row * m.cols + c);
            }
        }
        let inv = m[(row, col)].recip();
        for c in col..m.cols {
            let v = &m[(row, c)] * &inv;
            m[(row, c)] = v;
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for c in col..m.cols {
                let delta = &factor * &m[(row, c)];
                m[(r, c)] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Clears denominators and divides out the content. `None` for a zero row.
fn primitive_row(row: &[Rational]) -> Option<Vec<BigInt>> {
    let l = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    normalize(ints)
}

fn normalize(mut v: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    if !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    Some(v)
}

/// `a[p]·v − v[p]·a`, which clears column `p` of `v`.
fn eliminate(v: &[BigInt], a: &[BigInt], p: usize) -> Option<Vec<BigInt>> {
    let f = &v[p];
    let g = &a[p];
    normalize(v.iter().zip(a).map(|(x, y)| g * x - f * y).collect())
}

/// Reduced row echelon form with the zero rows removed.
///
/// Runs fraction-free over the integers and divides by the pivots once.
pub fn rref(m: &Matrix) -> Matrix {
    let cols = m.cols;
    // echelon rows sorted by pivot column
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for row in m.row_vectors() {
        if echelon.len() == cols {
            break;
        }
        let Some(mut v) = primitive_row(row) else { continue };
        let mut alive = true;
        for (p, a) in &echelon {
            if v[*p].is_zero() {
                continue;
            }
            match eliminate(&v, a, *p) {
                Some(w) => v = w,
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if !alive {
            continue;
        }
        let p = v.iter().position(|x| !x.is_zero()).expect("nonzero row");
        let at = echelon.partition_point(|(q, _)| *q < p);
        echelon.insert(at, (p, v));
    }
    for i in (0..echelon.len()).rev() {
        for k in i + 1..echelon.len() {
            let p = echelon[k].0;
            if echelon[i].1[p].is_zero() {
                continue;
            }
            let w = eliminate(&echelon[i].1, &echelon[k].1, p).expect("independent rows");
            echelon[i].1 = w;
        }
    }
    let mut out = Matrix::zeros(echelon.len(), cols);
    for (r, (p, v)) in echelon.iter().enumerate() {
        let pivot = &v[*p];
        for c in *p..cols {
            if !v[c].is_zero() {
                out[(r, c)] = Rational::new(v[c].clone(), pivot.clone());
            }
        }
    }
    out
}

/// A linear subspace of `Q^n`, stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            basis: Matrix::identity(ambient),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Self { basis: rref(m) }
    }

    pub fn span<I, V>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().map(Into::into).collect();
        Ok(Self::row_space(&Matrix::from_rows(ambient, rows)?))
    }

    /// Span of standard basis vectors given by 0-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let rows = indices.iter().map(|&i| unit_vector(ambient, i)).collect();
        Self::row_space(&Matrix::from_rows(ambient, rows).expect("unit vectors"))
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        self.basis.row_vectors()
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        let rows = self
            .basis_vectors()
            .chain(other.basis_vectors())
            .map(<[Rational]>::to_vec)
            .collect();
        Ok(Self::row_space(&Matrix::from_rows(self.ambient_dim(), rows)?))
    }

    /// Intersection as the common kernel of both annihilators.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        let mut conditions = self.annihilator_rows();
        conditions.extend(other.annihilator_rows());
        let m = Matrix::from_rows(self.ambient_dim(), conditions)?;
        Ok(kernel(&m))
    }

    /// True iff `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_same_ambient(other)?;
        Ok(other.basis_vectors().all(|v| self.reduces_to_zero(v)))
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                left: v.len(),
                right: self.ambient_dim(),
            });
        }
        Ok(self.reduces_to_zero(v))
    }

    fn reduces_to_zero(&self, v: &[Rational]) -> bool {
        let mut residual = v.to_vec();
        for row in self.basis_vectors() {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("rref row");
            if residual[pivot].is_zero() {
                continue;
            }
            let factor = residual[pivot].clone();
            for (r, x) in residual.iter_mut().zip(row) {
                if !x.is_zero() {
                    *r -= &factor * x;
                }
            }
        }
        is_zero_vector(&residual)
    }

    /// Rows spanning `{w : w·v = 0 for all v in self}` (standard pairing).
    pub fn annihilator_rows(&self) -> Vec<Vector> {
        kernel(&self.basis).basis.to_rows()
    }

    /// Image under the linear map with matrix `map` (acting on column vectors).
    pub fn image(&self, map: &Matrix) -> Result<Subspace, LinalgError> {
        if map.cols() != self.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                left: map.cols(),
                right: self.ambient_dim(),
            });
        }
        let rows = self
            .basis_vectors()
            .map(|v| map.mul_vec(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::row_space(&Matrix::from_rows(map.rows(), rows)?))
    }

    /// True iff `map(self) = self`.
    pub fn is_invariant_under(&self, map: &Matrix) -> Result<bool, LinalgError> {
        let img = self.image(map)?;
        Ok(img == *self)
    }

    /// `self^⊥` with respect to the inner product with Gram matrix `gram`.
    pub fn orthogonal_complement(&self, gram: &Matrix) -> Result<Subspace, LinalgError> {
        let n = self.ambient_dim();
        if gram.rows() != n || gram.cols() != n {
            return Err(LinalgError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
                expected: n,
            });
        }
        gram.check_spd()?;
        Ok(kernel(&self.basis.mul(gram)?))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .basis_vectors()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        write!(f, "Subspace(n={}, {:?})", self.ambient_dim(), rows)
    }
}

/// `{x : conditions · x = 0}`.
pub fn kernel(conditions: &Matrix) -> Subspace {
    let n = conditions.cols();
    let reduced = rref(conditions);
    let pivots: Vec<usize> = reduced
        .row_vectors()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("rref row"))
        .collect();
    let mut rows = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vector(n);
        v[free] = int(1);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -reduced[(r, free)].clone();
        }
        rows.push(v);
    }
    Subspace::row_space(&Matrix::from_rows(n, rows).expect("kernel rows"))
}
