//! Dense matrices over exact rings.
//!
//! [`Matrix`] is generic over any commutative [`Ring`]; the same type holds
//! rational matrices, polynomial matrices and matrices of jet-algebra
//! elements. Rational determinants use Bareiss fraction-free elimination;
//! determinants over other rings use Laplace expansion by minors.
//!
//! [`FloatMatrix`] and [`cholesky`] provide the numeric path for checking
//! positive definiteness of a metric.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

/// Default relative tolerance for [`cholesky`].
pub const DEFAULT_CHOLESKY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite (pivot {pivot} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: String },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}

/// A commutative ring with unit, as needed by determinant and matrix
/// products.
///
/// Elements produce their own zero and one so that rings whose elements carry
/// context (e.g. a jet algebra) fit the same interface.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_null(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equal-length rows. No rows gives the 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        self.get(i, j)
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: Ring> Matrix<T> {
    /// `n × n` identity built from a sample element's zero and one.
    pub fn identity_like(n: usize, unit: &T) -> Self {
        let zero = unit.zero_like();
        let one = unit.one_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// # Panics
    /// On a `k×0` by `0×m` product with `k, m > 0`: there is no entry to
    /// take a generic zero from.
    pub fn mat_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<T> = None;
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    let b = other.get(l, j);
                    if a.is_null() || b.is_null() {
                        continue;
                    }
                    let p = a.mul_ref(b);
                    acc = Some(match acc {
                        Some(s) => s.add_ref(&p),
                        None => p,
                    });
                }
                let zero = || {
                    self.entries
                        .first()
                        .or(other.entries.first())
                        .map(Ring::zero_like)
                        .expect("non-empty product has a sample entry")
                };
                entries.push(acc.unwrap_or_else(zero));
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Determinant by Laplace expansion along rows, memoized over column
    /// subsets (`n · 2ⁿ` ring multiplications). Works over any commutative
    /// ring; `unit` supplies the one used for the empty minor.
    ///
    /// # Panics
    /// If the matrix is larger than 20×20.
    pub fn det_expansion(&self, unit: &T) -> Result<T, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        assert!(n <= 20, "expansion by minors is limited to 20x20");
        let one = unit.one_like();
        let zero = unit.zero_like();
        // minors[mask] = det of rows 0..popcount(mask) restricted to the columns in mask
        let mut minors: Vec<Option<T>> = vec![None; 1 << n];
        minors[0] = Some(one);
        let mut masks_by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for mask in 0usize..(1 << n) {
            masks_by_size[mask.count_ones() as usize].push(mask);
        }
        for size in 1..=n {
            let row = size - 1;
            for &mask in &masks_by_size[size] {
                let mut acc: Option<T> = None;
                let mut above = size;
                for col in 0..n {
                    if mask & (1 << col) == 0 {
                        continue;
                    }
                    above -= 1;
                    let entry = self.get(row, col);
                    if entry.is_null() {
                        continue;
                    }
                    let Some(sub) = &minors[mask & !(1 << col)] else {
                        continue;
                    };
                    if sub.is_null() {
                        continue;
                    }
                    let mut term = entry.mul_ref(sub);
                    if above % 2 == 1 {
                        term = term.neg_ref();
                    }
                    acc = Some(match acc {
                        Some(s) => s.add_ref(&term),
                        None => term,
                    });
                }
                minors[mask] = acc.filter(|v| !v.is_null());
            }
            // minors of the previous size are no longer needed
            for &mask in &masks_by_size[size - 1] {
                if size > 1 {
                    minors[mask] = None;
                }
            }
        }
        Ok(minors[(1 << n) - 1].take().unwrap_or(zero))
    }
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                values[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn to_float(&self) -> Result<FloatMatrix, LinalgError> {
        use num_traits::ToPrimitive;
        let entries = self
            .entries
            .iter()
            .map(|q| q.to_f64().unwrap_or(f64::NAN))
            .collect();
        FloatMatrix::new(self.rows, self.cols, entries)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant of a rational matrix. The 0×0 determinant is 1.
///
/// Each row is scaled by the lcm of its denominators, the resulting integer
/// matrix goes through Bareiss elimination, and the scaling is divided out.
pub fn det_exact(m: &RationalMatrix) -> Result<Rational, LinalgError> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        rows.push(row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
        scale *= lcm;
    }
    Ok(Rational::new(bareiss(rows), scale))
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
    a.mat_mul(b)
}

pub fn transpose(m: &RationalMatrix) -> RationalMatrix {
    m.transpose()
}

/// Exact square root of a non-negative rational, if it has one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root = |v: &BigInt| {
        let r = v.sqrt();
        (&r * &r == *v).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// Upper-triangular `H` with `HᵀH = g` over ℚ, when every square root in the
/// Cholesky recursion is rational.
///
/// Positive definiteness is decided first from the rational `LDLᵀ` pivots,
/// so a matrix that is not positive definite is reported as such even if an
/// earlier pivot is not a perfect square. With `g = LDLᵀ`, the factor is
/// `H = √D · Lᵀ`.
pub fn rational_cholesky_if_exact(
    g: &RationalMatrix,
) -> Result<Option<RationalMatrix>, LinalgError> {
    g.require_square()?;
    if !g.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = g.rows;
    let mut lower = RationalMatrix::identity(n).entries;
    let mut pivots: Vec<Rational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut d = g.get(j, j).clone();
        for p in 0..j {
            let l = &lower[j * n + p];
            d -= l * l * &pivots[p];
        }
        if !d.is_positive() {
            return Err(LinalgError::NotPositiveDefinite {
                index: j,
                pivot: d.to_string(),
            });
        }
        for i in j + 1..n {
            let mut v = g.get(i, j).clone();
            for p in 0..j {
                v -= &lower[i * n + p] * &lower[j * n + p] * &pivots[p];
            }
            lower[i * n + j] = v / &d;
        }
        pivots.push(d);
    }
    let mut roots = Vec::with_capacity(n);
    for d in &pivots {
        match rational_sqrt(d) {
            Some(r) => roots.push(r),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_fn(n, n, |i, j| {
        if j < i {
            Rational::zero()
        } else {
            &roots[i] * &lower[j * n + i]
        }
    })))
}

/// Row-major matrix of finite binary64 values.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(FloatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        FloatMatrix::new(rows.len(), n_cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> FloatMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        FloatMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mat_mul(&self, other: &FloatMatrix) -> Result<FloatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                for j in 0..other.cols {
                    entries[i * other.cols + j] += a * other.get(l, j);
                }
            }
        }
        FloatMatrix::new(self.rows, other.cols, entries)
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Max-norm of `self - other`, or `None` on a shape mismatch.
    pub fn max_abs_diff(&self, other: &FloatMatrix) -> Option<f64> {
        (self.rows == other.rows && self.cols == other.cols).then(|| {
            self.entries
                .iter()
                .zip(&other.entries)
                .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
        })
    }
}

/// Upper-triangular `H` with strictly positive diagonal and `HᵀH ≈ g`.
///
/// Symmetry is checked to `tol · (1 + ‖g‖)`; a pivot must exceed
/// `tol · max|gᵢᵢ|` or the matrix is rejected as not positive definite.
pub fn cholesky(g: &FloatMatrix, tol: f64) -> Result<FloatMatrix, LinalgError> {
    if g.rows != g.cols {
        return Err(LinalgError::NonSquare {
            rows: g.rows,
            cols: g.cols,
        });
    }
    let n = g.rows;
    let sym_tol = tol * (1.0 + g.max_norm());
    for i in 0..n {
        for j in i + 1..n {
            if (g.get(i, j) - g.get(j, i)).abs() > sym_tol {
                return Err(LinalgError::NotSymmetric);
            }
        }
    }
    let max_diag = (0..n).fold(0.0f64, |m, i| m.max(g.get(i, i).abs()));
    let threshold = tol * max_diag;
    let mut h = vec![0.0; n * n];
    for i in 0..n {
        let mut pivot = g.get(i, i);
        for k in 0..i {
            pivot -= h[k * n + i] * h[k * n + i];
        }
        if pivot <= threshold || pivot <= 0.0 {
            return Err(LinalgError::NotPositiveDefinite {
                index: i,
                pivot: format!("{pivot:e}"),
            });
        }
        let d = pivot.sqrt();
        h[i * n + i] = d;
        for j in i + 1..n {
            let mut v = g.get(i, j);
            for k in 0..i {
                v -= h[k * n + i] * h[k * n + j];
            }
            h[i * n + j] = v / d;
        }
    }
    FloatMatrix::new(n, n, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_integers(rows).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&m(&[&[5]])).unwrap(), rat(5));
        assert_eq!(det_exact(&m(&[&[1, 1], &[1, 2]])).unwrap(), rat(1));
        assert_eq!(
            det_exact(&m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap(),
            rat(2)
        );
        assert_eq!(det_exact(&RationalMatrix::zeros(0, 0)).unwrap(), rat(1));
    }

    #[test]
    fn det_needs_pivoting_and_fractions() {
        // zero leading pivot forces a row swap
        assert_eq!(
            det_exact(&m(&[&[0, 2, 0], &[3, 0, 0], &[0, 0, 4]])).unwrap(),
            rat(-24)
        );
        let half = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(1, 5)],
        ])
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(det_exact(&half).unwrap(), ratio(1, 60));
        assert_eq!(det_exact(&m(&[&[1, 2], &[2, 4]])).unwrap(), rat(0));
    }

    #[test]
    fn det_rejects_non_square() {
        assert_eq!(
            det_exact(&m(&[&[1, 2, 3]])),
            Err(LinalgError::NonSquare { rows: 1, cols: 3 })
        );
        assert!(m(&[&[1, 2, 3]]).det_expansion(&rat(1)).is_err());
    }

    #[test]
    fn expansion_matches_bareiss() {
        let a = m(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 5, 1, -1], &[7, 0, 2, 2]]);
        assert_eq!(a.det_expansion(&rat(1)).unwrap(), det_exact(&a).unwrap());
        assert_eq!(
            RationalMatrix::zeros(0, 0).det_expansion(&rat(1)).unwrap(),
            rat(1)
        );
    }

    #[test]
    fn products_and_transpose() {
        let a = m(&[&[1, 0], &[1, 1]]);
        let b = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(mat_mul(&a, &b).unwrap(), m(&[&[1, 1], &[1, 2]]));
        assert_eq!(mat_mul(&RationalMatrix::identity(2), &a).unwrap(), a);
        assert_eq!(
            mat_mul(&RationalMatrix::zeros(2, 2), &a).unwrap(),
            RationalMatrix::zeros(2, 2)
        );
        assert!(matches!(
            mat_mul(&a, &m(&[&[1, 2, 3]])),
            Err(LinalgError::DimensionMismatch(_))
        ));
        let col = m(&[&[1], &[2], &[3]]);
        assert_eq!(transpose(&col), m(&[&[1, 2, 3]]));
        assert_eq!(transpose(&transpose(&a)), a);
        let s = m(&[&[1, 2], &[2, 5]]);
        assert_eq!(transpose(&s), s);
    }

    #[test]
    fn float_cholesky_examples() {
        let id = FloatMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(cholesky(&id, DEFAULT_CHOLESKY_TOL).unwrap(), id);

        let d = FloatMatrix::from_rows(&[vec![4.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let h = cholesky(&d, DEFAULT_CHOLESKY_TOL).unwrap();
        assert_eq!(h, FloatMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap());

        let g = FloatMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let h = cholesky(&g, DEFAULT_CHOLESKY_TOL).unwrap();
        let expected = FloatMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(h.max_abs_diff(&expected).unwrap() < 1e-12);
        let back = h.transpose().mat_mul(&h).unwrap();
        assert!(back.max_abs_diff(&g).unwrap() <= DEFAULT_CHOLESKY_TOL * (1.0 + g.max_norm()));
    }

    #[test]
    fn float_cholesky_errors() {
        let indefinite = FloatMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(
            cholesky(&indefinite, DEFAULT_CHOLESKY_TOL),
            Err(LinalgError::NotPositiveDefinite { index: 1, .. })
        ));
        let singular = FloatMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            cholesky(&singular, DEFAULT_CHOLESKY_TOL),
            Err(LinalgError::NotPositiveDefinite { .. })
        ));
        let asym = FloatMatrix::from_rows(&[vec![2.0, 1.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(
            cholesky(&asym, DEFAULT_CHOLESKY_TOL),
            Err(LinalgError::NotSymmetric)
        );
        assert!(matches!(
            FloatMatrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(LinalgError::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn rational_cholesky_examples() {
        let g = RationalMatrix::diagonal(&[rat(4), rat(9)]);
        assert_eq!(
            rational_cholesky_if_exact(&g).unwrap(),
            Some(RationalMatrix::diagonal(&[rat(2), rat(3)]))
        );
        let g = m(&[&[1, 1], &[1, 2]]);
        assert_eq!(
            rational_cholesky_if_exact(&g).unwrap(),
            Some(m(&[&[1, 1], &[0, 1]]))
        );
        assert_eq!(
            rational_cholesky_if_exact(&RationalMatrix::diagonal(&[rat(2)])).unwrap(),
            None
        );
        assert!(matches!(
            rational_cholesky_if_exact(&m(&[&[1, 2], &[2, 1]])),
            Err(LinalgError::NotPositiveDefinite { index: 1, .. })
        ));
        // √2 pivot first, indefinite later: still reported as not positive definite
        assert!(matches!(
            rational_cholesky_if_exact(&m(&[&[2, 0], &[0, -1]])),
            Err(LinalgError::NotPositiveDefinite { .. })
        ));
        assert_eq!(
            rational_cholesky_if_exact(&m(&[&[1, 0], &[1, 1]])),
            Err(LinalgError::NotSymmetric)
        );
    }

    #[test]
    fn rational_sqrt_cases() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&ratio(2, 1)), None);
        assert_eq!(rational_sqrt(&ratio(-1, 1)), None);
        assert_eq!(rational_sqrt(&rat(0)), Some(rat(0)));
    }
}
