use std::fmt;

use super::{MultiPoly, Rational, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Ring> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![S::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a `d × n` matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<S>]) -> Self {
        let n = columns.len();
        let mut m = Matrix::zeros(dim, n);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimensions");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum dimensions");
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference dimensions");
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(S::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix::new(self.rows - 1, self.cols - 1, data)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> S {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = S::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return S::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
                }
                a[i][k] = S::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }

    /// Determinant and adjugate, with `self · adj = adj · self = det · I`.
    ///
    /// Each cofactor is a Bareiss determinant, so no division by a non-unit
    /// ever happens over a polynomial ring.
    pub fn det_adj(&self) -> (S, Self) {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        let det = self.det();
        if n == 0 {
            return (det, Matrix::zeros(0, 0));
        }
        if n == 1 {
            return (det, Matrix::identity(1));
        }
        let mut adj = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                adj.set(i, j, if (i + j) % 2 == 0 { c } else { c.neg() });
            }
        }
        (det, adj)
    }

    /// Rank by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let mut prev = S::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = a[i][j].mul(&a[r][c]).sub(&a[i][c].mul(&a[r][j]));
                    a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
                }
                a[i][c] = S::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }
}

impl Matrix<Rational> {
    /// Integer matrix from rows of `i64`.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x = x.mul(&inv);
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = x.sub(&factor.mul(p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows_sized(self.rows, self.cols, a), pivots)
    }

    fn from_rows_sized(rows: usize, cols: usize, a: Vec<Vec<Rational>>) -> Self {
        Matrix::new(rows, cols, a.into_iter().flatten().collect())
    }

    /// Solves `A · X = B` exactly. Free variables are set to zero.
    pub fn solve_exact(&self, b: &Self) -> Result<Self> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let k = b.cols;
        let mut aug = Matrix::zeros(self.rows, n + k);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..k {
                aug.set(i, n + j, b.get(i, j).clone());
            }
        }
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(n, k);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                x.set(c, j, red.get(r, n + j).clone());
            }
        }
        Ok(x)
    }

    /// Inverse by Gauss–Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        match self.solve_exact(&Matrix::identity(self.rows)) {
            Ok(x) if self.rank() == self.rows => Some(x),
            _ => None,
        }
    }

    /// A basis of the row space: the nonzero rows of the reduced echelon form.
    pub fn row_space_basis(&self) -> Self {
        let (red, pivots) = self.rref();
        Matrix::new(pivots.len(), self.cols, red.data[..pivots.len() * self.cols].to_vec())
    }

    /// Embeds the entries as constant polynomials in `nvars` variables.
    pub fn to_poly(&self, nvars: usize) -> Matrix<MultiPoly> {
        self.map(|x| MultiPoly::constant(x.clone(), nvars))
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn identity_det_adj() {
        let (d, adj) = Matrix::<Rational>::identity(2).det_adj();
        assert_eq!(d, q(1));
        assert_eq!(adj, Matrix::identity(2));
    }

    #[test]
    fn textbook_adjugate() {
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let (d, adj) = m.det_adj();
        assert_eq!(d, q(-2));
        assert_eq!(adj, Matrix::from_ints(&[&[4, -2], &[-3, 1]]));
        assert_eq!(m.mul(&adj), Matrix::identity(2).scale(&q(-2)));
    }

    #[test]
    fn det_needs_pivoting() {
        let m = Matrix::from_ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.det(), q(-2));
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).det(), q(0));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(Matrix::<Rational>::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::<Rational>::identity(5).rank(), 5);
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = Matrix::from_ints(&[&[3, -1], &[2, 7]]);
        assert_eq!(Matrix::identity(2).solve_exact(&b).unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_ints(&[&[1], &[1]]);
        let b = Matrix::from_ints(&[&[1], &[2]]);
        assert_eq!(a.solve_exact(&b), Err(Error::NoSolution));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_ints(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn polynomial_gram_of_sign_group() {
        // C₂ = {±1} acting on the line, orbit of X₁: Q = X₁² + X₁² = 2X₁².
        let x = MultiPoly::variable(0, 1);
        let v = Matrix::from_columns(1, &[vec![x.clone()], vec![x.neg()]]);
        let gram = v.mul(&v.transpose());
        let (d, adj) = gram.det_adj();
        let expected = x.mul(&x).scale(&q(2));
        assert_eq!(d, expected);
        assert_eq!(gram.mul(&adj), Matrix::new(1, 1, vec![expected]));
    }
}
