use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Rational};
use crate::orbit::{group_from_elements, MatrixGroup};

/// A dense matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl GF2Matrix {
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("GF(2) matrix rows have different lengths".into()));
        }
        Ok(GF2Matrix {
            rows: rows.len(),
            cols,
            bits: rows.concat(),
        })
    }

    /// Parses rows of `0`/`1` characters, one row per line. Whitespace
    /// inside a row is ignored; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::Parse(format!("line {}: unexpected character {other:?}", k + 1))),
                })
                .collect::<Result<Vec<bool>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("empty GF(2) matrix".into()));
        }
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let rows: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Self::from_rows(&rows).expect("square rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.bits[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// `C x` over GF(2).
    pub fn mul_vec(&self, x: &[bool]) -> Vec<bool> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).filter(|(a, b)| **a && **b).count() % 2 == 1)
            .collect()
    }

    /// Rank by Gaussian elimination over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<bool>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else {
                continue;
            };
            rows.swap(p, r);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= *y;
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_faithful(&self) -> bool {
        self.rank() == self.cols
    }
}

/// The vector `x ∈ GF(2)ⁿ` with index `idx` in lexicographic order, `x₁`
/// most significant.
pub fn index_to_vector(n: usize, idx: usize) -> Vec<bool> {
    (0..n).map(|i| (idx >> (n - 1 - i)) & 1 == 1).collect()
}

fn sign_pattern(c: &GF2Matrix, x: &[bool]) -> Vec<bool> {
    c.mul_vec(x)
}

/// `{diag((−1)^{Cx})}` with elements in lexicographic order of `x`. When
/// `C` is not faithful, repeated matrices are kept only at their first
/// index.
pub fn diag_rep(c: &GF2Matrix) -> Result<MatrixGroup> {
    let d = c.rows();
    let build = |signs: &[bool]| {
        let mut m = Matrix::zeros(d, d);
        for (i, &neg) in signs.iter().enumerate() {
            m.set(i, i, Rational::from_int(if neg { -1 } else { 1 }));
        }
        m
    };
    elements_by_signs(c, d, build)
}

/// The signed-permutation action of `GF(2)ⁿ` on the `2d` points `±b_i`
/// (point `2i` is `+b_i`, point `2i+1` is `−b_i`), as permutation matrices.
pub fn permutation_rep(c: &GF2Matrix) -> Result<MatrixGroup> {
    let d = c.rows();
    let build = |signs: &[bool]| {
        let mut m = Matrix::zeros(2 * d, 2 * d);
        for (i, &neg) in signs.iter().enumerate() {
            let (a, b) = (2 * i, 2 * i + 1);
            if neg {
                m.set(b, a, Rational::from_int(1));
                m.set(a, b, Rational::from_int(1));
            } else {
                m.set(a, a, Rational::from_int(1));
                m.set(b, b, Rational::from_int(1));
            }
        }
        m
    };
    elements_by_signs(c, 2 * d, build)
}

fn elements_by_signs(c: &GF2Matrix, dim: usize, build: impl Fn(&[bool]) -> Matrix<Rational>) -> Result<MatrixGroup> {
    let n = c.cols();
    if n >= usize::BITS as usize - 1 {
        return Err(Error::ResourceCap(format!("2^{n} group elements")));
    }
    let mut elements: Vec<Matrix<Rational>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for idx in 0..1usize << n {
        let m = build(&sign_pattern(c, &index_to_vector(n, idx)));
        if seen.insert(m.clone()) {
            elements.push(m);
        }
    }
    let generators = (0..n)
        .filter_map(|i| {
            let m = build(&sign_pattern(c, &index_to_vector(n, 1 << (n - 1 - i))));
            elements.iter().position(|e| *e == m)
        })
        .collect();
    group_from_elements(dim, elements, generators)
}

/// `γ(x) = d − 2 w(Cx)`.
pub fn hamming_gamma(c: &GF2Matrix, x: &[bool]) -> i64 {
    let weight = c.mul_vec(x).iter().filter(|&&b| b).count();
    c.rows() as i64 - 2 * weight as i64
}

/// Rows pairwise distinct and nonzero.
pub fn is_ideal_character(c: &GF2Matrix) -> bool {
    let mut rows: Vec<&[bool]> = (0..c.rows()).map(|i| c.row(i)).collect();
    if rows.iter().any(|r| r.iter().all(|&b| !b)) {
        return false;
    }
    rows.sort();
    rows.windows(2).all(|w| w[0] != w[1])
}

/// The counting argument for ideal characters of `GF(2)ⁿ` of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealOrbitBound {
    /// `binom(2ⁿ − 1, d)`, the number of row sets of an ideal character.
    pub count: BigUint,
    /// `|GL(n, 2)|`.
    pub gl_order: BigUint,
    /// `count < gl_order`: some nonidentity element of GL(n,2) must fix each
    /// row set, so every such polytope has extra symmetries.
    pub forced_stabilizer: bool,
}

pub fn count_ideal_orbit_bound(n: u32, d: u64) -> Result<IdealOrbitBound> {
    if n == 0 || n > 30 {
        return Err(Error::Precondition(format!("n = {n} must lie in 1..=30")));
    }
    let points = (1u64 << n) - 1;
    if d == 0 || d > points {
        return Err(Error::Precondition(format!("d = {d} must lie in 1..={points}")));
    }
    let mut count = BigUint::one();
    for k in 0..d {
        count = count * BigUint::from(points - k) / BigUint::from(k + 1);
    }
    let two_n = BigUint::one() << n;
    let gl_order = (0..n).fold(BigUint::one(), |acc, i| acc * (&two_n - (BigUint::one() << i)));
    Ok(IdealOrbitBound {
        forced_stabilizer: count < gl_order,
        count,
        gl_order,
    })
}
