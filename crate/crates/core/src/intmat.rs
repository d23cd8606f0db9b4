//! Dense integer matrices with Smith normal form and the lattice helpers built on it.
//!
//! All lattices are described by basis rows. Elimination pivots on the entry of
//! minimal absolute value, which keeps coefficients small at the ranks we use.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl From<Vec<Vec<i64>>> for IntMatrix {
    fn from(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows_with_cols(&rows, cols)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that zero-row matrices keep a width.
    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            data.extend_from_slice(r);
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible integer matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Stacks matrices with the same number of columns on top of each other.
    pub fn vstack(blocks: &[IntMatrix], cols: usize) -> IntMatrix {
        let mut rows = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows.extend(b.to_rows());
        }
        IntMatrix::from_rows_with_cols(&rows, cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: i64) {
        if factor == 0 {
            return;
        }
        for j in 0..self.cols {
            let s = self[(source, j)];
            self[(target, j)] += factor * s;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: i64) {
        if factor == 0 {
            return;
        }
        for i in 0..self.rows {
            let s = self[(i, source)];
            self[(i, target)] += factor * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn smith(&self) -> SmithForm {
        smith_normal_form(self)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.smith().rank()
    }

    /// Determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    /// Inverse of a unimodular matrix, `None` when the determinant is not ±1.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let snf = self.smith();
        if snf.diagonal.len() != self.rows || snf.diagonal.iter().any(|&d| d != 1) {
            return None;
        }
        // U A V = I, so A^{-1} = V U.
        Some(snf.right.mul(&snf.left))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len(), "pairing of vectors of different length");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// `left * m * right = diag(diagonal, 0, ...)` with `diagonal[i] | diagonal[i+1]`, all positive.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors different from 1.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d != 1).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        'pivot: loop {
            // entry of minimal absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a[(i, j)];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm {
                    diagonal,
                    left,
                    right,
                };
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            let p = a[(t, t)];
            for i in t + 1..rows {
                let q = a[(i, t)] / p;
                a.add_row(i, t, -q);
                left.add_row(i, t, -q);
                if a[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[(t, j)] / p;
                a.add_col(j, t, -q);
                right.add_col(j, t, -q);
                if a[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // divisibility of the trailing block by the pivot
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[(i, j)] % p != 0 {
                        a.add_row(t, i, 1);
                        left.add_row(t, i, 1);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if a[(t, t)] < 0 {
            a.negate_row(t);
            left.negate_row(t);
        }
        diagonal.push(a[(t, t)]);
    }
    SmithForm {
        diagonal,
        left,
        right,
    }
}

/// Basis (as rows) of the integer kernel `{x : m x = 0}`; the result is saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = m.smith();
    let r = snf.rank();
    let n = m.ncols();
    let rows: Vec<Vec<i64>> = (r..n).map(|j| snf.right.column(j)).collect();
    IntMatrix::from_rows_with_cols(&rows, n)
}

/// Basis of `(span of rows ⊗ Q) ∩ Z^n`.
pub fn saturate(rows: &IntMatrix) -> IntMatrix {
    let n = rows.ncols();
    let k = kernel_basis(rows);
    if k.nrows() == 0 {
        return IntMatrix::identity(n);
    }
    kernel_basis(&k)
}

/// Integer coefficients `c` with `c · basis = v`, if they exist.
pub fn coordinates_in(basis: &IntMatrix, v: &[i64]) -> Option<Vec<i64>> {
    let k = basis.nrows();
    let n = basis.ncols();
    assert_eq!(v.len(), n);
    // U B V = D, so c B = v becomes (c U^{-1}) D = v V.
    let snf = basis.smith();
    if snf.rank() != k {
        panic!("coordinates_in requires linearly independent basis rows");
    }
    let w = IntMatrix::from_rows_with_cols(&[v.to_vec()], n).mul(&snf.right);
    let mut y = vec![0i64; k];
    for j in 0..n {
        let wj = w[(0, j)];
        if j < k {
            let d = snf.diagonal[j];
            if wj % d != 0 {
                return None;
            }
            y[j] = wj / d;
        } else if wj != 0 {
            return None;
        }
    }
    let c = IntMatrix::from_rows_with_cols(&[y], k).mul(&snf.left);
    Some(c.row(0).to_vec())
}

/// A primitive integer solution direction of `m x = t` (scaled to clear denominators),
/// for `m` of full row rank. Returns the scaling factor alongside the vector.
pub fn rational_solution(m: &IntMatrix, t: &[i64]) -> (Vec<i64>, i64) {
    let r = m.nrows();
    let n = m.ncols();
    let snf = m.smith();
    assert_eq!(snf.rank(), r, "rational_solution requires full row rank");
    let ut = snf.left.mul_vec(t);
    let denom = snf.diagonal.iter().fold(1, |acc, &d| lcm(acc, d));
    let mut mu = vec![0i64; n];
    for i in 0..r {
        mu[i] = ut[i] * (denom / snf.diagonal[i]);
    }
    let x = snf.right.mul_vec(&mu);
    let g = x.iter().fold(0, |acc, &v| gcd(acc, v));
    if g > 1 {
        (x.iter().map(|v| v / g).collect(), denom / g)
    } else {
        (x, denom)
    }
}

/// Canonical row-style Hermite normal form of the lattice spanned by the rows (zero rows dropped).
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if a[(i, c)] != 0 && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                let q = a[(i, c)] / a[(r, c)];
                a.add_row(i, r, -q);
                if a[(i, c)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)] == 0 {
            continue;
        }
        if a[(r, c)] < 0 {
            a.negate_row(r);
        }
        let p = a[(r, c)];
        for i in 0..r {
            let q = a[(i, c)].div_euclid(p);
            a.add_row(i, r, -q);
        }
        r += 1;
    }
    let kept: Vec<Vec<i64>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows_with_cols(&kept, cols)
}
