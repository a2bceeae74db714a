//! Integer matrices, row-style Hermite normal form and lattice membership.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of big integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Product of the diagonal; the lattice index for a square HNF basis.
    pub fn diagonal_product(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).product()
    }

    /// True for a square, upper triangular matrix with positive diagonal.
    pub fn is_square_upper_triangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self[(i, i)].is_positive() && (0..i).all(|j| self[(i, j)].is_zero())
            })
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form.
///
/// The output spans the same Z-lattice as the input rows, has no zero rows,
/// is in echelon form with positive pivots, and every entry above a pivot
/// lies in `[0, pivot)`. A zero lattice yields a matrix with no rows.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    let mut pivots = Vec::new();
    for j in 0..cols {
        if r == rows {
            break;
        }
        // Fold every row below r into row r via extended gcd on column j.
        for i in r + 1..rows {
            if a[(i, j)].is_zero() {
                continue;
            }
            if a[(r, j)].is_zero() {
                a.swap_rows(r, i);
                continue;
            }
            let x = a[(r, j)].clone();
            let y = a[(i, j)].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            for c in j..cols {
                let top = &s * &a[(r, c)] + &t * &a[(i, c)];
                let bottom = &xg * &a[(i, c)] - &yg * &a[(r, c)];
                a[(r, c)] = top;
                a[(i, c)] = bottom;
            }
        }
        if a[(r, j)].is_zero() {
            continue;
        }
        if a[(r, j)].is_negative() {
            for c in j..cols {
                a[(r, c)] = -&a[(r, c)];
            }
        }
        pivots.push((r, j));
        r += 1;
    }
    // Reduce entries above each pivot into [0, pivot).
    for &(pr, pc) in &pivots {
        let pivot = a[(pr, pc)].clone();
        for i in 0..pr {
            let q = a[(i, pc)].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for c in pc..cols {
                let v = &a[(i, c)] - &q * &a[(pr, c)];
                a[(i, c)] = v;
            }
        }
    }
    IntMatrix::from_rows(cols, (0..r).map(|i| a.row(i).to_vec()).collect())
}

/// Membership of `v` in the row lattice of an echelon (HNF) basis.
///
/// Works row by row: each pivot must divide the current coordinate exactly,
/// and non-pivot coordinates must already be zero.
pub fn solve_in_lattice(basis: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(basis.cols(), v.len(), "dimension mismatch");
    let mut rest = v.to_vec();
    let mut col = 0;
    for i in 0..basis.rows() {
        let row = basis.row(i);
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        while col < pc {
            if !rest[col].is_zero() {
                return false;
            }
            col += 1;
        }
        let (q, r) = rest[pc].div_rem(&row[pc]);
        if !r.is_zero() {
            return false;
        }
        if !q.is_zero() {
            for c in pc..rest.len() {
                rest[c] -= &q * &row[c];
            }
        }
        col = pc + 1;
    }
    rest[col.min(rest.len())..].iter().all(|x| x.is_zero())
}
