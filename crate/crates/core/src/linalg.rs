//! Exact linear algebra: dense matrices over an ordered field and lattice
//! routines (Hermite forms, saturated integer kernels) over an [`Int`].

use std::fmt::Debug;

use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Int};

/// Ordered field used as matrix entries.
pub trait Field: Clone + Debug + Num + Signed + Ord {}

impl<I: Int> Field for Ratio<I> {}

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from row vectors. All rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {} but {cols} columns were declared",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn image(&self) -> Vec<Vec<T>> {
        let (_, pivots) = self.rref();
        pivots
            .iter()
            .map(|&c| (0..self.rows).map(|i| self[(i, c)].clone()).collect())
            .collect()
    }

    /// Some solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Lifts integer rows into a `BigRational` matrix.
pub fn rational_matrix<I: Int>(rows: &[Vec<I>], cols: usize) -> Matrix<BigRational> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(scalar::to_rational).collect())
        .collect();
    Matrix::from_rows(rows, cols).expect("rows have consistent length")
}

pub fn rank<I: Int>(rows: &[Vec<I>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rational_matrix(rows, cols).rank()
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn determinant<I: Int>(rows: &[Vec<I>]) -> I {
    let n = rows.len();
    let mut m: Vec<Vec<num_bigint::BigInt>> =
        rows.iter().map(|r| r.iter().map(Int::to_big).collect()).collect();
    let mut sign_flip = false;
    let mut prev = num_bigint::BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return I::zero();
            };
            m.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = if n == 0 {
        num_bigint::BigInt::one()
    } else {
        m[n - 1][n - 1].clone()
    };
    I::from_bigint(&if sign_flip { -d } else { d })
}

/// Row Hermite normal form of a list of integer vectors.
///
/// The result spans the same lattice, is in row echelon form with positive
/// pivots, entries above each pivot reduced into `[0, pivot)`, and zero rows
/// dropped. Two generating sets of the same lattice give identical output.
pub fn hermite_rows<I: Int>(rows: &[Vec<I>], cols: usize) -> Vec<Vec<I>> {
    let mut m: Vec<Vec<I>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            // pick the row with the smallest nonzero |entry| in column c among rows >= r
            let Some(p) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
            else {
                break;
            };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = scalar::sub(x, &scalar::mul(&q, y));
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                m[r].iter_mut().for_each(|x| *x = -x.clone());
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if q.is_zero() {
                    continue;
                }
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = scalar::sub(x, &scalar::mul(&q, y));
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m.retain(|row| !scalar::is_zero_vec(row));
    m
}

/// Saturated basis of `{x in Z^cols : A x = 0}` in row Hermite normal form.
pub fn integer_kernel<I: Int>(rows: &[Vec<I>], cols: usize) -> Vec<Vec<I>> {
    // unimodular column operations on A, tracked in U (columns of U)
    let mut a: Vec<Vec<I>> = rows.to_vec();
    let mut u: Vec<Vec<I>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { I::one() } else { I::zero() }).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<I>>, dst: usize, src: usize, q: &I| {
        for row in m.iter_mut() {
            let v = scalar::sub(&row[dst], &scalar::mul(q, &row[src]));
            row[dst] = v;
        }
    };
    let col_swap = |m: &mut Vec<Vec<I>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut piv = 0;
    for r in 0..a.len() {
        if piv == cols {
            break;
        }
        loop {
            let Some(p) = (piv..cols)
                .filter(|&j| !a[r][j].is_zero())
                .min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()))
            else {
                break;
            };
            col_swap(&mut a, piv, p);
            col_swap(&mut u, piv, p);
            let mut done = true;
            for j in piv + 1..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][piv]);
                col_op(&mut a, j, piv, &q);
                col_op(&mut u, j, piv, &q);
                if !a[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[r][piv].is_zero() {
            piv += 1;
        }
    }
    let basis: Vec<Vec<I>> = (piv..cols)
        .map(|j| (0..cols).map(|i| u[i][j].clone()).collect())
        .collect();
    hermite_rows(&basis, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let id: Matrix<BigRational> = Matrix::identity(3);
        assert!(id.kernel().is_empty());
        assert_eq!(id.rank(), 3);
        let ik = integer_kernel::<i64>(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
        assert!(ik.is_empty());
    }

    #[test]
    fn all_ones_row_kernel_is_saturated() {
        let k = integer_kernel::<i64>(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        // completes to a unimodular matrix with the vector (0,0,1)
        let mut m = k.clone();
        m.push(vec![0, 0, 1]);
        assert_eq!(determinant(&m).abs(), 1);
    }

    #[test]
    fn projective_plane_cokernel_has_rank_one() {
        // rays e1, e2, -e1-e2 as the rows of the map Z^3 -> Z^2 (transposed)
        let v = vec![vec![1i64, 0, -1], vec![0, 1, -1]];
        let k = integer_kernel(&v, 3);
        assert_eq!(k, vec![vec![1, 1, 1]]);
        assert_eq!(3 - rank(&v, 3), 1);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![vec![2i64, 0, 1], vec![1, 3, 2], vec![1, 1, 1]];
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert_eq!(determinant(&m), 0);
        let m = vec![vec![0i64, 1], vec![1, 0]];
        assert_eq!(determinant(&m), -1);
        let big: Vec<Vec<BigInt>> = vec![vec![3.into(), 1.into()], vec![4.into(), 2.into()]];
        assert_eq!(determinant(&big), BigInt::from(2));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows::<i64>(&[vec![2, 4, 1], vec![1, 2, 0]], 3);
        let b = hermite_rows::<i64>(&[vec![1, 2, 0], vec![3, 6, 1]], 3);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn solve_and_image() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.image().len(), 1);
        assert!(m.solve(&[q(1), q(3)]).is_none());
        let x = m.solve(&[q(3), q(6)]).unwrap();
        assert_eq!(m.apply(&x).unwrap(), vec![q(3), q(6)]);
    }

    #[test]
    fn shape_errors() {
        assert!(Matrix::<BigRational>::from_rows(vec![vec![q(1)], vec![q(1), q(2)]], 1).is_err());
        let a: Matrix<BigRational> = Matrix::identity(2);
        let b: Matrix<BigRational> = Matrix::identity(3);
        assert!(a.mul(&b).is_err());
    }
}
