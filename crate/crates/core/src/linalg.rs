//! Small dense matrices.
//!
//! Every matrix in the stability pipeline is tiny (a handful of rows), so a plain
//! row-major `Vec` with Gaussian elimination is all that is needed here.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from a list of rows. Fails if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch(format!(
                "ragged rows: expected every row to have {m} entries"
            )));
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Copy of the leading `cols` columns, or zero-padded to `cols` when wider.
    pub fn resized_cols(&self, cols: usize) -> Self {
        Matrix::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn matmul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl<T: Clone + Num> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.matmul(rhs).expect("matrix shapes agree")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// In-place LU factorisation with partial pivoting. Returns the row permutation
/// sign, or `None` when a pivot falls below `threshold` (relative to the largest
/// entry of the input).
fn lu_in_place<T, M>(
    a: &mut Matrix<T>,
    perm: &mut [usize],
    mag: impl Fn(&T) -> M,
    threshold: M,
) -> Option<bool>
where
    T: Clone + Num,
    M: PartialOrd + Clone + Num,
{
    let n = a.rows;
    let scale = a
        .data
        .iter()
        .map(&mag)
        .fold(M::zero(), |acc, x| if x > acc { x } else { acc });
    if scale.is_zero() {
        return if n == 0 { Some(false) } else { None };
    }
    let floor = threshold * scale;
    let mut odd = false;
    for k in 0..n {
        let mut best = k;
        let mut best_mag = mag(&a[(k, k)]);
        for i in k + 1..n {
            let m = mag(&a[(i, k)]);
            if m > best_mag {
                best = i;
                best_mag = m;
            }
        }
        if best_mag.is_zero() || best_mag <= floor {
            return None;
        }
        if best != k {
            for j in 0..n {
                a.data.swap(k * n + j, best * n + j);
            }
            perm.swap(k, best);
            odd = !odd;
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let factor = a[(i, k)].clone() / pivot.clone();
            a[(i, k)] = factor.clone();
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = a[(i, j)].clone() - factor.clone() * a[(k, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    Some(odd)
}

fn lu_solve<T: Clone + Num>(lu: &Matrix<T>, perm: &[usize], b: &Matrix<T>) -> Matrix<T> {
    let n = lu.rows;
    let mut x = Matrix::from_fn(n, b.cols, |i, j| b[(perm[i], j)].clone());
    for c in 0..b.cols {
        for i in 0..n {
            let mut s = x[(i, c)].clone();
            for k in 0..i {
                s = s - lu[(i, k)].clone() * x[(k, c)].clone();
            }
            x[(i, c)] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[(i, c)].clone();
            for k in i + 1..n {
                s = s - lu[(i, k)].clone() * x[(k, c)].clone();
            }
            x[(i, c)] = s / lu[(i, i)].clone();
        }
    }
    x
}

fn require_square<T>(a: &Matrix<T>) -> Result<()> {
    if a.rows != a.cols {
        return Err(Error::ShapeMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    Ok(())
}

impl<T: Field> Matrix<T> {
    /// Solve `X * self = rhs` for `X`.
    pub fn solve_left(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        require_square(self)?;
        if rhs.cols != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side has {} columns, expected {}",
                rhs.cols, self.rows
            )));
        }
        // X A = R  <=>  A^T X^T = R^T
        let mut lu = self.transpose();
        let mut perm: Vec<usize> = (0..self.rows).collect();
        lu_in_place(&mut lu, &mut perm, |x: &T| x.magnitude(), T::pivot_threshold())
            .ok_or(Error::Singular)?;
        Ok(lu_solve(&lu, &perm, &rhs.transpose()).transpose())
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        require_square(self)?;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..self.rows).collect();
        lu_in_place(&mut lu, &mut perm, |x: &T| x.magnitude(), T::pivot_threshold())
            .ok_or(Error::Singular)?;
        Ok(lu_solve(&lu, &perm, &Matrix::identity(self.rows)))
    }
}

impl<T: Real> Matrix<Complex<T>> {
    /// Determinant by LU with partial pivoting. Exactly singular input gives zero.
    pub fn det(&self) -> Result<Complex<T>> {
        require_square(self)?;
        let n = self.rows;
        if n == 0 {
            return Ok(Complex::one());
        }
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        match lu_in_place(&mut lu, &mut perm, |x: &Complex<T>| x.norm(), T::zero()) {
            None => Ok(Complex::zero()),
            Some(odd) => {
                let mut d = Complex::one();
                for i in 0..n {
                    d *= lu[(i, i)];
                }
                Ok(if odd { -d } else { d })
            }
        }
    }

    pub fn inverse(&self) -> Result<Matrix<Complex<T>>> {
        require_square(self)?;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..self.rows).collect();
        lu_in_place(
            &mut lu,
            &mut perm,
            |x: &Complex<T>| x.norm(),
            T::lit(1e3) * T::epsilon(),
        )
        .ok_or(Error::Singular)?;
        Ok(lu_solve(&lu, &perm, &Matrix::identity(self.rows)))
    }
}

impl<T: Real> Matrix<T> {
    pub fn to_complex(&self) -> Matrix<Complex<T>> {
        self.map(|&x| Complex::new(x, T::zero()))
    }
}
