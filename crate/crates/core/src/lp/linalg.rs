use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix with an explicit column count, so that matrices
/// with zero rows still know their width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::dim("matrix row", cols, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| crate::scalar::dot(self.row(i), x))
            .collect()
    }

    fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

/// Result of [`linear_solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution<T> {
    NoSolution,
    Solution {
        point: Vec<T>,
        nullspace: Vec<Vec<T>>,
    },
}

/// Gauss-Jordan elimination over the first `pivot_cols` columns of `rows`,
/// taking the first nonzero entry in each column as pivot. Returns the pivot
/// column of each leading row.
fn reduce<T: Scalar>(rows: &mut [Vec<T>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in 0..rows[i].len() {
                let delta = factor.clone() * rows[r][j].clone();
                rows[i][j] = rows[i][j].clone() - delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn nullspace_from_rref<T: Scalar>(rows: &[Vec<T>], pivots: &[usize], cols: usize) -> Vec<Vec<T>> {
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -rows[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `a x = b` exactly.
///
/// The particular solution sets every free variable to zero; the null-space
/// basis has one vector per free column (that column set to one).
pub fn linear_solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<LinearSolution<T>> {
    if b.len() != a.nrows() {
        return Err(Error::dim("linear_solve rhs", a.nrows(), b.len()));
    }
    let cols = a.ncols();
    let mut rows = a.to_rows();
    for (row, rhs) in rows.iter_mut().zip(b) {
        row.push(rhs.clone());
    }
    let pivots = reduce(&mut rows, cols);
    if rows[pivots.len()..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(LinearSolution::NoSolution);
    }
    let mut point = vec![T::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        point[p] = rows[row][cols].clone();
    }
    let nullspace = nullspace_from_rref(&rows, &pivots, cols);
    Ok(LinearSolution::Solution { point, nullspace })
}

pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    let mut rows = a.to_rows();
    reduce(&mut rows, a.ncols()).len()
}

pub fn nullspace<T: Scalar>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let mut rows = a.to_rows();
    let pivots = reduce(&mut rows, a.ncols());
    nullspace_from_rref(&rows, &pivots, a.ncols())
}

/// Outcome of [`affine_dependence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineDependence<T> {
    Independent,
    /// Coefficients `c` with `c != 0`, `sum c = 0` and `sum c_i p_i = 0`.
    Dependence(Vec<T>),
}

/// Finds an exact affine dependence among `points`, if one exists.
///
/// The coefficients are the first null-space vector of the matrix whose
/// columns are the points with a trailing 1 appended.
pub fn affine_dependence<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<AffineDependence<T>> {
    let Some(first) = points.first() else {
        return Ok(AffineDependence::Independent);
    };
    let dim = first.as_ref().len();
    for p in points {
        if p.as_ref().len() != dim {
            return Err(Error::dim("affine_dependence point", dim, p.as_ref().len()));
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].as_ref() == points[j].as_ref() {
                return Err(Error::DuplicateSignal {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let m = points.len();
    let mut stacked = Matrix::zeros(dim + 1, m);
    for (j, p) in points.iter().enumerate() {
        for (i, x) in p.as_ref().iter().enumerate() {
            stacked.set(i, j, x.clone());
        }
        stacked.set(dim, j, T::one());
    }
    Ok(match nullspace(&stacked).into_iter().next() {
        Some(c) => AffineDependence::Dependence(c),
        None => AffineDependence::Independent,
    })
}
