//! Dense matrices over an exact field, with reduced row echelon form and linear solving.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::field::{Field, Rational};
use super::subspace::Subspace;
use super::ExactError;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Solution set `particular + span(kernel)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution<F> {
    pub particular: Vec<F>,
    pub kernel: Vec<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self, ExactError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(ExactError::Dimension(format!(
                    "row {i} has length {} but {cols} columns expected",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
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
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.cols {
            return Err(ExactError::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self, ExactError> {
        if self.rows != other.rows {
            return Err(ExactError::Dimension("hstack row mismatch".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - factor.clone() * pv.clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space `{x : Mx = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let ech = self.rref();
        kernel_from_echelon(&ech, self.cols)
    }

    pub fn kernel_space(&self) -> Subspace<F> {
        Subspace::from_spanning(self.cols, &self.kernel())
    }

    /// Span of the columns, as a subspace of `F^rows`.
    pub fn column_space(&self) -> Subspace<F> {
        Subspace::from_spanning(self.rows, &self.transpose().row_vecs())
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_spanning(self.cols, &self.row_vecs())
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(n)).ok()?;
        let ech = aug.rref();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| ech.matrix.get(i, n + j).clone()))
    }

    /// Solve `M x = b`: a particular solution (free variables zero) plus a kernel basis,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<AffineSolution<F>>, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::Dimension(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let col = Matrix::from_fn(self.rows, 1, |i, _| b[i].clone());
        let ech = self.hstack(&col)?.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![F::zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            particular[p] = ech.matrix.get(r, self.cols).clone();
        }
        let kernel = kernel_from_echelon(&ech, self.cols);
        Ok(Some(AffineSolution { particular, kernel }))
    }
}

impl Matrix<Rational> {
    /// Parse rows such as `[[1, 0], [0, -1/2]]`.
    pub fn parse(text: &str) -> Result<Self, ExactError> {
        let rows = super::parse_nested_rows(text)?;
        let cols = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| super::parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(parsed, cols)
    }
}

fn kernel_from_echelon<F: Field>(ech: &Echelon<F>, ncols: usize) -> Vec<Vec<F>> {
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &ech.pivots {
            if p < ncols {
                v[p] = true;
            }
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !pivot_set[c]) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &p) in ech.pivots.iter().enumerate() {
            if p < ncols {
                v[p] = -ech.matrix.get(r, free).clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Free function form of [`Matrix::solve`].
pub fn solve_linear<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Option<AffineSolution<F>>, ExactError> {
    m.solve(b)
}

impl<'a, F: Field> Mul<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &'a Matrix<F>) -> Matrix<F> {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<'a, F: Field> Add<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &'a Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<'a, F: Field> Sub<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &'a Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
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
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{q, qi};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect(), cols)
            .unwrap()
    }

    #[test]
    fn solve_identity() {
        let id = Matrix::<Rational>::identity(3);
        let v = vec![q(1, 2), qi(-3), qi(7)];
        let sol = id.solve(&v).unwrap().unwrap();
        assert_eq!(sol.particular, v);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_inconsistent() {
        let z = Matrix::<Rational>::zeros(2, 2);
        assert!(z.solve(&[qi(1), qi(0)]).unwrap().is_none());
    }

    #[test]
    fn solve_underdetermined() {
        let a = m(&[&[1, 1]]);
        let sol = a.solve(&[qi(1)]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![qi(1), qi(0)]);
        assert_eq!(sol.kernel, vec![vec![qi(-1), qi(1)]]);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = m(&[&[1, 1]]);
        assert!(a.solve(&[qi(1), qi(2)]).is_err());
    }

    #[test]
    fn inverse_and_rank() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul_vec(&v).iter().all(|x| Field::is_zero(x)));
        }
    }

    #[test]
    fn parse_matrix_literal() {
        let a = Matrix::parse("[[1, 0], [0, -1/2]]").unwrap();
        assert_eq!(a.get(1, 1), &q(-1, 2));
        assert_eq!(a.to_string(), "[[1, 0], [0, -1/2]]");
    }
}
