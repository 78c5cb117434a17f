//! Linear subspaces of `F^n` in canonical reduced-row-echelon form.
//!
//! Two subspaces are equal as sets exactly when their echelon bases coincide, so the
//! derived `PartialEq` is set equality.

use super::field::Field;
use super::matrix::Matrix;
use super::ExactError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    /// Nonzero rows of a reduced row echelon form.
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

/// Which of the binary subspace operations to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Intersect,
    Sum,
    QuotientDim,
}

/// Result of [`subspace_calc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceResult<F> {
    Space(Subspace<F>),
    Count(usize),
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![F::zero(); ambient];
                v[i] = F::one();
                v
            })
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of coordinate vectors `e_i` for the listed indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<F>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![F::zero(); ambient];
                v[i] = F::one();
                v
            })
            .collect();
        Self::from_spanning(ambient, &vs)
    }

    pub fn from_spanning(ambient: usize, vectors: &[Vec<F>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec(), ambient).expect("lengths checked");
        let ech = m.rref();
        let r = ech.pivots.len();
        let basis = (0..r).map(|i| ech.matrix.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots: ech.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; they index a canonical complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Canonical representative of `v` modulo this subspace: pivot coordinates cleared.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o = o.clone() - c.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given basis coefficients.
    pub fn combine(&self, coeffs: &[F]) -> Vec<F> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count must equal dimension");
        let mut out = vec![F::zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                *o = o.clone() + c.clone() * b.clone();
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), ExactError> {
        if self.ambient != other.ambient {
            return Err(ExactError::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Self::from_spanning(self.ambient, &vs))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // a·U = b·V  <=>  (a, b) in ker [U; -V]^T
        let p = self.dim();
        let mut cols: Vec<Vec<F>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
        let m = Matrix::from_columns(&cols, self.ambient);
        let vs: Vec<Vec<F>> = m.kernel().into_iter().map(|ab| self.combine(&ab[..p])).collect();
        Ok(Self::from_spanning(self.ambient, &vs))
    }

    /// `dim(self) - dim(self ∩ other)`; equals `dim(self/other)` when `other ⊆ self`.
    pub fn quotient_dim(&self, other: &Self) -> Result<usize, ExactError> {
        Ok(self.dim() - self.intersect(other)?.dim())
    }

    /// Image under `m`, where `m` maps `F^ambient` to `F^(m.rows())` acting on columns.
    pub fn image(&self, m: &Matrix<F>) -> Result<Self, ExactError> {
        if m.cols() != self.ambient {
            return Err(ExactError::Dimension("image: matrix columns must equal ambient".into()));
        }
        let vs: Vec<Vec<F>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Ok(Self::from_spanning(m.rows(), &vs))
    }

    /// `{x : m x ∈ target}`.
    pub fn preimage(m: &Matrix<F>, target: &Self) -> Result<Self, ExactError> {
        if m.rows() != target.ambient {
            return Err(ExactError::Dimension("preimage: matrix rows must equal target ambient".into()));
        }
        // x ↦ reduce(m x) is linear; its kernel is the preimage
        let comp = target.complement_coordinates();
        let cols: Vec<Vec<F>> = (0..m.cols())
            .map(|j| {
                let r = target.reduce(&m.column(j));
                comp.iter().map(|&c| r[c].clone()).collect()
            })
            .collect();
        let reduced = Matrix::from_columns(&cols, comp.len());
        Ok(reduced.kernel_space())
    }

    pub fn conj(&self) -> Self {
        let vs: Vec<Vec<F>> = self.basis.iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect();
        Self::from_spanning(self.ambient, &vs)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        let vs: Vec<Vec<G>> = self.basis.iter().map(|v| v.iter().map(&f).collect()).collect();
        Subspace::from_spanning(self.ambient, &vs)
    }
}

/// Binary subspace calculator: intersection, sum, or quotient dimension.
pub fn subspace_calc<F: Field>(
    op: SubspaceOp,
    u: &Subspace<F>,
    v: &Subspace<F>,
) -> Result<SubspaceResult<F>, ExactError> {
    Ok(match op {
        SubspaceOp::Intersect => SubspaceResult::Space(u.intersect(v)?),
        SubspaceOp::Sum => SubspaceResult::Space(u.sum(v)?),
        SubspaceOp::QuotientDim => SubspaceResult::Count(u.quotient_dim(v)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{qi, Rational};

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![qi(0); n];
        v[i] = qi(1);
        v
    }

    #[test]
    fn spec_examples() {
        let u = Subspace::from_spanning(2, &[e(2, 0)]);
        let v = Subspace::from_spanning(2, &[e(2, 1)]);
        assert_eq!(
            subspace_calc(SubspaceOp::Intersect, &u, &v).unwrap(),
            SubspaceResult::Space(Subspace::zero(2))
        );
        assert_eq!(
            subspace_calc(SubspaceOp::Sum, &u, &v).unwrap(),
            SubspaceResult::Space(Subspace::full(2))
        );
        let full = Subspace::<Rational>::full(3);
        let line = Subspace::from_spanning(3, &[e(3, 0)]);
        assert_eq!(subspace_calc(SubspaceOp::QuotientDim, &full, &line).unwrap(), SubspaceResult::Count(2));
    }

    #[test]
    fn ambient_mismatch() {
        let u = Subspace::<Rational>::full(2);
        let v = Subspace::<Rational>::full(3);
        assert!(u.intersect(&v).is_err());
        assert!(u.sum(&v).is_err());
    }

    #[test]
    fn canonical_form() {
        let a = Subspace::from_spanning(3, &[vec![qi(1), qi(1), qi(0)], vec![qi(0), qi(1), qi(1)]]);
        let b = Subspace::from_spanning(3, &[vec![qi(1), qi(2), qi(1)], vec![qi(2), qi(1), qi(-1)]]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_spanning(3, &[e(3, 0), e(3, 1)]);
        let b = Subspace::from_spanning(3, &[e(3, 1), e(3, 2)]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::from_spanning(3, &[e(3, 1)]));
    }

    #[test]
    fn preimage_of_line() {
        // m = projection onto first coordinate; preimage of zero is span(e1, e2)
        let m = Matrix::from_rows(vec![vec![qi(1), qi(0), qi(0)]], 3).unwrap();
        let pre = Subspace::preimage(&m, &Subspace::zero(1)).unwrap();
        assert_eq!(pre, Subspace::from_spanning(3, &[e(3, 1), e(3, 2)]));
    }
}
