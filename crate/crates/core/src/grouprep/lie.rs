//! Lie algebras: abstract structure constants, and matrix Lie algebras `𝔤 ⊆ gl_d`.

use crate::exactalg::{Field, Matrix, Rational, Subspace};

use super::GroupError;

/// A finite-dimensional Lie algebra given by structure constants
/// `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    structure: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, structure: Vec<Vec<Vec<Rational>>>) -> Result<Self, GroupError> {
        let n = names.len();
        let shape_ok = structure.len() == n && structure.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(GroupError::Invalid("structure constants must be an n x n x n array".into()));
        }
        Ok(LieAlgebra { names, structure })
    }

    pub fn zero() -> Self {
        LieAlgebra { names: Vec::new(), structure: Vec::new() }
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(names: Vec<String>) -> Self {
        let n = names.len();
        LieAlgebra { names, structure: vec![vec![vec![Rational::zero(); n]; n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.structure[i][j][k]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.structure[i][j]
    }

    /// Same structure constants under new basis names.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.dim() {
            return Err(GroupError::Invalid("wrong number of names".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vec<Rational>) {
        self.structure[i][j] = value;
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if Field::is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if Field::is_zero(b) {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !Field::is_zero(c) {
                        *o = o.clone() + &ab * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Violations of antisymmetry and Jacobi on basis elements, as human-readable strings.
    pub fn axiom_violations(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let sum: Vec<Rational> =
                    self.structure[i][j].iter().zip(&self.structure[j][i]).map(|(a, b)| a + b).collect();
                if sum.iter().any(|x| !Field::is_zero(x)) {
                    out.push(format!("antisymmetry fails for ({}, {})", self.names[i], self.names[j]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !Field::is_zero(&(a + b + c))) {
                        out.push(format!(
                            "Jacobi fails for ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        out
    }
}


/// A matrix Lie algebra: a bracket-closed span of `d × d` rational matrices.
#[derive(Clone, Debug)]
pub struct LinearGroupData {
    name: String,
    size: usize,
    basis: Vec<Matrix<Rational>>,
    lie: LieAlgebra,
    span: Subspace<Rational>,
}

fn unit_matrix(d: usize, i: usize, j: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(d, d);
    m.set(i, j, Rational::one());
    m
}

fn flatten(m: &Matrix<Rational>) -> Vec<Rational> {
    m.entries().to_vec()
}

impl LinearGroupData {
    /// Validate linear independence and bracket closure, then compute structure constants.
    pub fn from_basis(name: &str, size: usize, basis: Vec<Matrix<Rational>>) -> Result<Self, GroupError> {
        for (k, b) in basis.iter().enumerate() {
            if b.rows() != size || b.cols() != size {
                return Err(GroupError::Invalid(format!("basis element {k} is not {size}x{size}")));
            }
        }
        let flat: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
        let span = Subspace::from_spanning(size * size, &flat);
        if span.dim() != basis.len() {
            return Err(GroupError::Invalid("Lie algebra basis is linearly dependent".into()));
        }
        let mut data = LinearGroupData {
            name: name.to_string(),
            size,
            basis,
            lie: LieAlgebra::zero(),
            span,
        };
        let l = data.basis.len();
        let mut structure = vec![vec![Vec::new(); l]; l];
        for i in 0..l {
            for j in 0..l {
                let c = data.basis[i].commutator(&data.basis[j]);
                structure[i][j] = data.coordinates(&c).ok_or_else(|| {
                    GroupError::Invalid(format!("basis is not bracket-closed: [b{}, b{}] leaves the span", i + 1, j + 1))
                })?;
            }
        }
        let names = (1..=l).map(|k| format!("b{k}")).collect();
        data.lie = LieAlgebra::new(names, structure)?;
        Ok(data)
    }

    /// `gl_d` with basis `E_ij` in row-major order.
    pub fn gl(d: usize) -> Self {
        let basis = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| unit_matrix(d, i, j)).collect();
        Self::from_basis(&format!("gl{d}"), d, basis).expect("gl_d is a Lie algebra")
    }

    /// `sl_d` with basis: off-diagonal `E_ij` in row-major order, then `E_kk − E_{k+1,k+1}`.
    /// For `d = 2` this is `{e, f, h}`.
    pub fn sl(d: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    basis.push(unit_matrix(d, i, j));
                }
            }
        }
        for k in 0..d.saturating_sub(1) {
            basis.push(&unit_matrix(d, k, k) - &unit_matrix(d, k + 1, k + 1));
        }
        let mut g = Self::from_basis(&format!("sl{d}"), d, basis).expect("sl_d is a Lie algebra");
        if d == 2 {
            g.lie = g.lie.with_names(vec!["e".into(), "f".into(), "h".into()]).expect("three names");
        }
        g
    }

    /// Built-in algebras `gl1..gl4`, `sl2..sl4`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "gl1" => Some(Self::gl(1)),
            "gl2" => Some(Self::gl(2)),
            "gl3" => Some(Self::gl(3)),
            "gl4" => Some(Self::gl(4)),
            "sl2" => Some(Self::sl(2)),
            "sl3" => Some(Self::sl(3)),
            "sl4" => Some(Self::sl(4)),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Matrix size `d`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Lie algebra dimension `ℓ`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<Rational>] {
        &self.basis
    }

    pub fn lie_algebra(&self) -> &LieAlgebra {
        &self.lie
    }

    /// Coefficients of `m` in the basis, or `None` when `m` is outside the span.
    pub fn coordinates(&self, m: &Matrix<Rational>) -> Option<Vec<Rational>> {
        if m.rows() != self.size || m.cols() != self.size {
            return None;
        }
        let v = flatten(m);
        let echelon_coeffs = self.span.coordinates(&v)?;
        // echelon basis rows are combinations of the original basis; re-express
        Some(self.echelon_to_basis(&echelon_coeffs))
    }

    fn echelon_to_basis(&self, echelon_coeffs: &[Rational]) -> Vec<Rational> {
        // target vector is Σ c_r (echelon row r); read off values at the pivot columns
        // and solve against the original basis restricted to those columns.
        let target = self.span.combine(echelon_coeffs);
        let pivots = self.span.pivots();
        let l = self.basis.len();
        let m = Matrix::from_fn(l, l, |r, k| self.basis[k].entries()[pivots[r]].clone());
        let rhs: Vec<Rational> = pivots.iter().map(|&p| target[p].clone()).collect();
        m.solve(&rhs).ok().flatten().expect("pivot restriction of an independent basis is invertible").particular
    }

    /// `Σ c_k b_k`.
    pub fn matrix_of(&self, coords: &[Rational]) -> Matrix<Rational> {
        let mut out = Matrix::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !Field::is_zero(c) {
                out = &out + &b.scale(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    #[test]
    fn sl2_structure_constants() {
        let g = LinearGroupData::sl(2);
        assert_eq!(g.dim(), 3);
        let lie = g.lie_algebra();
        // [e, f] = h, [h, e] = 2e, [h, f] = -2f
        assert_eq!(lie.basis_bracket(0, 1), &[qi(0), qi(0), qi(1)]);
        assert_eq!(lie.basis_bracket(2, 0), &[qi(2), qi(0), qi(0)]);
        assert_eq!(lie.basis_bracket(2, 1), &[qi(0), qi(-2), qi(0)]);
        assert!(lie.axiom_violations().is_empty());
    }

    #[test]
    fn builtins_are_lie_algebras() {
        for name in ["gl1", "gl2", "gl3", "sl2", "sl3"] {
            let g = LinearGroupData::builtin(name).unwrap();
            assert!(g.lie_algebra().axiom_violations().is_empty(), "{name}");
        }
        assert_eq!(LinearGroupData::builtin("sl4").unwrap().dim(), 15);
        assert_eq!(LinearGroupData::builtin("gl4").unwrap().dim(), 16);
    }

    #[test]
    fn coordinates_round_trip() {
        let g = LinearGroupData::sl(3);
        let c: Vec<Rational> = (0..8).map(|k| qi(k as i64 - 3)).collect();
        assert_eq!(g.coordinates(&g.matrix_of(&c)).unwrap(), c);
        assert!(g.coordinates(&Matrix::identity(3)).is_none());
    }

    #[test]
    fn rejects_open_span() {
        // span{E_12, E_21} is not bracket-closed
        let b = vec![unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)];
        assert!(LinearGroupData::from_basis("x", 2, b).is_err());
    }

    #[test]
    fn corrupted_constant_breaks_jacobi() {
        let mut lie = LinearGroupData::sl(2).lie_algebra().clone();
        // [h, e] = 3e while [h, f] = -2f
        lie.set_bracket(2, 0, vec![qi(3), qi(0), qi(0)]);
        lie.set_bracket(0, 2, vec![qi(-3), qi(0), qi(0)]);
        assert!(lie.axiom_violations().iter().any(|v| v.starts_with("Jacobi")));
    }
}
