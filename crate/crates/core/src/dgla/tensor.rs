//! Finite graded-commutative dg algebras and the tensor DGLA `A ⊗ 𝔤`.

use crate::exactalg::{Field, Matrix, Rational};
use crate::grouprep::LieAlgebra;

use super::algebra::{add_sparse, koszul, BasisElement, BracketTable, Wdgla};
use super::DglaError;

/// A finite-dimensional bigraded commutative dg algebra with structure constants
/// `a_i · a_j = Σ c_k a_k`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    basis: Vec<BasisElement>,
    product: BracketTable,
    d: Matrix<Rational>,
}

impl GradedAlgebra {
    pub fn new(basis: Vec<BasisElement>, product: BracketTable, d: Matrix<Rational>) -> Result<Self, DglaError> {
        let n = basis.len();
        if d.rows() != n || d.cols() != n {
            return Err(DglaError::Invalid(format!("differential must be {n}x{n}")));
        }
        if product.iter().any(|(&(i, j), v)| i >= n || j >= n || v.iter().any(|(k, _)| *k >= n)) {
            return Err(DglaError::Invalid("product index out of range".into()));
        }
        Ok(GradedAlgebra { basis, product, d })
    }

    /// The ground field in degree 0.
    pub fn ground() -> Self {
        let mut product = BracketTable::new();
        add_sparse(&mut product, 0, 0, 0, Rational::one());
        GradedAlgebra { basis: vec![BasisElement::new("1", 0, 0)], product, d: Matrix::zeros(1, 1) }
    }

    /// Exterior algebra on degree-1 generators with the given weights and zero differential.
    /// The basis is ordered by subset size, then lexicographically; monomials are named `x^y`.
    pub fn exterior(generators: &[(&str, usize)]) -> Self {
        let subsets = exterior_subsets(generators.len());
        let basis: Vec<BasisElement> = subsets
            .iter()
            .map(|s| {
                let name = if s.is_empty() {
                    "1".to_string()
                } else {
                    s.iter().map(|&g| generators[g].0).collect::<Vec<_>>().join("^")
                };
                BasisElement::new(name, s.len(), s.iter().map(|&g| generators[g].1).sum())
            })
            .collect();
        let mut product = BracketTable::new();
        for (i, a) in subsets.iter().enumerate() {
            for (j, b) in subsets.iter().enumerate() {
                if a.iter().any(|x| b.contains(x)) {
                    continue;
                }
                let mut merged: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                // sign of the sorting permutation
                let mut inversions = 0;
                for p in 0..merged.len() {
                    for q in p + 1..merged.len() {
                        if merged[p] > merged[q] {
                            inversions += 1;
                        }
                    }
                }
                merged.sort_unstable();
                let k = subsets.iter().position(|s| *s == merged).expect("subset present");
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                add_sparse(&mut product, i, j, k, Rational::from_integer(sign.into()));
            }
        }
        let n = basis.len();
        GradedAlgebra { basis, product, d: Matrix::zeros(n, n) }
    }

    /// `{1, s, e}` with `s` in degree 0, `e` in degree 1, `ds = e` and all products of `s`, `e`
    /// zero: an acyclic augmented model of the interval.
    pub fn interval() -> Self {
        let basis = vec![BasisElement::new("1", 0, 0), BasisElement::new("s", 0, 0), BasisElement::new("e", 1, 0)];
        let mut product = BracketTable::new();
        for k in 0..3 {
            add_sparse(&mut product, 0, k, k, Rational::one());
            if k != 0 {
                add_sparse(&mut product, k, 0, k, Rational::one());
            }
        }
        let mut d = Matrix::zeros(3, 3);
        d.set(2, 1, Rational::one());
        GradedAlgebra { basis, product, d }
    }

    /// Functions on `k` points in degree 0 (idempotents `p1..pk`), zero differential.
    pub fn points(k: usize) -> Self {
        let basis = (1..=k).map(|i| BasisElement::new(format!("p{i}"), 0, 0)).collect();
        let mut product = BracketTable::new();
        for i in 0..k {
            add_sparse(&mut product, i, i, i, Rational::one());
        }
        GradedAlgebra { basis, product, d: Matrix::zeros(k, k) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn differential(&self) -> &Matrix<Rational> {
        &self.d
    }

    pub fn product_table(&self) -> &BracketTable {
        &self.product
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (&(i, j), entries) in &self.product {
            if Field::is_zero(&x[i]) || Field::is_zero(&y[j]) {
                continue;
            }
            let ab = &x[i] * &y[j];
            for (k, c) in entries {
                out[*k] = out[*k].clone() + &ab * c;
            }
        }
        out
    }

    fn unit(&self, k: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[k] = Rational::one();
        v
    }

    /// Failures of `d² = 0`, bigrading, graded commutativity, associativity and Leibniz.
    pub fn violations(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        let name = |k: usize| self.basis[k].name.clone();
        if !(&self.d * &self.d).is_zero() {
            out.push("d^2 != 0".to_string());
        }
        for c in 0..n {
            for r in 0..n {
                if !Field::is_zero(self.d.get(r, c))
                    && (self.basis[r].degree != self.basis[c].degree + 1 || self.basis[r].weight != self.basis[c].weight)
                {
                    out.push(format!("d({}) has a component of the wrong bidegree", name(c)));
                }
            }
        }
        for (&(i, j), entries) in &self.product {
            for (k, _) in entries {
                if self.basis[*k].degree != self.basis[i].degree + self.basis[j].degree
                    || self.basis[*k].weight != self.basis[i].weight + self.basis[j].weight
                {
                    out.push(format!("{}*{} has a component of the wrong bidegree", name(i), name(j)));
                }
            }
        }
        let units: Vec<Vec<Rational>> = (0..n).map(|k| self.unit(k)).collect();
        for i in 0..n {
            for j in 0..n {
                let ab = self.multiply(&units[i], &units[j]);
                let ba = self.multiply(&units[j], &units[i]);
                let s = Rational::from_integer(koszul(self.basis[i].degree, self.basis[j].degree).into());
                if ab.iter().zip(&ba).any(|(x, y)| *x != &s * y) {
                    out.push(format!("graded commutativity fails for ({}, {})", name(i), name(j)));
                }
                let lhs = self.d.mul_vec(&ab);
                let r1 = self.multiply(&self.d.mul_vec(&units[i]), &units[j]);
                let r2 = self.multiply(&units[i], &self.d.mul_vec(&units[j]));
                let sign = Rational::from_integer(if self.basis[i].degree % 2 == 0 { 1 } else { -1 }.into());
                if lhs.iter().zip(&r1).zip(&r2).any(|((a, b), c)| !Field::is_zero(&(a - b - &sign * c))) {
                    out.push(format!("Leibniz fails for ({}, {})", name(i), name(j)));
                }
                for k in 0..n {
                    let left = self.multiply(&ab, &units[k]);
                    let right = self.multiply(&units[i], &self.multiply(&units[j], &units[k]));
                    if left != right {
                        out.push(format!("associativity fails for ({}, {}, {})", name(i), name(j), name(k)));
                    }
                }
            }
        }
        out
    }
}

fn exterior_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> =
        (0u32..(1 << k)).map(|mask| (0..k).filter(|&b| mask & (1 << b) != 0).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// Determinant by exact elimination.
pub fn determinant(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !Field::is_zero(&a[r][c])) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        for r in c + 1..n {
            if Field::is_zero(&a[r][c]) {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &a[c][k] * &f;
                a[r][k] = &a[r][k] - &v;
            }
        }
    }
    det
}

/// Action on the exterior algebra induced by `γ` on the generators: the coefficient of `x_T` in
/// `γ(x_S)` is the minor `det γ[T, S]`.
pub fn exterior_action(gamma: &Matrix<Rational>) -> Matrix<Rational> {
    let subsets = exterior_subsets(gamma.rows());
    let n = subsets.len();
    Matrix::from_fn(n, n, |r, c| {
        let (t, s) = (&subsets[r], &subsets[c]);
        if t.len() != s.len() {
            return Rational::zero();
        }
        determinant(&Matrix::from_fn(t.len(), s.len(), |a, b| gamma.get(t[a], s[b]).clone()))
    })
}

/// `A ⊗ B` with index `(i, k) ↦ i·dim B + k`.
pub fn kronecker(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let (br, bc) = (b.rows(), b.cols());
    Matrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| a.get(r / br, c / bc) * b.get(r % br, c % bc))
}

/// `A ⊗ 𝔤` with `[α⊗u, β⊗v] = (αβ)⊗[u,v]`, `d(α⊗u) = dα⊗u`; basis `a.u` ordered with the algebra
/// index outermost.
pub fn tensor_dgla(a: &GradedAlgebra, g: &LieAlgebra) -> Result<Wdgla, DglaError> {
    if let Some(v) = a.violations().first() {
        return Err(DglaError::Axioms(v.clone()));
    }
    let ng = g.dim();
    let basis: Vec<BasisElement> = a
        .basis()
        .iter()
        .flat_map(|b| g.names().iter().map(move |u| BasisElement::new(format!("{}.{}", b.name, u), b.degree, b.weight)))
        .collect();
    let d = kronecker(a.differential(), &Matrix::identity(ng));
    let mut table = BracketTable::new();
    for (&(i, j), prod) in a.product_table() {
        for k in 0..ng {
            for l in 0..ng {
                for (p, s) in g.basis_bracket(k, l).iter().enumerate() {
                    if Field::is_zero(s) {
                        continue;
                    }
                    for (m, c) in prod {
                        add_sparse(&mut table, i * ng + k, j * ng + l, m * ng + p, c * s);
                    }
                }
            }
        }
    }
    Wdgla::new(basis, d, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::algebra::check_dgla_axioms;
    use crate::exactalg::qi;
    use crate::grouprep::LinearGroupData;

    fn sl2() -> LieAlgebra {
        LinearGroupData::sl(2).lie_algebra().clone()
    }

    #[test]
    fn algebras_satisfy_axioms() {
        assert!(GradedAlgebra::ground().violations().is_empty());
        assert!(GradedAlgebra::exterior(&[("x", 1), ("y", 1), ("z", 2)]).violations().is_empty());
        assert!(GradedAlgebra::interval().violations().is_empty());
        assert!(GradedAlgebra::points(3).violations().is_empty());
    }

    #[test]
    fn ground_tensor_is_g() {
        let l = tensor_dgla(&GradedAlgebra::ground(), &sl2()).unwrap();
        assert_eq!(l.dim(), 3);
        assert!(check_dgla_axioms(&l).passed());
        assert_eq!(l.bracket(&l.unit(0), &l.unit(1)), l.unit(2));
    }

    #[test]
    fn torus_tensor_sl2() {
        let a = GradedAlgebra::exterior(&[("x", 1), ("y", 1)]);
        let l = tensor_dgla(&a, &sl2()).unwrap();
        assert!(check_dgla_axioms(&l).passed());
        let dims: Vec<usize> = (0..3).map(|j| l.indices_of_degree(j).len()).collect();
        assert_eq!(dims, vec![3, 6, 3]);
        assert_eq!(l.cohomology_dim(1), 6);
        // xy = -yx and [e,f] = -[f,e], so the two Koszul signs cancel: [x.e, y.f] = [y.f, x.e]
        let (xe, yf) = (l.index_of("x.e").unwrap(), l.index_of("y.f").unwrap());
        let a1 = l.bracket(&l.unit(xe), &l.unit(yf));
        let a2 = l.bracket(&l.unit(yf), &l.unit(xe));
        assert_eq!(a1, a2);
        assert_eq!(a1, l.unit(l.index_of("x^y.h").unwrap()));
        let (x, y) = (a.unit(1), a.unit(2));
        assert_eq!(a.multiply(&x, &y), a.multiply(&y, &x).iter().map(|c| -c.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn interval_tensor_passes_axioms() {
        let l = tensor_dgla(&GradedAlgebra::interval(), &sl2()).unwrap();
        assert!(check_dgla_axioms(&l).passed());
        assert_eq!(l.cohomology_dim(0), 3);
        assert_eq!(l.cohomology_dim(1), 0);
    }

    #[test]
    fn broken_algebra_rejected() {
        let a = GradedAlgebra::exterior(&[("x", 1)]);
        let mut product = a.product_table().clone();
        add_sparse(&mut product, 1, 1, 0, qi(1));
        let bad = GradedAlgebra::new(a.basis().to_vec(), product, Matrix::zeros(2, 2)).unwrap();
        assert!(tensor_dgla(&bad, &sl2()).is_err());
    }

    #[test]
    fn exterior_action_is_multiplicative() {
        let g = Matrix::from_rows(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(-1)]], 2).unwrap();
        let a = GradedAlgebra::exterior(&[("x", 1), ("y", 1)]);
        let m = exterior_action(&g);
        for i in 0..4 {
            for j in 0..4 {
                let (ui, uj) = (a.unit(i), a.unit(j));
                assert_eq!(m.mul_vec(&a.multiply(&ui, &uj)), a.multiply(&m.mul_vec(&ui), &m.mul_vec(&uj)));
            }
        }
        assert_eq!(determinant(&g), qi(1));
    }
}
