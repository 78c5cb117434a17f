//! Finite-group actions, invariant sub-DGLAs by averaging, and augmentations.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::exactalg::{Field, Matrix, Rational, Subspace};
use crate::grouprep::LieAlgebra;

use super::algebra::{check_dgla_axioms, Wdgla};
use super::DglaError;

pub const DEFAULT_GROUP_BOUND: usize = 10_000;

/// A finite group acting linearly, given by generators; all elements are enumerated.
#[derive(Clone, Debug)]
pub struct GroupAction {
    names: Vec<String>,
    generators: Vec<Matrix<Rational>>,
    elements: Vec<Matrix<Rational>>,
}

impl GroupAction {
    pub fn new(names: Vec<String>, generators: Vec<Matrix<Rational>>, bound: Option<usize>) -> Result<Self, DglaError> {
        let bound = bound.unwrap_or(DEFAULT_GROUP_BOUND);
        let n = match generators.first() {
            Some(g) => g.rows(),
            None => return Err(DglaError::Invalid("a group action needs at least one generator".into())),
        };
        for (name, g) in names.iter().zip(&generators) {
            if g.rows() != n || g.cols() != n {
                return Err(DglaError::Invalid(format!("generator {name} is not {n}x{n}")));
            }
            if g.inverse().is_none() {
                return Err(DglaError::Invalid(format!("generator {name} is not invertible")));
            }
        }
        let id = Matrix::identity(n);
        let mut seen: HashSet<Vec<Rational>> = HashSet::new();
        seen.insert(id.entries().to_vec());
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in &generators {
                let p = g * &m;
                if seen.insert(p.entries().to_vec()) {
                    if elements.len() >= bound {
                        return Err(DglaError::Invalid(format!("group generated by the action exceeds {bound} elements")));
                    }
                    elements.push(p.clone());
                    queue.push_back(p);
                }
            }
        }
        Ok(GroupAction { names, generators, elements })
    }

    pub fn dim(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Matrix<Rational>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix<Rational>] {
        &self.elements
    }

    /// `(1/|Φ|) Σ_γ γ`.
    pub fn averaging_projector(&self) -> Matrix<Rational> {
        let n = self.dim();
        let mut sum = Matrix::zeros(n, n);
        for g in &self.elements {
            sum = &sum + g;
        }
        sum.scale(&Rational::new(1.into(), (self.order() as i64).into()))
    }

    /// Failures of the generators to be bigraded DGLA automorphisms.
    pub fn automorphism_violations(&self, l: &Wdgla) -> Vec<String> {
        let mut out = Vec::new();
        let n = l.dim();
        let basis = l.basis();
        let units: Vec<Vec<Rational>> = (0..n).map(|k| l.unit(k)).collect();
        for (name, g) in self.names.iter().zip(&self.generators) {
            for c in 0..n {
                for r in 0..n {
                    if !Field::is_zero(g.get(r, c))
                        && (basis[r].degree != basis[c].degree || basis[r].weight != basis[c].weight)
                    {
                        out.push(format!("{name} moves {} out of its bidegree", basis[c].name));
                    }
                }
            }
            if &(g * l.differential()) != &(l.differential() * g) {
                out.push(format!("{name} does not commute with d"));
            }
            let images: Vec<Vec<Rational>> = units.iter().map(|u| g.mul_vec(u)).collect();
            for i in 0..n {
                for j in 0..n {
                    let lhs = g.mul_vec(&l.bracket(&units[i], &units[j]));
                    let rhs = l.bracket(&images[i], &images[j]);
                    if lhs != rhs {
                        out.push(format!("{name} does not preserve [{}, {}]", basis[i].name, basis[j].name));
                    }
                }
            }
        }
        out
    }
}

/// Names for basis vectors of a sub-DGLA: unit vectors keep their name, others are `prefix{k}`.
pub(crate) fn vector_names(l: &Wdgla, vectors: &[Vec<Rational>], prefix: &str) -> Vec<String> {
    vectors
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let support: Vec<usize> = (0..v.len()).filter(|&i| !Field::is_zero(&v[i])).collect();
            if support.len() == 1 && v[support[0]] == Rational::one() {
                l.basis()[support[0]].name.clone()
            } else {
                format!("{prefix}{}", k + 1)
            }
        })
        .collect()
}

/// `L^Φ` with its inclusion into `L`; fixed vectors come from the averaging projector, block by block.
pub fn invariants(l: &Wdgla) -> Result<(Wdgla, Matrix<Rational>), DglaError> {
    let action = l.action().ok_or_else(|| DglaError::Invalid("no group action declared".into()))?;
    let violations = action.automorphism_violations(l);
    if let Some(v) = violations.first() {
        return Err(DglaError::Axioms(v.clone()));
    }
    let p = action.averaging_projector();
    let n = l.dim();
    let mut vectors = Vec::new();
    for (j, i) in l.bigrades() {
        let cols: Vec<Vec<Rational>> = l.indices(j, i).into_iter().map(|k| p.column(k)).collect();
        vectors.extend(Subspace::from_spanning(n, &cols).basis().iter().cloned());
    }
    let names = vector_names(l, &vectors, "u");
    l.without_extras().subalgebra(&vectors, names)
}

/// `dim (H^j_i(L))^Φ = dim(P(Z) + B) − dim B` for the averaging projector `P`.
pub fn fixed_cohomology_dim(l: &Wdgla, degree: usize, weight: usize) -> Result<usize, DglaError> {
    let action = l.action().ok_or_else(|| DglaError::Invalid("no group action declared".into()))?;
    let p = action.averaging_projector();
    let piece = l.cohomology_piece(degree, weight);
    let pz = piece.cocycles.image(&p)?;
    Ok(pz.sum(&piece.coboundaries)?.dim() - piece.coboundaries.dim())
}

/// A linear map `ε: L⁰ → 𝔤`, stored as a `dim 𝔤 × dim L` matrix vanishing on positive degrees.
#[derive(Clone, Debug)]
pub struct Augmentation {
    target: LieAlgebra,
    map: Matrix<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugmentationReport {
    pub rank: usize,
    pub target_dim: usize,
    pub surjective: bool,
    pub violations: Vec<String>,
}

impl Augmentation {
    pub fn new(target: LieAlgebra, map: Matrix<Rational>) -> Result<Self, DglaError> {
        if map.rows() != target.dim() {
            return Err(DglaError::Invalid("augmentation rows must match the target dimension".into()));
        }
        Ok(Augmentation { target, map })
    }

    /// `(1/k) Σ ε_r`.
    pub fn average(parts: &[Augmentation]) -> Result<Self, DglaError> {
        let first = parts.first().ok_or_else(|| DglaError::Invalid("nothing to average".into()))?;
        let mut sum = Matrix::zeros(first.map.rows(), first.map.cols());
        for p in parts {
            if p.target != first.target || p.map.cols() != first.map.cols() {
                return Err(DglaError::Invalid("averaged augmentations must share source and target".into()));
            }
            sum = &sum + &p.map;
        }
        let k = Rational::new(1.into(), (parts.len() as i64).into());
        Augmentation::new(first.target.clone(), sum.scale(&k))
    }

    pub fn target(&self) -> &LieAlgebra {
        &self.target
    }

    pub fn map(&self) -> &Matrix<Rational> {
        &self.map
    }

    pub fn violations(&self, l: &Wdgla) -> Vec<String> {
        let mut out = Vec::new();
        let basis = l.basis();
        for (k, b) in basis.iter().enumerate() {
            if b.degree > 0 && self.map.column(k).iter().any(|x| !Field::is_zero(x)) {
                out.push(format!("augmentation is nonzero on {} of degree {}", b.name, b.degree));
            }
        }
        let zero_deg = l.indices_of_degree(0);
        for &i in &zero_deg {
            for &j in &zero_deg {
                let lhs = self.map.mul_vec(&l.bracket(&l.unit(i), &l.unit(j)));
                let rhs = self.target.bracket(&self.map.column(i), &self.map.column(j));
                if lhs != rhs {
                    out.push(format!("augmentation does not preserve [{}, {}]", basis[i].name, basis[j].name));
                }
            }
        }
        out
    }

    pub fn report(&self, l: &Wdgla) -> AugmentationReport {
        let rank = self.map.rank();
        AugmentationReport {
            rank,
            target_dim: self.target.dim(),
            surjective: rank == self.target.dim(),
            violations: self.violations(l),
        }
    }
}

/// The sub-DGLA `ker ε ⊕ L^{>0}` with its inclusion.
pub fn augmentation_kernel(l: &Wdgla) -> Result<(Wdgla, Matrix<Rational>), DglaError> {
    let aug = l.augmentation().ok_or_else(|| DglaError::Invalid("no augmentation declared".into()))?;
    let report = aug.report(l);
    if let Some(v) = report.violations.first() {
        return Err(DglaError::Axioms(v.clone()));
    }
    if !report.surjective {
        return Err(DglaError::NotSurjective { rank: report.rank, target: report.target_dim });
    }
    let n = l.dim();
    let mut vectors = Vec::new();
    for (j, i) in l.bigrades() {
        let idx = l.indices(j, i);
        if j == 0 {
            let restricted = Matrix::from_fn(aug.map().rows(), idx.len(), |r, c| aug.map().get(r, idx[c]).clone());
            let kernel = if restricted.rows() == 0 {
                (0..idx.len()).map(|c| unit(idx.len(), c)).collect()
            } else {
                restricted.kernel()
            };
            let embedded: Vec<Vec<Rational>> = kernel
                .iter()
                .map(|k| {
                    let mut v = vec![Rational::zero(); n];
                    for (c, x) in idx.iter().zip(k) {
                        v[*c] = x.clone();
                    }
                    v
                })
                .collect();
            vectors.extend(Subspace::from_spanning(n, &embedded).basis().iter().cloned());
        } else {
            vectors.extend(idx.into_iter().map(|k| l.unit(k)));
        }
    }
    let names = vector_names(l, &vectors, "k");
    let out = l.without_extras().subalgebra(&vectors, names)?;
    debug_assert!(check_dgla_axioms(&out.0).passed());
    Ok(out)
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::algebra::BasisElement;
    use crate::exactalg::qi;
    use crate::grouprep::LinearGroupData;

    fn diag(entries: &[i64]) -> Matrix<Rational> {
        let n = entries.len();
        Matrix::from_fn(n, n, |r, c| if r == c { qi(entries[r]) } else { qi(0) })
    }

    #[test]
    fn trivial_and_negating_actions() {
        let l = Wdgla::abelian(vec![BasisElement::new("a", 1, 1), BasisElement::new("b", 1, 1)]);
        let triv = l.clone().with_action(GroupAction::new(vec!["g".into()], vec![diag(&[1, 1])], None).unwrap()).unwrap();
        assert_eq!(invariants(&triv).unwrap().0.dim(), 2);
        let neg = l.with_action(GroupAction::new(vec!["g".into()], vec![diag(&[1, -1])], None).unwrap()).unwrap();
        let (inv, inc) = invariants(&neg).unwrap();
        assert_eq!(inv.dim(), 1);
        assert_eq!(inv.basis()[0].name, "a");
        assert_eq!(inc.column(0), vec![qi(1), qi(0)]);
        assert_eq!(fixed_cohomology_dim(&neg, 1, 1).unwrap(), 1);
    }

    #[test]
    fn non_automorphism_refused() {
        let basis = vec![BasisElement::new("a", 1, 1), BasisElement::new("b", 2, 1)];
        let mut d = Matrix::zeros(2, 2);
        d.set(1, 0, qi(1));
        let l = Wdgla::new(basis, d, Default::default()).unwrap();
        let l = l.with_action(GroupAction::new(vec!["g".into()], vec![diag(&[-1, 1])], None).unwrap()).unwrap();
        assert!(matches!(invariants(&l), Err(DglaError::Axioms(_))));
    }

    #[test]
    fn infinite_order_generator_rejected() {
        assert!(GroupAction::new(vec!["g".into()], vec![diag(&[2])], Some(50)).is_err());
    }

    #[test]
    fn identity_augmentation_kills_degree_zero() {
        let sl2 = LinearGroupData::sl(2).lie_algebra().clone();
        let l = crate::dgla::tensor::tensor_dgla(&crate::dgla::tensor::GradedAlgebra::ground(), &sl2).unwrap();
        let l = l.with_augmentation(Augmentation::new(sl2.clone(), Matrix::identity(3)).unwrap()).unwrap();
        let (k, _) = augmentation_kernel(&l).unwrap();
        assert_eq!(k.dim(), 0);
        let zero = l.without_extras().with_augmentation(Augmentation::new(sl2, Matrix::zeros(3, 3)).unwrap()).unwrap();
        assert!(matches!(augmentation_kernel(&zero), Err(DglaError::NotSurjective { rank: 0, target: 3 })));
    }
}
