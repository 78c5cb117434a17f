//! Weighted homogeneous cones: homogeneity, quadraticity, weight halving, realification and
//! membership of Artin-algebra points.

pub mod polynomial;

pub use polynomial::{deglex_desc, Monomial, Polynomial};

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{ArtinAlgebra, ArtinElement, ExactError, Field, GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("relation {relation} is not weighted homogeneous: {detail}")]
    Inhomogeneous { relation: usize, detail: String },
    #[error("cannot halve weights: {0}")]
    OddWeight(String),
    #[error("value of {variable} is not in the maximal ideal")]
    NotInMaximalIdeal { variable: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Variables with positive weights and relations in them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCone<F> {
    names: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<Polynomial<F>>,
}

/// Homogeneity verdict for one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationDegree {
    pub relation: usize,
    /// Weighted degree when the relation is homogeneous of positive degree.
    pub degree: Option<u32>,
    /// Rendering of the first monomial that disagrees with the leading degree.
    pub offending_monomial: Option<String>,
    pub message: Option<String>,
}

impl<F: Field> WeightedCone<F> {
    /// Builds without checking homogeneity; see [`WeightedCone::new`].
    pub fn unchecked(names: Vec<String>, weights: Vec<u32>, relations: Vec<Polynomial<F>>) -> Result<Self, ConeError> {
        if names.len() != weights.len() {
            return Err(ConeError::Invalid("one weight per variable required".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(ConeError::Invalid("variable weights must be positive".into()));
        }
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(ConeError::Invalid(format!("duplicate variable {name:?}")));
            }
        }
        if relations.iter().any(|p| p.nvars() != names.len()) {
            return Err(ConeError::Invalid("relation arity differs from variable count".into()));
        }
        Ok(WeightedCone { names, weights, relations })
    }

    /// Builds and verifies that every relation is weighted homogeneous of positive degree.
    pub fn new(names: Vec<String>, weights: Vec<u32>, relations: Vec<Polynomial<F>>) -> Result<Self, ConeError> {
        let c = Self::unchecked(names, weights, relations)?;
        c.degrees()?;
        Ok(c)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Polynomial<F>] {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|p| p.display_with(&self.names)).collect()
    }

    /// Weighted degrees of all relations, or the first homogeneity failure.
    pub fn degrees(&self) -> Result<Vec<u32>, ConeError> {
        check_homogeneous(self)
            .into_iter()
            .map(|r| {
                r.degree.ok_or_else(|| ConeError::Inhomogeneous {
                    relation: r.relation,
                    detail: r.message.unwrap_or_default(),
                })
            })
            .collect()
    }

    /// Whether every relation vanishes at the given values in `𝔪`.
    pub fn functor_points(&self, alg: &Arc<ArtinAlgebra>, values: &[ArtinElement<F>]) -> Result<bool, ConeError> {
        if values.len() != self.nvars() {
            return Err(ConeError::Invalid(format!("{} values for {} variables", values.len(), self.nvars())));
        }
        for (name, v) in self.names.iter().zip(values) {
            if !v.in_maximal_ideal() {
                return Err(ConeError::NotInMaximalIdeal { variable: name.clone() });
            }
        }
        for p in &self.relations {
            if !p.evaluate_artin(alg, values)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Per-relation weighted degree, locating the first monomial off the leading degree.
pub fn check_homogeneous<F: Field>(c: &WeightedCone<F>) -> Vec<RelationDegree> {
    c.relations
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let terms = p.terms();
            let Some((lead, _)) = terms.first() else {
                return RelationDegree {
                    relation: k,
                    degree: None,
                    offending_monomial: None,
                    message: Some("zero relation has no degree".into()),
                };
            };
            let d = Polynomial::<F>::weighted_degree_of(lead, &c.weights);
            for (m, _) in &terms {
                let dm = Polynomial::<F>::weighted_degree_of(m, &c.weights);
                if dm != d {
                    let mono = Polynomial::monomial((*m).clone(), F::one()).display_with(&c.names);
                    return RelationDegree {
                        relation: k,
                        degree: None,
                        offending_monomial: Some(mono.clone()),
                        message: Some(format!("monomial {mono} has weighted degree {dm}, expected {d}")),
                    };
                }
            }
            if d == 0 {
                return RelationDegree {
                    relation: k,
                    degree: None,
                    offending_monomial: None,
                    message: Some("constant relation has degree 0".into()),
                };
            }
            RelationDegree { relation: k, degree: Some(d), offending_monomial: None, message: None }
        })
        .collect()
}

/// All weights 1 and all relation degrees 2.
pub fn is_quadratic<F: Field>(c: &WeightedCone<F>) -> Result<bool, ConeError> {
    let degrees = c.degrees()?;
    Ok(c.weights.iter().all(|&w| w == 1) && degrees.iter().all(|&d| d == 2))
}

/// Divide every weight and relation degree by two; polynomials are unchanged.
pub fn halve_weights<F: Field>(c: &WeightedCone<F>) -> Result<WeightedCone<F>, ConeError> {
    let degrees = c.degrees()?;
    if let Some((name, w)) = c.names.iter().zip(&c.weights).find(|(_, w)| *w % 2 != 0) {
        return Err(ConeError::OddWeight(format!("variable {name} has weight {w}")));
    }
    if let Some((k, d)) = degrees.iter().enumerate().find(|(_, d)| *d % 2 != 0) {
        return Err(ConeError::OddWeight(format!("relation {} has degree {d}", k + 1)));
    }
    WeightedCone::new(c.names.clone(), c.weights.iter().map(|w| w / 2).collect(), c.relations.clone())
}

/// Replace each complex variable `X` by `x + i·y` and split every relation into real and
/// imaginary parts. Variables are ordered `X_re, X_im` per original variable.
pub fn realify(c: &WeightedCone<GaussianRational>) -> Result<WeightedCone<Rational>, ConeError> {
    c.degrees()?;
    let n = c.nvars();
    let mut names = Vec::with_capacity(2 * n);
    let mut weights = Vec::with_capacity(2 * n);
    let mut subs = Vec::with_capacity(n);
    for (j, (name, w)) in c.names.iter().zip(&c.weights).enumerate() {
        names.push(format!("{name}_re"));
        names.push(format!("{name}_im"));
        weights.push(*w);
        weights.push(*w);
        let x = Polynomial::variable(2 * n, 2 * j);
        let y = Polynomial::variable(2 * n, 2 * j + 1).scale(&GaussianRational::i());
        subs.push(x.add(&y));
    }
    let mut relations = Vec::with_capacity(2 * c.relations.len());
    for p in &c.relations {
        let expanded = p.substitute(&subs, 2 * n);
        relations.push(expanded.map_field(|z| z.re.clone()));
        relations.push(expanded.map_field(|z| z.im.clone()));
    }
    WeightedCone::unchecked(names, weights, relations)
}

/// Outcome of comparing a complex cone with its realification on real points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealifyComparison {
    pub checks: usize,
    /// Points lying on both cones.
    pub on_cone: usize,
    pub mismatches: Vec<usize>,
}

/// Each point lists `x₁, y₁, x₂, y₂, …` in `𝔪 ⊂ A` for a real Artin algebra `A`; membership in
/// `realify(c)` is compared with membership of `Xⱼ = xⱼ + i·yⱼ` in `c` over `A ⊗ ℚ(i)`.
pub fn realify_compare(
    c: &WeightedCone<GaussianRational>,
    real: &WeightedCone<Rational>,
    alg: &Arc<ArtinAlgebra>,
    points: &[Vec<ArtinElement<Rational>>],
) -> Result<RealifyComparison, ConeError> {
    let mut on_cone = 0;
    let mut mismatches = Vec::new();
    let i = GaussianRational::i();
    for (k, pt) in points.iter().enumerate() {
        if pt.len() != 2 * c.nvars() {
            return Err(ConeError::Invalid(format!("point {k} needs {} real coordinates", 2 * c.nvars())));
        }
        let in_real = real.functor_points(alg, pt)?;
        let complex: Vec<ArtinElement<GaussianRational>> = pt
            .chunks(2)
            .map(|xy| {
                let x = xy[0].map_field(|a| GaussianRational::real(a.clone()));
                let y = xy[1].map_field(|a| GaussianRational::real(a.clone())).scale(&i);
                x.try_add(&y)
            })
            .collect::<Result<_, _>>()?;
        let in_complex = c.functor_points(alg, &complex)?;
        on_cone += usize::from(in_real && in_complex);
        if in_real != in_complex {
            mismatches.push(k);
        }
    }
    Ok(RealifyComparison { checks: points.len(), on_cone, mismatches })
}

fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Monomial> {
    fn go(weights: &[u32], left: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        let Some((&w, rest)) = weights.split_first() else {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        for e in 0..=(left / w) {
            prefix.push(e);
            go(rest, left - e * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, degree, &mut Vec::new(), &mut out);
    out
}

/// Seeded homogeneous cone over `ℚ(i)`: 1 to 4 variables of weight 1 to 3 and 1 to 3 relations,
/// each a sum of up to three monomials of one weighted degree between 2 and 6 with small
/// Gaussian-integer coefficients.
pub fn random_homogeneous_cone(rng: &mut rand_chacha::ChaCha8Rng) -> WeightedCone<GaussianRational> {
    use rand::Rng;
    let n = rng.gen_range(1..=4usize);
    let names: Vec<String> = (1..=n).map(|k| format!("X{k}")).collect();
    let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut relations = Vec::new();
    let count = rng.gen_range(1..=3);
    while relations.len() < count {
        let degree = rng.gen_range(2..=6);
        let monos = monomials_of_degree(&weights, degree);
        if monos.is_empty() {
            continue;
        }
        let mut p = Polynomial::zero(n);
        for _ in 0..rng.gen_range(1..=3) {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            let c = GaussianRational::new(crate::exactalg::qi(rng.gen_range(-2..=2)), crate::exactalg::qi(rng.gen_range(-2..=2)));
            p.add_term(m, c);
        }
        if !p.is_zero() {
            relations.push(p);
        }
    }
    WeightedCone::new(names, weights, relations).expect("homogeneous by construction")
}

/// One disagreement found by [`cone_compare_sampled`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareMismatch {
    pub sample: usize,
    pub order: usize,
    pub in_first: bool,
    pub in_second: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub checks: usize,
    pub mismatches: Vec<CompareMismatch>,
}

/// Compare memberships along a tower of one-variable algebras `ℚ[s]/s^c`.
///
/// `dictionary[i]` expresses variable `i` of `first` as a linear form in the variables of
/// `second`. When `first`'s weights are `r` times those of `second`, a point of `second` over
/// `ℚ[s]/s^c` is compared with its translate over `ℚ[t]/t^{r(c−1)+1}` under `s ↦ t^r`.
/// Each sample gives, per variable of `second`, the coefficients of `s, s², …`.
pub fn cone_compare_sampled<F: Field>(
    first: &WeightedCone<F>,
    second: &WeightedCone<F>,
    dictionary: &[Polynomial<F>],
    tower: &[usize],
    samples: &[Vec<Vec<F>>],
) -> Result<CompareReport, ConeError> {
    if dictionary.len() != first.nvars() {
        return Err(ConeError::Invalid("dictionary needs one form per variable of the first cone".into()));
    }
    let mut ratio: Option<(u32, u32)> = None;
    for (i, form) in dictionary.iter().enumerate() {
        if form.nvars() != second.nvars() {
            return Err(ConeError::Invalid(format!("form for {} has the wrong arity", first.names[i])));
        }
        for (m, _) in form.terms() {
            let deg: u32 = m.iter().sum();
            if deg != 1 {
                return Err(ConeError::Invalid(format!("form for {} is not linear", first.names[i])));
            }
            let j = m.iter().position(|&e| e == 1).expect("linear monomial");
            let pair = (first.weights[i], second.weights[j]);
            match ratio {
                None => ratio = Some(pair),
                Some((a, b)) if a * pair.1 == b * pair.0 => {}
                Some(_) => {
                    return Err(ConeError::Invalid(format!(
                        "dictionary entry for {} is not weight-consistent",
                        first.names[i]
                    )))
                }
            }
        }
    }
    let r = match ratio {
        None => 1,
        Some((a, b)) if a % b == 0 => (a / b) as usize,
        Some(_) => return Err(ConeError::Invalid("weight ratio between the cones must be an integer".into())),
    };
    let mut checks = 0;
    let mut mismatches = Vec::new();
    for &c in tower {
        let small = ArtinAlgebra::univariate(c)?;
        let big = ArtinAlgebra::univariate(r * (c - 1) + 1)?;
        for (k, sample) in samples.iter().enumerate() {
            if sample.len() != second.nvars() {
                return Err(ConeError::Invalid(format!("sample {k} has the wrong length")));
            }
            let y: Vec<ArtinElement<F>> = sample
                .iter()
                .map(|coeffs| {
                    let mut full = vec![F::zero()];
                    full.extend(coeffs.iter().cloned());
                    ArtinElement::from_univariate(&small, &full)
                })
                .collect();
            let in_second = second.functor_points(&small, &y)?;
            let mut x = Vec::with_capacity(first.nvars());
            for form in dictionary {
                x.push(form.evaluate_artin(&small, &y)?.substitute_power(&big, r as u32)?);
            }
            let in_first = first.functor_points(&big, &x)?;
            checks += 1;
            if in_first != in_second {
                mismatches.push(CompareMismatch { sample: k, order: c, in_first, in_second });
            }
        }
    }
    Ok(CompareReport { checks, mismatches })
}

/// Cone file contents.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeFile {
    pub variables: Vec<ConeVariable>,
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeVariable {
    pub name: String,
    pub weight: u32,
}

/// A cone over either supported field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCone {
    Rational(WeightedCone<Rational>),
    Gaussian(WeightedCone<GaussianRational>),
}

impl ConeFile {
    pub fn from_cone<F: Field>(c: &WeightedCone<F>, field: Option<&str>) -> Self {
        ConeFile {
            variables: c
                .names
                .iter()
                .zip(&c.weights)
                .map(|(n, w)| ConeVariable { name: n.clone(), weight: *w })
                .collect(),
            relations: c.relation_strings(),
            field: field.map(str::to_string),
        }
    }

    fn build<F: Field>(&self) -> Result<WeightedCone<F>, ConeError> {
        let names: Vec<String> = self.variables.iter().map(|v| v.name.clone()).collect();
        let weights = self.variables.iter().map(|v| v.weight).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Polynomial::parse(r, &names))
            .collect::<Result<Vec<_>, _>>()?;
        WeightedCone::unchecked(names, weights, relations)
    }

    /// Field defaults to rational; `"gaussian"` selects ℚ(i).
    pub fn to_cone(&self) -> Result<AnyCone, ConeError> {
        match self.field.as_deref() {
            None | Some("rational") => Ok(AnyCone::Rational(self.build()?)),
            Some("gaussian") => Ok(AnyCone::Gaussian(self.build()?)),
            Some(other) => Err(ConeError::Invalid(format!("unknown field {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    fn cone(vars: &[(&str, u32)], rels: &[&str]) -> WeightedCone<Rational> {
        let names: Vec<String> = vars.iter().map(|v| v.0.to_string()).collect();
        let rels = rels.iter().map(|r| Polynomial::parse(r, &names).unwrap()).collect();
        WeightedCone::unchecked(names, vars.iter().map(|v| v.1).collect(), rels).unwrap()
    }

    fn gcone(vars: &[(&str, u32)], rels: &[&str]) -> WeightedCone<GaussianRational> {
        let names: Vec<String> = vars.iter().map(|v| v.0.to_string()).collect();
        let rels = rels.iter().map(|r| Polynomial::parse(r, &names).unwrap()).collect();
        WeightedCone::unchecked(names, vars.iter().map(|v| v.1).collect(), rels).unwrap()
    }

    #[test]
    fn homogeneity_reports() {
        let r = check_homogeneous(&cone(&[("x", 1), ("y", 1)], &["x^2 + y^2"]));
        assert_eq!(r[0].degree, Some(2));
        let r = check_homogeneous(&cone(&[("x", 1), ("y", 1)], &["x^2 + y"]));
        assert_eq!(r[0].degree, None);
        assert_eq!(r[0].offending_monomial.as_deref(), Some("y"));
        let r = check_homogeneous(&cone(&[("x", 2), ("y", 2)], &["x*y"]));
        assert_eq!(r[0].degree, Some(4));
    }

    #[test]
    fn quadraticity() {
        assert!(is_quadratic(&cone(&[("x", 1), ("y", 1)], &["x^2 + y^2"])).unwrap());
        assert!(!is_quadratic(&cone(&[("x", 1)], &["x^3"])).unwrap());
        assert!(is_quadratic(&cone(&[("x", 1), ("y", 1)], &[])).unwrap());
        assert!(is_quadratic(&cone(&[("x", 1), ("y", 1)], &["x^2 + y"])).is_err());
    }

    #[test]
    fn halving() {
        let h = halve_weights(&cone(&[("x", 2), ("y", 2)], &["x*y"])).unwrap();
        assert_eq!(h.weights(), &[1, 1]);
        assert_eq!(h.degrees().unwrap(), vec![2]);
        assert!(is_quadratic(&h).unwrap());
        assert!(halve_weights(&cone(&[("x", 1), ("y", 2)], &[])).is_err());
    }

    #[test]
    fn realify_square() {
        let r = realify(&gcone(&[("X", 1)], &["X^2"])).unwrap();
        assert_eq!(r.relation_strings(), vec!["X_re^2 - X_im^2", "2*X_re*X_im"]);
        assert_eq!(r.degrees().unwrap(), vec![2, 2]);
        let lin = realify(&gcone(&[("X", 1)], &["X"])).unwrap();
        assert_eq!(lin.relation_strings(), vec!["X_re", "X_im"]);
    }

    #[test]
    fn functor_points_examples() {
        let c = cone(&[("x", 1), ("y", 1)], &["x*y"]);
        let a3 = ArtinAlgebra::univariate(3).unwrap();
        let t = ArtinElement::variable(&a3, 0);
        assert!(!c.functor_points(&a3, &[t.clone(), t.clone()]).unwrap());
        assert!(c.functor_points(&a3, &[ArtinElement::zero(&a3), ArtinElement::zero(&a3)]).unwrap());
        let a2 = ArtinAlgebra::univariate(2).unwrap();
        let s = ArtinElement::variable(&a2, 0);
        assert!(c.functor_points(&a2, &[s.clone(), s]).unwrap());
        assert!(c.functor_points(&a3, &[ArtinElement::one(&a3), t]).is_err());
    }

    #[test]
    fn compare_examples() {
        let sq = cone(&[("x", 1)], &["x^2"]);
        let cube = cone(&[("x", 1)], &["x^3"]);
        let id = vec![Polynomial::variable(1, 0)];
        let sample = vec![vec![vec![qi(1)]]];
        let same = cone_compare_sampled(&sq, &sq, &id, &[2, 3, 4], &sample).unwrap();
        assert!(same.mismatches.is_empty());
        let diff = cone_compare_sampled(&sq, &cube, &id, &[3], &sample).unwrap();
        assert_eq!(diff.mismatches, vec![CompareMismatch { sample: 0, order: 3, in_first: false, in_second: true }]);
    }

    #[test]
    fn compare_halved_with_original() {
        let orig = cone(&[("x", 2), ("y", 2)], &["x*y"]);
        let half = halve_weights(&orig).unwrap();
        let dict = vec![Polynomial::variable(2, 0), Polynomial::variable(2, 1)];
        let samples: Vec<Vec<Vec<Rational>>> = vec![
            vec![vec![qi(1)], vec![qi(1)]],
            vec![vec![qi(0), qi(1)], vec![qi(1)]],
            vec![vec![qi(1), qi(2)], vec![qi(0)]],
        ];
        let rep = cone_compare_sampled(&orig, &half, &dict, &[2, 3, 4], &samples).unwrap();
        assert!(rep.mismatches.is_empty());
        assert_eq!(rep.checks, 9);
    }

    #[test]
    fn cone_file_round_trip() {
        let c = cone(&[("x", 1), ("y", 1)], &["x*y - y^2"]);
        let json = serde_json::to_string(&ConeFile::from_cone(&c, None)).unwrap();
        let back: ConeFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_cone().unwrap(), AnyCone::Rational(c));
    }
}
