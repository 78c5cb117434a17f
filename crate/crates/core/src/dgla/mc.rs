//! Maurer-Cartan elements `η ∈ L¹⊗𝔪` and the gauge action of `exp(L⁰⊗𝔪)`.

use std::sync::Arc;

use num::BigInt;

use crate::exactalg::{bch, ArtinAlgebra, ArtinElement, Field, LieOps, Rational};

use super::algebra::Wdgla;
use super::DglaError;

/// Basis-coefficient vector with Artin coefficients.
pub type ArtinVec = Vec<ArtinElement<Rational>>;

impl Wdgla {
    pub fn zero_artin(&self, alg: &Arc<ArtinAlgebra>) -> ArtinVec {
        vec![ArtinElement::zero(alg); self.dim()]
    }

    pub fn d_artin(&self, x: &[ArtinElement<Rational>]) -> ArtinVec {
        let d = self.differential();
        let n = self.dim();
        let mut out: ArtinVec = x.iter().map(|e| ArtinElement::zero(e.algebra())).collect();
        for c in 0..n {
            if x[c].is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let m = d.get(r, c);
                if !Field::is_zero(m) {
                    *o = &*o + &x[c].scale(m);
                }
            }
        }
        out
    }

    pub fn bracket_artin(&self, x: &[ArtinElement<Rational>], y: &[ArtinElement<Rational>]) -> ArtinVec {
        let mut out: ArtinVec = x.iter().map(|e| ArtinElement::zero(e.algebra())).collect();
        for (&(i, j), entries) in self.bracket_table() {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            if xy.is_zero() {
                continue;
            }
            for (k, c) in entries {
                out[*k] = &out[*k] + &xy.scale(c);
            }
        }
        out
    }

    /// Lift a rational vector to constant Artin coefficients times `a`.
    pub fn times_artin(&self, v: &[Rational], a: &ArtinElement<Rational>) -> ArtinVec {
        v.iter().map(|c| a.scale(c)).collect()
    }
}

fn add_vec(a: &[ArtinElement<Rational>], b: &[ArtinElement<Rational>]) -> ArtinVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale_vec(a: &[ArtinElement<Rational>], c: &Rational) -> ArtinVec {
    a.iter().map(|x| x.scale(c)).collect()
}

fn is_zero_vec(a: &[ArtinElement<Rational>]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Check that `v` has the right length, one algebra, coefficients in `𝔪`, and support in `degree`.
fn validate(l: &Wdgla, v: &[ArtinElement<Rational>], degree: usize, what: &str) -> Result<Arc<ArtinAlgebra>, DglaError> {
    if v.len() != l.dim() {
        return Err(DglaError::Invalid(format!("{what} has {} coefficients, expected {}", v.len(), l.dim())));
    }
    let alg = v
        .first()
        .map(|e| e.algebra().clone())
        .ok_or_else(|| DglaError::Invalid(format!("{what} is empty; the algebra has no basis")))?;
    for (k, e) in v.iter().enumerate() {
        if **e.algebra() != *alg {
            return Err(DglaError::Invalid(format!("{what} mixes Artin algebras")));
        }
        if e.is_zero() {
            continue;
        }
        let b = &l.basis()[k];
        if b.degree != degree {
            return Err(DglaError::WrongDegree(format!(
                "{what} has a component on {} of degree {}, expected {degree}",
                b.name, b.degree
            )));
        }
        if !e.in_maximal_ideal() {
            return Err(DglaError::NotInMaximalIdeal(format!("{what} coefficient of {}", b.name)));
        }
    }
    Ok(alg)
}

/// `dη + ½[η,η]`.
pub fn mc_curvature(l: &Wdgla, eta: &[ArtinElement<Rational>]) -> Result<ArtinVec, DglaError> {
    validate(l, eta, 1, "eta")?;
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    Ok(add_vec(&l.d_artin(eta), &scale_vec(&l.bracket_artin(eta, eta), &half)))
}

pub fn is_mc(l: &Wdgla, eta: &[ArtinElement<Rational>]) -> Result<bool, DglaError> {
    Ok(is_zero_vec(&mc_curvature(l, eta)?))
}

/// `exp(α).η = η + Σ_{n≥0} (ad α)ⁿ/(n+1)!·([α,η] − dα)`; the series stops once a term vanishes,
/// which happens after at most `order` steps since `α ∈ L⁰⊗𝔪`.
pub fn gauge(l: &Wdgla, alpha: &[ArtinElement<Rational>], eta: &[ArtinElement<Rational>]) -> Result<ArtinVec, DglaError> {
    let alg = validate(l, eta, 1, "eta")?;
    let alg_a = validate(l, alpha, 0, "alpha")?;
    if alg != alg_a {
        return Err(DglaError::Invalid("alpha and eta live over different Artin algebras".into()));
    }
    let minus_one = Rational::from_integer((-1).into());
    let mut term = add_vec(&l.bracket_artin(alpha, eta), &scale_vec(&l.d_artin(alpha), &minus_one));
    let mut out = eta.to_vec();
    let mut n: i64 = 0;
    while !is_zero_vec(&term) {
        let coeff = Rational::new(BigInt::from(1), (1..=n + 1).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k)));
        out = add_vec(&out, &scale_vec(&term, &coeff));
        term = l.bracket_artin(alpha, &term);
        n += 1;
    }
    Ok(out)
}

struct ArtinLie<'a> {
    l: &'a Wdgla,
    alg: Arc<ArtinAlgebra>,
}

impl LieOps<ArtinVec> for ArtinLie<'_> {
    fn zero(&self) -> ArtinVec {
        self.l.zero_artin(&self.alg)
    }
    fn add(&self, a: &ArtinVec, b: &ArtinVec) -> ArtinVec {
        add_vec(a, b)
    }
    fn scale(&self, a: &ArtinVec, c: &Rational) -> ArtinVec {
        scale_vec(a, c)
    }
    fn bracket(&self, a: &ArtinVec, b: &ArtinVec) -> ArtinVec {
        self.l.bracket_artin(a, b)
    }
}

/// `BCH(α, β) = log(exp α · exp β)` in `L⁰⊗𝔪`, exact because `𝔪` is nilpotent.
pub fn gauge_compose(l: &Wdgla, alpha: &[ArtinElement<Rational>], beta: &[ArtinElement<Rational>]) -> Result<ArtinVec, DglaError> {
    let alg = validate(l, alpha, 0, "alpha")?;
    validate(l, beta, 0, "beta")?;
    let ops = ArtinLie { l, alg: alg.clone() };
    Ok(bch(&alpha.to_vec(), &beta.to_vec(), alg.order().max(1), &ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::algebra::{bracket_from_entries, BasisElement};
    use crate::exactalg::{qi, Matrix};

    fn toy() -> Wdgla {
        let basis = vec![BasisElement::new("e", 1, 1), BasisElement::new("h", 2, 2)];
        let t = bracket_from_entries(&basis, &[(0, 0, 1, qi(1))], false);
        Wdgla::new(basis, Matrix::zeros(2, 2), t).unwrap()
    }

    #[test]
    fn zero_is_mc_and_toy_fails() {
        let l = toy();
        let alg = ArtinAlgebra::univariate(3).unwrap();
        assert!(is_mc(&l, &l.zero_artin(&alg)).unwrap());
        let t = ArtinElement::variable(&alg, 0);
        let eta = vec![t.clone(), ArtinElement::zero(&alg)];
        assert!(!is_mc(&l, &eta).unwrap());
        // ½ t² h
        let curv = mc_curvature(&l, &eta).unwrap();
        assert_eq!(curv[1], ArtinElement::from_univariate(&alg, &[qi(0), qi(0), Rational::new(1.into(), 2.into())]));
        let alg2 = ArtinAlgebra::univariate(2).unwrap();
        assert!(is_mc(&l, &[ArtinElement::variable(&alg2, 0), ArtinElement::zero(&alg2)]).unwrap());
    }

    #[test]
    fn wrong_degree_and_constant_terms_rejected() {
        let l = toy();
        let alg = ArtinAlgebra::univariate(3).unwrap();
        let t = ArtinElement::variable(&alg, 0);
        assert!(matches!(is_mc(&l, &[ArtinElement::zero(&alg), t]), Err(DglaError::WrongDegree(_))));
        assert!(matches!(
            is_mc(&l, &[ArtinElement::one(&alg), ArtinElement::zero(&alg)]),
            Err(DglaError::NotInMaximalIdeal(_))
        ));
    }

    #[test]
    fn abelian_gauge_of_zero_is_minus_d_alpha() {
        let basis = vec![BasisElement::new("a", 0, 0), BasisElement::new("b", 1, 0)];
        let mut d = Matrix::zeros(2, 2);
        d.set(1, 0, qi(2));
        let l = Wdgla::new(basis, d, Default::default()).unwrap();
        let alg = ArtinAlgebra::univariate(4).unwrap();
        let t = ArtinElement::variable(&alg, 0);
        let alpha = vec![t.clone(), ArtinElement::zero(&alg)];
        let out = gauge(&l, &alpha, &l.zero_artin(&alg)).unwrap();
        assert_eq!(out[1], t.scale(&qi(-2)));
        let eta = vec![ArtinElement::zero(&alg), t.pow(2)];
        assert_eq!(gauge(&l, &l.zero_artin(&alg), &eta).unwrap(), eta);
    }
}
