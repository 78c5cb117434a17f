//! The germ of `Hom(Γ, G)` at `ρ`: the presentation cochain complex, the quadratic cone of the
//! second-order obstruction, and an order-by-order lifting oracle over `ℚ[t]/t^{k+1}`.
//!
//! Perturbations are taken in the form `g ↦ exp(u_g)·ρ(g)`. With that convention the first-order
//! condition on `u` is exactly `d¹u = 0` for the left Fox calculus below.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cones::{Polynomial, WeightedCone};
use crate::exactalg::{ArtinAlgebra, ArtinElement, ExactError, Field, Matrix, Rational, Subspace};
use crate::grouprep::representation::evaluate_with;
use crate::grouprep::{fox_derivative, GroupError, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("sample {index} is not a cocycle")]
    SampleOutsideZ1 { index: usize },
    #[error("invalid partial solution: {0}")]
    InvalidPartial(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `C⁰ = 𝔤 → C¹ = 𝔤ⁿ → C² = 𝔤ᵐ` for a presentation with `n` generators and `m` relators.
#[derive(Clone, Debug)]
pub struct CochainData {
    pub lie_dim: usize,
    pub generators: usize,
    pub relators: usize,
    /// `nℓ × ℓ`, block `i` is `1 − Ad(ρ(gᵢ))`.
    pub d0: Matrix<Rational>,
    /// `mℓ × nℓ`, block `(r, g)` is `Ad∘ρ` applied to `∂r/∂g`.
    pub d1: Matrix<Rational>,
}

pub fn presentation_complex(rep: &Representation) -> Result<CochainData, GermError> {
    rep.validate().map_err(|e| GermError::InvalidRepresentation(e.to_string()))?;
    let pres = rep.presentation();
    let l = rep.lie_dim();
    let n = pres.generator_count();
    let m = pres.relators().len();
    let mut d0 = Matrix::zeros(n * l, l);
    let id = Matrix::<Rational>::identity(l);
    for g in 0..n {
        d0.set_block(g * l, 0, &(&id - rep.generator_ad(g)?));
    }
    let mut d1 = Matrix::zeros(m * l, n * l);
    for (r, rel) in pres.relators().iter().enumerate() {
        for g in 0..n {
            let mut block = Matrix::zeros(l, l);
            for (w, c) in fox_derivative(rel, g).terms() {
                block = &block + &rep.ad_action(w)?.scale(&Rational::from_integer(c.into()));
            }
            d1.set_block(r * l, g * l, &block);
        }
    }
    let composite = &d1 * &d0;
    if !composite.is_zero() {
        return Err(GermError::InvalidRepresentation("d1 d0 is not zero".into()));
    }
    Ok(CochainData { lie_dim: l, generators: n, relators: m, d0, d1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GermDims {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    /// `dim C² / im d¹`.
    pub obstruction: usize,
}

#[derive(Clone, Debug)]
pub struct CocycleSpaces {
    pub z1: Subspace<Rational>,
    pub b1: Subspace<Rational>,
    pub image_d1: Subspace<Rational>,
    pub dims: GermDims,
}

pub fn cocycle_spaces(c: &CochainData) -> CocycleSpaces {
    let c1 = c.generators * c.lie_dim;
    let c2 = c.relators * c.lie_dim;
    let z1 = if c2 == 0 { Subspace::full(c1) } else { c.d1.kernel_space() };
    let b1 = if c1 == 0 { Subspace::zero(0) } else { c.d0.column_space() };
    let image_d1 = if c2 == 0 { Subspace::zero(0) } else { c.d1.column_space() };
    let dims = GermDims {
        z1: z1.dim(),
        b1: b1.dim(),
        h1: z1.dim() - b1.dim(),
        obstruction: c2 - image_d1.dim(),
    };
    CocycleSpaces { z1, b1, image_d1, dims }
}

/// Lie coordinates of the identity-based layer `idx` of every relator value, stacked.
fn stacked_layer(
    rep: &Representation,
    values: &[crate::exactalg::ArtinMatrix<Rational>],
    idx: usize,
) -> Result<Vec<Rational>, GermError> {
    let mut out = Vec::with_capacity(values.len() * rep.lie_dim());
    for (r, v) in values.iter().enumerate() {
        let coords = rep.group().coordinates(v.layer(idx)).ok_or_else(|| {
            GermError::Invalid(format!(
                "leading layer of relator {} is outside the Lie algebra",
                rep.presentation().relator_label(r)
            ))
        })?;
        out.extend(coords);
    }
    Ok(out)
}

fn relator_values(
    rep: &Representation,
    alg: &Arc<ArtinAlgebra>,
    u: &[Vec<ArtinElement<Rational>>],
) -> Result<Vec<crate::exactalg::ArtinMatrix<Rational>>, GermError> {
    let images = rep.perturbed_images(alg, u)?;
    rep.presentation()
        .relators()
        .iter()
        .map(|r| Ok(evaluate_with(alg, rep.group().size(), r, &images)?))
        .collect()
}

/// Normalise a rational polynomial to integer coefficients with content 1 and a positive
/// leading coefficient.
pub fn normalize_primitive(p: &Polynomial<Rational>) -> Polynomial<Rational> {
    use num::integer::Integer;
    use num::{BigInt, Signed, Zero};
    if p.is_zero() {
        return p.clone();
    }
    let terms = p.terms();
    let mut lcm = BigInt::from(1);
    for (_, c) in &terms {
        lcm = lcm.lcm(c.denom());
    }
    let mut gcd = BigInt::zero();
    for (_, c) in &terms {
        gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
    }
    let mut factor = Rational::new(lcm, gcd);
    if terms[0].1.is_negative() {
        factor = -factor;
    }
    p.scale(&factor)
}

/// The quadratic cone: `Z¹` coordinates and the components of `ζ(u)` in a complement of `im d¹`.
#[derive(Clone, Debug)]
pub struct QuadraticConeResult {
    pub cochain: CochainData,
    pub spaces: CocycleSpaces,
    pub dims: GermDims,
    /// Variable names `z1, z2, …`, one per `Z¹` basis vector.
    pub variables: Vec<String>,
    pub relations: Vec<Polynomial<Rational>>,
    /// `C²` coordinates complementary to `im d¹`, in which relations are read.
    pub complement: Vec<usize>,
    /// Complement coordinate behind each retained relation.
    pub relation_components: Vec<usize>,
}

impl QuadraticConeResult {
    pub fn cone(&self) -> WeightedCone<Rational> {
        WeightedCone::new(self.variables.clone(), vec![1; self.variables.len()], self.relations.clone())
            .expect("quadratic relations are homogeneous")
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|p| p.display_with(&self.variables)).collect()
    }

    /// Whether an ambient cocycle satisfies every relation.
    pub fn contains(&self, u: &[Rational]) -> Option<bool> {
        let z = self.spaces.z1.coordinates(u)?;
        Some(self.relations.iter().all(|p| Field::is_zero(&p.evaluate(&z))))
    }
}

pub fn quadratic_cone(rep: &Representation) -> Result<QuadraticConeResult, GermError> {
    let cochain = presentation_complex(rep)?;
    let spaces = cocycle_spaces(&cochain);
    let l = cochain.lie_dim;
    let z = spaces.z1.dim();
    let variables: Vec<String> = (1..=z).map(|k| format!("z{k}")).collect();
    let complement = spaces.image_d1.complement_coordinates();
    let complement = if cochain.relators == 0 { Vec::new() } else { complement };
    let mut relations = Vec::new();
    let mut relation_components = Vec::new();
    if cochain.relators > 0 && z > 0 && !complement.is_empty() {
        let alg = ArtinAlgebra::new(z, 3)?;
        let vars: Vec<ArtinElement<Rational>> = (0..z).map(|j| ArtinElement::variable(&alg, j)).collect();
        let mut u = vec![vec![ArtinElement::zero(&alg); l]; cochain.generators];
        for (j, basis) in spaces.z1.basis().iter().enumerate() {
            for (pos, c) in basis.iter().enumerate() {
                if !Field::is_zero(c) {
                    let slot = &mut u[pos / l][pos % l];
                    *slot = &*slot + &vars[j].scale(c);
                }
            }
        }
        let values = relator_values(rep, &alg, &u)?;
        for j in alg.degree_range(1) {
            if values.iter().any(|v| !v.layer(j).is_zero()) {
                return Err(GermError::Invalid("first-order layer of a relator is nonzero on Z1".into()));
            }
        }
        let mut polys = vec![Polynomial::zero(z); complement.len()];
        for idx in alg.degree_range(2) {
            let zeta = stacked_layer(rep, &values, idx)?;
            let reduced = spaces.image_d1.reduce(&zeta);
            let exps = alg.monomials()[idx].clone();
            for (k, &coord) in complement.iter().enumerate() {
                polys[k].add_term(exps.clone(), reduced[coord].clone());
            }
        }
        for (k, p) in polys.into_iter().enumerate() {
            if !p.is_zero() {
                relations.push(normalize_primitive(&p));
                relation_components.push(complement[k]);
            }
        }
    }
    let dims = spaces.dims.clone();
    Ok(QuadraticConeResult { cochain, spaces, dims, variables, relations, complement, relation_components })
}

/// Second-order obstruction `ζ(u) ∈ C²` of a cocycle: the `t²` layer of the relators at
/// `exp(t·u_g)ρ(g)`.
pub fn second_order_obstruction(rep: &Representation, u: &[Rational]) -> Result<Vec<Rational>, GermError> {
    let alg = ArtinAlgebra::univariate(3)?;
    let levels = vec![u.to_vec()];
    let values = relator_values(rep, &alg, &level_series(&alg, &levels, rep.lie_dim()))?;
    if values.iter().any(|v| !v.layer(1).is_zero()) {
        return Err(GermError::Invalid("u is not a cocycle".into()));
    }
    stacked_layer(rep, &values, 2)
}

/// `u_g(t) = Σ_j t^j levels[j−1]_g` as Lie coordinates over `alg`.
fn level_series(alg: &Arc<ArtinAlgebra>, levels: &[Vec<Rational>], l: usize) -> Vec<Vec<ArtinElement<Rational>>> {
    let n = if l == 0 { 0 } else { levels.first().map_or(0, |v| v.len() / l) };
    let mut out = vec![vec![ArtinElement::zero(alg); l]; n];
    for (g, row) in out.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            let mut coeffs = vec![Rational::zero()];
            coeffs.extend(levels.iter().map(|v| v[g * l + k].clone()));
            *slot = ArtinElement::from_univariate(alg, &coeffs);
        }
    }
    out
}

/// Perturbation levels `v_1 = u, v_2, …` such that every relator is the identity through `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialLift {
    pub levels: Vec<Vec<Rational>>,
    pub order: usize,
}

impl PartialLift {
    /// The starting point of the search for a given first-order vector.
    pub fn start(u: Vec<Rational>) -> Self {
        PartialLift { levels: vec![u], order: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftCertificate {
    Lifted(PartialLift),
    /// The `t^order` layer cannot be cleared; `obstruction` is the layer reduced modulo the
    /// span of all available corrections.
    Obstructed { order: usize, obstruction: Vec<Rational> },
}

/// Precomputed data for lifting against one representation.
#[derive(Clone, Debug)]
pub struct LiftContext<'a> {
    rep: &'a Representation,
    cochain: CochainData,
    spaces: CocycleSpaces,
}

impl<'a> LiftContext<'a> {
    pub fn new(rep: &'a Representation) -> Result<Self, GermError> {
        let cochain = presentation_complex(rep)?;
        let spaces = cocycle_spaces(&cochain);
        Ok(LiftContext { rep, cochain, spaces })
    }

    pub fn cochain(&self) -> &CochainData {
        &self.cochain
    }

    pub fn spaces(&self) -> &CocycleSpaces {
        &self.spaces
    }

    /// Relator layers `1..=k` for the given levels over `ℚ[t]/t^{k+1}`.
    fn layers(&self, levels: &[Vec<Rational>], k: usize) -> Result<Vec<Vec<Rational>>, GermError> {
        let alg = ArtinAlgebra::univariate(k + 1)?;
        let values = relator_values(self.rep, &alg, &level_series(&alg, levels, self.cochain.lie_dim))?;
        let mut out = Vec::with_capacity(k);
        for j in 1..=k {
            if j < k {
                // lower layers are checked for vanishing only
                let zero = values.iter().all(|v| v.layer(j).is_zero());
                out.push(if zero { Vec::new() } else { vec![Rational::one()] });
            } else {
                out.push(stacked_layer(self.rep, &values, j)?);
            }
        }
        Ok(out)
    }

    /// Extend a partial lift by one order, or certify an obstruction.
    ///
    /// The new level `v_k` is solved for jointly with a cocycle shift of `v_{k−1}` (for
    /// `k ≥ 3`), which makes the search exhaustive through order 3.
    pub fn lift_step(&self, partial: &PartialLift) -> Result<LiftCertificate, GermError> {
        let c1 = self.cochain.generators * self.cochain.lie_dim;
        if partial.levels.len() != partial.order.max(1) || partial.levels.iter().any(|v| v.len() != c1) {
            return Err(GermError::InvalidPartial("level count or length does not match the order".into()));
        }
        let k = partial.order + 1;
        if self.cochain.relators == 0 {
            let mut next = partial.clone();
            if k >= 2 {
                next.levels.push(vec![Rational::zero(); c1]);
            }
            next.order = k;
            return Ok(LiftCertificate::Lifted(next));
        }
        let mut levels = partial.levels.clone();
        if k >= 2 {
            levels.push(vec![Rational::zero(); c1]);
        }
        let base = self.layers(&levels, k)?;
        if base[..k - 1].iter().any(|layer| !layer.is_empty()) {
            return Err(GermError::InvalidPartial(format!("relators do not vanish through order {}", k - 1)));
        }
        let o = &base[k - 1];
        if k == 1 {
            if o.iter().all(Field::is_zero) {
                return Ok(LiftCertificate::Lifted(PartialLift { levels: partial.levels.clone(), order: 1 }));
            }
            return Ok(LiftCertificate::Obstructed { order: 1, obstruction: o.clone() });
        }
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        let shifts: Vec<Vec<Rational>> = if k >= 3 { self.spaces.z1.basis().to_vec() } else { Vec::new() };
        for z in &shifts {
            let mut shifted = levels.clone();
            for (a, b) in shifted[k - 2].iter_mut().zip(z) {
                *a = a.clone() + b.clone();
            }
            let layer = self.layers(&shifted, k)?.pop().expect("top layer");
            columns.push(layer.iter().zip(o).map(|(a, b)| a - b).collect());
        }
        let c2 = o.len();
        for j in 0..c1 {
            columns.push(self.cochain.d1.column(j));
        }
        let system = Matrix::from_columns(&columns, c2);
        let rhs: Vec<Rational> = o.iter().map(|x| -x.clone()).collect();
        match system.solve(&rhs)? {
            None => {
                let span = system.column_space();
                Ok(LiftCertificate::Obstructed { order: k, obstruction: span.reduce(o) })
            }
            Some(sol) => {
                let x = sol.particular;
                for (j, z) in shifts.iter().enumerate() {
                    if !Field::is_zero(&x[j]) {
                        for (a, b) in levels[k - 2].iter_mut().zip(z) {
                            *a = a.clone() + &x[j] * b;
                        }
                    }
                }
                levels[k - 1] = x[shifts.len()..].to_vec();
                Ok(LiftCertificate::Lifted(PartialLift { levels, order: k }))
            }
        }
    }

    /// Highest order `≤ max_order` reached from `u`, with the final certificate.
    pub fn lift_order(&self, u: &[Rational], max_order: usize) -> Result<(usize, LiftCertificate), GermError> {
        let mut current = PartialLift::start(u.to_vec());
        let mut last = LiftCertificate::Lifted(current.clone());
        while current.order < max_order {
            last = self.lift_step(&current)?;
            match &last {
                LiftCertificate::Lifted(next) => current = next.clone(),
                LiftCertificate::Obstructed { .. } => break,
            }
        }
        Ok((current.order, last))
    }

    /// Whether the relators vanish through `t^lift.order` at the given levels.
    pub fn verify(&self, lift: &PartialLift) -> Result<bool, GermError> {
        if self.cochain.relators == 0 || lift.order == 0 {
            return Ok(true);
        }
        let alg = ArtinAlgebra::univariate(lift.order + 1)?;
        let values = relator_values(self.rep, &alg, &level_series(&alg, &lift.levels, self.cochain.lie_dim))?;
        Ok(values.iter().all(|v| (1..=lift.order).all(|j| v.layer(j).is_zero())))
    }
}

/// Sampling and comparison settings for [`deformation_oracle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub sample: usize,
    /// `Z¹` coordinates of the sample.
    pub point: Vec<String>,
    pub in_cone: bool,
    pub lift_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Vec<String>>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub order: usize,
    pub dims: GermDims,
    pub relations: Vec<String>,
    pub entries: Vec<OracleEntry>,
    pub disagreements: usize,
}

/// Deterministic sample set in `Z¹` coordinates: the full `{−1,0,1}` grid when it fits in the
/// budget, otherwise an evenly strided half-budget slice of it; the rest seeded random points
/// with numerators in `[−3, 3]` and denominators in `[1, 3]`.
pub fn oracle_samples(z: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let grid_size: Option<u128> = if z <= 80 { Some(3u128.pow(z as u32)) } else { None };
    let mut out = Vec::with_capacity(count);
    let grid_take = match grid_size {
        Some(g) if g <= count as u128 => g as usize,
        Some(_) => count / 2,
        None => 0,
    };
    let decode = |mut idx: u128| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); z];
        for slot in v.iter_mut().rev() {
            *slot = Rational::from_integer(((idx % 3) as i64 - 1).into());
            idx /= 3;
        }
        v
    };
    if let Some(g) = grid_size {
        for i in 0..grid_take {
            let idx = if grid_take as u128 == g { i as u128 } else { (i as u128) * g / (grid_take as u128) };
            out.push(decode(idx));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        out.push(
            (0..z)
                .map(|_| Rational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into()))
                .collect(),
        );
    }
    out
}

/// Compare cone membership with liftability through `order` on the given `Z¹` coordinate points.
pub fn deformation_oracle_on(
    rep: &Representation,
    cone: &QuadraticConeResult,
    order: usize,
    points: &[Vec<Rational>],
) -> Result<OracleReport, GermError> {
    if order < 3 {
        return Err(GermError::Invalid("oracle order must be at least 3".into()));
    }
    let ctx = LiftContext::new(rep)?;
    let entries: Vec<Result<OracleEntry, GermError>> = points
        .par_iter()
        .enumerate()
        .map(|(index, z)| {
            if z.len() != cone.spaces.z1.dim() {
                return Err(GermError::SampleOutsideZ1 { index });
            }
            let u = cone.spaces.z1.combine(z);
            let in_cone = cone.relations.iter().all(|p| Field::is_zero(&p.evaluate(z)));
            let (lift_order, cert) = ctx.lift_order(&u, order)?;
            let obstruction = match cert {
                LiftCertificate::Obstructed { obstruction, .. } => {
                    Some(obstruction.iter().map(|x| x.to_string()).collect())
                }
                LiftCertificate::Lifted(_) => None,
            };
            let agrees = !((in_cone && lift_order < order) || (!in_cone && lift_order >= 3));
            Ok(OracleEntry {
                sample: index,
                point: z.iter().map(|x| x.to_string()).collect(),
                in_cone,
                lift_order,
                obstruction,
                agrees,
            })
        })
        .collect();
    let entries = entries.into_iter().collect::<Result<Vec<_>, _>>()?;
    let disagreements = entries.iter().filter(|e| !e.agrees).count();
    Ok(OracleReport {
        order,
        dims: cone.dims.clone(),
        relations: cone.relation_strings(),
        entries,
        disagreements,
    })
}

/// Cone computation plus the sampled oracle comparison.
pub fn deformation_oracle(rep: &Representation, config: &OracleConfig) -> Result<OracleReport, GermError> {
    let cone = quadratic_cone(rep)?;
    let points = oracle_samples(cone.spaces.z1.dim(), config.samples, config.seed);
    deformation_oracle_on(rep, &cone, config.order, &points)
}

/// Check that ambient vectors lie in `Z¹`, returning their coordinates.
pub fn cocycle_coordinates(cone: &QuadraticConeResult, samples: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, GermError> {
    samples
        .iter()
        .enumerate()
        .map(|(index, u)| cone.spaces.z1.coordinates(u).ok_or(GermError::SampleOutsideZ1 { index }))
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;
    use crate::grouprep::{parse_presentation, LinearGroupData};

    fn rep(pres: &str, group: LinearGroupData, images: &[&str]) -> Representation {
        let p = parse_presentation(pres).unwrap();
        let imgs = images.iter().map(|m| Matrix::parse(m).unwrap()).collect();
        Representation::new(p, group, imgs).unwrap()
    }

    fn z2_trivial() -> Representation {
        Representation::trivial(parse_presentation("gens a b\nrel a b a^-1 b^-1").unwrap(), LinearGroupData::sl(2))
    }

    fn involution() -> Representation {
        rep("gens a\nrel a a", LinearGroupData::gl(2), &["[[1,0],[0,-1]]"])
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn complex_of_torus() {
        let c = presentation_complex(&z2_trivial()).unwrap();
        assert!(c.d0.is_zero() && c.d1.is_zero());
        let s = cocycle_spaces(&c);
        assert_eq!((s.dims.z1, s.dims.b1, s.dims.h1), (6, 0, 6));
    }

    #[test]
    fn complex_of_involution() {
        let r = involution();
        let c = presentation_complex(&r).unwrap();
        let ad = r.generator_ad(0).unwrap();
        assert_eq!(c.d1, &Matrix::identity(4) + ad);
        let s = cocycle_spaces(&c);
        assert_eq!((s.dims.z1, s.dims.b1, s.dims.h1), (2, 2, 0));
    }

    #[test]
    fn free_group_is_smooth() {
        let r = Representation::trivial(parse_presentation("gens a b c").unwrap(), LinearGroupData::sl(2));
        let cone = quadratic_cone(&r).unwrap();
        assert_eq!(cone.dims.z1, 9);
        assert!(cone.relations.is_empty());
        assert_eq!(cone.cochain.d1.rows(), 0);
    }

    #[test]
    fn commuting_variety_cone() {
        let cone = quadratic_cone(&z2_trivial()).unwrap();
        assert_eq!(cone.variables.len(), 6);
        assert_eq!(cone.relations.len(), 3);
        // [A, B] for A = z1 e + z2 f + z3 h, B = z4 e + z5 f + z6 h
        let n = &cone.variables;
        let expected: Vec<Polynomial<Rational>> =
            ["z1*z6 - z3*z4", "z2*z6 - z3*z5", "z1*z5 - z2*z4"].iter().map(|s| Polynomial::parse(s, n).unwrap()).collect();
        assert_eq!(cone.relations, expected);
    }

    #[test]
    fn involution_cone_is_smooth() {
        let cone = quadratic_cone(&involution()).unwrap();
        assert_eq!(cone.variables.len(), 2);
        assert!(cone.relations.is_empty());
    }

    #[test]
    fn lift_examples() {
        let r = z2_trivial();
        let ctx = LiftContext::new(&r).unwrap();
        // u = (h, h)
        let (k, cert) = ctx.lift_order(&v(&[0, 0, 1, 0, 0, 1]), 5).unwrap();
        assert_eq!(k, 5);
        let LiftCertificate::Lifted(l) = cert else { panic!() };
        assert!(ctx.verify(&l).unwrap());
        // u = (e, f): obstructed at order 2 by [e, f] = h
        let (k, cert) = ctx.lift_order(&v(&[1, 0, 0, 0, 1, 0]), 4).unwrap();
        assert_eq!(k, 1);
        assert!(matches!(cert, LiftCertificate::Obstructed { order: 2, .. }));
    }

    #[test]
    fn non_cocycle_obstructed_at_order_one() {
        let r = involution();
        let ctx = LiftContext::new(&r).unwrap();
        // E11 direction: d1 u = 2 E11 ≠ 0
        let (k, cert) = ctx.lift_order(&v(&[1, 0, 0, 0]), 3).unwrap();
        assert_eq!(k, 0);
        assert!(matches!(cert, LiftCertificate::Obstructed { order: 1, .. }));
    }

    #[test]
    fn free_group_always_lifts() {
        let r = Representation::trivial(parse_presentation("gens a b").unwrap(), LinearGroupData::sl(2));
        let ctx = LiftContext::new(&r).unwrap();
        let (k, _) = ctx.lift_order(&v(&[1, 2, 3, 4, 5, 6]), 4).unwrap();
        assert_eq!(k, 4);
    }

    #[test]
    fn invalid_partial_rejected() {
        let r = z2_trivial();
        let ctx = LiftContext::new(&r).unwrap();
        let bad = PartialLift { levels: vec![v(&[1, 0, 0, 0, 1, 0]), v(&[0; 6])], order: 2 };
        assert!(matches!(ctx.lift_step(&bad), Err(GermError::InvalidPartial(_))));
    }

    #[test]
    fn heisenberg_disagrees_at_order_three() {
        let r = Representation::trivial(
            parse_presentation("gens a b c\nrel a b a^-1 b^-1 c^-1\nrel a c a^-1 c^-1\nrel b c b^-1 c^-1").unwrap(),
            LinearGroupData::sl(2),
        );
        let report = deformation_oracle(&r, &OracleConfig { order: 3, samples: 200, seed: 0 }).unwrap();
        assert!(report.disagreements > 0);
    }

    #[test]
    fn order_two_matches_cone() {
        let r = z2_trivial();
        let cone = quadratic_cone(&r).unwrap();
        let ctx = LiftContext::new(&r).unwrap();
        for z in oracle_samples(6, 150, 3) {
            let u = cone.spaces.z1.combine(&z);
            let (k, _) = ctx.lift_order(&u, 2).unwrap();
            assert_eq!(k == 2, cone.contains(&u).unwrap());
        }
    }

    #[test]
    fn samples_are_deterministic() {
        assert_eq!(oracle_samples(6, 800, 9), oracle_samples(6, 800, 9));
        assert_eq!(oracle_samples(2, 5, 0).len(), 5);
        assert_eq!(oracle_samples(12, 10, 0).len(), 10);
    }
}
