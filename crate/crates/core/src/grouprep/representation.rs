//! Representations `ρ: Γ → G(ℚ)` and their perturbations over Artin algebras.
//!
//! Representation file format:
//!
//! ```text
//! dim 2
//! liealg sl2
//! gen a = [[1, 0], [0, -1]]
//! ```
//!
//! `liealg` takes `gl`, `sl` (size from `dim`), a built-in name such as `sl2`, or a
//! whitespace-separated list of inline basis matrices.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::exactalg::{ArtinAlgebra, ArtinElement, ArtinMatrix, Matrix, Rational};

use super::{GroupError, LinearGroupData, Presentation, Word};

#[derive(Clone, Debug)]
pub struct Representation {
    presentation: Presentation,
    group: LinearGroupData,
    images: Vec<Matrix<Rational>>,
    inverses: Vec<Matrix<Rational>>,
    ad: Vec<Option<Matrix<Rational>>>,
}

fn ad_matrix(group: &LinearGroupData, g: &Matrix<Rational>, g_inv: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let l = group.dim();
    let mut cols = Vec::with_capacity(l);
    for b in group.basis() {
        cols.push(group.coordinates(&(&(g * b) * g_inv))?);
    }
    Some(Matrix::from_columns(&cols, l))
}

impl Representation {
    /// Checks generator count, matrix sizes and invertibility. Relators and Ad-closure are
    /// checked by [`check_representation`] or [`Representation::validate`].
    pub fn new(
        presentation: Presentation,
        group: LinearGroupData,
        images: Vec<Matrix<Rational>>,
    ) -> Result<Self, GroupError> {
        if images.len() != presentation.generator_count() {
            return Err(GroupError::Invalid(format!(
                "{} generator images given for {} generators",
                images.len(),
                presentation.generator_count()
            )));
        }
        let d = group.size();
        let mut inverses = Vec::with_capacity(images.len());
        let mut ad = Vec::with_capacity(images.len());
        for (name, m) in presentation.generators().iter().zip(&images) {
            if m.rows() != d || m.cols() != d {
                return Err(GroupError::Invalid(format!("image of {name} is not {d}x{d}")));
            }
            let inv = m.inverse().ok_or_else(|| GroupError::NotInvertible { generator: name.clone() })?;
            ad.push(ad_matrix(&group, m, &inv));
            inverses.push(inv);
        }
        Ok(Representation { presentation, group, images, inverses, ad })
    }

    /// Every generator mapped to the identity.
    pub fn trivial(presentation: Presentation, group: LinearGroupData) -> Self {
        let images = vec![Matrix::identity(group.size()); presentation.generator_count()];
        Self::new(presentation, group, images).expect("identity images are valid")
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn group(&self) -> &LinearGroupData {
        &self.group
    }

    pub fn images(&self) -> &[Matrix<Rational>] {
        &self.images
    }

    /// Lie algebra dimension `ℓ`.
    pub fn lie_dim(&self) -> usize {
        self.group.dim()
    }

    /// Fails on the first relator or Ad-closure violation.
    pub fn validate(&self) -> Result<(), GroupError> {
        let report = check_representation(self, None);
        match report.failures.first() {
            None => Ok(()),
            Some(f) => Err(GroupError::Invalid(f.clone())),
        }
    }

    /// `ρ(w)` over the ground field.
    pub fn evaluate_word(&self, w: &Word) -> Matrix<Rational> {
        let mut out = Matrix::identity(self.group.size());
        for l in w.letters() {
            let m = if l.inverse { &self.inverses[l.generator] } else { &self.images[l.generator] };
            out = &out * m;
        }
        out
    }

    /// Perturbed generator images `(exp(U_g)·ρ(g), ρ(g)⁻¹·exp(−U_g))` where `U_g = Σ_k u_{g,k} b_k`.
    ///
    /// The perturbation multiplies on the left of `ρ(g)`; `u` holds Lie-basis coordinates per
    /// generator, each coordinate an element of the maximal ideal.
    pub fn perturbed_images(
        &self,
        alg: &Arc<ArtinAlgebra>,
        u: &[Vec<ArtinElement<Rational>>],
    ) -> Result<Vec<(ArtinMatrix<Rational>, ArtinMatrix<Rational>)>, GroupError> {
        if u.len() != self.images.len() {
            return Err(GroupError::Invalid("perturbation must have one entry per generator".into()));
        }
        let mut out = Vec::with_capacity(u.len());
        for (g, coords) in u.iter().enumerate() {
            let name = &self.presentation.generators()[g];
            if coords.len() != self.group.dim() {
                return Err(GroupError::Invalid(format!("perturbation of {name} has the wrong length")));
            }
            if coords.iter().any(|c| !c.in_maximal_ideal()) {
                return Err(GroupError::PerturbationNotInMaximalIdeal { generator: name.clone() });
            }
            let big_u = ArtinMatrix::linear_combination(alg, coords, self.group.basis())?;
            let e = big_u.exp_truncated()?;
            let e_inv = big_u.scale(&Rational::from_integer((-1).into())).exp_truncated()?;
            out.push((e.right_mul_constant(&self.images[g]), e_inv.left_mul_constant(&self.inverses[g])));
        }
        Ok(out)
    }

    /// Product of perturbed images along `w`.
    pub fn evaluate_word_perturbed(
        &self,
        alg: &Arc<ArtinAlgebra>,
        w: &Word,
        u: &[Vec<ArtinElement<Rational>>],
    ) -> Result<ArtinMatrix<Rational>, GroupError> {
        let images = self.perturbed_images(alg, u)?;
        Ok(evaluate_with(alg, self.group.size(), w, &images)?)
    }

    /// Matrix of `v ↦ ρ(w) v ρ(w)⁻¹` in the Lie basis.
    pub fn ad_action(&self, w: &Word) -> Result<Matrix<Rational>, GroupError> {
        let mut out = Matrix::identity(self.group.dim());
        for l in w.letters() {
            let name = &self.presentation.generators()[l.generator];
            let a = self.ad[l.generator].as_ref().ok_or_else(|| GroupError::AdNotClosed { generator: name.clone() })?;
            let m = if l.inverse {
                a.inverse().expect("Ad of an invertible matrix is invertible")
            } else {
                a.clone()
            };
            out = &out * &m;
        }
        Ok(out)
    }

    /// `Ad(ρ(g))` for a single generator.
    pub fn generator_ad(&self, g: usize) -> Result<&Matrix<Rational>, GroupError> {
        self.ad[g]
            .as_ref()
            .ok_or_else(|| GroupError::AdNotClosed { generator: self.presentation.generators()[g].clone() })
    }
}

/// Multiply precomputed `(image, inverse image)` pairs along a word.
pub fn evaluate_with(
    alg: &Arc<ArtinAlgebra>,
    size: usize,
    w: &Word,
    images: &[(ArtinMatrix<Rational>, ArtinMatrix<Rational>)],
) -> Result<ArtinMatrix<Rational>, GroupError> {
    let mut out = ArtinMatrix::identity(alg, size);
    for l in w.letters() {
        let (m, m_inv) = &images[l.generator];
        out = out.try_mul(if l.inverse { m_inv } else { m })?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub relators_ok: bool,
    pub ad_closed: bool,
    /// Image order when the closure was requested and terminated under the bound.
    pub image_order: Option<usize>,
    /// Closure was requested but exceeded the bound.
    pub closure_exceeded: bool,
    pub failures: Vec<String>,
}

impl RepresentationReport {
    pub fn is_valid(&self) -> bool {
        self.relators_ok && self.ad_closed
    }
}

/// Default bound on the enumerated image group.
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// Check relators and Ad-closure; with a bound, enumerate the image group by breadth-first
/// closure under right multiplication by generator images.
pub fn check_representation(rep: &Representation, finite_image_bound: Option<usize>) -> RepresentationReport {
    let pres = rep.presentation();
    let mut failures = Vec::new();
    for (i, r) in pres.relators().iter().enumerate() {
        if !rep.evaluate_word(r).is_identity() {
            failures.push(format!("relator {} does not evaluate to the identity", pres.relator_label(i)));
        }
    }
    let relators_ok = failures.is_empty();
    for (g, a) in rep.ad.iter().enumerate() {
        if a.is_none() {
            failures.push(format!("conjugation by the image of {} leaves the Lie algebra", pres.generators()[g]));
        }
    }
    let ad_closed = rep.ad.iter().all(Option::is_some);
    let (image_order, closure_exceeded) = match finite_image_bound {
        None => (None, false),
        Some(bound) => match image_closure(rep, bound) {
            Some(n) => (Some(n), false),
            None => (None, true),
        },
    };
    RepresentationReport { relators_ok, ad_closed, image_order, closure_exceeded, failures }
}

fn image_closure(rep: &Representation, bound: usize) -> Option<usize> {
    let id = Matrix::identity(rep.group.size());
    let mut seen: HashSet<Matrix<Rational>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in rep.images.iter().chain(&rep.inverses) {
            let next = &m * g;
            if !seen.contains(&next) {
                if seen.len() >= bound {
                    return None;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Some(seen.len())
}

/// Parse the representation text format against a presentation.
pub fn parse_representation(text: &str, pres: &Presentation) -> Result<Representation, GroupError> {
    let mut dim: Option<usize> = None;
    let mut group: Option<LinearGroupData> = None;
    let mut images: Vec<Option<Matrix<Rational>>> = vec![None; pres.generator_count()];
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let column = raw.len() - raw.trim_start().len() + 1;
        let err = |message: String| GroupError::Parse { line: line_no, column, message };
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "dim" => {
                let d: usize = rest.parse().map_err(|_| err(format!("bad dimension {rest:?}")))?;
                if d == 0 {
                    return Err(err("dimension must be positive".into()));
                }
                dim = Some(d);
            }
            "liealg" => {
                let d = dim.ok_or_else(|| err("liealg before dim".into()))?;
                let g = match rest {
                    "gl" => LinearGroupData::gl(d),
                    "sl" => LinearGroupData::sl(d),
                    name if !name.starts_with('[') => {
                        LinearGroupData::builtin(name).ok_or_else(|| err(format!("unknown Lie algebra {name:?}")))?
                    }
                    inline => {
                        let basis = split_matrices(inline)
                            .map_err(err)?
                            .iter()
                            .map(|m| Matrix::parse(m))
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| err(e.to_string()))?;
                        LinearGroupData::from_basis("custom", d, basis).map_err(|e| err(e.to_string()))?
                    }
                };
                if g.size() != d {
                    return Err(err(format!("Lie algebra {} does not act on dimension {d}", g.name())));
                }
                group = Some(g);
            }
            "gen" => {
                let (name, mat) = rest.split_once('=').ok_or_else(|| err("expected gen <id> = [[..]]".into()))?;
                let name = name.trim();
                let g = pres.generator_index(name).ok_or_else(|| err(format!("unknown generator {name:?}")))?;
                let m = Matrix::parse(mat.trim()).map_err(|e| err(e.to_string()))?;
                if images[g].is_some() {
                    return Err(err(format!("generator {name:?} given twice")));
                }
                images[g] = Some(m);
            }
            other => return Err(err(format!("expected dim, liealg or gen, found {other:?}"))),
        }
    }
    let eof = |message: &str| GroupError::Parse { line: text.lines().count().max(1), column: 1, message: message.into() };
    let group = group.ok_or_else(|| eof("missing liealg line"))?;
    let mut imgs = Vec::with_capacity(images.len());
    for (name, m) in pres.generators().iter().zip(images) {
        imgs.push(m.ok_or_else(|| eof(&format!("no image for generator {name:?}")))?);
    }
    Representation::new(pres.clone(), group, imgs)
}

fn split_matrices(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err("unbalanced brackets in Lie algebra basis".into());
        }
        if depth == 0 && c.is_whitespace() {
            continue;
        }
        current.push(c);
        if depth == 0 && c == ']' {
            out.push(std::mem::take(&mut current));
        }
    }
    if depth != 0 || !current.trim().is_empty() {
        return Err("unbalanced brackets in Lie algebra basis".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;
    use crate::grouprep::parse_presentation;

    fn diag(a: i64, b: i64) -> Matrix<Rational> {
        Matrix::from_rows(vec![vec![qi(a), qi(0)], vec![qi(0), qi(b)]], 2).unwrap()
    }

    fn cyclic(image: Matrix<Rational>, group: LinearGroupData) -> Representation {
        Representation::new(parse_presentation("gens a\nrel a a").unwrap(), group, vec![image]).unwrap()
    }

    #[test]
    fn relator_of_torus_is_identity() {
        let p = parse_presentation("gens a b\nrel a b a^-1 b^-1").unwrap();
        let rep = Representation::new(p.clone(), LinearGroupData::gl(2), vec![diag(2, 3), diag(-1, 5)]).unwrap();
        assert!(rep.evaluate_word(&p.relators()[0]).is_identity());
        assert!(rep.evaluate_word(&Word::from_pairs(&[(0, 1), (0, -1)])).is_identity());
    }

    #[test]
    fn involution_squares_to_identity() {
        let rep = cyclic(diag(1, -1), LinearGroupData::sl(2));
        assert!(rep.evaluate_word(&Word::from_pairs(&[(0, 1), (0, 1)])).is_identity());
    }

    #[test]
    fn ad_of_diag_on_sl2() {
        let rep = cyclic(diag(1, -1), LinearGroupData::sl(2));
        let ad = rep.ad_action(&Word::generator(0)).unwrap();
        let expected = Matrix::from_rows(
            vec![vec![qi(-1), qi(0), qi(0)], vec![qi(0), qi(-1), qi(0)], vec![qi(0), qi(0), qi(1)]],
            3,
        )
        .unwrap();
        assert_eq!(ad, expected);
    }

    #[test]
    fn check_reports() {
        let ok = check_representation(&cyclic(diag(1, -1), LinearGroupData::gl(2)), Some(DEFAULT_CLOSURE_BOUND));
        assert!(ok.is_valid());
        assert_eq!(ok.image_order, Some(2));
        let bad = check_representation(&cyclic(diag(2, 1), LinearGroupData::gl(2)), Some(100));
        assert!(!bad.relators_ok);
        assert!(bad.closure_exceeded);
        let triv = Representation::trivial(parse_presentation("gens a b").unwrap(), LinearGroupData::sl(2));
        assert_eq!(check_representation(&triv, Some(10)).image_order, Some(1));
    }

    #[test]
    fn ad_not_closed_detected() {
        // diag(2,1) normalises sl2 but not the span of {E12} alone
        let g = LinearGroupData::from_basis("n", 2, vec![Matrix::parse("[[0,1],[0,0]]").unwrap()]).unwrap();
        let rot = Matrix::parse("[[0,-1],[1,0]]").unwrap();
        let rep = cyclic(rot, g);
        assert!(rep.ad_action(&Word::generator(0)).is_err());
        assert!(!check_representation(&rep, None).ad_closed);
    }

    #[test]
    fn perturbed_word_reduces_to_ground() {
        let p = parse_presentation("gens a b\nrel a b a^-1 b^-1").unwrap();
        let rep = Representation::new(p.clone(), LinearGroupData::sl(2), vec![diag(1, -1), diag(-1, -1)]).unwrap();
        let alg = ArtinAlgebra::univariate(3).unwrap();
        let t = ArtinElement::variable(&alg, 0);
        let z = ArtinElement::zero(&alg);
        let u = vec![vec![t.clone(), z.clone(), t.clone()], vec![z.clone(), t.clone(), z.clone()]];
        let w = Word::from_pairs(&[(0, 1), (1, -1), (0, 1)]);
        let m = rep.evaluate_word_perturbed(&alg, &w, &u).unwrap();
        assert_eq!(m.constant_part(), &rep.evaluate_word(&w));
        let bad = vec![vec![ArtinElement::one(&alg), z.clone(), z.clone()], vec![z.clone(), z.clone(), z]];
        assert!(matches!(
            rep.evaluate_word_perturbed(&alg, &w, &bad),
            Err(GroupError::PerturbationNotInMaximalIdeal { .. })
        ));
    }

    #[test]
    fn parse_representation_file() {
        let p = parse_presentation("gens a\nrel a a").unwrap();
        let rep = parse_representation("dim 2\nliealg sl\ngen a = [[1, 0], [0, -1]]\n", &p).unwrap();
        assert_eq!(rep.lie_dim(), 3);
        let inline = parse_representation("dim 2\nliealg [[1,0],[0,0]] [[0,0],[0,1]]\ngen a = [[1,0],[0,-1]]", &p).unwrap();
        assert_eq!(inline.lie_dim(), 2);
        assert!(parse_representation("dim 2\nliealg sl\n", &p).is_err());
        assert!(matches!(
            parse_representation("dim 2\nliealg sl\ngen b = [[1,0],[0,1]]", &p),
            Err(GroupError::Parse { line: 3, .. })
        ));
    }
}
