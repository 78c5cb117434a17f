//! Linear algebra of mixed Hodge structures: weight and Hodge filtrations, graded pieces,
//! purity, the Deligne splitting, and the Dec filtration of a filtered complex.

pub mod complex;
pub mod file;
pub mod fixtures;

pub use complex::{dec_filtration, weight_support, DecReport, FilteredComplex, WeightSupport};
pub use file::{FilteredComplexFile, FilteredSpaceFile};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{ExactError, Field, GaussianRational, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MhsError {
    #[error("invalid filtration: {0}")]
    Filtration(String),
    #[error("not a mixed Hodge structure: Gr_{weight} fails at F^{p}: {detail}")]
    NotMhs { weight: i64, p: i64, detail: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A filtration given by its values at finitely many indices. Increasing filtrations extend to
/// the right (`W_k` is the value at the largest listed index `≤ k`, zero below the first);
/// decreasing ones extend to the left (`F^p` is the value at the smallest listed index `≥ p`,
/// zero above the last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration<F> {
    ambient: usize,
    increasing: bool,
    steps: BTreeMap<i64, Subspace<F>>,
}

impl<F: Field> Filtration<F> {
    pub fn new(ambient: usize, increasing: bool, steps: BTreeMap<i64, Subspace<F>>) -> Result<Self, MhsError> {
        let f = Filtration { ambient, increasing, steps };
        f.validate()?;
        Ok(f)
    }

    /// Increasing filtration with a single jump to everything at `k`.
    pub fn single_jump(ambient: usize, k: i64, increasing: bool) -> Self {
        Filtration { ambient, increasing, steps: BTreeMap::from([(k, Subspace::full(ambient))]) }
    }

    fn validate(&self) -> Result<(), MhsError> {
        let mut prev: Option<(&i64, &Subspace<F>)> = None;
        for (k, s) in &self.steps {
            if s.ambient() != self.ambient {
                return Err(MhsError::Filtration(format!("step {k} has ambient {}", s.ambient())));
            }
            if let Some((pk, ps)) = prev {
                let nested = if self.increasing { ps.is_subspace_of(s) } else { s.is_subspace_of(ps) };
                if !nested {
                    return Err(MhsError::Filtration(format!("steps {pk} and {k} are not nested")));
                }
            }
            prev = Some((k, s));
        }
        let extreme = if self.increasing { self.steps.values().next_back() } else { self.steps.values().next() };
        if self.ambient > 0 && extreme.map_or(true, |s| s.dim() != self.ambient) {
            return Err(MhsError::Filtration("filtration is not exhaustive".into()));
        }
        Ok(())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    pub fn steps(&self) -> &BTreeMap<i64, Subspace<F>> {
        &self.steps
    }

    pub fn at(&self, k: i64) -> Subspace<F> {
        let hit = if self.increasing {
            self.steps.range(..=k).next_back()
        } else {
            self.steps.range(k..).next()
        };
        hit.map_or_else(|| Subspace::zero(self.ambient), |(_, s)| s.clone())
    }

    /// Smallest and largest listed index.
    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.steps.keys().next()?, *self.steps.keys().next_back()?))
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> Filtration<G> {
        Filtration {
            ambient: self.ambient,
            increasing: self.increasing,
            steps: self.steps.iter().map(|(k, s)| (*k, s.map_field(f))).collect(),
        }
    }
}

fn complexify(x: &Rational) -> GaussianRational {
    GaussianRational::real(x.clone())
}

/// `V` over ℚ with `W` increasing over ℚ and `F` decreasing on `V ⊗ ℚ(i)`.
#[derive(Clone, Debug)]
pub struct FilteredVectorSpace {
    dim: usize,
    w: Filtration<Rational>,
    f: Filtration<GaussianRational>,
}

impl FilteredVectorSpace {
    pub fn new(w: Filtration<Rational>, f: Filtration<GaussianRational>) -> Result<Self, MhsError> {
        if !w.is_increasing() || f.is_increasing() {
            return Err(MhsError::Filtration("W must be increasing and F decreasing".into()));
        }
        if w.ambient() != f.ambient() {
            return Err(MhsError::Filtration("W and F live on spaces of different dimension".into()));
        }
        Ok(FilteredVectorSpace { dim: w.ambient(), w, f })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self) -> &Filtration<Rational> {
        &self.w
    }

    pub fn hodge(&self) -> &Filtration<GaussianRational> {
        &self.f
    }

    fn wc(&self, k: i64) -> Subspace<GaussianRational> {
        self.w.at(k).map_field(complexify)
    }

    fn weight_range(&self) -> (i64, i64) {
        self.w.range().unwrap_or((0, 0))
    }

    fn hodge_range(&self) -> (i64, i64) {
        self.f.range().unwrap_or((0, 0))
    }
}

/// `dim Gr_n^W = dim W_n − dim W_{n−1}` for every `n` with a nonzero piece.
pub fn gr_weight(v: &FilteredVectorSpace) -> BTreeMap<i64, usize> {
    let (lo, hi) = v.weight_range();
    let mut out = BTreeMap::new();
    for n in lo..=hi {
        let d = v.w.at(n).dim() - v.w.at(n - 1).dim();
        if d > 0 {
            out.insert(n, d);
        }
    }
    out
}

/// `Gr_m^W = 0` for `m ≠ n`; the zero space is pure of every weight.
pub fn is_pure(v: &FilteredVectorSpace, n: i64) -> bool {
    gr_weight(v).keys().all(|&m| m == n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingPiece {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
    #[serde(skip)]
    pub space: Subspace<GaussianRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingChecks {
    pub direct_sum: bool,
    pub weight_reconstructed: bool,
    pub hodge_reconstructed: bool,
    pub hodge_numbers_match: bool,
}

impl SplittingChecks {
    pub fn all(&self) -> bool {
        self.direct_sum && self.weight_reconstructed && self.hodge_reconstructed && self.hodge_numbers_match
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeligneSplitting {
    pub pieces: Vec<SplittingPiece>,
    pub checks: SplittingChecks,
}

impl DeligneSplitting {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.pieces.iter().find(|s| s.p == p && s.q == q).map_or(0, |s| s.dim)
    }
}

fn sum_all(ambient: usize, spaces: impl IntoIterator<Item = Subspace<GaussianRational>>) -> Subspace<GaussianRational> {
    spaces.into_iter().fold(Subspace::zero(ambient), |acc, s| acc.sum(&s).expect("same ambient"))
}

/// `F^p Gr_n^W` lifted to `W_n`: `F^p ∩ W_n + W_{n−1}`.
fn hodge_on_gr(v: &FilteredVectorSpace, f: &Subspace<GaussianRational>, n: i64) -> Result<Subspace<GaussianRational>, MhsError> {
    Ok(f.intersect(&v.wc(n))?.sum(&v.wc(n - 1))?)
}

/// Hodge numbers `h^{p,n−p}` of `Gr_n^W`, after checking that `F` induces a pure Hodge structure of
/// weight `n` there: `F^p ⊕ conj(F^{n−p+1}) = Gr_n` for every `p`.
pub fn check_mhs(v: &FilteredVectorSpace) -> Result<BTreeMap<(i64, i64), usize>, MhsError> {
    let (wlo, whi) = v.weight_range();
    let (flo, fhi) = v.hodge_range();
    let mut numbers = BTreeMap::new();
    for n in wlo..=whi {
        let (wn, wn1) = (v.wc(n), v.wc(n - 1));
        if wn.dim() == wn1.dim() {
            continue;
        }
        for p in (flo - 1)..=(fhi + 1) {
            let a = hodge_on_gr(v, &v.f.at(p), n)?;
            let b = hodge_on_gr(v, &v.f.at(n - p + 1).conj(), n)?;
            if a.intersect(&b)? != wn1 {
                return Err(MhsError::NotMhs { weight: n, p, detail: "F^p and conj F^(n-p+1) meet on Gr".into() });
            }
            if a.sum(&b)? != wn {
                return Err(MhsError::NotMhs { weight: n, p, detail: "F^p and conj F^(n-p+1) do not span Gr".into() });
            }
            let next = hodge_on_gr(v, &v.f.at(p + 1), n)?;
            let h = a.dim() - next.dim();
            if h > 0 {
                numbers.insert((p, n - p), h);
            }
        }
    }
    Ok(numbers)
}

/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (F̄^q ∩ W_{p+q} + Σ_{j≥2} F̄^{q−j+1} ∩ W_{p+q−j})`, with the
/// reconstruction of `W` and `F` and the Hodge numbers verified.
pub fn deligne_splitting(v: &FilteredVectorSpace) -> Result<DeligneSplitting, MhsError> {
    let numbers = check_mhs(v)?;
    let n_amb = v.dim;
    let (wlo, whi) = v.weight_range();
    let (flo, fhi) = v.hodge_range();
    let fbar = |k: i64| v.f.at(k).conj();
    let mut pieces = Vec::new();
    for n in wlo..=whi {
        for p in flo..=fhi {
            let q = n - p;
            let wn = v.wc(n);
            let mut inner = fbar(q).intersect(&wn)?;
            let mut j = 2;
            while n - j >= wlo - 1 {
                inner = inner.sum(&fbar(q - j + 1).intersect(&v.wc(n - j))?)?;
                j += 1;
            }
            let space = v.f.at(p).intersect(&wn)?.intersect(&inner)?;
            if space.dim() > 0 {
                pieces.push(SplittingPiece { p, q, dim: space.dim(), space });
            }
        }
    }
    let total: usize = pieces.iter().map(|s| s.dim).sum();
    let direct_sum = total == n_amb && sum_all(n_amb, pieces.iter().map(|s| s.space.clone())).dim() == n_amb;
    let weight_reconstructed = (wlo - 1..=whi).all(|n| {
        sum_all(n_amb, pieces.iter().filter(|s| s.p + s.q <= n).map(|s| s.space.clone())) == v.wc(n)
    });
    let hodge_reconstructed = (flo - 1..=fhi + 1)
        .all(|p| sum_all(n_amb, pieces.iter().filter(|s| s.p >= p).map(|s| s.space.clone())) == v.f.at(p));
    let hodge_numbers_match = pieces.len() == numbers.len()
        && pieces.iter().all(|s| numbers.get(&(s.p, s.q)) == Some(&s.dim));
    Ok(DeligneSplitting {
        pieces,
        checks: SplittingChecks { direct_sum, weight_reconstructed, hodge_reconstructed, hodge_numbers_match },
    })
}
