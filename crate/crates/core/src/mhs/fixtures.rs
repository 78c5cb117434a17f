//! Seeded mixed Hodge structures and filtered complexes.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{Field, GaussianRational, Matrix, Rational, Subspace};

use super::{FilteredComplex, FilteredVectorSpace, Filtration};

fn int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    Rational::from_integer(rng.gen_range(lo..=hi).into())
}

/// Unipotent lower times unipotent upper with entries in `[−1, 1]`.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    let lower = Matrix::from_fn(n, n, |r, c| if r == c { Rational::one() } else if r > c { int(rng, -1, 1) } else { Rational::zero() });
    let upper = Matrix::from_fn(n, n, |r, c| if r == c { Rational::one() } else if r < c { int(rng, -1, 1) } else { Rational::zero() });
    &lower * &upper
}

fn coordinate_filtration(weights: &[i64]) -> Filtration<Rational> {
    let n = weights.len();
    let steps: BTreeMap<i64, Subspace<Rational>> = weights
        .iter()
        .map(|&w| (w, Subspace::coordinate(n, &(0..n).filter(|&k| weights[k] <= w).collect::<Vec<_>>())))
        .collect();
    Filtration::new(n, true, steps).expect("coordinate filtrations are nested")
}

fn transform<F: Field>(f: &Filtration<F>, g: &Matrix<F>) -> Filtration<F> {
    let steps = f.steps().iter().map(|(k, s)| (*k, s.image(g).expect("square"))).collect();
    Filtration::new(f.ambient(), f.is_increasing(), steps).expect("invertible maps preserve nesting")
}

/// A mixed Hodge structure together with the Hodge numbers it was built from.
#[derive(Clone, Debug)]
pub struct MhsFixture {
    pub space: FilteredVectorSpace,
    pub hodge_numbers: BTreeMap<(i64, i64), usize>,
}

/// Conjugate-symmetric `I^{p,q}` cells of weight `0..=4`, a complex unipotent twist lowering the
/// weight, then a rational change of basis.
pub fn random_mhs(rng: &mut ChaCha8Rng) -> MhsFixture {
    let cells = rng.gen_range(1..=5);
    // (p, q, first coordinate, second coordinate if p != q)
    let mut layout: Vec<(i64, i64)> = Vec::new();
    for _ in 0..cells {
        let n = rng.gen_range(0..=4i64);
        let p = rng.gen_range(0..=n);
        layout.push((p.max(n - p), p.min(n - p)));
    }
    layout.sort_by_key(|&(p, q)| (p + q, p));
    let mut weights = Vec::new();
    let mut numbers = BTreeMap::new();
    let mut hodge_vectors: Vec<(i64, Vec<GaussianRational>)> = Vec::new();
    let dim: usize = layout.iter().map(|&(p, q)| if p == q { 1 } else { 2 }).sum();
    let unit = |k: usize| (0..dim).map(|j| if j == k { GaussianRational::one() } else { GaussianRational::zero() }).collect::<Vec<_>>();
    for &(p, q) in &layout {
        let a = weights.len();
        weights.push(p + q);
        *numbers.entry((p, q)).or_insert(0) += 1;
        if p == q {
            hodge_vectors.push((p, unit(a)));
        } else {
            weights.push(p + q);
            *numbers.entry((q, p)).or_insert(0) += 1;
            let i = GaussianRational::i();
            let plus: Vec<_> = unit(a).into_iter().zip(unit(a + 1)).map(|(x, y)| x + i.clone() * y).collect();
            let minus: Vec<_> = plus.iter().map(|x| x.conj()).collect();
            hodge_vectors.push((p, plus));
            hodge_vectors.push((q, minus));
        }
    }
    let w = coordinate_filtration(&weights);
    let twist = Matrix::from_fn(dim, dim, |r, c| {
        if r == c {
            GaussianRational::one()
        } else if weights[r] < weights[c] && rng.gen_bool(0.5) {
            GaussianRational::new(int(rng, -1, 1), int(rng, -1, 1))
        } else {
            GaussianRational::zero()
        }
    });
    let (plo, phi) = hodge_vectors.iter().fold((i64::MAX, i64::MIN), |(lo, hi), (p, _)| (lo.min(*p), hi.max(*p)));
    let mut steps = BTreeMap::new();
    for p in plo..=phi {
        let span: Vec<_> = hodge_vectors.iter().filter(|(pp, _)| *pp >= p).map(|(_, v)| twist.mul_vec(v)).collect();
        steps.insert(p, Subspace::from_spanning(dim, &span));
    }
    let f = Filtration::new(dim, false, steps).expect("nested by construction");
    let h = random_invertible(rng, dim);
    let hc = h.map(|x| GaussianRational::real(x.clone()));
    let space = FilteredVectorSpace::new(transform(&w, &h), transform(&f, &hc)).expect("compatible");
    MhsFixture { space, hodge_numbers: numbers }
}

/// A three-term complex `A⁰ → A¹ → A²` of total dimension at most 24, assembled from single
/// pieces and acyclic pairs `x ↦ y` with `wt(y) ≤ wt(x)`, then conjugated by random changes of
/// basis in each degree.
pub fn random_filtered_complex(rng: &mut ChaCha8Rng) -> FilteredComplex {
    let budget = rng.gen_range(4..=24usize);
    let mut weights: [Vec<i64>; 3] = Default::default();
    let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
    let mut used = 0;
    while used < budget {
        let n = rng.gen_range(0..3usize);
        if n < 2 && used + 2 <= budget && rng.gen_bool(0.5) {
            let wx = rng.gen_range(0..=4i64);
            let wy = rng.gen_range(0..=wx);
            arrows.push((n, weights[n].len(), weights[n + 1].len()));
            weights[n].push(wx);
            weights[n + 1].push(wy);
            used += 2;
        } else {
            weights[n].push(rng.gen_range(0..=4i64));
            used += 1;
        }
    }
    let dims: Vec<usize> = weights.iter().map(Vec::len).collect();
    let mut d: Vec<Matrix<Rational>> = (0..2).map(|n| Matrix::zeros(dims[n + 1], dims[n])).collect();
    for &(n, x, y) in &arrows {
        d[n].set(y, x, Rational::one());
    }
    let g: Vec<Matrix<Rational>> = dims.iter().map(|&n| random_invertible(rng, n)).collect();
    let d: Vec<Matrix<Rational>> = (0..2)
        .map(|n| &(&g[n + 1] * &d[n]) * &g[n].inverse().expect("unipotent factors"))
        .collect();
    let w: Vec<Filtration<Rational>> = weights
        .iter()
        .zip(&g)
        .map(|(ws, gn)| if ws.is_empty() { Filtration::new(0, true, BTreeMap::new()).expect("empty") } else { transform(&coordinate_filtration(ws), gn) })
        .collect();
    FilteredComplex::new(dims, d, w).expect("valid by construction")
}
