//! Filtered cochain complexes, the Dec filtration and weights on cohomology.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::exactalg::{Matrix, Rational, Subspace};

use super::{Filtration, MhsError};

/// `A⁰ → A¹ → … → A^N` with an increasing filtration `W` on each piece preserved by `d`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    dims: Vec<usize>,
    /// `d[n]: Aⁿ → A^{n+1}`, one per consecutive pair.
    d: Vec<Matrix<Rational>>,
    w: Vec<Filtration<Rational>>,
}

impl FilteredComplex {
    pub fn new(dims: Vec<usize>, d: Vec<Matrix<Rational>>, w: Vec<Filtration<Rational>>) -> Result<Self, MhsError> {
        if dims.is_empty() || d.len() + 1 != dims.len() || w.len() != dims.len() {
            return Err(MhsError::Invalid("need one differential between consecutive pieces and one filtration per piece".into()));
        }
        for (n, m) in d.iter().enumerate() {
            if m.rows() != dims[n + 1] || m.cols() != dims[n] {
                return Err(MhsError::Invalid(format!("d^{n} must be {}x{}", dims[n + 1], dims[n])));
            }
        }
        for (n, f) in w.iter().enumerate() {
            if f.ambient() != dims[n] || !f.is_increasing() {
                return Err(MhsError::Invalid(format!("W on A^{n} must be increasing on a {}-dimensional space", dims[n])));
            }
        }
        let c = FilteredComplex { dims, d, w };
        for n in 0..c.d.len() {
            if n + 1 < c.d.len() && !(&c.d[n + 1] * &c.d[n]).is_zero() {
                return Err(MhsError::Invalid(format!("d^{} d^{n} != 0", n + 1)));
            }
            for (k, s) in c.w[n].steps() {
                let image = s.image(&c.d[n])?;
                if !image.is_subspace_of(&c.w[n + 1].at(*k)) {
                    return Err(MhsError::Invalid(format!("d does not preserve W_{k} on A^{n}")));
                }
            }
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn differentials(&self) -> &[Matrix<Rational>] {
        &self.d
    }

    pub fn filtrations(&self) -> &[Filtration<Rational>] {
        &self.w
    }

    /// `d: Aⁿ → A^{n+1}`, zero past the top.
    fn d_out(&self, n: usize) -> Matrix<Rational> {
        self.d.get(n).cloned().unwrap_or_else(|| Matrix::zeros(0, self.dims[n]))
    }

    pub fn cocycles(&self, n: usize) -> Subspace<Rational> {
        let m = self.d_out(n);
        if m.rows() == 0 {
            Subspace::full(self.dims[n])
        } else {
            m.kernel_space()
        }
    }

    pub fn coboundaries(&self, n: usize) -> Subspace<Rational> {
        if n == 0 || self.dims[n - 1] == 0 {
            Subspace::zero(self.dims[n])
        } else {
            self.d[n - 1].column_space()
        }
    }

    /// Image in `Hⁿ` of `S ∩ Zⁿ`, as the subspace `S ∩ Zⁿ + Bⁿ` of `Aⁿ`.
    pub fn induced_on_cohomology(&self, n: usize, s: &Subspace<Rational>) -> Result<Subspace<Rational>, MhsError> {
        Ok(s.intersect(&self.cocycles(n))?.sum(&self.coboundaries(n))?)
    }

    pub fn cohomology_dim(&self, n: usize) -> usize {
        self.cocycles(n).dim() - self.coboundaries(n).dim()
    }

    /// Listed filtration indices over all pieces.
    fn index_range(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for f in &self.w {
            if let Some((a, b)) = f.range() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        if lo > hi {
            (0, 0)
        } else {
            (lo, hi)
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecReport {
    pub complex: FilteredComplex,
    /// `d(DecW_i Aⁿ) ⊆ DecW_i A^{n+1}` for all listed `i`.
    pub preserved_by_d: bool,
    /// `DecW_i Hⁿ = W_{i−n} Hⁿ` for all `n` and listed `i`, as subspaces.
    pub cohomology_identity: bool,
    /// First `(n, i)` where the identity fails.
    pub failure: Option<(usize, i64)>,
}

/// `DecW_i(Aⁿ) = {x ∈ W_{i−n}(Aⁿ) | dx ∈ W_{i−n−1}(A^{n+1})}` on every piece.
pub fn dec_filtration(c: &FilteredComplex) -> Result<DecReport, MhsError> {
    let (lo, hi) = c.index_range();
    let top = c.len() - 1;
    let mut filtrations = Vec::with_capacity(c.len());
    for n in 0..c.len() {
        let shift = n as i64;
        let mut steps = BTreeMap::new();
        for i in (lo + shift)..=(hi + shift + 1) {
            let base = c.w[n].at(i - shift);
            let step = if n == top {
                base
            } else {
                let pre = Subspace::preimage(&c.d[n], &c.w[n + 1].at(i - shift - 1))?;
                base.intersect(&pre)?
            };
            steps.insert(i, step);
        }
        filtrations.push(Filtration::new(c.dims[n], true, steps)?);
    }
    let mut preserved = true;
    for n in 0..top {
        for (i, s) in filtrations[n].steps() {
            if !s.image(&c.d[n])?.is_subspace_of(&filtrations[n + 1].at(*i)) {
                preserved = false;
            }
        }
    }
    let mut failure = None;
    'outer: for n in 0..c.len() {
        for i in (lo + n as i64 - 1)..=(hi + n as i64 + 1) {
            let dec = c.induced_on_cohomology(n, &filtrations[n].at(i))?;
            let shifted = c.induced_on_cohomology(n, &c.w[n].at(i - n as i64))?;
            if dec != shifted {
                failure = Some((n, i));
                break 'outer;
            }
        }
    }
    let complex = FilteredComplex { dims: c.dims.clone(), d: c.d.clone(), w: filtrations };
    Ok(DecReport { complex, preserved_by_d: preserved, cohomology_identity: failure.is_none(), failure })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSupport {
    pub degree: usize,
    pub weights: BTreeSet<i64>,
    /// `H¹` in {1,2}, `H²` in {2,3,4}; other degrees always conform.
    pub conforms: bool,
}

/// Weights `i` with `Gr_i^W Hⁿ ≠ 0`.
pub fn weight_support(c: &FilteredComplex, n: usize) -> Result<WeightSupport, MhsError> {
    if n >= c.len() {
        return Err(MhsError::Invalid(format!("degree {n} is outside the complex")));
    }
    let (lo, hi) = c.w[n].range().unwrap_or((0, 0));
    let mut weights = BTreeSet::new();
    for i in lo..=hi {
        let a = c.induced_on_cohomology(n, &c.w[n].at(i))?.dim();
        let b = c.induced_on_cohomology(n, &c.w[n].at(i - 1))?.dim();
        if a > b {
            weights.insert(i);
        }
    }
    let allowed: Option<&[i64]> = match n {
        1 => Some(&[1, 2]),
        2 => Some(&[2, 3, 4]),
        _ => None,
    };
    let conforms = allowed.map_or(true, |a| weights.iter().all(|w| a.contains(w)));
    Ok(WeightSupport { degree: n, weights, conforms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{qi, Field};

    fn coordinate_filtration(weights: &[i64]) -> Filtration<Rational> {
        let n = weights.len();
        let mut steps = BTreeMap::new();
        for &w in weights {
            let idx: Vec<usize> = (0..n).filter(|&k| weights[k] <= w).collect();
            steps.insert(w, Subspace::coordinate(n, &idx));
        }
        if steps.is_empty() {
            steps.insert(0, Subspace::full(0));
        }
        Filtration::new(n, true, steps).unwrap()
    }

    #[test]
    fn zero_differential_dec_is_shift() {
        let w0 = coordinate_filtration(&[0, 1]);
        let w1 = coordinate_filtration(&[1, 2]);
        let c = FilteredComplex::new(vec![2, 2], vec![Matrix::zeros(2, 2)], vec![w0.clone(), w1.clone()]).unwrap();
        let r = dec_filtration(&c).unwrap();
        assert!(r.preserved_by_d && r.cohomology_identity);
        for i in -2..5 {
            assert_eq!(r.complex.filtrations()[0].at(i), w0.at(i));
            assert_eq!(r.complex.filtrations()[1].at(i), w1.at(i - 1));
        }
    }

    #[test]
    fn one_arrow_matches_enumeration() {
        // A^0 = Q^2 weights (1, 2), A^1 = Q^2 weights (0, 2); d sends e2 -> f1 + f2, e1 -> f1
        let w0 = coordinate_filtration(&[1, 2]);
        let w1 = coordinate_filtration(&[0, 2]);
        let d = Matrix::from_rows(vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)]], 2).unwrap();
        let c = FilteredComplex::new(vec![2, 2], vec![d.clone()], vec![w0.clone(), w1.clone()]).unwrap();
        let r = dec_filtration(&c).unwrap();
        for i in -1..5 {
            let mut members = Vec::new();
            for a in -1..=1 {
                for b in -1..=1 {
                    let x = vec![qi(a), qi(b)];
                    if w0.at(i).contains(&x) && w1.at(i - 1).contains(&d.mul_vec(&x)) {
                        members.push(x);
                    }
                }
            }
            assert_eq!(r.complex.filtrations()[0].at(i), Subspace::from_spanning(2, &members), "i = {i}");
        }
        assert!(r.cohomology_identity);
    }

    #[test]
    fn unfiltered_differential_rejected() {
        let w0 = coordinate_filtration(&[0]);
        let w1 = coordinate_filtration(&[1]);
        assert!(FilteredComplex::new(vec![1, 1], vec![Matrix::identity(1)], vec![w0, w1]).is_err());
    }

    #[test]
    fn weight_supports() {
        let single = FilteredComplex::new(vec![1, 1], vec![Matrix::zeros(1, 1)], vec![coordinate_filtration(&[0]), coordinate_filtration(&[1])]).unwrap();
        let s = weight_support(&single, 1).unwrap();
        assert_eq!(s.weights, BTreeSet::from([1]));
        assert!(s.conforms);
        let two = FilteredComplex::new(vec![1, 2], vec![Matrix::zeros(2, 1)], vec![coordinate_filtration(&[0]), coordinate_filtration(&[1, 2])]).unwrap();
        assert_eq!(weight_support(&two, 1).unwrap().weights, BTreeSet::from([1, 2]));
        let bad = FilteredComplex::new(vec![1, 1], vec![Matrix::zeros(1, 1)], vec![coordinate_filtration(&[0]), coordinate_filtration(&[3])]).unwrap();
        assert!(!weight_support(&bad, 1).unwrap().conforms);
        assert!(Field::is_zero(&qi(0)));
    }
}
