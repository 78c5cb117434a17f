//! Truncated polynomial algebras `F[t_1..t_s]/𝔪^c` and matrices over them.
//!
//! Monomials are indexed in degree-lexicographic order: ascending total degree, and
//! within a degree, descending exponent tuples (so `t1^2 < t1*t2 < t2^2` in index order).
//! The product table is precomputed, which keeps multiplication a table lookup per
//! pair of nonzero coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Rational};
use super::matrix::Matrix;
use super::ExactError;

/// The algebra `k[t_1..t_s]/𝔪^c`.
#[derive(Debug)]
pub struct ArtinAlgebra {
    vars: usize,
    order: usize,
    monomials: Vec<Vec<u32>>,
    degrees: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
    products: Vec<Option<u32>>,
    /// `degree_start[k]` is the first index of degree `k`; has length `order + 1`.
    degree_start: Vec<usize>,
}

impl PartialEq for ArtinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order
    }
}

impl Eq for ArtinAlgebra {}

fn exponents_of_degree(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in exponents_of_degree(vars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl ArtinAlgebra {
    /// `k[t_1..t_vars]/𝔪^order`; `order >= 1`.
    pub fn new(vars: usize, order: usize) -> Result<Arc<Self>, ExactError> {
        if order == 0 {
            return Err(ExactError::Artin("truncation order must be at least 1".into()));
        }
        let mut monomials = Vec::new();
        let mut degrees = Vec::new();
        let mut degree_start = Vec::new();
        for d in 0..order {
            degree_start.push(monomials.len());
            for e in exponents_of_degree(vars, d as u32) {
                monomials.push(e);
                degrees.push(d);
            }
        }
        degree_start.push(monomials.len());
        let index: HashMap<Vec<u32>, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let n = monomials.len();
        let mut products = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if degrees[a] + degrees[b] >= order {
                    continue;
                }
                let e: Vec<u32> = monomials[a].iter().zip(&monomials[b]).map(|(x, y)| x + y).collect();
                products[a * n + b] = Some(index[&e] as u32);
            }
        }
        Ok(Arc::new(ArtinAlgebra { vars, order, monomials, degrees, index, products, degree_start }))
    }

    /// `k[t]/t^order`.
    pub fn univariate(order: usize) -> Result<Arc<Self>, ExactError> {
        Self::new(1, order)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Dimension over the ground field: number of monomials of degree `< order`.
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn monomial_index(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn monomial_degree(&self, idx: usize) -> usize {
        self.degrees[idx]
    }

    /// Index range of the monomials of total degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d >= self.order {
            return self.dim()..self.dim();
        }
        self.degree_start[d]..self.degree_start[d + 1]
    }

    pub fn product_index(&self, a: usize, b: usize) -> Option<usize> {
        self.products[a * self.dim() + b].map(|x| x as usize)
    }

    pub fn variable_name(&self, i: usize) -> String {
        if self.vars == 1 {
            "t".to_string()
        } else {
            format!("t{}", i + 1)
        }
    }

    pub fn monomial_string(&self, idx: usize) -> String {
        let parts: Vec<String> = self.monomials[idx]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.variable_name(i)
                } else {
                    format!("{}^{}", self.variable_name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn same_algebra(a: &Arc<ArtinAlgebra>, b: &Arc<ArtinAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of an Artin algebra, stored densely over the monomial index.
#[derive(Clone, Debug)]
pub struct ArtinElement<F> {
    alg: Arc<ArtinAlgebra>,
    coeffs: Vec<F>,
}

impl<F: Field> PartialEq for ArtinElement<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for ArtinElement<F> {}

impl<F: Field> ArtinElement<F> {
    pub fn zero(alg: &Arc<ArtinAlgebra>) -> Self {
        ArtinElement { alg: alg.clone(), coeffs: vec![F::zero(); alg.dim()] }
    }

    pub fn constant(alg: &Arc<ArtinAlgebra>, c: F) -> Self {
        let mut e = Self::zero(alg);
        e.coeffs[0] = c;
        e
    }

    pub fn one(alg: &Arc<ArtinAlgebra>) -> Self {
        Self::constant(alg, F::one())
    }

    /// The generator `t_i`; zero when `order == 1`.
    pub fn variable(alg: &Arc<ArtinAlgebra>, i: usize) -> Self {
        let mut exps = vec![0; alg.vars()];
        exps[i] = 1;
        let mut e = Self::zero(alg);
        if let Some(idx) = alg.monomial_index(&exps) {
            e.coeffs[idx] = F::one();
        }
        e
    }

    /// Sum of `c · t^exps` over the given terms; terms at or beyond the cut are dropped.
    pub fn from_terms(alg: &Arc<ArtinAlgebra>, terms: &[(Vec<u32>, F)]) -> Result<Self, ExactError> {
        let mut e = Self::zero(alg);
        for (exps, c) in terms {
            if exps.len() != alg.vars() {
                return Err(ExactError::Artin(format!(
                    "exponent tuple {exps:?} has {} entries, algebra has {} variables",
                    exps.len(),
                    alg.vars()
                )));
            }
            if let Some(idx) = alg.monomial_index(exps) {
                e.coeffs[idx] = e.coeffs[idx].clone() + c.clone();
            }
        }
        Ok(e)
    }

    /// In a univariate algebra, `Σ coeffs[k] t^k`, truncated.
    pub fn from_univariate(alg: &Arc<ArtinAlgebra>, coeffs: &[F]) -> Self {
        assert_eq!(alg.vars(), 1, "from_univariate needs a one-variable algebra");
        let mut e = Self::zero(alg);
        for (k, c) in coeffs.iter().enumerate().take(alg.order()) {
            e.coeffs[k] = c.clone();
        }
        e
    }

    pub fn from_coeffs(alg: &Arc<ArtinAlgebra>, coeffs: Vec<F>) -> Result<Self, ExactError> {
        if coeffs.len() != alg.dim() {
            return Err(ExactError::Artin("coefficient vector has wrong length".into()));
        }
        Ok(ArtinElement { alg: alg.clone(), coeffs })
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coefficient(&self, exps: &[u32]) -> F {
        self.alg.monomial_index(exps).map_or(F::zero(), |i| self.coeffs[i].clone())
    }

    pub fn constant_term(&self) -> &F {
        &self.coeffs[0]
    }

    /// Whether the element lies in the maximal ideal (zero constant term).
    pub fn in_maximal_ideal(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        ArtinElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(ExactError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        Ok(ArtinElement {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    /// Product with every monomial of degree `>= c` discarded.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let n = self.alg.dim();
        let mut out = vec![F::zero(); n];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(k) = self.alg.product_index(a, b) {
                    out[k] = out[k].clone() + x.clone() * y.clone();
                }
            }
        }
        Ok(ArtinElement { alg: self.alg.clone(), coeffs: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> ArtinElement<G> {
        ArtinElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Image under the algebra map `t ↦ s^k` into a univariate target algebra.
    pub fn substitute_power(&self, target: &Arc<ArtinAlgebra>, k: u32) -> Result<Self, ExactError> {
        if self.alg.vars() != 1 || target.vars() != 1 {
            return Err(ExactError::Artin("power substitution needs univariate algebras".into()));
        }
        // t^c = 0 must map to 0: need c*k >= target order
        if k == 0 || (self.alg.order() as u32) * k < target.order() as u32 {
            return Err(ExactError::Artin(format!(
                "t -> s^{k} does not define a map k[t]/t^{} -> k[s]/s^{}",
                self.alg.order(),
                target.order()
            )));
        }
        let mut out = Self::zero(target);
        for (e, c) in self.coeffs.iter().enumerate() {
            let idx = e * k as usize;
            if idx < target.order() {
                out.coeffs[idx] = c.clone();
            }
        }
        Ok(out)
    }

    /// Image under the quotient map to a smaller truncation order (same variables).
    pub fn truncate_to(&self, target: &Arc<ArtinAlgebra>) -> Result<Self, ExactError> {
        if target.vars() != self.alg.vars() || target.order() > self.alg.order() {
            return Err(ExactError::Artin("truncation target must have fewer orders and same variables".into()));
        }
        let mut out = Self::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some(j) = target.monomial_index(&self.alg.monomials()[i]) {
                out.coeffs[j] = c.clone();
            }
        }
        Ok(out)
    }
}

/// Product of two Artin elements; errors on mismatched algebras.
pub fn artin_mul<F: Field>(x: &ArtinElement<F>, y: &ArtinElement<F>) -> Result<ArtinElement<F>, ExactError> {
    x.try_mul(y)
}

impl<'a, F: Field> Add<&'a ArtinElement<F>> for &'a ArtinElement<F> {
    type Output = ArtinElement<F>;
    fn add(self, rhs: &'a ArtinElement<F>) -> ArtinElement<F> {
        self.try_add(rhs).expect("mismatched Artin algebras")
    }
}

impl<'a, F: Field> Sub<&'a ArtinElement<F>> for &'a ArtinElement<F> {
    type Output = ArtinElement<F>;
    fn sub(self, rhs: &'a ArtinElement<F>) -> ArtinElement<F> {
        self.try_add(&-rhs).expect("mismatched Artin algebras")
    }
}

impl<'a, F: Field> Mul<&'a ArtinElement<F>> for &'a ArtinElement<F> {
    type Output = ArtinElement<F>;
    fn mul(self, rhs: &'a ArtinElement<F>) -> ArtinElement<F> {
        self.try_mul(rhs).expect("mismatched Artin algebras")
    }
}

impl<'a, F: Field> Neg for &'a ArtinElement<F> {
    type Output = ArtinElement<F>;
    fn neg(self) -> ArtinElement<F> {
        ArtinElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<F: Field> fmt::Display for ArtinElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = self.alg.monomial_string(i);
            let neg = c.is_negative_for_display();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let simple = abs.to_string().chars().all(|ch| ch.is_ascii_digit() || ch == '/');
            let coeff = if simple { abs.to_string() } else { format!("({abs})") };
            if mono == "1" {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A matrix with entries in an Artin algebra, stored as one coefficient matrix per monomial.
#[derive(Clone, Debug)]
pub struct ArtinMatrix<F> {
    alg: Arc<ArtinAlgebra>,
    rows: usize,
    cols: usize,
    layers: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for ArtinMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.layers == other.layers
    }
}

impl<F: Field> ArtinMatrix<F> {
    pub fn zeros(alg: &Arc<ArtinAlgebra>, rows: usize, cols: usize) -> Self {
        ArtinMatrix { alg: alg.clone(), rows, cols, layers: vec![Matrix::zeros(rows, cols); alg.dim()] }
    }

    /// A ground-field matrix viewed over the algebra.
    pub fn constant(alg: &Arc<ArtinAlgebra>, m: &Matrix<F>) -> Self {
        let mut out = Self::zeros(alg, m.rows(), m.cols());
        out.layers[0] = m.clone();
        out
    }

    pub fn identity(alg: &Arc<ArtinAlgebra>, n: usize) -> Self {
        Self::constant(alg, &Matrix::identity(n))
    }

    /// Build from a grid of Artin elements.
    pub fn from_entries(alg: &Arc<ArtinAlgebra>, entries: &[Vec<ArtinElement<F>>]) -> Result<Self, ExactError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let mut out = Self::zeros(alg, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(ExactError::Dimension("ragged Artin matrix".into()));
            }
            for (j, e) in row.iter().enumerate() {
                if !same_algebra(e.algebra(), alg) {
                    return Err(ExactError::AlgebraMismatch);
                }
                for (k, c) in e.coeffs().iter().enumerate() {
                    out.layers[k].set(i, j, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// `Σ_k elements[k] · mats[k]` for Artin scalars and ground-field matrices.
    pub fn linear_combination(
        alg: &Arc<ArtinAlgebra>,
        elements: &[ArtinElement<F>],
        mats: &[Matrix<F>],
    ) -> Result<Self, ExactError> {
        let (rows, cols) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut out = Self::zeros(alg, rows, cols);
        for (e, m) in elements.iter().zip(mats) {
            if !same_algebra(e.algebra(), alg) {
                return Err(ExactError::AlgebraMismatch);
            }
            for (k, c) in e.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.layers[k] = &out.layers[k] + &m.scale(c);
                }
            }
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Coefficient matrix of the monomial with the given index.
    pub fn layer(&self, idx: usize) -> &Matrix<F> {
        &self.layers[idx]
    }

    pub fn constant_part(&self) -> &Matrix<F> {
        &self.layers[0]
    }

    pub fn entry(&self, i: usize, j: usize) -> ArtinElement<F> {
        ArtinElement { alg: self.alg.clone(), coeffs: self.layers.iter().map(|l| l.get(i, j).clone()).collect() }
    }

    pub fn in_maximal_ideal(&self) -> bool {
        self.layers[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(|l| l.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.layers[0].is_identity() && self.layers[1..].iter().all(|l| l.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        ArtinMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            layers: self.layers.iter().map(|l| l.scale(c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(ExactError::AlgebraMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ExactError::Dimension("Artin matrix sum shape mismatch".into()));
        }
        Ok(ArtinMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            layers: self.layers.iter().zip(&other.layers).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(ExactError::AlgebraMismatch);
        }
        if self.cols != other.rows {
            return Err(ExactError::Dimension("Artin matrix product shape mismatch".into()));
        }
        let alg = &self.alg;
        let mut out = Self::zeros(alg, self.rows, other.cols);
        let nz_a: Vec<usize> = (0..alg.dim()).filter(|&k| !self.layers[k].is_zero()).collect();
        let nz_b: Vec<usize> = (0..alg.dim()).filter(|&k| !other.layers[k].is_zero()).collect();
        for &a in &nz_a {
            let da = alg.monomial_degree(a);
            for &b in &nz_b {
                if da + alg.monomial_degree(b) >= alg.order() {
                    continue;
                }
                if let Some(k) = alg.product_index(a, b) {
                    let p = &self.layers[a] * &other.layers[b];
                    out.layers[k] = &out.layers[k] + &p;
                }
            }
        }
        Ok(out)
    }

    /// Multiply on the left by a ground-field matrix.
    pub fn left_mul_constant(&self, m: &Matrix<F>) -> Self {
        ArtinMatrix {
            alg: self.alg.clone(),
            rows: m.rows(),
            cols: self.cols,
            layers: self.layers.iter().map(|l| m * l).collect(),
        }
    }

    /// Multiply on the right by a ground-field matrix.
    pub fn right_mul_constant(&self, m: &Matrix<F>) -> Self {
        ArtinMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: m.cols(),
            layers: self.layers.iter().map(|l| l * m).collect(),
        }
    }

    /// `Σ_{k≥0} M^k/k!`, a finite sum because every entry lies in `𝔪`.
    pub fn exp_truncated(&self) -> Result<Self, ExactError> {
        if !self.in_maximal_ideal() {
            return Err(ExactError::NotNilpotent("exp needs entries in the maximal ideal".into()));
        }
        if self.rows != self.cols {
            return Err(ExactError::Dimension("exp needs a square matrix".into()));
        }
        let mut result = Self::identity(&self.alg, self.rows);
        let mut term = result.clone();
        for k in 1..self.alg.order() {
            term = term.try_mul(self)?.scale(&F::from_rational(&Rational::new(1.into(), (k as i64).into())));
            if term.is_zero() {
                break;
            }
            result = result.try_add(&term)?;
        }
        Ok(result)
    }

    /// `Σ_{k≥1} (−1)^{k+1} (U−I)^k/k` for `U ≡ I` modulo `𝔪`.
    pub fn log_truncated(&self) -> Result<Self, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::Dimension("log needs a square matrix".into()));
        }
        let n = self.try_add(&Self::identity(&self.alg, self.rows).scale(&-F::one()))?;
        if !n.in_maximal_ideal() {
            return Err(ExactError::NotNilpotent("log needs a matrix congruent to the identity".into()));
        }
        let mut result = Self::zeros(&self.alg, self.rows, self.cols);
        let mut power = n.clone();
        for k in 1..self.alg.order() {
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.try_add(&power.scale(&F::from_rational(&Rational::new(sign.into(), (k as i64).into()))))?;
            power = power.try_mul(&n)?;
        }
        Ok(result)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> ArtinMatrix<G> {
        ArtinMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            layers: self.layers.iter().map(|l| l.map(f)).collect(),
        }
    }
}

/// Free function form of [`ArtinMatrix::exp_truncated`].
pub fn matrix_exp_truncated<F: Field>(m: &ArtinMatrix<F>) -> Result<ArtinMatrix<F>, ExactError> {
    m.exp_truncated()
}

/// Free function form of [`ArtinMatrix::log_truncated`].
pub fn matrix_log_truncated<F: Field>(u: &ArtinMatrix<F>) -> Result<ArtinMatrix<F>, ExactError> {
    u.log_truncated()
}

impl<'a, F: Field> Mul<&'a ArtinMatrix<F>> for &'a ArtinMatrix<F> {
    type Output = ArtinMatrix<F>;
    fn mul(self, rhs: &'a ArtinMatrix<F>) -> ArtinMatrix<F> {
        self.try_mul(rhs).expect("Artin matrix product mismatch")
    }
}

impl<'a, F: Field> Add<&'a ArtinMatrix<F>> for &'a ArtinMatrix<F> {
    type Output = ArtinMatrix<F>;
    fn add(self, rhs: &'a ArtinMatrix<F>) -> ArtinMatrix<F> {
        self.try_add(rhs).expect("Artin matrix sum mismatch")
    }
}

impl<'a, F: Field> Sub<&'a ArtinMatrix<F>> for &'a ArtinMatrix<F> {
    type Output = ArtinMatrix<F>;
    fn sub(self, rhs: &'a ArtinMatrix<F>) -> ArtinMatrix<F> {
        self.try_add(&rhs.scale(&-F::one())).expect("Artin matrix sum mismatch")
    }
}
