//! Finite-dimensional bigraded DGLAs with dense differential and sparse structure constants.

use std::collections::{BTreeMap, BTreeSet};

use crate::exactalg::{Field, Matrix, Rational, Subspace};

use super::equivariant::{Augmentation, GroupAction};
use super::DglaError;

/// A basis vector tagged with cohomological degree and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
    pub weight: usize,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: usize, weight: usize) -> Self {
        BasisElement { name: name.into(), degree, weight }
    }
}

/// Sparse vector `Σ c_k e_k`.
pub type SparseVec = Vec<(usize, Rational)>;

/// `[e_i, e_j]` for every ordered pair with a nonzero bracket.
pub type BracketTable = BTreeMap<(usize, usize), SparseVec>;

#[derive(Clone, Debug)]
pub struct Wdgla {
    basis: Vec<BasisElement>,
    d: Matrix<Rational>,
    bracket: BracketTable,
    action: Option<GroupAction>,
    augmentation: Option<Augmentation>,
}

/// `(-1)^{ab}` as ±1.
pub fn koszul(a: usize, b: usize) -> i64 {
    if (a * b) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn add_sparse(table: &mut BracketTable, i: usize, j: usize, k: usize, c: Rational) {
    if Field::is_zero(&c) {
        return;
    }
    let entry = table.entry((i, j)).or_default();
    match entry.iter_mut().find(|(kk, _)| *kk == k) {
        Some((_, v)) => *v = v.clone() + c,
        None => entry.push((k, c)),
    }
    entry.retain(|(_, v)| !Field::is_zero(v));
    entry.sort_by_key(|(kk, _)| *kk);
    if entry.is_empty() {
        table.remove(&(i, j));
    }
}

/// Build a table from `(i, j, k, c)` entries meaning `[e_i, e_j] ∋ c·e_k`. When `fill_partners`
/// is set, every ordered pair not given explicitly receives the graded-antisymmetric partner
/// `[e_j, e_i] = −(−1)^{|i||j|}[e_i, e_j]`.
pub fn bracket_from_entries(
    basis: &[BasisElement],
    entries: &[(usize, usize, usize, Rational)],
    fill_partners: bool,
) -> BracketTable {
    let explicit: BTreeSet<(usize, usize)> = entries.iter().map(|e| (e.0, e.1)).collect();
    let mut table = BracketTable::new();
    for (i, j, k, c) in entries {
        add_sparse(&mut table, *i, *j, *k, c.clone());
        if fill_partners && i != j && !explicit.contains(&(*j, *i)) {
            let sign = -koszul(basis[*i].degree, basis[*j].degree);
            add_sparse(&mut table, *j, *i, *k, c * Rational::from_integer(sign.into()));
        }
    }
    table
}

/// Axiom failures found by [`check_dgla_axioms`].
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct AxiomReport {
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Solves `Σ c_k b_k = v` for a fixed independent family `b_k`.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    basis: Vec<Vec<Rational>>,
    rows: Vec<usize>,
    inverse: Matrix<Rational>,
}

impl Coordinatizer {
    pub fn new(ambient: usize, basis: &[Vec<Rational>]) -> Result<Self, DglaError> {
        let k = basis.len();
        if k == 0 {
            return Ok(Coordinatizer { basis: Vec::new(), rows: Vec::new(), inverse: Matrix::zeros(0, 0) });
        }
        let m = Matrix::from_columns(basis, ambient);
        let rows = m.transpose().rref().pivots;
        if rows.len() != k {
            return Err(DglaError::Invalid("vectors are linearly dependent".into()));
        }
        let square = Matrix::from_fn(k, k, |r, c| basis[c][rows[r]].clone());
        let inverse = square.inverse().expect("pivot rows give an invertible minor");
        Ok(Coordinatizer { basis: basis.to_vec(), rows, inverse })
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return if v.iter().all(Field::is_zero) { Some(Vec::new()) } else { None };
        }
        let rhs: Vec<Rational> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.inverse.mul_vec(&rhs);
        let mut back = vec![Rational::zero(); v.len()];
        for (ck, b) in c.iter().zip(&self.basis) {
            if !Field::is_zero(ck) {
                for (x, y) in back.iter_mut().zip(b) {
                    *x = x.clone() + ck * y;
                }
            }
        }
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }
}

/// Cohomology of one bigraded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyPiece {
    pub degree: usize,
    pub weight: usize,
    pub dim: usize,
    /// Canonical representatives (ambient coordinates) spanning a complement of the
    /// coboundaries inside the cocycles.
    pub representatives: Vec<Vec<Rational>>,
    pub cocycles: Subspace<Rational>,
    pub coboundaries: Subspace<Rational>,
}

impl Wdgla {
    pub fn new(basis: Vec<BasisElement>, d: Matrix<Rational>, bracket: BracketTable) -> Result<Self, DglaError> {
        let n = basis.len();
        if d.rows() != n || d.cols() != n {
            return Err(DglaError::Invalid(format!("differential must be {n}x{n}")));
        }
        for (k, b) in basis.iter().enumerate() {
            if basis[..k].iter().any(|o| o.name == b.name) {
                return Err(DglaError::Invalid(format!("duplicate basis name {:?}", b.name)));
            }
        }
        for (&(i, j), v) in &bracket {
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(DglaError::Invalid("bracket index out of range".into()));
            }
        }
        Ok(Wdgla { basis, d, bracket, action: None, augmentation: None })
    }

    /// Zero differential, zero bracket.
    pub fn abelian(basis: Vec<BasisElement>) -> Self {
        let n = basis.len();
        Wdgla::new(basis, Matrix::zeros(n, n), BracketTable::new()).expect("well-formed")
    }

    pub fn with_action(mut self, action: GroupAction) -> Result<Self, DglaError> {
        if action.dim() != self.dim() {
            return Err(DglaError::Invalid("action matrices have the wrong size".into()));
        }
        self.action = Some(action);
        Ok(self)
    }

    pub fn with_augmentation(mut self, aug: Augmentation) -> Result<Self, DglaError> {
        if aug.map().cols() != self.dim() {
            return Err(DglaError::Invalid("augmentation has the wrong number of columns".into()));
        }
        self.augmentation = Some(aug);
        Ok(self)
    }

    pub fn without_extras(&self) -> Self {
        Wdgla { action: None, augmentation: None, ..self.clone() }
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

    pub fn bracket_table(&self) -> &BracketTable {
        &self.bracket
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }

    pub fn augmentation(&self) -> Option<&Augmentation> {
        self.augmentation.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        self.bracket.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    /// Indices of the basis elements of the given bidegree.
    pub fn indices(&self, degree: usize, weight: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].degree == degree && self.basis[k].weight == weight).collect()
    }

    pub fn indices_of_degree(&self, degree: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].degree == degree).collect()
    }

    pub fn indices_of_weight(&self, weight: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].weight == weight).collect()
    }

    /// Occupied `(degree, weight)` pairs, sorted.
    pub fn bigrades(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self.basis.iter().map(|b| (b.degree, b.weight)).collect();
        set.into_iter().collect()
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn apply_d(&self, v: &[Rational]) -> Vec<Rational> {
        self.d.mul_vec(v)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (&(i, j), entries) in &self.bracket {
            let (a, b) = (&x[i], &y[j]);
            if Field::is_zero(a) || Field::is_zero(b) {
                continue;
            }
            let ab = a * b;
            for (k, c) in entries {
                out[*k] = out[*k].clone() + &ab * c;
            }
        }
        out
    }

    /// Degree of a nonzero homogeneous vector, or `None` when it mixes degrees.
    pub fn homogeneous_bigrade(&self, v: &[Rational]) -> Option<(usize, usize)> {
        let mut grade = None;
        for (k, c) in v.iter().enumerate() {
            if !Field::is_zero(c) {
                let g = (self.basis[k].degree, self.basis[k].weight);
                match grade {
                    None => grade = Some(g),
                    Some(h) if h == g => {}
                    Some(_) => return None,
                }
            }
        }
        grade
    }

    fn sub(&self, rows: &[usize], cols: &[usize]) -> Matrix<Rational> {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.d.get(rows[r], cols[c]).clone())
    }

    fn embed(&self, idx: &[usize], local: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (k, c) in idx.iter().zip(local) {
            v[*k] = c.clone();
        }
        v
    }

    /// `H^j_i` with canonical representatives.
    pub fn cohomology_piece(&self, degree: usize, weight: usize) -> CohomologyPiece {
        let here = self.indices(degree, weight);
        let above = self.indices(degree + 1, weight);
        let below = if degree == 0 { Vec::new() } else { self.indices(degree - 1, weight) };
        let n = self.dim();
        let cocycle_vecs: Vec<Vec<Rational>> = if above.is_empty() {
            (0..here.len()).map(|k| self.embed(&here, &unit_vec(here.len(), k))).collect()
        } else {
            self.sub(&above, &here).kernel().iter().map(|v| self.embed(&here, v)).collect()
        };
        let cocycles = Subspace::from_spanning(n, &cocycle_vecs);
        let coboundary_vecs: Vec<Vec<Rational>> = below.iter().map(|&b| self.d.column(b)).collect();
        let coboundaries = Subspace::from_spanning(n, &coboundary_vecs);
        let reduced: Vec<Vec<Rational>> = cocycles.basis().iter().map(|z| coboundaries.reduce(z)).collect();
        let reps = Subspace::from_spanning(n, &reduced);
        CohomologyPiece {
            degree,
            weight,
            dim: reps.dim(),
            representatives: reps.basis().to_vec(),
            cocycles,
            coboundaries,
        }
    }

    /// All nonzero-space bigrades with their cohomology, including degrees just above the top.
    pub fn cohomology(&self) -> Vec<CohomologyPiece> {
        self.bigrades().into_iter().map(|(j, i)| self.cohomology_piece(j, i)).collect()
    }

    /// Total `dim H^j`.
    pub fn cohomology_dim(&self, degree: usize) -> usize {
        self.bigrades().into_iter().filter(|g| g.0 == degree).map(|(j, i)| self.cohomology_piece(j, i).dim).sum()
    }

    /// Cocycles and coboundaries of total degree `j`.
    pub fn cocycles_and_coboundaries(&self, degree: usize) -> (Subspace<Rational>, Subspace<Rational>) {
        let n = self.dim();
        let mut z = Subspace::zero(n);
        let mut b = Subspace::zero(n);
        for (j, i) in self.bigrades() {
            if j == degree {
                let piece = self.cohomology_piece(j, i);
                z = z.sum(&piece.cocycles).expect("same ambient");
                b = b.sum(&piece.coboundaries).expect("same ambient");
            }
        }
        (z, b)
    }

    /// Sub-DGLA spanned by homogeneous, independent vectors; also returns the inclusion
    /// (columns are the given vectors).
    pub fn subalgebra(&self, vectors: &[Vec<Rational>], names: Vec<String>) -> Result<(Wdgla, Matrix<Rational>), DglaError> {
        let n = self.dim();
        let mut basis = Vec::with_capacity(vectors.len());
        for (v, name) in vectors.iter().zip(names) {
            let (degree, weight) = self
                .homogeneous_bigrade(v)
                .ok_or_else(|| DglaError::Invalid(format!("vector for {name} is zero or not bigraded-homogeneous")))?;
            basis.push(BasisElement { name, degree, weight });
        }
        let coords = Coordinatizer::new(n, vectors)?;
        let k = vectors.len();
        let mut d = Matrix::zeros(k, k);
        for (c, v) in vectors.iter().enumerate() {
            let dv = coords
                .coordinates(&self.apply_d(v))
                .ok_or_else(|| DglaError::NotClosed(format!("d({}) leaves the subspace", basis[c].name)))?;
            for (r, x) in dv.into_iter().enumerate() {
                d.set(r, c, x);
            }
        }
        let mut table = BracketTable::new();
        for a in 0..k {
            for b in 0..k {
                let br = self.bracket(&vectors[a], &vectors[b]);
                if br.iter().all(Field::is_zero) {
                    continue;
                }
                let c = coords.coordinates(&br).ok_or_else(|| {
                    DglaError::NotClosed(format!("[{}, {}] leaves the subspace", basis[a].name, basis[b].name))
                })?;
                for (t, x) in c.into_iter().enumerate() {
                    add_sparse(&mut table, a, b, t, x);
                }
            }
        }
        let inclusion = Matrix::from_columns(vectors, n);
        Ok((Wdgla::new(basis, d, table)?, inclusion))
    }

    /// Quotient by a bigraded ideal; the quotient basis is the set of coordinates complementary
    /// to the ideal's echelon pivots, and the projection reduces modulo the ideal.
    pub fn quotient(&self, ideal: &Subspace<Rational>) -> Result<(Wdgla, Matrix<Rational>), DglaError> {
        let n = self.dim();
        let mut graded_dim = 0;
        for (j, i) in self.bigrades() {
            let block = Subspace::coordinate(n, &self.indices(j, i));
            graded_dim += block.intersect(ideal)?.dim();
        }
        if graded_dim != ideal.dim() {
            return Err(DglaError::Invalid("ideal is not bigraded".into()));
        }
        for v in ideal.basis() {
            if !ideal.contains(&self.apply_d(v)) {
                return Err(DglaError::NotClosed("ideal is not stable under d".into()));
            }
            for k in 0..n {
                if !ideal.contains(&self.bracket(&self.unit(k), v)) {
                    return Err(DglaError::NotClosed(format!("[{}, I] leaves the ideal", self.basis[k].name)));
                }
            }
        }
        let keep = ideal.complement_coordinates();
        let project = |v: &[Rational]| -> Vec<Rational> {
            let r = ideal.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let q = keep.len();
        let mut pi = Matrix::zeros(q, n);
        for k in 0..n {
            for (r, x) in project(&self.unit(k)).into_iter().enumerate() {
                pi.set(r, k, x);
            }
        }
        let basis: Vec<BasisElement> = keep.iter().map(|&k| self.basis[k].clone()).collect();
        let mut d = Matrix::zeros(q, q);
        for (c, &k) in keep.iter().enumerate() {
            for (r, x) in project(&self.d.column(k)).into_iter().enumerate() {
                d.set(r, c, x);
            }
        }
        let mut table = BracketTable::new();
        for (a, &ka) in keep.iter().enumerate() {
            for (b, &kb) in keep.iter().enumerate() {
                if self.basis_bracket(ka, kb).is_empty() {
                    continue;
                }
                let br = self.bracket(&self.unit(ka), &self.unit(kb));
                for (t, x) in project(&br).into_iter().enumerate() {
                    add_sparse(&mut table, a, b, t, x);
                }
            }
        }
        Ok((Wdgla::new(basis, d, table)?, pi))
    }
}

fn unit_vec(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

/// Verify `d² = 0`, bigrading of `d` and bracket, graded antisymmetry, graded Jacobi, graded
/// Leibniz, and (when present) that the action is by automorphisms and the augmentation is a
/// Lie homomorphism on degree 0.
pub fn check_dgla_axioms(l: &Wdgla) -> AxiomReport {
    let n = l.dim();
    let mut v = Vec::new();
    let name = |k: usize| l.basis[k].name.clone();
    let dd = &l.d * &l.d;
    if !dd.is_zero() {
        let col = (0..n).find(|&c| dd.column(c).iter().any(|x| !Field::is_zero(x))).unwrap_or(0);
        v.push(format!("d^2 != 0: d(d({})) is nonzero", name(col)));
    }
    for c in 0..n {
        for r in 0..n {
            if !Field::is_zero(l.d.get(r, c))
                && (l.basis[r].degree != l.basis[c].degree + 1 || l.basis[r].weight != l.basis[c].weight)
            {
                v.push(format!("d({}) has a component on {} of the wrong bidegree", name(c), name(r)));
            }
        }
    }
    for (&(i, j), entries) in &l.bracket {
        for (k, _) in entries {
            if l.basis[*k].degree != l.basis[i].degree + l.basis[j].degree
                || l.basis[*k].weight != l.basis[i].weight + l.basis[j].weight
            {
                v.push(format!("[{}, {}] has a component on {} of the wrong bidegree", name(i), name(j), name(*k)));
            }
        }
    }
    let deg = |k: usize| l.basis[k].degree;
    let sparse_to_dense = |s: &[(usize, Rational)]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (k, c) in s {
            out[*k] = c.clone();
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            let a = sparse_to_dense(l.basis_bracket(i, j));
            let b = sparse_to_dense(l.basis_bracket(j, i));
            let s = Rational::from_integer(koszul(deg(i), deg(j)).into());
            if a.iter().zip(&b).any(|(x, y)| !Field::is_zero(&(x + &s * y))) {
                v.push(format!("graded antisymmetry fails for ({}, {})", name(i), name(j)));
            }
        }
    }
    let units: Vec<Vec<Rational>> = (0..n).map(|k| l.unit(k)).collect();
    let nonzero_left: BTreeSet<usize> = l.bracket.keys().map(|k| k.0).collect();
    for i in 0..n {
        if !nonzero_left.contains(&i) {
            continue;
        }
        for j in 0..n {
            let xy = l.bracket(&units[i], &units[j]);
            for k in 0..n {
                // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                let lhs = l.bracket(&units[i], &l.bracket(&units[j], &units[k]));
                let r1 = l.bracket(&xy, &units[k]);
                let r2 = l.bracket(&units[j], &l.bracket(&units[i], &units[k]));
                let s = Rational::from_integer(koszul(deg(i), deg(j)).into());
                if lhs.iter().zip(&r1).zip(&r2).any(|((a, b), c)| !Field::is_zero(&(a - b - &s * c))) {
                    v.push(format!("graded Jacobi fails for ({}, {}, {})", name(i), name(j), name(k)));
                }
            }
        }
    }
    for i in 0..n {
        let di = l.apply_d(&units[i]);
        for j in 0..n {
            // d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
            let lhs = l.apply_d(&l.bracket(&units[i], &units[j]));
            let r1 = l.bracket(&di, &units[j]);
            let r2 = l.bracket(&units[i], &l.apply_d(&units[j]));
            let s = Rational::from_integer(if deg(i) % 2 == 0 { 1 } else { -1 }.into());
            if lhs.iter().zip(&r1).zip(&r2).any(|((a, b), c)| !Field::is_zero(&(a - b - &s * c))) {
                v.push(format!("graded Leibniz fails for ({}, {})", name(i), name(j)));
            }
        }
    }
    if let Some(action) = &l.action {
        v.extend(action.automorphism_violations(l));
    }
    if let Some(aug) = &l.augmentation {
        v.extend(aug.violations(l));
    }
    AxiomReport { violations: v }
}
