//! Seeded sample algebras: tensor DGLAs with Maurer-Cartan samplers, equivariant instances,
//! weight-conforming two-step algebras for truncation, and truncated `Q`-algebras.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{ArtinAlgebra, ArtinElement, Field, Matrix, Rational};
use crate::grouprep::{LieAlgebra, LinearGroupData};

use super::algebra::{add_sparse, bracket_from_entries, BasisElement, BracketTable, Wdgla};
use super::equivariant::GroupAction;
use super::mc::{gauge, ArtinVec};
use super::tensor::{exterior_action, kronecker, tensor_dgla, GradedAlgebra};
use super::DglaError;

fn int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    Rational::from_integer(rng.gen_range(lo..=hi).into())
}

/// `Σ_{1≤k<order} c_k t^k` with `c_k ∈ [−2, 2]`.
pub fn random_m_element(rng: &mut ChaCha8Rng, alg: &Arc<ArtinAlgebra>) -> ArtinElement<Rational> {
    let mut coeffs = vec![Rational::zero(); alg.order()];
    for c in coeffs.iter_mut().skip(1) {
        *c = int(rng, -2, 2);
    }
    ArtinElement::from_univariate(alg, &coeffs)
}

/// `A ⊗ 𝔤` together with its factors.
#[derive(Clone, Debug)]
pub struct TensorFixture {
    pub name: String,
    pub algebra: GradedAlgebra,
    pub lie: LieAlgebra,
    pub dgla: Wdgla,
}

impl TensorFixture {
    pub fn new(name: &str, algebra: GradedAlgebra, lie: LieAlgebra) -> Result<Self, DglaError> {
        let dgla = tensor_dgla(&algebra, &lie)?;
        Ok(TensorFixture { name: name.into(), algebra, lie, dgla })
    }

    /// Random element of `L⁰⊗𝔪`.
    pub fn random_alpha(&self, rng: &mut ChaCha8Rng, alg: &Arc<ArtinAlgebra>) -> ArtinVec {
        let l = &self.dgla;
        (0..l.dim())
            .map(|k| if l.basis()[k].degree == 0 { random_m_element(rng, alg) } else { ArtinElement::zero(alg) })
            .collect()
    }

    /// A Maurer-Cartan element: `Σ_a a⊗(p_a(t)·u)` over closed `a ∈ A¹` for one `u ∈ 𝔤` (its
    /// bracket vanishes since `[u,u] = 0`), moved by a random gauge transformation.
    pub fn random_mc(&self, rng: &mut ChaCha8Rng, alg: &Arc<ArtinAlgebra>) -> Result<ArtinVec, DglaError> {
        let a = &self.algebra;
        let ng = self.lie.dim();
        let deg1: Vec<usize> = (0..a.dim()).filter(|&k| a.basis()[k].degree == 1).collect();
        let deg2: Vec<usize> = (0..a.dim()).filter(|&k| a.basis()[k].degree == 2).collect();
        let dres = Matrix::from_fn(deg2.len(), deg1.len(), |r, c| a.differential().get(deg2[r], deg1[c]).clone());
        let closed: Vec<Vec<Rational>> = if deg2.is_empty() {
            (0..deg1.len()).map(|c| (0..deg1.len()).map(|r| if r == c { Rational::one() } else { Rational::zero() }).collect()).collect()
        } else {
            dres.kernel()
        };
        let u: Vec<Rational> = (0..ng).map(|_| int(rng, -1, 1)).collect();
        let mut eta = self.dgla.zero_artin(alg);
        for z in &closed {
            let p = random_m_element(rng, alg);
            for (c, &ai) in z.iter().zip(&deg1) {
                if Field::is_zero(c) {
                    continue;
                }
                for (k, uk) in u.iter().enumerate() {
                    if !Field::is_zero(uk) {
                        let idx = ai * ng + k;
                        eta[idx] = &eta[idx] + &p.scale(&(c * uk));
                    }
                }
            }
        }
        let alpha = self.random_alpha(rng, alg);
        gauge(&self.dgla, &alpha, &eta)
    }
}

/// Torus, interval and three-torus models tensored with `sl₂`, and the torus with `gl₂`.
pub fn tensor_fixtures() -> Vec<TensorFixture> {
    let sl2 = LinearGroupData::sl(2).lie_algebra().clone();
    let gl2 = LinearGroupData::gl(2).lie_algebra().clone();
    let torus = GradedAlgebra::exterior(&[("x", 1), ("y", 1)]);
    vec![
        TensorFixture::new("torus-sl2", torus.clone(), sl2.clone()).expect("valid"),
        TensorFixture::new("interval-sl2", GradedAlgebra::interval(), sl2.clone()).expect("valid"),
        TensorFixture::new("three-torus-sl2", GradedAlgebra::exterior(&[("x", 1), ("y", 1), ("z", 1)]), sl2).expect("valid"),
        TensorFixture::new("torus-gl2", torus, gl2).expect("valid"),
    ]
}

/// Conjugate every structure by a block-diagonal change of coordinates `x ↦ T x`.
pub fn change_basis(l: &Wdgla, t: &Matrix<Rational>) -> Result<Wdgla, DglaError> {
    let ti = t.inverse().ok_or_else(|| DglaError::Invalid("change of basis is singular".into()))?;
    let n = l.dim();
    let d = &(t * l.differential()) * &ti;
    let back: Vec<Vec<Rational>> = (0..n).map(|k| ti.column(k)).collect();
    let mut table = BracketTable::new();
    for i in 0..n {
        for j in 0..n {
            let br = t.mul_vec(&l.bracket(&back[i], &back[j]));
            for (k, c) in br.into_iter().enumerate() {
                add_sparse(&mut table, i, j, k, c);
            }
        }
    }
    let mut out = Wdgla::new(l.basis().to_vec(), d, table)?;
    if let Some(a) = l.action() {
        let gens = a.generators().iter().map(|g| &(t * g) * &ti).collect();
        out = out.with_action(GroupAction::new(a.names().to_vec(), gens, None)?)?;
    }
    Ok(out)
}

/// Random invertible `T` preserving every bigraded block: unipotent lower times upper factors.
pub fn random_block_basis_change(l: &Wdgla, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let n = l.dim();
    let mut t = Matrix::identity(n);
    for (j, i) in l.bigrades() {
        let idx = l.indices(j, i);
        let m = idx.len();
        let lower = Matrix::from_fn(m, m, |r, c| if r == c { Rational::one() } else if r > c { int(rng, -1, 1) } else { Rational::zero() });
        let upper = Matrix::from_fn(m, m, |r, c| if r == c { Rational::one() } else if r < c { int(rng, -1, 1) } else { Rational::zero() });
        let block = &lower * &upper;
        for (a, &ra) in idx.iter().enumerate() {
            for (b, &cb) in idx.iter().enumerate() {
                t.set(ra, cb, block.get(a, b).clone());
            }
        }
    }
    t
}

fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
    let n = rows[0].len();
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(), n)
        .expect("rectangular")
}

/// Generators of `ℤ/2`, `ℤ/3` or `S₃` acting on `ℚ²`.
pub fn group_generators(kind: usize) -> (&'static str, Vec<Matrix<Rational>>) {
    let r3 = mat(&[&[0, -1], &[1, -1]]);
    match kind % 3 {
        0 => ("Z/2", vec![mat(&[&[1, 0], &[0, -1]])]),
        1 => ("Z/3", vec![r3]),
        _ => ("S3", vec![r3, mat(&[&[0, 1], &[1, 0]])]),
    }
}

fn adjoint_sl2(gamma: &Matrix<Rational>) -> Matrix<Rational> {
    let g = LinearGroupData::sl(2);
    let gi = gamma.inverse().expect("invertible");
    let cols: Vec<Vec<Rational>> =
        g.basis().iter().map(|b| g.coordinates(&(&(gamma * b) * &gi)).expect("sl2 is Ad-stable")).collect();
    Matrix::from_columns(&cols, 3)
}

fn block_diag(blocks: &[Matrix<Rational>]) -> Matrix<Rational> {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = Matrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        m.set_block(at, at, b);
        at += b.rows();
    }
    m
}

/// `Λ(x,y)⊗sl₂` with the diagonal action of `Φ ∈ {ℤ/2, ℤ/3, S₃}` (on `x, y` and by `Ad` on
/// `sl₂`), plus one or two abelian two-term pieces `V⊗(ℚ^{m₁} → ℚ^{m₂})` for `V` the standard,
/// trivial or sign representation, all conjugated by a random bigraded change of basis.
pub fn equivariant_instance(seed: u64) -> (String, Wdgla) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (gname, gens) = group_generators(rng.gen_range(0..3));
    let sl2 = LinearGroupData::sl(2).lie_algebra().clone();
    let torus = GradedAlgebra::exterior(&[("x", 1), ("y", 1)]);
    let main = tensor_dgla(&torus, &sl2).expect("valid");
    let mut basis = main.basis().to_vec();
    let mut d_blocks = vec![main.differential().clone()];
    let mut action_blocks: Vec<Vec<Matrix<Rational>>> =
        vec![gens.iter().map(|g| kronecker(&exterior_action(g), &adjoint_sl2(g))).collect()];
    let pieces = rng.gen_range(1..=2);
    for p in 0..pieces {
        let rep: Vec<Matrix<Rational>> = match rng.gen_range(0..3) {
            0 => gens.clone(),
            1 => gens.iter().map(|_| Matrix::identity(1)).collect(),
            _ => gens.iter().map(|g| Matrix::from_fn(1, 1, |_, _| super::tensor::determinant(g))).collect(),
        };
        let v = rep[0].rows();
        let degree = rng.gen_range(0..=1);
        let weight = rng.gen_range(1..=3);
        let (m1, m2) = (rng.gen_range(1..=2), rng.gen_range(0..=2));
        let mut names = Vec::new();
        for (deg, m) in [(degree, m1), (degree + 1, m2)] {
            for a in 0..v {
                for b in 0..m {
                    names.push(BasisElement::new(format!("k{}_{}_{}_{}", p + 1, deg, a + 1, b + 1), deg, weight));
                }
            }
        }
        basis.extend(names);
        let mm = Matrix::from_fn(m2, m1, |_, _| int(&mut rng, -1, 1));
        let size = v * (m1 + m2);
        let mut d = Matrix::zeros(size, size);
        if m2 > 0 {
            d.set_block(v * m1, 0, &kronecker(&Matrix::identity(v), &mm));
        }
        d_blocks.push(d);
        action_blocks.push(
            rep.iter()
                .map(|r| block_diag(&[kronecker(r, &Matrix::identity(m1)), kronecker(r, &Matrix::identity(m2))]))
                .collect(),
        );
    }
    let d = block_diag(&d_blocks);
    let table = main.bracket_table().clone();
    let gmats: Vec<Matrix<Rational>> = (0..gens.len())
        .map(|g| block_diag(&action_blocks.iter().map(|blocks| blocks[g].clone()).collect::<Vec<_>>()))
        .collect();
    let names = (1..=gmats.len()).map(|k| format!("g{k}")).collect();
    let l = Wdgla::new(basis, d, table)
        .expect("valid")
        .with_action(GroupAction::new(names, gmats, None).expect("finite"))
        .expect("sizes match");
    let t = random_block_basis_change(&l, &mut rng);
    (gname.to_string(), change_basis(&l, &t).expect("invertible"))
}

fn random_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(rows, cols, |_, _| int(rng, -2, 2));
        if m.rank() == rank {
            return m;
        }
    }
}

/// Bracket `L¹_a × L¹_b → L²_{a+b}`, symmetric, random sparse integer coefficients.
fn random_degree_one_bracket(basis: &[BasisElement], rng: &mut ChaCha8Rng) -> BracketTable {
    let mut entries = Vec::new();
    let n = basis.len();
    for i in 0..n {
        for j in i..n {
            if basis[i].degree != 1 || basis[j].degree != 1 {
                continue;
            }
            let w = basis[i].weight + basis[j].weight;
            for k in 0..n {
                if basis[k].degree == 2 && basis[k].weight == w && rng.gen_bool(0.6) {
                    let c = int(rng, -2, 2);
                    if !Field::is_zero(&c) {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
    }
    bracket_from_entries(basis, &entries, true)
}

/// Two-term algebra `L¹ → L²` with weights 1..6 meeting the weight axioms: `d` surjective in
/// weight 1, arbitrary in weight 2, injective in weights 3, 4 and bijective in weights 5, 6.
pub fn truncation_instance(seed: u64) -> Wdgla {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = Vec::new();
    let mut blocks = Vec::new();
    for w in 1..=6usize {
        let (a, b, rank) = match w {
            1 => {
                let a = rng.gen_range(0..=2);
                let b = rng.gen_range(0..=a);
                (a, b, b)
            }
            2 => {
                let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                (a, b, rng.gen_range(0..=a.min(b)))
            }
            3 | 4 => {
                let a = rng.gen_range(0..=2);
                (a, a + rng.gen_range(0..=1), a)
            }
            _ => {
                let a = rng.gen_range(0..=1);
                (a, a, a)
            }
        };
        let start = basis.len();
        basis.extend((1..=a).map(|k| BasisElement::new(format!("a{w}_{k}"), 1, w)));
        basis.extend((1..=b).map(|k| BasisElement::new(format!("b{w}_{k}"), 2, w)));
        blocks.push((start, a, b, random_rank(&mut rng, b, a, rank)));
    }
    let n = basis.len();
    let mut d = Matrix::zeros(n, n);
    for (start, a, _, m) in &blocks {
        d.set_block(start + a, *start, m);
    }
    let table = random_degree_one_bracket(&basis, &mut rng);
    Wdgla::new(basis, d, table).expect("valid")
}

/// Truncated algebra with `Q₁ = 0`: `Q₂¹` (2 or 3 dims) with a random `d` into `Q₂²`, `Q₃¹`
/// injecting into `Q₃²`, and a random symmetric bracket `Q₂¹ × Q₂¹ → Q₄²`. With `impure`, a
/// closed line at (degree 1, weight 1) is added.
pub fn q_instance(seed: u64, impure: bool) -> Wdgla {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = Vec::new();
    if impure {
        basis.push(BasisElement::new("p1", 1, 1));
    }
    let a2 = rng.gen_range(2..=3);
    let b2 = rng.gen_range(0..=1);
    let a3 = rng.gen_range(0..=1);
    let b3 = a3 + rng.gen_range(0..=1);
    let b4 = rng.gen_range(1..=2);
    let s2 = basis.len();
    basis.extend((1..=a2).map(|k| BasisElement::new(format!("x{k}"), 1, 2)));
    basis.extend((1..=b2).map(|k| BasisElement::new(format!("u{k}"), 2, 2)));
    let s3 = basis.len();
    basis.extend((1..=a3).map(|k| BasisElement::new(format!("y{k}"), 1, 3)));
    basis.extend((1..=b3).map(|k| BasisElement::new(format!("v{k}"), 2, 3)));
    basis.extend((1..=b4).map(|k| BasisElement::new(format!("z{k}"), 2, 4)));
    let n = basis.len();
    let mut d = Matrix::zeros(n, n);
    let rank2 = rng.gen_range(0..=b2.min(1));
    d.set_block(s2 + a2, s2, &random_rank(&mut rng, b2, a2, rank2));
    d.set_block(s3 + a3, s3, &random_rank(&mut rng, b3, a3, a3));
    let table = random_degree_one_bracket(&basis, &mut rng);
    Wdgla::new(basis, d, table).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::algebra::check_dgla_axioms;
    use crate::dgla::mc::is_mc;
    use crate::dgla::weights::check_weight_axioms;

    #[test]
    fn fixtures_are_dglas() {
        for f in tensor_fixtures() {
            assert!(check_dgla_axioms(&f.dgla).passed(), "{}", f.name);
        }
        for seed in 0..6 {
            let (_, l) = equivariant_instance(seed);
            let r = check_dgla_axioms(&l);
            assert!(r.passed(), "{seed}: {:?}", r.violations.first());
            assert!(check_dgla_axioms(&truncation_instance(seed)).passed());
            assert!(check_weight_axioms(&truncation_instance(seed), &LieAlgebra::zero()).passed());
            assert!(check_dgla_axioms(&q_instance(seed, false)).passed());
        }
    }

    #[test]
    fn sampled_mc_elements_are_mc() {
        let alg = ArtinAlgebra::univariate(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in tensor_fixtures() {
            let eta = f.random_mc(&mut rng, &alg).unwrap();
            assert!(is_mc(&f.dgla, &eta).unwrap(), "{}", f.name);
        }
    }
}
