//! Baker–Campbell–Hausdorff series via Dynkin's formula, truncated by bracket degree.
//!
//! Generic over any representation of a Lie algebra through [`LieOps`]; inside a
//! nilpotent algebra such as `L⁰ ⊗ 𝔪` the truncation is exact.

use num::{BigInt, One};

use super::field::Rational;

/// Linear and bracket operations needed to evaluate Lie series.
pub trait LieOps<T> {
    fn zero(&self) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn scale(&self, a: &T, c: &Rational) -> T;
    fn bracket(&self, a: &T, b: &T) -> T;
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `log(exp(x) exp(y))` through bracket degree `max_degree`.
pub fn bch<T: Clone, O: LieOps<T>>(x: &T, y: &T, max_degree: usize, ops: &O) -> T {
    let mut total = ops.zero();
    // each block is (r_i, s_i) with r_i + s_i >= 1
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    accumulate(x, y, max_degree, ops, &mut blocks, 0, &mut total);
    total
}

fn accumulate<T: Clone, O: LieOps<T>>(
    x: &T,
    y: &T,
    max_degree: usize,
    ops: &O,
    blocks: &mut Vec<(usize, usize)>,
    used: usize,
    total: &mut T,
) {
    if !blocks.is_empty() {
        let n = blocks.len();
        let denom: BigInt = blocks
            .iter()
            .fold(BigInt::from(used) * BigInt::from(n), |acc, &(r, s)| acc * factorial(r) * factorial(s));
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let coeff = Rational::new(BigInt::from(sign), denom);
        if let Some(term) = nested_bracket(x, y, blocks, ops) {
            *total = ops.add(total, &ops.scale(&term, &coeff));
        }
    }
    for r in 0..=(max_degree - used) {
        for s in 0..=(max_degree - used - r) {
            if r + s == 0 {
                continue;
            }
            blocks.push((r, s));
            accumulate(x, y, max_degree, ops, blocks, used + r + s, total);
            blocks.pop();
        }
    }
}

/// `[w_1, [w_2, ... [w_{m-1}, w_m]]]` for the word `x^{r1} y^{s1} ... x^{rn} y^{sn}`.
fn nested_bracket<T: Clone, O: LieOps<T>>(x: &T, y: &T, blocks: &[(usize, usize)], ops: &O) -> Option<T> {
    let mut word: Vec<bool> = Vec::new(); // true = x
    for &(r, s) in blocks {
        word.extend(std::iter::repeat(true).take(r));
        word.extend(std::iter::repeat(false).take(s));
    }
    let m = word.len();
    if m >= 2 && word[m - 1] == word[m - 2] {
        return None;
    }
    let letter = |b: bool| if b { x } else { y };
    let mut acc = letter(word[m - 1]).clone();
    for &b in word[..m - 1].iter().rev() {
        acc = ops.bracket(letter(b), &acc);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::artin::{ArtinAlgebra, ArtinElement, ArtinMatrix};
    use crate::exactalg::field::{qi, Field};
    use crate::exactalg::matrix::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    struct MatOps {
        alg: std::sync::Arc<ArtinAlgebra>,
        n: usize,
    }

    impl LieOps<ArtinMatrix<Rational>> for MatOps {
        fn zero(&self) -> ArtinMatrix<Rational> {
            ArtinMatrix::zeros(&self.alg, self.n, self.n)
        }
        fn add(&self, a: &ArtinMatrix<Rational>, b: &ArtinMatrix<Rational>) -> ArtinMatrix<Rational> {
            a + b
        }
        fn scale(&self, a: &ArtinMatrix<Rational>, c: &Rational) -> ArtinMatrix<Rational> {
            a.scale(c)
        }
        fn bracket(&self, a: &ArtinMatrix<Rational>, b: &ArtinMatrix<Rational>) -> ArtinMatrix<Rational> {
            &(a * b) - &(b * a)
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
        Matrix::from_fn(n, n, |_, _| qi(rng.gen_range(-3..=3)))
    }

    #[test]
    fn agrees_with_matrix_log_of_product() {
        // independent route: log(exp(tX) exp(tY)) computed with truncated matrix series
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for order in 2..=6 {
            let alg = ArtinAlgebra::univariate(order).unwrap();
            let t = ArtinElement::<Rational>::variable(&alg, 0);
            for _ in 0..3 {
                let x = ArtinMatrix::linear_combination(&alg, &[t.clone()], &[random_matrix(&mut rng, 3)]).unwrap();
                let y = ArtinMatrix::linear_combination(&alg, &[t.clone()], &[random_matrix(&mut rng, 3)]).unwrap();
                let ops = MatOps { alg: alg.clone(), n: 3 };
                let z = bch(&x, &y, order - 1, &ops);
                let direct = (&x.exp_truncated().unwrap() * &y.exp_truncated().unwrap()).log_truncated().unwrap();
                assert_eq!(z, direct, "order {order}");
            }
        }
    }

    #[test]
    fn low_degree_terms() {
        let alg = ArtinAlgebra::univariate(3).unwrap();
        let t = ArtinElement::<Rational>::variable(&alg, 0);
        let e = Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(0), qi(0)]], 2).unwrap();
        let f = e.transpose();
        let x = ArtinMatrix::linear_combination(&alg, &[t.clone()], &[e.clone()]).unwrap();
        let y = ArtinMatrix::linear_combination(&alg, &[t.clone()], &[f.clone()]).unwrap();
        let ops = MatOps { alg: alg.clone(), n: 2 };
        let z = bch(&x, &y, 2, &ops);
        let half = Rational::new(1.into(), 2.into());
        let expected = &(&x + &y) + &ops.bracket(&x, &y).scale(&half);
        assert_eq!(z, expected);
        assert!(Field::is_zero(&qi(0)));
    }
}
