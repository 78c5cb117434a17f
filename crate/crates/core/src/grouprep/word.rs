//! Words in a free group and the integral group ring, with Fox derivatives.

use std::collections::BTreeMap;
use std::fmt;

/// One letter `g^{±1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be ±1");
        Letter { generator, inverse: exponent < 0 }
    }

    pub fn exponent(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word in the generators; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Build from `(generator, ±1)` pairs.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        Word { letters: pairs.iter().map(|&(g, e)| Letter::new(g, e)).collect() }
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![Letter::new(g, 1)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancel adjacent `g g^{-1}` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }.free_reduce()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Render with generator names, e.g. `a b a^-1 b^-1`; the identity prints as `1`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(l.generator).map_or_else(|| format!("g{}", l.generator), |s| s.clone());
            if l.inverse {
                write!(f, "{name}^-1")?;
            } else {
                write!(f, "{name}")?;
            }
        }
        Ok(())
    }
}

/// Formal integer combination of freely reduced words: an element of `ℤ[F]`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: &Word, coeff: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, coeff);
        e
    }

    pub fn add_term(&mut self, w: &Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let w = w.free_reduce();
        let entry = self.terms.entry(w.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(&u.mul(v), a * b);
            }
        }
        out
    }

    /// Augmentation `ℤ[F] → ℤ`: sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let abs = c.abs();
            let ws = w.display_with(names).to_string();
            if abs == 1 {
                out.push_str(&ws);
            } else if w.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{abs}*({ws})"));
            }
        }
        out
    }
}

/// Left Fox derivative `∂w/∂g`.
///
/// Satisfies `∂(uv)/∂g = ∂u/∂g + u·∂v/∂g`, `∂g/∂g = 1` and `∂(g⁻¹)/∂g = −g⁻¹`.
pub fn fox_derivative(w: &Word, g: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.inverse {
            prefix = prefix.mul(&Word::from_letters(vec![l]));
            if l.generator == g {
                out.add_term(&prefix, -1);
            }
        } else {
            if l.generator == g {
                out.add_term(&prefix, 1);
            }
            prefix = prefix.mul(&Word::from_letters(vec![l]));
        }
    }
    out
}
