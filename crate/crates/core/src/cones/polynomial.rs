//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactalg::{ArtinAlgebra, ArtinElement, ExactError, Field};

/// Exponent vector.
pub type Monomial = Vec<u32>;

/// Degree-lex comparison: higher total degree first, then lexicographically larger first.
pub fn deglex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(exps: Monomial, c: F) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Monomial, c: F) {
        assert_eq!(exps.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in degree-lex order, leading term first.
    pub fn terms(&self) -> Vec<(&Monomial, &F)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| deglex_desc(a.0, b.0));
        t
    }

    pub fn coefficient(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.terms().first().map(|(_, c)| *c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn weighted_degree_of(exps: &[u32], weights: &[u32]) -> u32 {
        exps.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(m, x.clone() * y.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, F::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Replace variable `j` by `subs[j]`, a polynomial in `subs[j].nvars()` variables.
    pub fn substitute(&self, subs: &[Polynomial<F>], target_nvars: usize) -> Self {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let mut out = Self::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target_nvars, c.clone());
            for (j, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&subs[j].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at scalars.
    pub fn evaluate(&self, values: &[F]) -> F {
        let mut out = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(m) {
                for _ in 0..e {
                    t = t * v.clone();
                }
            }
            out = out + t;
        }
        out
    }

    /// Evaluate at elements of an Artin algebra.
    pub fn evaluate_artin(
        &self,
        alg: &Arc<ArtinAlgebra>,
        values: &[ArtinElement<F>],
    ) -> Result<ArtinElement<F>, ExactError> {
        if values.len() != self.nvars {
            return Err(ExactError::Dimension(format!("{} values for {} variables", values.len(), self.nvars)));
        }
        let mut out = ArtinElement::zero(alg);
        for (m, c) in &self.terms {
            let mut t = ArtinElement::constant(alg, c.clone());
            for (v, &e) in values.iter().zip(m) {
                if e > 0 {
                    t = t.try_mul(&v.pow(e))?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Render with variable names, leading term first, e.g. `x^2 - 2*x*y + 1/2*y^2`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative_for_display();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { names[j].clone() } else { format!("{}^{}", names[j], e) })
                .collect();
            let coeff = match abs.to_string() {
                s if s == "1*i" => "i".to_string(),
                s => s,
            };
            let coeff = if coeff.contains(['+', '-']) { format!("({coeff})") } else { coeff };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Parse an expression in the named variables using `+ - * / ^ ( )`, numeric literals and,
    /// over a field containing it, the imaginary unit `i` (when `i` is not a variable name).
    pub fn parse(text: &str, names: &[String]) -> Result<Self, ExactError> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0, names, text };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExactError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push((start, Tok::Num(chars[start..k].iter().collect())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((start, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ExactError::Parse(format!("unexpected character {c:?} at column {} in {text:?}", k + 1)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
    text: &'a str,
}

impl<F: Field> Polynomial<F> {
    fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ExactError {
        let col = self.tokens.get(self.pos).map_or(self.text.chars().count(), |t| t.0) + 1;
        ExactError::Parse(format!("{msg} at column {col} in {:?}", self.text))
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.tokens.get(self.pos), Some((_, Tok::Sym(s))) if *s == c)
    }

    fn expr<F: Field>(&mut self) -> Result<Polynomial<F>, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?);
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<Polynomial<F>, ExactError> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                acc = acc.mul(&self.unary()?);
            } else if self.peek_sym('/') {
                self.pos += 1;
                let d = self.unary()?;
                let c = d.as_constant().filter(|c: &F| !c.is_zero()).ok_or_else(|| self.error("division by a non-constant or zero"))?;
                acc = acc.scale(&c.inv().expect("nonzero"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<F: Field>(&mut self) -> Result<Polynomial<F>, ExactError> {
        if self.peek_sym('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek_sym('+') {
            self.pos += 1;
            return self.unary();
        }
        let base = self.atom()?;
        if self.peek_sym('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some((_, Tok::Num(n))) => {
                    let e: u32 = n.parse().map_err(|_| self.error("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.error("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom<F: Field>(&mut self) -> Result<Polynomial<F>, ExactError> {
        let n = self.names.len();
        let tok = self.tokens.get(self.pos).cloned();
        match tok {
            Some((_, Tok::Num(s))) => {
                self.pos += 1;
                Ok(Polynomial::constant(n, F::parse_scalar(&s)?))
            }
            Some((_, Tok::Ident(id))) => {
                if let Some(j) = self.names.iter().position(|x| *x == id) {
                    self.pos += 1;
                    return Ok(Polynomial::variable(n, j));
                }
                if id == "i" {
                    if let Some(unit) = F::imaginary_unit() {
                        self.pos += 1;
                        return Ok(Polynomial::constant(n, unit));
                    }
                }
                Err(self.error(&format!("unknown variable {id:?}")))
            }
            Some((_, Tok::Sym('('))) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, qi, GaussianRational, Rational};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let n = names(&["x", "y"]);
        let p: Polynomial<Rational> = Polynomial::parse("(x - y)^2 + 1/2*y*y - 3", &n).unwrap();
        assert_eq!(p.display_with(&n), "x^2 - 2*x*y + 3/2*y^2 - 3");
        let again: Polynomial<Rational> = Polynomial::parse(&p.display_with(&n), &n).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn gaussian_coefficients() {
        let n = names(&["X"]);
        let p: Polynomial<GaussianRational> = Polynomial::parse("(1+2*i)*X^2 - i*X", &n).unwrap();
        assert_eq!(p.display_with(&n), "(1+2*i)*X^2 - i*X");
        assert!(Polynomial::<Rational>::parse("i*X", &n).is_err());
    }

    #[test]
    fn parse_errors() {
        let n = names(&["x"]);
        assert!(Polynomial::<Rational>::parse("x +", &n).is_err());
        assert!(Polynomial::<Rational>::parse("x / x", &n).is_err());
        assert!(Polynomial::<Rational>::parse("y", &n).is_err());
        assert!(Polynomial::<Rational>::parse("x $ 2", &n).is_err());
    }

    #[test]
    fn evaluate_over_artin() {
        let n = names(&["x", "y"]);
        let p: Polynomial<Rational> = Polynomial::parse("x*y", &n).unwrap();
        let a3 = ArtinAlgebra::univariate(3).unwrap();
        let t = ArtinElement::variable(&a3, 0);
        assert!(!p.evaluate_artin(&a3, &[t.clone(), t]).unwrap().is_zero());
        let a2 = ArtinAlgebra::univariate(2).unwrap();
        let t = ArtinElement::variable(&a2, 0);
        assert!(p.evaluate_artin(&a2, &[t.clone(), t]).unwrap().is_zero());
        assert_eq!(p.evaluate(&[qi(3), q(1, 2)]), q(3, 2));
    }

    #[test]
    fn substitution() {
        let n = names(&["x"]);
        let p: Polynomial<Rational> = Polynomial::parse("x^2", &n).unwrap();
        let sub = Polynomial::parse("a + b", &names(&["a", "b"])).unwrap();
        assert_eq!(p.substitute(&[sub], 2).display_with(&names(&["a", "b"])), "a^2 + 2*a*b + b^2");
    }
}
