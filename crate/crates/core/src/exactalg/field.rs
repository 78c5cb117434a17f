//! Exact scalar fields: the rationals and the Gaussian rationals.
//!
//! Both implement [`Field`], which is what every matrix, subspace, polynomial and
//! Artin-algebra type in the crate is generic over.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational number, always kept reduced with a positive denominator.
pub type Rational = BigRational;

/// Build `num/den` as a reduced rational. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `p`, `-p`, `p/q` (whitespace tolerated around the slash).
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || ExactError::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        None => BigInt::from_str(&s).map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// An exact field of characteristic zero.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;
    /// Complex conjugation; the identity on a real field.
    fn conj(&self) -> Self;
    /// A square root of −1 when the field has one.
    fn imaginary_unit() -> Option<Self>;
    fn parse_scalar(text: &str) -> Result<Self, ExactError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&qi(n))
    }

    /// `self / other`; panics when `other` is zero.
    fn div_by(&self, other: &Self) -> Self {
        self.clone() * other.inv().expect("division by zero")
    }

    /// True for a scalar of the form `-c` with `c` "positive"; used only for printing.
    fn is_negative_for_display(&self) -> bool;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn parse_scalar(text: &str) -> Result<Self, ExactError> {
        parse_rational(text)
    }
    fn is_negative_for_display(&self) -> bool {
        self.is_negative()
    }
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Zero::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: Zero::zero(), im: One::one() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self.div_by(&o)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Zero::zero(), im: Zero::zero() }
    }
    fn one() -> Self {
        GaussianRational::real(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn from_rational(q: &Rational) -> Self {
        GaussianRational::real(q.clone())
    }
    fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }
    fn imaginary_unit() -> Option<Self> {
        Some(GaussianRational::i())
    }
    fn parse_scalar(text: &str) -> Result<Self, ExactError> {
        parse_gaussian(text)
    }
    fn is_negative_for_display(&self) -> bool {
        if Zero::is_zero(&self.im) {
            self.re.is_negative()
        } else {
            Zero::is_zero(&self.re) && self.im.is_negative()
        }
    }
}

/// Parse the forms written by `Display`: `p/q`, `r/s*i`, `p/q+r/s*i`, `p/q-r/s*i`,
/// plus the shorthands `i`, `-i`, `p/q+i`.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational, ExactError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || ExactError::Parse(format!("not a Gaussian rational: {text:?}"));
    if !s.ends_with('i') {
        return parse_rational(&s).map(GaussianRational::real);
    }
    let body = &s[..s.len() - 1];
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im_part = im_part.strip_suffix('*').unwrap_or(im_part);
    let im = match im_part {
        "" | "+" => qi(1),
        "-" => qi(-1),
        other => parse_rational(other.strip_prefix('+').unwrap_or(other)).map_err(|_| bad())?,
    };
    let re = parse_rational(re_part).map_err(|_| bad())?;
    Ok(GaussianRational { re, im })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_print() {
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), qi(-7));
        assert_eq!(q(-3, 6).to_string(), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_round_trip() {
        for z in [
            GaussianRational::new(q(1, 2), q(-3, 4)),
            GaussianRational::new(qi(0), qi(1)),
            GaussianRational::new(qi(5), qi(0)),
            GaussianRational::new(q(-1, 3), q(2, 7)),
        ] {
            assert_eq!(parse_gaussian(&z.to_string()).unwrap(), z, "{z}");
        }
        assert_eq!(parse_gaussian("i").unwrap(), GaussianRational::i());
        assert_eq!(parse_gaussian("-i").unwrap(), -GaussianRational::i());
    }

    #[test]
    fn gaussian_field_ops() {
        let z = GaussianRational::new(q(1, 2), q(3, 1));
        let w = z.inv().unwrap();
        assert!((z.clone() * w).is_one());
        assert_eq!(z.conj().conj(), z);
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i, -GaussianRational::one());
    }
}
