//! Line arrangements in ℙ² over ℚ: intersection profiles, braid sub-arrangements, Tayama's
//! `b(N, n)`, the lower bound on `b₁` of Hirzebruch covers and the `b₁ = 0` classification.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num::{BigInt, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactalg::{parse_rational, ExactError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("line {0} is zero")]
    ZeroLine(usize),
    #[error("lines {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("empty arrangement")]
    Empty,
    #[error("{0}")]
    Range(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

type Point = [Rational; 3];

/// Scale so the first nonzero coordinate is 1.
fn normalize(v: [Rational; 3]) -> Option<Point> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.map(|x| x / &lead))
}

fn cross(a: &Point, b: &Point) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// `ax + by + cz = 0`, stored canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine(Point);

impl ProjLine {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Self> {
        normalize([a, b, c]).map(ProjLine)
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Option<Self> {
        Self::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()), Rational::from_integer(c.into()))
    }

    pub fn coefficients(&self) -> &Point {
        &self.0
    }
}

impl std::fmt::Display for ProjLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub point: Point,
    /// Indices of the lines through the point, ascending.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub points: Vec<IntersectionPoint>,
    /// `m_r` for every multiplicity that occurs.
    pub m: BTreeMap<usize, usize>,
}

impl IntersectionProfile {
    pub fn m(&self, r: usize) -> usize {
        self.m.get(&r).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    lines: Vec<ProjLine>,
    profile: IntersectionProfile,
}

impl Arrangement {
    pub fn new(lines: Vec<ProjLine>) -> Result<Self, ArrangementError> {
        if lines.is_empty() {
            return Err(ArrangementError::Empty);
        }
        let mut seen: HashMap<&ProjLine, usize> = HashMap::new();
        for (k, l) in lines.iter().enumerate() {
            if let Some(&j) = seen.get(l) {
                return Err(ArrangementError::Duplicate(j, k));
            }
            seen.insert(l, k);
        }
        let profile = intersection_profile(&lines);
        Ok(Arrangement { lines, profile })
    }

    pub fn from_ints(triples: &[[i64; 3]]) -> Result<Self, ArrangementError> {
        let lines = triples
            .iter()
            .enumerate()
            .map(|(k, t)| ProjLine::from_ints(t[0], t[1], t[2]).ok_or(ArrangementError::ZeroLine(k)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(lines)
    }

    /// One line per `a b c`, blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self, ArrangementError> {
        let mut lines = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let parse_err = |message: String| ArrangementError::Parse { line: no + 1, message };
            let coeffs: Vec<&str> = body.split_whitespace().collect();
            if coeffs.len() != 3 {
                return Err(parse_err(format!("expected 3 coefficients, found {}", coeffs.len())));
            }
            let [a, b, c] = [coeffs[0], coeffs[1], coeffs[2]].map(parse_rational);
            let line = ProjLine::new(a.map_err(|e| parse_err(e.to_string()))?, b.map_err(|e| parse_err(e.to_string()))?, c.map_err(|e| parse_err(e.to_string()))?)
                .ok_or_else(|| parse_err("all coefficients are zero".into()))?;
            lines.push(line);
        }
        Self::new(lines)
    }

    pub fn braid() -> Self {
        Self::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [0, 1, -1], [1, 0, -1]]).expect("distinct")
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn profile(&self) -> &IntersectionProfile {
        &self.profile
    }

    pub fn with_line(&self, l: ProjLine) -> Result<Self, ArrangementError> {
        let mut lines = self.lines.clone();
        lines.push(l);
        Self::new(lines)
    }
}

/// Intersection points of pairwise distinct lines, grouped exactly.
pub fn intersection_profile(lines: &[ProjLine]) -> IntersectionProfile {
    let mut through: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for (i, j) in (0..lines.len()).tuple_combinations() {
        let p = normalize(cross(&lines[i].0, &lines[j].0)).expect("distinct lines meet in a point");
        let entry = through.entry(p).or_default();
        for k in [i, j] {
            if !entry.contains(&k) {
                entry.push(k);
            }
        }
    }
    let mut m = BTreeMap::new();
    let points = through
        .into_iter()
        .map(|(point, mut lines)| {
            lines.sort_unstable();
            *m.entry(lines.len()).or_insert(0) += 1;
            IntersectionPoint { point, lines }
        })
        .collect();
    IntersectionProfile { points, m }
}

/// No point of multiplicity 3 or more.
pub fn is_general_position(l: &Arrangement) -> bool {
    l.profile.m.keys().all(|&r| r < 3)
}

/// 6-line subsets whose restricted profile has exactly four triple and three double points.
pub fn braid_count(l: &Arrangement) -> u64 {
    let n = l.len();
    if n < 6 || is_general_position(l) {
        return 0;
    }
    let incidence: Vec<Vec<bool>> = l
        .profile
        .points
        .iter()
        .filter(|p| p.lines.len() >= 2)
        .map(|p| {
            let mut row = vec![false; n];
            for &k in &p.lines {
                row[k] = true;
            }
            row
        })
        .collect();
    let is_braid = |subset: &[usize]| {
        let (mut triples, mut doubles) = (0, 0);
        for row in &incidence {
            match subset.iter().filter(|&&k| row[k]).count() {
                0 | 1 => {}
                2 => doubles += 1,
                3 => triples += 1,
                _ => return false,
            }
        }
        triples == 4 && doubles == 3
    };
    (0..n)
        .into_par_iter()
        .map(|first| {
            ((first + 1)..n)
                .combinations(5)
                .filter(|rest| {
                    let mut s = Vec::with_capacity(6);
                    s.push(first);
                    s.extend_from_slice(rest);
                    is_braid(&s)
                })
                .count() as u64
        })
        .sum()
}

/// `b(N, n) = (N−1)((n−2)N^{n−2} − 2 Σ_{k=0}^{n−3} N^k)`.
pub fn tayama_b(big_n: u64, n: u64) -> Result<BigInt, ArrangementError> {
    if big_n < 1 || n < 2 {
        return Err(ArrangementError::Range(format!("b(N, n) needs N >= 1 and n >= 2, got b({big_n}, {n})")));
    }
    let nn = BigInt::from(big_n);
    let e = u32::try_from(n - 2).map_err(|_| ArrangementError::Range(format!("n = {n} too large")))?;
    let geometric: BigInt = (0..e).map(|k| nn.pow(k)).sum();
    Ok((&nn - 1) * (BigInt::from(n - 2) * nn.pow(e) - 2 * geometric))
}

/// `Σ_{r≥3} m_r b(N, r) + β b(N, 3)`.
pub fn tayama_lower_bound(l: &Arrangement, big_n: u64) -> Result<BigInt, ArrangementError> {
    lower_bound_with_beta(l, big_n, braid_count(l))
}

fn lower_bound_with_beta(l: &Arrangement, big_n: u64, beta: u64) -> Result<BigInt, ArrangementError> {
    if big_n < 2 {
        return Err(ArrangementError::Range(format!("the bound needs N >= 2, got {big_n}")));
    }
    let mut total = BigInt::from(beta) * tayama_b(big_n, 3)?;
    for (&r, &m) in l.profile.m.range(3..) {
        total += BigInt::from(m) * tayama_b(big_n, r as u64)?;
    }
    Ok(total)
}

/// General position, or `N = 2` with at most triple points.
pub fn hirzebruch_b1_zero(l: &Arrangement, big_n: u64) -> Result<bool, ArrangementError> {
    if big_n < 2 {
        return Err(ArrangementError::Range(format!("classification needs N >= 2, got {big_n}")));
    }
    Ok(is_general_position(l) || (big_n == 2 && l.profile.m.keys().all(|&r| r <= 3)))
}

/// `N^{n−1}`.
pub fn cover_degree(n: u64, big_n: u64) -> Result<BigInt, ArrangementError> {
    if n < 1 || big_n < 1 {
        return Err(ArrangementError::Range(format!("cover degree needs n, N >= 1, got n = {n}, N = {big_n}")));
    }
    let e = u32::try_from(n - 1).map_err(|_| ArrangementError::Range(format!("n = {n} too large")))?;
    Ok(BigInt::from(big_n).pow(e))
}

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementReport {
    pub n: usize,
    pub m: BTreeMap<String, usize>,
    pub beta: u64,
    pub general_position: bool,
    pub bounds: BTreeMap<String, Value>,
    pub b1_zero: BTreeMap<String, bool>,
    pub degree: BTreeMap<String, Value>,
}

pub fn analyze(l: &Arrangement, ns: &[u64]) -> Result<ArrangementReport, ArrangementError> {
    let beta = braid_count(l);
    let mut bounds = BTreeMap::new();
    let mut b1_zero = BTreeMap::new();
    let mut degree = BTreeMap::new();
    for &big_n in ns {
        bounds.insert(big_n.to_string(), int_json(&lower_bound_with_beta(l, big_n, beta)?));
        b1_zero.insert(big_n.to_string(), hirzebruch_b1_zero(l, big_n)?);
        degree.insert(big_n.to_string(), int_json(&cover_degree(l.len() as u64, big_n)?));
    }
    Ok(ArrangementReport {
        n: l.len(),
        m: l.profile.m.iter().map(|(r, c)| (r.to_string(), *c)).collect(),
        beta,
        general_position: is_general_position(l),
        bounds,
        b1_zero,
        degree,
    })
}

/// `n` distinct lines with coefficients in `[−2, 2]`; small coefficients make concurrences common.
pub fn random_arrangement(rng: &mut ChaCha8Rng, n: usize) -> Arrangement {
    let mut lines: Vec<ProjLine> = Vec::new();
    while lines.len() < n {
        let t = [0; 3].map(|_: i64| rng.gen_range(-2..=2i64));
        if let Some(l) = ProjLine::from_ints(t[0], t[1], t[2]) {
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    Arrangement::new(lines).expect("distinct by construction")
}

/// `Σ m_r C(r, 2) = C(n, 2)`.
pub fn pair_count_holds(l: &Arrangement) -> bool {
    let pairs: usize = l.profile.m.iter().map(|(r, m)| m * r * (r - 1) / 2).sum();
    pairs == l.len() * (l.len() - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use rand::SeedableRng;

    fn triangle() -> Arrangement {
        Arrangement::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    fn pencil(k: i64) -> Arrangement {
        Arrangement::from_ints(&(0..k).map(|j| [1, j, 0]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn profiles() {
        assert_eq!(triangle().profile().m, BTreeMap::from([(2, 3)]));
        assert_eq!(pencil(3).profile().m, BTreeMap::from([(3, 1)]));
        assert_eq!(Arrangement::braid().profile().m, BTreeMap::from([(2, 3), (3, 4)]));
        assert!(is_general_position(&triangle()));
        assert!(!is_general_position(&pencil(3)));
        assert!(!is_general_position(&Arrangement::braid()));
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(Arrangement::from_ints(&[[1, 2, 3], [2, 4, 6]]).unwrap_err(), ArrangementError::Duplicate(0, 1));
        assert!(Arrangement::parse("1 0 0\n# c\n0 1 0\n-3 0 0\n").is_err());
        assert!(matches!(Arrangement::parse("1 0\n"), Err(ArrangementError::Parse { line: 1, .. })));
    }

    #[test]
    fn braid_counts() {
        let braid = Arrangement::braid();
        assert_eq!(braid_count(&braid), 1);
        assert_eq!(braid_count(&triangle()), 0);
        let plus = braid.with_line(ProjLine::from_ints(3, 5, 7).unwrap()).unwrap();
        assert_eq!(braid_count(&plus), 1);
    }

    #[test]
    fn tayama_values() {
        let b = |n, k| tayama_b(n, k).unwrap();
        assert_eq!(b(3, 2), BigInt::zero());
        assert_eq!(b(2, 3), BigInt::zero());
        assert_eq!(b(3, 3), BigInt::from(2));
        assert_eq!(b(2, 4), BigInt::from(2));
        assert_eq!(b(3, 4), BigInt::from(20));
        assert!(tayama_b(0, 3).is_err() && tayama_b(3, 1).is_err());
    }

    #[test]
    fn bounds_and_classification() {
        let braid = Arrangement::braid();
        assert_eq!(tayama_lower_bound(&braid, 3).unwrap(), BigInt::from(10));
        assert!(hirzebruch_b1_zero(&braid, 2).unwrap());
        assert!(!hirzebruch_b1_zero(&braid, 3).unwrap());
        assert!(hirzebruch_b1_zero(&triangle(), 7).unwrap());
        assert_eq!(tayama_lower_bound(&pencil(4), 2).unwrap(), BigInt::from(2));
        assert_eq!(tayama_lower_bound(&triangle(), 5).unwrap(), BigInt::zero());
        assert_eq!(cover_degree(3, 2).unwrap(), BigInt::from(4));
        assert_eq!(cover_degree(6, 2).unwrap(), BigInt::from(32));
        assert_eq!(cover_degree(9, 1).unwrap(), BigInt::one());
    }

    #[test]
    fn random_arrangements_pair_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            let n = rng.gen_range(1..=9);
            assert!(pair_count_holds(&random_arrangement(&mut rng, n)));
        }
    }

    #[test]
    fn report_shape() {
        let r = analyze(&Arrangement::braid(), &[2, 3]).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["bounds"]["3"], json!(10));
        assert_eq!(v["b1_zero"]["2"], json!(true));
        assert_eq!(v["m"]["3"], json!(4));
        assert_eq!(v["beta"], json!(1));
    }
}
