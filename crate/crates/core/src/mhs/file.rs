//! JSON forms of filtered spaces and filtered complexes. Each filtration is a list of jumps, a
//! jump being an index and a spanning list of vectors with exact scalar strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactalg::{Field, GaussianRational, Matrix, Rational, Subspace};

use super::{FilteredComplex, FilteredVectorSpace, Filtration, MhsError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jump {
    pub index: i64,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredSpaceFile {
    pub dim: usize,
    #[serde(rename = "W")]
    pub w: Vec<Jump>,
    #[serde(rename = "F")]
    pub f: Vec<Jump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredComplexFile {
    pub dims: Vec<usize>,
    /// `differentials[n]` is the matrix of `d: Aⁿ → A^{n+1}` as rows.
    pub differentials: Vec<Vec<Vec<String>>>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<Jump>>,
}

fn parse_filtration<F: Field>(dim: usize, jumps: &[Jump], increasing: bool) -> Result<Filtration<F>, MhsError> {
    let mut steps = BTreeMap::new();
    for j in jumps {
        let vectors = j
            .basis
            .iter()
            .map(|v| {
                if v.len() != dim {
                    return Err(MhsError::Invalid(format!("jump {} has a vector of length {}, expected {dim}", j.index, v.len())));
                }
                v.iter().map(|s| F::parse_scalar(s).map_err(MhsError::from)).collect()
            })
            .collect::<Result<Vec<Vec<F>>, _>>()?;
        if steps.insert(j.index, Subspace::from_spanning(dim, &vectors)).is_some() {
            return Err(MhsError::Invalid(format!("jump {} listed twice", j.index)));
        }
    }
    Filtration::new(dim, increasing, steps)
}

fn jumps<F: Field>(f: &Filtration<F>) -> Vec<Jump> {
    f.steps()
        .iter()
        .map(|(k, s)| Jump { index: *k, basis: s.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect() })
        .collect()
}

impl FilteredSpaceFile {
    pub fn parse(text: &str) -> Result<Self, MhsError> {
        serde_json::from_str(text).map_err(|e| MhsError::Invalid(format!("JSON: {e}")))
    }

    pub fn to_space(&self) -> Result<FilteredVectorSpace, MhsError> {
        let w = parse_filtration::<Rational>(self.dim, &self.w, true)?;
        let f = parse_filtration::<GaussianRational>(self.dim, &self.f, false)?;
        FilteredVectorSpace::new(w, f)
    }

    pub fn from_space(v: &FilteredVectorSpace) -> Self {
        FilteredSpaceFile { dim: v.dim(), w: jumps(v.weight()), f: jumps(v.hodge()) }
    }
}

impl FilteredComplexFile {
    pub fn parse(text: &str) -> Result<Self, MhsError> {
        serde_json::from_str(text).map_err(|e| MhsError::Invalid(format!("JSON: {e}")))
    }

    pub fn to_complex(&self) -> Result<FilteredComplex, MhsError> {
        if self.w.len() != self.dims.len() || self.differentials.len() + 1 != self.dims.len() {
            return Err(MhsError::Invalid("need one W per piece and one differential per consecutive pair".into()));
        }
        let mut d = Vec::new();
        for (n, rows) in self.differentials.iter().enumerate() {
            let (r, c) = (self.dims[n + 1], self.dims[n]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(MhsError::Invalid(format!("differential {n} must be {r}x{c}")));
            }
            let parsed = rows
                .iter()
                .map(|row| row.iter().map(|s| Rational::parse_scalar(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            d.push(if r == 0 { Matrix::zeros(0, c) } else { Matrix::from_rows(parsed, c)? });
        }
        let w = self
            .w
            .iter()
            .zip(&self.dims)
            .map(|(j, &n)| parse_filtration::<Rational>(n, j, true))
            .collect::<Result<Vec<_>, _>>()?;
        FilteredComplex::new(self.dims.clone(), d, w)
    }

    pub fn from_complex(c: &FilteredComplex) -> Self {
        FilteredComplexFile {
            dims: c.dims().to_vec(),
            differentials: c
                .differentials()
                .iter()
                .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect())
                .collect(),
            w: c.filtrations().iter().map(jumps).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mhs::{deligne_splitting, dec_filtration};

    const ELLIPTIC: &str = r#"{"dim": 2, "W": [{"index": 1, "basis": [["1","0"],["0","1"]]}],
        "F": [{"index": 0, "basis": [["1","0"],["0","1"]]}, {"index": 1, "basis": [["1","i"]]}]}"#;

    #[test]
    fn space_round_trip() {
        let v = FilteredSpaceFile::parse(ELLIPTIC).unwrap().to_space().unwrap();
        assert!(deligne_splitting(&v).unwrap().checks.all());
        let again = FilteredSpaceFile::from_space(&v).to_space().unwrap();
        assert_eq!(again.hodge(), v.hodge());
        assert_eq!(again.weight(), v.weight());
    }

    #[test]
    fn complex_round_trip() {
        let text = r#"{"dims": [1, 2], "differentials": [[["1"], ["0"]]],
            "W": [[{"index": 0, "basis": [["1"]]}],
                  [{"index": 0, "basis": [["1","0"]]}, {"index": 2, "basis": [["1","0"],["0","1"]]}]]}"#;
        let c = FilteredComplexFile::parse(text).unwrap().to_complex().unwrap();
        assert_eq!(c.cohomology_dim(1), 1);
        assert!(dec_filtration(&c).unwrap().cohomology_identity);
        let again = FilteredComplexFile::from_complex(&c).to_complex().unwrap();
        assert_eq!(again.filtrations(), c.filtrations());
    }

    #[test]
    fn malformed_rejected() {
        assert!(FilteredSpaceFile::parse(&ELLIPTIC.replace("[\"1\",\"i\"]", "[\"1\"]")).unwrap().to_space().is_err());
        assert!(FilteredComplexFile::parse(r#"{"dims": [1], "differentials": [[["1"]]], "W": [[]]}"#).unwrap().to_complex().is_err());
    }
}
