//! JSON form of a weighted DGLA. Coefficients are exact rational strings; the differential and
//! bracket are sparse triples/quadruples keyed by basis names.

use serde::{Deserialize, Serialize};

use crate::exactalg::{parse_rational, Field, Matrix, Rational};
use crate::grouprep::{LieAlgebra, LinearGroupData};

use super::algebra::{bracket_from_entries, BasisElement, Wdgla};
use super::equivariant::{Augmentation, GroupAction};
use super::DglaError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: usize,
    pub weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionBlock {
    pub generators: Vec<NamedMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LieTarget {
    /// `gl1..gl4`, `sl2..sl4`.
    Builtin(String),
    Explicit {
        names: Vec<String>,
        /// `[u, v, w, c]`: `[u, v]` has coefficient `c` on `w`.
        brackets: Vec<[String; 4]>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationBlock {
    pub target: LieTarget,
    /// `[basis element, target element, c]`.
    pub map: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DglaFile {
    pub basis: Vec<BasisEntry>,
    /// `[x, y, c]`: `d(x)` has coefficient `c` on `y`.
    #[serde(default)]
    pub differential: Vec<[String; 3]>,
    /// `[x, y, z, c]`: `[x, y]` has coefficient `c` on `z`. Missing ordered partners are filled
    /// by graded antisymmetry.
    #[serde(default)]
    pub bracket: Vec<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<AugmentationBlock>,
}

fn lookup(names: &[String], name: &str, what: &str) -> Result<usize, DglaError> {
    names.iter().position(|n| n == name).ok_or_else(|| DglaError::Invalid(format!("unknown {what} {name:?}")))
}

fn parse_matrix(rows: &[Vec<String>], n: usize, what: &str) -> Result<Matrix<Rational>, DglaError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(DglaError::Invalid(format!("{what} must be {n}x{n}")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(parsed, n)?)
}

fn lie_from_target(t: &LieTarget) -> Result<LieAlgebra, DglaError> {
    match t {
        LieTarget::Builtin(name) => LinearGroupData::builtin(name)
            .map(|g| g.lie_algebra().clone())
            .ok_or_else(|| DglaError::Invalid(format!("unknown Lie algebra {name:?}"))),
        LieTarget::Explicit { names, brackets } => {
            let n = names.len();
            let mut s = vec![vec![vec![Rational::zero(); n]; n]; n];
            for [u, v, w, c] in brackets {
                let (i, j, k) = (lookup(names, u, "element")?, lookup(names, v, "element")?, lookup(names, w, "element")?);
                let c = parse_rational(c)?;
                s[i][j][k] = s[i][j][k].clone() + c.clone();
                if i != j && !brackets.iter().any(|b| b[0] == *v && b[1] == *u) {
                    s[j][i][k] = s[j][i][k].clone() - c;
                }
            }
            let lie = LieAlgebra::new(names.clone(), s)?;
            if let Some(v) = lie.axiom_violations().first() {
                return Err(DglaError::Axioms(v.clone()));
            }
            Ok(lie)
        }
    }
}

fn matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
}

impl DglaFile {
    pub fn parse(text: &str) -> Result<Self, DglaError> {
        serde_json::from_str(text).map_err(|e| DglaError::Invalid(format!("JSON: {e}")))
    }

    pub fn to_dgla(&self) -> Result<Wdgla, DglaError> {
        let basis: Vec<BasisElement> =
            self.basis.iter().map(|b| BasisElement::new(b.name.clone(), b.degree, b.weight)).collect();
        let names: Vec<String> = basis.iter().map(|b| b.name.clone()).collect();
        let n = basis.len();
        let mut d: Matrix<Rational> = Matrix::zeros(n, n);
        for [x, y, c] in &self.differential {
            let (i, j) = (lookup(&names, x, "basis element")?, lookup(&names, y, "basis element")?);
            let v = d.get(j, i).clone() + parse_rational(c)?;
            d.set(j, i, v);
        }
        let mut entries = Vec::new();
        for [x, y, z, c] in &self.bracket {
            entries.push((
                lookup(&names, x, "basis element")?,
                lookup(&names, y, "basis element")?,
                lookup(&names, z, "basis element")?,
                parse_rational(c)?,
            ));
        }
        let table = bracket_from_entries(&basis, &entries, true);
        let mut l = Wdgla::new(basis, d, table)?;
        if let Some(action) = &self.action {
            let gens = action
                .generators
                .iter()
                .map(|g| parse_matrix(&g.matrix, n, &g.name))
                .collect::<Result<Vec<_>, _>>()?;
            let gnames = action.generators.iter().map(|g| g.name.clone()).collect();
            l = l.with_action(GroupAction::new(gnames, gens, None)?)?;
        }
        if let Some(aug) = &self.augmentation {
            let target = lie_from_target(&aug.target)?;
            let mut m: Matrix<Rational> = Matrix::zeros(target.dim(), n);
            for [x, u, c] in &aug.map {
                let (i, k) = (lookup(&names, x, "basis element")?, lookup(target.names(), u, "target element")?);
                let v = m.get(k, i).clone() + parse_rational(c)?;
                m.set(k, i, v);
            }
            l = l.with_augmentation(Augmentation::new(target, m)?)?;
        }
        Ok(l)
    }

    pub fn from_dgla(l: &Wdgla) -> Self {
        let names: Vec<String> = l.basis().iter().map(|b| b.name.clone()).collect();
        let basis = l.basis().iter().map(|b| BasisEntry { name: b.name.clone(), degree: b.degree, weight: b.weight }).collect();
        let d = l.differential();
        let mut differential = Vec::new();
        for c in 0..l.dim() {
            for r in 0..l.dim() {
                if !Field::is_zero(d.get(r, c)) {
                    differential.push([names[c].clone(), names[r].clone(), d.get(r, c).to_string()]);
                }
            }
        }
        let bracket = l
            .bracket_table()
            .iter()
            .flat_map(|(&(i, j), entries)| {
                let names = &names;
                entries.iter().map(move |(k, c)| [names[i].clone(), names[j].clone(), names[*k].clone(), c.to_string()])
            })
            .collect();
        let action = l.action().map(|a| ActionBlock {
            generators: a
                .names()
                .iter()
                .zip(a.generators())
                .map(|(name, m)| NamedMatrix { name: name.clone(), matrix: matrix_strings(m) })
                .collect(),
        });
        let augmentation = l.augmentation().map(|aug| {
            let t = aug.target();
            let mut brackets = Vec::new();
            for i in 0..t.dim() {
                for j in 0..t.dim() {
                    for (k, c) in t.basis_bracket(i, j).iter().enumerate() {
                        if !Field::is_zero(c) {
                            brackets.push([t.names()[i].clone(), t.names()[j].clone(), t.names()[k].clone(), c.to_string()]);
                        }
                    }
                }
            }
            let mut map = Vec::new();
            for c in 0..l.dim() {
                for r in 0..t.dim() {
                    let v = aug.map().get(r, c);
                    if !Field::is_zero(v) {
                        map.push([names[c].clone(), t.names()[r].clone(), v.to_string()]);
                    }
                }
            }
            AugmentationBlock { target: LieTarget::Explicit { names: t.names().to_vec(), brackets }, map }
        });
        DglaFile { basis, differential, bracket, action, augmentation }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::algebra::check_dgla_axioms;

    const TOY: &str = r#"{
        "basis": [
            {"name": "x", "degree": 1, "weight": 2},
            {"name": "y", "degree": 1, "weight": 2},
            {"name": "z", "degree": 2, "weight": 4}
        ],
        "bracket": [["x", "y", "z", "1"]]
    }"#;

    #[test]
    fn parse_and_round_trip() {
        let l = DglaFile::parse(TOY).unwrap().to_dgla().unwrap();
        assert!(check_dgla_axioms(&l).passed());
        assert_eq!(l.bracket(&l.unit(1), &l.unit(0)), l.unit(2));
        let again = DglaFile::from_dgla(&l).to_dgla().unwrap();
        assert_eq!(again.bracket_table(), l.bracket_table());
        assert_eq!(again.differential(), l.differential());
    }

    #[test]
    fn augmentation_and_action_blocks() {
        let text = r#"{
            "basis": [{"name": "e", "degree": 0, "weight": 0}, {"name": "f", "degree": 0, "weight": 0},
                      {"name": "h", "degree": 0, "weight": 0}],
            "bracket": [["e", "f", "h", "1"], ["h", "e", "e", "2"], ["h", "f", "f", "-2"]],
            "action": {"generators": [{"name": "s", "matrix": [["-1","0","0"],["0","-1","0"],["0","0","1"]]}]},
            "augmentation": {"target": "sl2", "map": [["e", "e", "1"], ["f", "f", "1"], ["h", "h", "1"]]}
        }"#;
        let l = DglaFile::parse(text).unwrap().to_dgla().unwrap();
        assert!(check_dgla_axioms(&l).passed(), "{:?}", check_dgla_axioms(&l));
        assert_eq!(l.action().unwrap().order(), 2);
        let round = DglaFile::from_dgla(&l).to_dgla().unwrap();
        assert!(check_dgla_axioms(&round).passed());
    }

    #[test]
    fn unknown_names_rejected() {
        let bad = TOY.replace("\"x\", \"y\", \"z\"", "\"x\", \"q\", \"z\"");
        assert!(DglaFile::parse(&bad).unwrap().to_dgla().is_err());
        assert!(DglaFile::parse("{").is_err());
    }
}
