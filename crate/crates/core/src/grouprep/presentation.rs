//! Finite presentations and their text format.
//!
//! ```text
//! # the fundamental group of the torus
//! gens a b
//! rel a b a^-1 b^-1
//! ```
//!
//! A relator token is `id`, `id^-1`, or `id^n` for a nonzero integer `n`.

use std::collections::HashSet;

use super::word::{Letter, Word};
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    /// Relators are freely reduced on construction.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !is_identifier(g) {
                return Err(GroupError::Invalid(format!("invalid generator name {g:?}")));
            }
            if !seen.insert(g.clone()) {
                return Err(GroupError::Invalid(format!("duplicate generator name {g:?}")));
            }
        }
        for r in &relators {
            if r.max_generator().is_some_and(|m| m >= generators.len()) {
                return Err(GroupError::Invalid("relator uses an undeclared generator".into()));
            }
        }
        Ok(Presentation { generators, relators: relators.iter().map(Word::free_reduce).collect() })
    }

    /// Free group on the given names.
    pub fn free(names: &[&str]) -> Self {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new()).expect("valid names")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.display_with(&self.generators).to_string()
    }

    /// Human-readable relator label such as `r1 (a b a^-1 b^-1)`.
    pub fn relator_label(&self, index: usize) -> String {
        format!("r{} ({})", index + 1, self.word_string(&self.relators[index]))
    }

    /// Parse a word written with generator names, e.g. `a b^-1 a^2`.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        let mut letters = Vec::new();
        for (col, tok) in tokens(text) {
            letters.extend(parse_token(tok, &self.generators, 1, col)?);
        }
        Ok(Word::from_letters(letters))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gens {}\n", self.generators.join(" "));
        for r in &self.relators {
            out.push_str(&format!("rel {}\n", self.word_string(r)));
        }
        out
    }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (offset + 1, tok)
    })
}

fn parse_token(tok: &str, gens: &[String], line: usize, column: usize) -> Result<Vec<Letter>, GroupError> {
    let err = |message: String| GroupError::Parse { line, column, message };
    let (name, exp) = match tok.split_once('^') {
        None => (tok, 1i64),
        Some((n, e)) => {
            let e: i64 = e.parse().map_err(|_| err(format!("bad exponent in {tok:?}")))?;
            if e == 0 {
                return Err(err(format!("zero exponent in {tok:?}")));
            }
            (n, e)
        }
    };
    let g = gens
        .iter()
        .position(|x| x == name)
        .ok_or_else(|| err(format!("unknown generator {name:?}")))?;
    let letter = Letter::new(g, if exp > 0 { 1 } else { -1 });
    Ok(vec![letter; exp.unsigned_abs() as usize])
}

/// Parse the presentation text format.
pub fn parse_presentation(text: &str) -> Result<Presentation, GroupError> {
    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = tokens(line);
        let Some((kw_col, keyword)) = toks.next() else { continue };
        match keyword {
            "gens" => {
                if generators.is_some() {
                    return Err(GroupError::Parse { line: line_no, column: kw_col, message: "second gens line".into() });
                }
                let mut names = Vec::new();
                for (col, tok) in toks {
                    if !is_identifier(tok) {
                        return Err(GroupError::Parse {
                            line: line_no,
                            column: col,
                            message: format!("invalid generator name {tok:?}"),
                        });
                    }
                    if names.contains(&tok.to_string()) {
                        return Err(GroupError::Parse {
                            line: line_no,
                            column: col,
                            message: format!("duplicate generator {tok:?}"),
                        });
                    }
                    names.push(tok.to_string());
                }
                generators = Some(names);
            }
            "rel" => {
                let Some(gens) = generators.as_ref() else {
                    return Err(GroupError::Parse {
                        line: line_no,
                        column: kw_col,
                        message: "rel before gens line".into(),
                    });
                };
                let mut letters = Vec::new();
                for (col, tok) in toks {
                    letters.extend(parse_token(tok, gens, line_no, col)?);
                }
                relators.push(Word::from_letters(letters));
            }
            other => {
                return Err(GroupError::Parse {
                    line: line_no,
                    column: kw_col,
                    message: format!("expected 'gens' or 'rel', found {other:?}"),
                })
            }
        }
    }
    let generators = generators.ok_or(GroupError::Parse { line: 1, column: 1, message: "missing gens line".into() })?;
    Presentation::new(generators, relators)
}
