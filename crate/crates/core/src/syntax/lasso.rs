//! Ultimately periodic traces.
//!
//! Text format, one directive per line (`#` starts a comment):
//!
//! ```text
//! stem {p,q} {} {p}
//! loop {p}
//! ```

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Letter = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lasso {
    pub stem: Vec<Letter>,
    #[serde(rename = "loop")]
    pub cycle: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LassoError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("lasso loop must be nonempty")]
    EmptyLoop,
}

impl Lasso {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyLoop);
        }
        Ok(Lasso { stem, cycle })
    }

    /// Builds a lasso from letter literals such as `&[&["p"], &[]]`.
    pub fn from_strs(stem: &[&[&str]], cycle: &[&[&str]]) -> Self {
        let conv = |ls: &[&[&str]]| -> Vec<Letter> {
            ls.iter().map(|l| l.iter().map(|s| s.to_string()).collect()).collect()
        };
        Lasso::new(conv(stem), conv(cycle)).expect("nonempty loop")
    }

    pub fn letter(&self, i: usize) -> &Letter {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    pub fn holds(&self, i: usize, atom: &str) -> bool {
        self.letter(i).contains(atom)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.stem.iter().chain(&self.cycle).flatten().cloned().collect()
    }

    /// Canonical position for `i`: positions past the stem are folded into
    /// the first loop iteration.
    pub fn fold(&self, i: usize) -> usize {
        if i < self.stem.len() {
            i
        } else {
            self.stem.len() + (i - self.stem.len()) % self.cycle.len()
        }
    }

    /// Same word with every letter restricted to `keep`.
    pub fn restrict(&self, keep: &BTreeSet<String>) -> Lasso {
        let f = |l: &Letter| l.intersection(keep).cloned().collect::<Letter>();
        Lasso { stem: self.stem.iter().map(f).collect(), cycle: self.cycle.iter().map(f).collect() }
    }

    /// Same word with a shorter or equal representation: the loop is reduced
    /// to its primitive root and the stem is rolled into it where possible.
    pub fn normalize(&self) -> Lasso {
        let mut cycle = self.cycle.clone();
        let n = cycle.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| cycle[i] == cycle[i % p]) {
                cycle.truncate(p);
                break;
            }
        }
        let mut stem = self.stem.clone();
        while let Some(last) = stem.last() {
            if *last == cycle[cycle.len() - 1] {
                let l = stem.pop().unwrap();
                cycle.rotate_right(1);
                debug_assert_eq!(cycle[0], l);
            } else {
                break;
            }
        }
        Lasso { stem, cycle }
    }

    /// True iff both lassos denote the same infinite word.
    pub fn same_word(&self, other: &Lasso) -> bool {
        let n = self.stem.len().max(other.stem.len()) + self.cycle.len() * other.cycle.len();
        (0..n).all(|i| self.letter(i) == other.letter(i))
    }
}

fn letter_text(l: &Letter) -> String {
    format!("{{{}}}", l.iter().cloned().collect::<Vec<_>>().join(","))
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ls: &[Letter]| ls.iter().map(letter_text).collect::<Vec<_>>().join(" ");
        if !self.stem.is_empty() {
            writeln!(f, "stem {}", join(&self.stem))?;
        }
        writeln!(f, "loop {}", join(&self.cycle))
    }
}

/// Parses a whitespace separated sequence of `{a,b}` letters.
pub(crate) fn parse_letters(text: &str) -> Result<Vec<Letter>, String> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            return Err(format!("expected `{{`, found `{}`", rest.chars().next().unwrap()));
        };
        let Some(close) = body.find('}') else {
            return Err("unclosed letter".into());
        };
        out.push(parse_atom_list(&body[..close])?);
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

pub(crate) fn parse_atom_list(inner: &str) -> Result<Letter, String> {
    let mut letter = Letter::new();
    for a in inner.split(',') {
        let a = a.trim();
        if a.is_empty() {
            continue;
        }
        if !a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("invalid atom name `{a}`"));
        }
        letter.insert(a.to_string());
    }
    Ok(letter)
}

pub fn parse_lasso(text: &str) -> Result<Lasso, LassoError> {
    let mut stem = Vec::new();
    let mut cycle = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let line_no = no + 1;
        let err = |msg: String| LassoError::Syntax { line: line_no, msg };
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let letters = parse_letters(rest).map_err(err)?;
        match kw {
            "stem" => stem.extend(letters),
            "loop" if cycle.is_none() => cycle = Some(letters),
            "loop" => return Err(err("duplicate loop directive".into())),
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    Lasso::new(stem, cycle.unwrap_or_default())
}
