//! Kripke structures.
//!
//! Text format, one directive per line (`#` starts a comment):
//!
//! ```text
//! atoms {p,q}        # optional; defaults to the atoms used by states
//! state s0 {p}
//! state s1 {}
//! init s0
//! edge s0 s1
//! edge s1 s0
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use super::lasso::{parse_atom_list, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kripke {
    pub atoms: BTreeSet<String>,
    pub names: Vec<String>,
    pub labels: Vec<Letter>,
    pub succ: Vec<Vec<usize>>,
    pub init: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown state `{name}`")]
    UnknownState { line: usize, name: String },
    #[error("state `{0}` declared twice")]
    Duplicate(String),
    #[error("state `{0}` has no successor: structure is not left-total")]
    NotLeftTotal(String),
    #[error("no initial state")]
    NoInit,
    #[error("state `{state}` uses atom `{atom}` outside the declared atoms")]
    UndeclaredAtom { state: String, atom: String },
}

impl Kripke {
    /// Validates left-totality and atom usage.
    pub fn new(
        atoms: BTreeSet<String>,
        names: Vec<String>,
        labels: Vec<Letter>,
        succ: Vec<Vec<usize>>,
        init: usize,
    ) -> Result<Self, KripkeError> {
        for (i, name) in names.iter().enumerate() {
            if succ[i].is_empty() {
                return Err(KripkeError::NotLeftTotal(name.clone()));
            }
            if let Some(a) = labels[i].iter().find(|a| !atoms.contains(*a)) {
                return Err(KripkeError::UndeclaredAtom { state: name.clone(), atom: a.clone() });
            }
        }
        if init >= names.len() {
            return Err(KripkeError::NoInit);
        }
        Ok(Kripke { atoms, names, labels, succ, init })
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }
}

pub fn parse_kripke(text: &str) -> Result<Kripke, KripkeError> {
    let mut atoms: Option<BTreeSet<String>> = None;
    let mut names = Vec::new();
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    let mut init = None;
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let line_no = no + 1;
        let syn = |msg: String| KripkeError::Syntax { line: line_no, msg };
        let mut words = line.splitn(2, char::is_whitespace);
        let kw = words.next().unwrap();
        let rest = words.next().unwrap_or("").trim();
        match kw {
            "atoms" => {
                let inner = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}'));
                let inner = inner.ok_or_else(|| syn("expected `{...}` after atoms".into()))?;
                atoms = Some(parse_atom_list(inner).map_err(syn)?);
            }
            "state" => {
                let (name, label) = rest.split_once(char::is_whitespace).unwrap_or((rest, "{}"));
                if name.is_empty() {
                    return Err(syn("missing state name".into()));
                }
                let label = label.trim();
                let inner = label.strip_prefix('{').and_then(|r| r.strip_suffix('}'));
                let inner = inner.ok_or_else(|| syn(format!("expected label `{{...}}` for state `{name}`")))?;
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(KripkeError::Duplicate(name.to_string()));
                }
                names.push(name.to_string());
                labels.push(parse_atom_list(inner).map_err(syn)?);
            }
            "init" => init = Some((line_no, rest.to_string())),
            "edge" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(syn("expected `edge <from> <to>`".into()));
                }
                edges.push((line_no, parts[0].to_string(), parts[1].to_string()));
            }
            other => return Err(syn(format!("unknown directive `{other}`"))),
        }
    }
    let lookup = |line: usize, name: &str| {
        index.get(name).copied().ok_or_else(|| KripkeError::UnknownState { line, name: name.to_string() })
    };
    let mut succ = vec![Vec::new(); names.len()];
    for (line, a, b) in &edges {
        let (a, b) = (lookup(*line, a)?, lookup(*line, b)?);
        if !succ[a].contains(&b) {
            succ[a].push(b);
        }
    }
    let (line, init_name) = init.ok_or(KripkeError::NoInit)?;
    let init = lookup(line, &init_name)?;
    let atoms = atoms.unwrap_or_else(|| labels.iter().flatten().cloned().collect());
    Kripke::new(atoms, names, labels, succ, init)
}

impl fmt::Display for Kripke {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        writeln!(f, "atoms {{{}}}", set(&self.atoms))?;
        for (name, label) in self.names.iter().zip(&self.labels) {
            writeln!(f, "state {name} {{{}}}", set(label))?;
        }
        writeln!(f, "init {}", self.names[self.init])?;
        for (a, succ) in self.succ.iter().enumerate() {
            for &b in succ {
                writeln!(f, "edge {} {}", self.names[a], self.names[b])?;
            }
        }
        Ok(())
    }
}
