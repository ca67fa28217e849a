//! Translations from interval formulas into linear-time hybrid logic.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::ast::*;

pub const X_L: &str = "x_L";
pub const X_R: &str = "x_R";
pub const X: &str = "x";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HybridError {
    #[error("parametric modality `{0}`; colorize the formula first")]
    Parametric(String),
    #[error("modality `{0}` is outside the source fragment")]
    Fragment(String),
    #[error("`{0}` is not an interval formula")]
    NotInterval(String),
}

/// A hybrid sentence together with its variable inventory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HlFormula {
    pub formula: Formula,
    pub vars: BTreeSet<String>,
}

impl HlFormula {
    fn new(formula: Formula) -> Self {
        let vars = formula.vars();
        HlFormula { formula, vars }
    }

    pub fn is_sentence(&self) -> bool {
        self.formula.free_vars().is_empty()
    }
}

/// Two-variable translation of a `B`/`Bbar`/`E`/`Ebar` formula; the result
/// is evaluated at the left endpoint with `x_R` bound to the right one.
pub fn hs_to_hl2(f: &Formula) -> Result<HlFormula, HybridError> {
    let body = hl2_open(f)?;
    Ok(HlFormula::new(bind(X_L, bind(X_R, body))))
}

/// `f(phi)` with `x_L` and `x_R` free.
pub fn hl2_open(f: &Formula) -> Result<Formula, HybridError> {
    let xl = || var(X_L);
    let xr = || var(X_R);
    Ok(match f {
        Formula::True => tt(),
        Formula::Prop(_) => always(implies(eventually(xr()), f.clone())),
        Formula::Not(a) => not(hl2_open(a)?),
        Formula::And(a, b) => and(hl2_open(a)?, hl2_open(b)?),
        Formula::Or(a, b) => or(hl2_open(a)?, hl2_open(b)?),
        Formula::Implies(a, b) => implies(hl2_open(a)?, hl2_open(b)?),
        Formula::Modal { constraint: Some(_), .. } => return Err(HybridError::Parametric(f.to_string())),
        Formula::Modal { op, constraint: None, body } => {
            let (g, wrap): (Formula, fn(Formula) -> Formula) = match op.mode {
                Mode::Exists => (hl2_open(body)?, |g| g),
                Mode::Forall => (hl2_open(&not((**body).clone()))?, not),
            };
            let back = |g: Formula| bind(X_R, past(and(xl(), g)));
            wrap(match op.rel {
                Rel::B => eventually(and(next(eventually(xr())), back(g))),
                Rel::Bbar => eventually(and(xr(), next(eventually(back(g))))),
                Rel::E => next(eventually(and(eventually(xr()), bind(X_L, g)))),
                Rel::Ebar => yesterday(past(bind(X_L, g))),
                _ => return Err(HybridError::Fragment(f.to_string())),
            })
        }
        other => return Err(HybridError::NotInterval(other.to_string())),
    })
}

/// One-variable translation of an `A`/`B`/`Bbar` formula; the result is
/// evaluated at the right endpoint with `x` bound to the left one.
pub fn abb_to_hl1(f: &Formula) -> Result<HlFormula, HybridError> {
    Ok(HlFormula::new(bind(X, hl1_open(f)?)))
}

/// `h(phi)` with `x` free.
pub fn hl1_open(f: &Formula) -> Result<Formula, HybridError> {
    Ok(match f {
        Formula::True => tt(),
        Formula::Prop(_) => not(past(and(past(var(X)), not(f.clone())))),
        Formula::Not(a) => not(hl1_open(a)?),
        Formula::And(a, b) => and(hl1_open(a)?, hl1_open(b)?),
        Formula::Or(a, b) => or(hl1_open(a)?, hl1_open(b)?),
        Formula::Implies(a, b) => implies(hl1_open(a)?, hl1_open(b)?),
        Formula::Modal { constraint: Some(_), .. } => return Err(HybridError::Parametric(f.to_string())),
        Formula::Modal { op, constraint: None, body } => {
            let (inner, wrap): (Formula, fn(Formula) -> Formula) = match op.mode {
                Mode::Exists => (hl1_open(body)?, |g| g),
                Mode::Forall => (hl1_open(&not((**body).clone()))?, not),
            };
            let step = |g: Formula| -> Option<Formula> {
                Some(match op.rel {
                    Rel::A => bind(X, eventually(g)),
                    Rel::B => yesterday(past(and(g, past(var(X))))),
                    Rel::Bbar => next(eventually(g)),
                    Rel::BbarW => or(g.clone(), next(eventually(g))),
                    _ => return None,
                })
            };
            wrap(step(inner).ok_or_else(|| HybridError::Fragment(f.to_string()))?)
        }
        other => return Err(HybridError::NotInterval(other.to_string())),
    })
}
