//! Formula-to-formula transformations.

mod color;
mod fragment;
mod pltl;
mod pnf;
mod prompt;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::ast::{Formula, ParamDecl};

pub use color::{alt_c, colorize, colorize_traced, rel_c, theta};
pub use fragment::{drop_universal_upward, drop_universal_upward_traced, to_core_fragment, to_core_fragment_traced, Target};
pub use pltl::pltl_to_pab;
pub use pnf::{pnf_kinds, to_pnf};
pub use prompt::{to_prompt, to_prompt_traced};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("len_k needs k >= 1")]
    ZeroLength,
    #[error("fragment violation: `{0}` is outside the target fragment")]
    FragmentViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("color atom `{0}` already occurs in the formula")]
    ColorCollision(String),
    #[error("parameter `{0}` is used both upward and downward")]
    MixedPolarity(String),
    #[error("not a PLTL formula: `{0}`")]
    NotPltl(String),
}

/// One rule application: the rule name and the position of the rewritten
/// subformula in the input, as a dot-separated child path (`""` is the root).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub location: String,
}

/// Ordered log of rule applications, in post-order of the input tree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    pub(crate) fn push(&mut self, rule: &'static str, path: &[usize]) {
        let location = path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
        self.steps.push(RewriteStep { rule, location });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.steps.iter().map(|s| s.rule)
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{} @ {}", s.rule, if s.location.is_empty() { "root" } else { &s.location })?;
        }
        Ok(())
    }
}

/// `len_k`, rejecting `k = 0`.
pub fn len_formula(k: usize) -> Result<Formula, RewriteError> {
    if k == 0 {
        return Err(RewriteError::ZeroLength);
    }
    Ok(crate::syntax::ast::len(k))
}

/// Intermediate results of the standard pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct Pipeline {
    pub pnf: Formula,
    pub decl: ParamDecl,
    pub dropped: Formula,
    pub prompt: Formula,
    pub colored: Formula,
    pub trace: RewriteTrace,
}

/// `to_pnf`, then `drop_universal_upward`, `to_prompt` and `colorize`.
pub fn pipeline(f: &Formula, decl: &ParamDecl, color: &str) -> Result<Pipeline, RewriteError> {
    let mut trace = RewriteTrace::default();
    let pnf = to_pnf(f);
    let decl = pnf_kinds(&pnf, decl)?;
    let dropped = drop_universal_upward_traced(&pnf, &mut trace);
    let prompt = to_prompt_traced(&dropped, &mut trace)?;
    let colored = colorize_traced(&prompt, color, &mut trace)?;
    Ok(Pipeline { pnf, decl, dropped, prompt, colored, trace })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Pnf,
    DropUu,
    Prompt,
    Colorize,
    Pipeline,
}

impl std::str::FromStr for Stage {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pnf" => Ok(Stage::Pnf),
            "drop-uu" => Ok(Stage::DropUu),
            "prompt" => Ok(Stage::Prompt),
            "colorize" => Ok(Stage::Colorize),
            "pipeline" => Ok(Stage::Pipeline),
            other => Err(format!("unknown stage `{other}`")),
        }
    }
}
