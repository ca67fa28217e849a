//! Reference interpreters over lassos with a finite evaluation horizon.

pub mod hl;
pub mod interval;
pub mod paths;
pub mod pltl;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::ast::{Formula, ParamDecl};
use crate::syntax::lasso::Lasso;

pub use hl::eval_hl;
pub use interval::{eval_interval, eval_trace, IntervalModel};
pub use paths::kripke_lassos;
pub use pltl::{eval_pltl, PointModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl TriBool {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }

    pub fn and(self, o: TriBool) -> TriBool {
        match (self, o) {
            (TriBool::False, _) | (_, TriBool::False) => TriBool::False,
            (TriBool::True, TriBool::True) => TriBool::True,
            _ => TriBool::Unknown,
        }
    }

    pub fn or(self, o: TriBool) -> TriBool {
        !(!self).and(!o)
    }

    pub fn is_conclusive(self) -> bool {
        self != TriBool::Unknown
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            TriBool::True => Some(true),
            TriBool::False => Some(false),
            TriBool::Unknown => None,
        }
    }
}

impl Not for TriBool {
    type Output = TriBool;
    fn not(self) -> TriBool {
        match self {
            TriBool::True => TriBool::False,
            TriBool::False => TriBool::True,
            TriBool::Unknown => TriBool::Unknown,
        }
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriBool::True => "true",
            TriBool::False => "false",
            TriBool::Unknown => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub i: usize,
    pub j: usize,
}

impl Interval {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i <= j, "interval [{i},{j}] is empty");
        Interval { i, j }
    }

    pub fn len(&self) -> usize {
        self.j - self.i + 1
    }
}

/// Parameter values; all values are positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamValuation(pub BTreeMap<String, usize>);

impl ParamValuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: impl Into<String>, v: usize) -> Self {
        self.set(p, v);
        self
    }

    pub fn set(&mut self, p: impl Into<String>, v: usize) {
        assert!(v >= 1, "parameter values are positive");
        self.0.insert(p.into(), v);
    }

    pub fn get(&self, p: &str) -> Result<usize, EvalError> {
        self.0.get(p).copied().ok_or_else(|| EvalError::MissingParam(p.to_string()))
    }

    /// Every parameter of `decl` set to `up` (upward) or `down` (downward).
    pub fn uniform(decl: &ParamDecl, up: usize, down: usize) -> Self {
        let mut v = Self::new();
        for p in &decl.upward {
            v.set(p.clone(), up);
        }
        for p in &decl.downward {
            v.set(p.clone(), down);
        }
        v
    }

    pub fn max_value(&self) -> usize {
        self.0.values().copied().max().unwrap_or(0)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut v = Self::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, n) = item.split_once('=').ok_or_else(|| format!("expected name=value, got `{item}`"))?;
            let n: usize = n.trim().parse().map_err(|_| format!("bad value in `{item}`"))?;
            if n == 0 {
                return Err(format!("parameter `{}` must be positive", k.trim()));
            }
            v.set(k.trim(), n);
        }
        Ok(v)
    }
}

impl fmt::Display for ParamValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("interval [{i},{j}] lies beyond the horizon {horizon}")]
    BeyondHorizon { i: usize, j: usize, horizon: usize },
    #[error("horizon {horizon} is below the minimum {min} for this lasso")]
    HorizonTooSmall { horizon: usize, min: usize },
    #[error("valuation has no value for parameter `{0}`")]
    MissingParam(String),
    #[error("unsupported construct in this logic: {0}")]
    Unsupported(String),
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
}

/// Settings shared by the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Horizon {
    pub bound: usize,
    /// Loop periods that must be conclusively false past the start of an
    /// unbounded search before it may answer false.
    pub settle_periods: usize,
}

impl Horizon {
    /// Default bound for evaluating `f`: grows with the nesting depth of
    /// temporal operators so that nested unbounded searches can settle.
    pub fn default_for(w: &Lasso, alpha: &ParamValuation, f: &Formula) -> usize {
        let d = temporal_depth(f);
        w.stem.len() + (4 + 2 * d) * w.cycle.len() + (d + 1) * alpha.max_value()
    }

    pub fn min_for(w: &Lasso) -> usize {
        w.stem.len() + 2 * w.cycle.len()
    }
}

fn temporal_depth(f: &Formula) -> usize {
    let own = usize::from(matches!(
        f,
        Formula::Modal { .. } | Formula::Next(_) | Formula::Until(..) | Formula::Eventually { .. } | Formula::Always { .. }
    ));
    own + f.children().into_iter().map(temporal_depth).max().unwrap_or(0)
}

/// Smallest conclusive-prefix end that lets an unbounded forward search
/// starting at `start` answer false.
pub(crate) fn settle_point(
    start: usize,
    stem: usize,
    period: usize,
    settle: usize,
    depth: usize,
    max_param: usize,
) -> usize {
    start.max(stem) + (settle + depth) * period + max_param
}

/// Dense triangular-free square table indexed by `(i, j)`.
#[derive(Debug, Clone)]
pub(crate) struct Table {
    pub n: usize,
    pub data: Vec<TriBool>,
}

impl Table {
    pub fn new(n: usize, init: TriBool) -> Self {
        Table { n, data: vec![init; n * n] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> TriBool {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: TriBool) {
        self.data[i * self.n + j] = v;
    }
}
