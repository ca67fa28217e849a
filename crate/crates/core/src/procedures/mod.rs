//! Satisfiability and model checking for parametric formulas, with
//! witness extraction and oracle re-verification.

mod coloring;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{bound_counter, find_pumpable_fair_path, is_empty, product_with_kripke, replay_pumpable, AutomataError, FairProduct, LassoWitness, NbaStats};
use crate::compile::{hs_to_nba, CompilationReport, CompileError, Fragment};
use crate::rewrite::{alt_c, pipeline, rel_c, to_pnf, RewriteError};
use crate::semantics::{eval_trace, kripke_lassos, EvalError, ParamValuation, TriBool};
use crate::syntax::ast::*;
use crate::syntax::kripke::Kripke;
use crate::syntax::lasso::Lasso;

pub use coloring::{overlay, random_coloring, verify_lemma2, ColoringShape, Lemma2Report, Lemma2Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcError {
    #[error("undecided: resource ({0})")]
    Resource(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Compile(CompileError),
    #[error(transparent)]
    Automata(AutomataError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("formula atoms {0:?} are not labels of the model")]
    AtomMismatch(Vec<String>),
    #[error("internal error: the oracle rejects the reported witness {0}")]
    WitnessRejected(String),
}

impl From<AutomataError> for ProcError {
    fn from(e: AutomataError) -> Self {
        match e {
            AutomataError::Budget { .. } | AutomataError::Alphabet(_) => ProcError::Resource(e.to_string()),
            e => ProcError::Automata(e),
        }
    }
}

impl From<CompileError> for ProcError {
    fn from(e: CompileError) -> Self {
        match e {
            CompileError::Automata(a) => a.into(),
            e => ProcError::Compile(e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub budget: usize,
    /// Shrink each upward value on the witness trace by binary search.
    pub minimize: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: crate::compile::DEFAULT_BUDGET, minimize: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SatVerdict {
    Empty,
    Nonempty,
}

#[derive(Debug, Clone, Serialize)]
pub struct SatResult {
    pub verdict: SatVerdict,
    pub witness: Option<Lasso>,
    pub valuation: Option<ParamValuation>,
    /// Block bound `2 N_c + 1` of the colouring.
    pub bound: usize,
    pub color: String,
    /// States of the automaton for the coloured formula.
    pub n_c: usize,
    /// `None` when the oracle was inconclusive on the witness.
    pub verified: Option<bool>,
    pub minimized: Option<ParamValuation>,
    pub automaton: NbaStats,
    pub bounded: NbaStats,
    pub report: CompilationReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum McVerdict {
    HoldsForSomeValuation,
    Empty,
}

#[derive(Debug, Clone, Serialize)]
pub struct McResult {
    pub verdict: McVerdict,
    pub valuation: Option<ParamValuation>,
    pub counterexample: Option<LassoWitness>,
    pub color: String,
    /// `|Q|` of the automaton for the negated coloured formula.
    pub automaton_states: usize,
    pub model_states: usize,
    pub product_states: usize,
    /// Enumerated model lassos on which the valuation was confirmed.
    pub confirmed_paths: usize,
    pub report: CompilationReport,
    #[serde(skip)]
    pub product: Option<FairProduct>,
}

/// A colour atom not among `taken`.
pub fn fresh_color(taken: &BTreeSet<String>) -> String {
    std::iter::once("c".to_string()).chain((1..).map(|i| format!("c{i}"))).find(|c| !taken.contains(c)).unwrap()
}

/// Upward parameters occurring with a strict bound.
pub fn strict_upward(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    f.visit(&mut |g| {
        if let Formula::Modal { op, constraint: Some(c), .. } = g {
            if op.mode == Mode::Exists && c.cmp == Cmp::Lt {
                out.insert(c.param.clone());
            }
        }
    });
    out
}

/// Valuation for a prompt formula from a `k`-bounded colouring: `2k` for
/// upward parameters (`2k + 1` when used with `<`), 1 for downward ones.
pub fn bounded_valuation(decl: &ParamDecl, prompt: &Formula, k: usize) -> ParamValuation {
    let strict = strict_upward(prompt);
    let mut v = ParamValuation::uniform(decl, 2 * k, 1);
    for u in &decl.upward {
        if strict.contains(u) {
            v.set(u.clone(), 2 * k + 1);
        }
    }
    v
}

pub fn check_sat(f: &Formula, opts: &Options) -> Result<SatResult, ProcError> {
    let color = fresh_color(&f.props());
    let pl = pipeline(f, &ParamDecl::default(), &color)?;
    let (a_c, report) = hs_to_nba(&pl.colored, Fragment::Auto, opts.budget)?;
    let n_c = a_c.num_states();
    let bound = 2 * n_c + 1;
    let bounded = bound_counter(&a_c, bound, &color)?;
    let mut out = SatResult {
        verdict: SatVerdict::Empty,
        witness: None,
        valuation: None,
        bound,
        color: color.clone(),
        n_c,
        verified: None,
        minimized: None,
        automaton: a_c.stats(),
        bounded: bounded.stats(),
        report,
    };
    let Some(wit) = is_empty(&bounded) else { return Ok(out) };
    let w = wit.lasso.restrict(&f.props());
    let alpha = bounded_valuation(&pl.decl, &pl.prompt, bound);
    match eval_trace(&w, &alpha, f)? {
        TriBool::True => out.verified = Some(true),
        TriBool::Unknown => {}
        TriBool::False => return Err(ProcError::WitnessRejected(format!("{w} with {alpha}"))),
    }
    if opts.minimize && out.verified == Some(true) {
        out.minimized = Some(minimize_upward(f, &w, &alpha, &pl.decl)?);
    }
    out.verdict = SatVerdict::Nonempty;
    out.witness = Some(w);
    out.valuation = Some(alpha);
    Ok(out)
}

/// Smallest value of each upward parameter, one at a time, that keeps `f`
/// true on `w`; relies on monotonicity in upward parameters.
pub fn minimize_upward(f: &Formula, w: &Lasso, alpha: &ParamValuation, decl: &ParamDecl) -> Result<ParamValuation, ProcError> {
    let mut cur = alpha.clone();
    for u in &decl.upward {
        let (mut lo, mut hi) = (1, cur.get(u)?);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let trial = cur.clone().with(u.clone(), mid);
            if eval_trace(w, &trial, f)? == TriBool::True {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        cur.set(u.clone(), hi);
    }
    Ok(cur)
}

/// Lassos with stem and loop up to this length are used to confirm a
/// model-checking valuation.
const CONFIRM_PATHS: usize = 3;

pub fn check_mc(k: &Kripke, f: &Formula, opts: &Options) -> Result<McResult, ProcError> {
    let missing: Vec<String> = f.props().difference(&k.atoms).cloned().collect();
    if !missing.is_empty() {
        return Err(ProcError::AtomMismatch(missing));
    }
    let color = fresh_color(&k.atoms);
    let pl = pipeline(f, &ParamDecl::default(), &color)?;
    let negated = and(to_pnf(&not(rel_c(&pl.prompt, &color)?)), alt_c(&color));
    let (a, report) = hs_to_nba(&negated, Fragment::Auto, opts.budget)?;
    let mut atoms: Vec<String> = k.atoms.iter().cloned().collect();
    atoms.push(color.clone());
    atoms.sort();
    let a = a.with_atoms(&atoms)?;
    let p = product_with_kripke(k, &a, &color)?;
    let mut out = McResult {
        verdict: McVerdict::Empty,
        valuation: None,
        counterexample: None,
        color,
        automaton_states: a.num_states(),
        model_states: k.num_states(),
        product_states: p.num_states(),
        confirmed_paths: 0,
        report,
        product: None,
    };
    if let Some(w) = find_pumpable_fair_path(&p) {
        replay_pumpable(&p, &w).map_err(|e| ProcError::WitnessRejected(format!("{e:?}")))?;
        out.counterexample = Some(w);
        out.product = Some(p);
        return Ok(out);
    }
    let alpha = bounded_valuation(&pl.decl, &pl.prompt, a.num_states() * k.num_states() + 1);
    for w in kripke_lassos(k, CONFIRM_PATHS, CONFIRM_PATHS).expect("positive bounds") {
        match eval_trace(&w, &alpha, f)? {
            TriBool::True => out.confirmed_paths += 1,
            TriBool::Unknown => {}
            TriBool::False => return Err(ProcError::WitnessRejected(format!("{w} violates the formula with {alpha}"))),
        }
    }
    out.verdict = McVerdict::HoldsForSomeValuation;
    out.valuation = Some(alpha);
    Ok(out)
}

/// Repeats a revisiting segment inside every colour block of a pumpable
/// counterexample until each block has at least `k` positions; returns
/// the model trace with the colour atom removed.
pub fn pump_counterexample(p: &FairProduct, w: &LassoWitness, k: usize) -> Option<Lasso> {
    let lp = &w.loop_states;
    let changes = |i: usize| p.colored(lp[i]) != p.colored(lp[(i + lp.len() - 1) % lp.len()]);
    let r = match (1..lp.len()).find(|&i| changes(i)) {
        Some(r) => r,
        None if changes(0) => lp.len(),
        None => return None,
    };
    let stem: Vec<usize> = w.stem_states.iter().chain(&lp[..r]).copied().collect();
    let cycle: Vec<usize> = lp[r % lp.len()..].iter().chain(&lp[..r % lp.len()]).copied().collect();
    let pump = |run: &[usize]| -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for t in 1..=run.len() {
            if t < run.len() && p.colored(run[t]) == p.colored(run[t - 1]) {
                continue;
            }
            let block = &run[start..t];
            let (i, j) = (0..block.len()).find_map(|j| (0..j).find(|&i| block[i] == block[j]).map(|i| (i, j)))?;
            let reps = k.saturating_sub(block.len()).div_ceil(j - i);
            out.extend(&block[..j]);
            for _ in 0..reps {
                out.extend(&block[i..j]);
            }
            out.extend(&block[j..]);
            start = t;
        }
        Some(out)
    };
    let keep: BTreeSet<String> = p.labels.iter().flatten().filter(|a| **a != p.color).cloned().collect();
    let label = |v: &usize| p.labels[*v].clone();
    let lasso = Lasso::new(pump(&stem)?.iter().map(label).collect(), pump(&cycle)?.iter().map(label).collect()).ok()?;
    Some(lasso.restrict(&keep))
}
