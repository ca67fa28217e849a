//! Compilation of hybrid and interval formulas into Büchi automata.
//!
//! Subformulas are compiled over marker words: the atom `@` marks the
//! evaluation position and `@x` the position bound to variable `x`.

use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{
    at_marker, complement, exactly_once, intersect, only_at_zero, project_markers, retarget_marker, union, AutomataError,
    Guard, Nba, Retarget,
};
use crate::hybrid::{abb_to_hl1, hs_to_hl2, HybridError};
use crate::rewrite::{to_core_fragment, RewriteError, Target};
use crate::syntax::ast::*;

pub const EVAL_MARKER: &str = "@";
pub const DEFAULT_BUDGET: usize = 200_000;

pub fn var_marker(x: &str) -> String {
    format!("@{x}")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Hybrid(#[from] HybridError),
    #[error("parametric formula `{0}`; colorize it first")]
    Parametric(String),
    #[error("`{0}` is not supported by the compiler")]
    Unsupported(String),
}

/// Translation route of `hs_to_nba`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fragment {
    Auto,
    Hl1,
    Hl2,
}

impl FromStr for Fragment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Fragment::Auto),
            "hl1" => Ok(Fragment::Hl1),
            "hl2" => Ok(Fragment::Hl2),
            other => Err(format!("unknown fragment `{other}` (expected auto, hl1 or hl2)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubformulaSize {
    pub formula: String,
    pub negated: bool,
    pub states: usize,
    pub transitions: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageTime {
    pub stage: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CompilationReport {
    pub route: Option<Fragment>,
    pub subformulas: Vec<SubformulaSize>,
    pub complementations: usize,
    pub peak_states: usize,
    pub stages: Vec<StageTime>,
}

impl CompilationReport {
    fn stage(&mut self, name: &str, start: Instant) {
        self.stages.push(StageTime { stage: name.into(), millis: start.elapsed().as_secs_f64() * 1e3 });
    }
}

/// Memoising compiler over a fixed atom inventory.
pub struct Compiler {
    atoms: Vec<String>,
    budget: usize,
    memo: HashMap<(Formula, bool), Arc<Nba>>,
    marked: HashMap<BTreeSet<String>, Arc<Nba>>,
    pub report: CompilationReport,
}

impl Compiler {
    /// Inventory: `props`, the evaluation marker and one marker per variable.
    pub fn new(props: &BTreeSet<String>, vars: &BTreeSet<String>, budget: usize) -> Self {
        let mut atoms: Vec<String> = props.iter().cloned().collect();
        atoms.push(EVAL_MARKER.into());
        atoms.extend(vars.iter().map(|x| var_marker(x)));
        Compiler { atoms, budget, memo: HashMap::new(), marked: HashMap::new(), report: CompilationReport::default() }
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    fn idx(&self, atom: &str) -> usize {
        self.atoms.iter().position(|a| a == atom).expect("atom in inventory")
    }

    fn record(&mut self, f: &Formula, negated: bool, a: &Nba) {
        let s = a.stats();
        self.report.peak_states = self.report.peak_states.max(s.states);
        self.report.subformulas.push(SubformulaSize { formula: f.to_string(), negated, states: s.states, transitions: s.transitions });
    }

    /// Words where the evaluation marker and the markers of `free` occur
    /// exactly once.
    fn well_marked(&mut self, free: BTreeSet<String>) -> Result<Arc<Nba>, CompileError> {
        if let Some(a) = self.marked.get(&free) {
            return Ok(a.clone());
        }
        let mut a = exactly_once(&self.atoms, EVAL_MARKER)?;
        for x in &free {
            a = intersect(&a, &exactly_once(&self.atoms, &var_marker(x))?)?;
        }
        let a = Arc::new(a);
        self.marked.insert(free, a.clone());
        Ok(a)
    }

    fn negate(&mut self, f: &Formula, a: &Nba) -> Result<Nba, CompileError> {
        self.report.complementations += 1;
        let c = complement(a, self.budget).map_err(|e| e.in_context(&f.to_string()))?;
        let wm = self.well_marked(f.free_vars())?;
        Ok(intersect(&c, &wm)?)
    }

    fn literal(&self, atom: &str, positive: bool) -> Result<Nba, CompileError> {
        Ok(at_marker(&self.atoms, EVAL_MARKER, Guard::lit(self.idx(atom), positive))?)
    }

    fn retarget(&self, a: &Nba, rel: Retarget) -> Result<Nba, CompileError> {
        Ok(retarget_marker(a, EVAL_MARKER, rel, EVAL_MARKER)?)
    }

    /// Automaton for the well-marked words on which `f` (or `!f` when
    /// `negated`) holds at the evaluation marker.
    pub fn compile(&mut self, f: &Formula, negated: bool) -> Result<Arc<Nba>, CompileError> {
        let key = (f.clone(), negated);
        if let Some(a) = self.memo.get(&key) {
            return Ok(a.clone());
        }
        let a = self.build(f, negated)?;
        self.record(f, negated, &a);
        let a = Arc::new(a);
        self.memo.insert(key, a.clone());
        Ok(a)
    }

    fn build(&mut self, f: &Formula, neg: bool) -> Result<Nba, CompileError> {
        Ok(match f {
            Formula::True if neg => Nba::empty(self.atoms.clone())?,
            Formula::True => Nba::universal(self.atoms.clone())?,
            Formula::Prop(p) => self.literal(p, !neg)?,
            Formula::Var(x) => self.literal(&var_marker(x), !neg)?,
            Formula::Not(a) => (*self.compile(a, !neg)?).clone(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let (x, y) = (self.compile(a, neg)?, self.compile(b, neg)?);
                if matches!(f, Formula::And(..)) != neg {
                    intersect(&x, &y)?
                } else {
                    union(&x, &y)?
                }
            }
            Formula::Implies(a, b) => return self.build(&or(not((**a).clone()), (**b).clone()), neg),
            Formula::Next(a) => {
                let x = self.compile(a, neg)?;
                self.retarget(&x, Retarget::Next)?
            }
            Formula::Yesterday(a) if !neg => {
                let x = self.compile(a, false)?;
                self.retarget(&x, Retarget::Previous)?
            }
            Formula::Yesterday(a) => {
                let y = yesterday(tt());
                let some_previous = self.compile(&y, false)?;
                let first = self.negate(&y, &some_previous)?;
                if **a == Formula::True {
                    return Ok(first);
                }
                let x = self.compile(a, true)?;
                let earlier = self.retarget(&x, Retarget::Previous)?;
                union(&first, &earlier)?
            }
            Formula::Eventually { bound: None, body } if !neg => {
                let x = self.compile(body, false)?;
                self.retarget(&x, Retarget::Future)?
            }
            Formula::Always { bound: None, body } if neg => {
                let x = self.compile(body, true)?;
                self.retarget(&x, Retarget::Future)?
            }
            Formula::Past(a) if !neg => {
                let x = self.compile(a, false)?;
                self.retarget(&x, Retarget::Past)?
            }
            Formula::Eventually { bound: None, .. } | Formula::Past(_) => {
                let x = self.compile(f, false)?;
                self.negate(f, &x)?
            }
            Formula::Always { bound: None, body } => {
                let dual = eventually(not((**body).clone()));
                let x = self.compile(&dual, false)?;
                self.negate(f, &x)?
            }
            Formula::Bind(x, body) => {
                let a = self.compile(body, neg)?;
                retarget_marker(&a, &var_marker(x), Retarget::BindToE, EVAL_MARKER)?
            }
            Formula::Modal { .. } | Formula::Until(..) | Formula::Eventually { .. } | Formula::Always { .. } => {
                return Err(CompileError::Unsupported(f.to_string()))
            }
        })
    }

    /// Trace automaton of a sentence evaluated at position 0.
    pub fn close(&mut self, a: &Nba) -> Result<Nba, CompileError> {
        let start = intersect(a, &only_at_zero(&self.atoms, EVAL_MARKER)?)?;
        let markers: Vec<&str> = self.atoms.iter().filter(|s| s.starts_with('@')).map(String::as_str).collect();
        Ok(project_markers(&start, &markers)?)
    }
}

/// Compiles a hybrid formula. Sentences yield an automaton over their
/// propositions; open formulas keep the marker atoms.
pub fn hl_to_nba(f: &Formula, budget: usize) -> Result<(Nba, CompilationReport), CompileError> {
    let mut c = Compiler::new(&f.props(), &f.vars(), budget);
    let t = Instant::now();
    let a = c.compile(f, false)?;
    c.report.stage("compile", t);
    let out = if f.free_vars().is_empty() {
        let t = Instant::now();
        let closed = c.close(&a)?;
        c.report.stage("close", t);
        closed
    } else {
        (*a).clone()
    };
    Ok((out, c.report))
}

const ABB_RELS: [Rel; 4] = [Rel::A, Rel::B, Rel::Bbar, Rel::BbarW];

fn conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        _ => out.push(f.clone()),
    }
}

/// Compiles a non-parametric interval formula, read at `[0,0]`, into an
/// automaton for the traces satisfying it. Under `Auto`, top-level conjuncts inside `A`/`B`/`Bbar`/`Bbar_w` take the
/// one-variable route and the rest the two-variable route.
pub fn hs_to_nba(f: &Formula, fragment: Fragment, budget: usize) -> Result<(Nba, CompilationReport), CompileError> {
    if f.is_parametric() {
        return Err(CompileError::Parametric(f.to_string()));
    }
    if !f.is_interval() {
        return Err(HybridError::NotInterval(f.to_string()).into());
    }
    let atoms: Vec<String> = f.props().into_iter().collect();
    if fragment == Fragment::Auto && !f.uses_only(&ABB_RELS) {
        let mut parts = Vec::new();
        conjuncts(f, &mut parts);
        let (abb, rest): (Vec<Formula>, Vec<Formula>) = parts.into_iter().partition(|g| g.uses_only(&ABB_RELS));
        if !abb.is_empty() {
            let (a, ra) = hs_to_nba(&and_all(abb), Fragment::Hl1, budget)?;
            let (b, rb) = hs_to_nba(&and_all(rest), Fragment::Hl2, budget)?;
            let t = Instant::now();
            let both = intersect(&a.with_atoms(&atoms)?, &b.with_atoms(&atoms)?).map_err(|e| e.in_context(&f.to_string()))?;
            let mut report = ra;
            report.route = Some(Fragment::Hl2);
            report.subformulas.extend(rb.subformulas);
            report.complementations += rb.complementations;
            report.peak_states = report.peak_states.max(rb.peak_states).max(both.num_states());
            report.stages.extend(rb.stages);
            report.stages.push(StageTime { stage: "conjoin".into(), millis: t.elapsed().as_secs_f64() * 1e3 });
            return Ok((both, report));
        }
    }
    let route = match fragment {
        Fragment::Auto if f.uses_only(&ABB_RELS) => Fragment::Hl1,
        Fragment::Auto => Fragment::Hl2,
        r => r,
    };
    let t = Instant::now();
    let hl = match route {
        Fragment::Hl1 => abb_to_hl1(f)?,
        _ => hs_to_hl2(&to_core_fragment(f, Target::BBbarEEbar)?)?,
    };
    let translate = StageTime { stage: "translate".into(), millis: t.elapsed().as_secs_f64() * 1e3 };
    let (a, mut report) = hl_to_nba(&hl.formula, budget)?;
    report.stages.insert(0, translate);
    report.route = Some(route);
    // keep the inventory of the input formula even when a proposition
    // disappears during translation
    let a = if a.atoms == atoms { a } else { a.with_atoms(&atoms)? };
    Ok((a, report))
}
