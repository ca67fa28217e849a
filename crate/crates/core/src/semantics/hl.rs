//! Semantics of linear-time hybrid logic with binders.

use std::collections::{BTreeMap, HashMap};

use super::{settle_point, EvalError, Horizon, TriBool};
use crate::syntax::ast::Formula;
use crate::syntax::lasso::Lasso;

/// Memoising evaluator; reuse it for many queries on one lasso.
pub struct HlEvaluator<'w> {
    w: &'w Lasso,
    n: usize,
    memo: HashMap<(*const Formula, usize, Vec<(String, usize)>), TriBool>,
    depth: HashMap<*const Formula, usize>,
}

impl<'w> HlEvaluator<'w> {
    pub fn new(w: &'w Lasso, horizon: usize) -> Result<Self, EvalError> {
        let min = Horizon::min_for(w);
        if horizon < min {
            return Err(EvalError::HorizonTooSmall { horizon, min });
        }
        Ok(HlEvaluator { w, n: horizon + 1, memo: HashMap::new(), depth: HashMap::new() })
    }

    fn depth(&mut self, f: &Formula) -> usize {
        if let Some(&d) = self.depth.get(&(f as *const _)) {
            return d;
        }
        let own = usize::from(matches!(
            f,
            Formula::Next(_) | Formula::Eventually { .. } | Formula::Always { .. } | Formula::Until(..)
        ));
        let d = own + f.children().into_iter().map(|c| self.depth(c)).max().unwrap_or(0);
        self.depth.insert(f as *const _, d);
        d
    }

    fn settle(&mut self, f: &Formula, i: usize, env: &[(String, usize)]) -> usize {
        let start = env.iter().map(|(_, p)| *p).max().unwrap_or(0).max(i);
        let d = self.depth(f);
        settle_point(start, self.w.stem.len(), self.w.cycle.len(), 2, d, 0)
    }

    /// Truth of `f` at position `i` under `env`.
    pub fn eval(&mut self, f: &'w Formula, i: usize, env: &[(String, usize)]) -> Result<TriBool, EvalError> {
        if i >= self.n {
            return Ok(TriBool::Unknown);
        }
        let mut env_key: Vec<(String, usize)> = env.to_vec();
        env_key.sort();
        env_key.dedup_by(|a, b| a.0 == b.0);
        let key = (f as *const Formula, i, env_key);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = match f {
            Formula::True => TriBool::True,
            Formula::Prop(p) => TriBool::from_bool(self.w.holds(i, p)),
            Formula::Var(x) => {
                let pos = lookup(env, x).ok_or_else(|| EvalError::UnboundVar(x.clone()))?;
                TriBool::from_bool(pos == i)
            }
            Formula::Not(a) => !self.eval(a, i, env)?,
            Formula::And(a, b) => {
                let l = self.eval(a, i, env)?;
                if l == TriBool::False {
                    l
                } else {
                    l.and(self.eval(b, i, env)?)
                }
            }
            Formula::Or(a, b) => {
                let l = self.eval(a, i, env)?;
                if l == TriBool::True {
                    l
                } else {
                    l.or(self.eval(b, i, env)?)
                }
            }
            Formula::Implies(a, b) => {
                let l = !self.eval(a, i, env)?;
                if l == TriBool::True {
                    l
                } else {
                    l.or(self.eval(b, i, env)?)
                }
            }
            Formula::Next(a) => self.eval(a, i + 1, env)?,
            Formula::Yesterday(a) => {
                if i == 0 {
                    TriBool::False
                } else {
                    self.eval(a, i - 1, env)?
                }
            }
            Formula::Past(a) => {
                let mut acc = TriBool::False;
                for k in (0..=i).rev() {
                    acc = acc.or(self.eval(a, k, env)?);
                    if acc == TriBool::True {
                        break;
                    }
                }
                acc
            }
            Formula::Eventually { bound: None, body } => self.future(f, body, i, env, false)?,
            Formula::Always { bound: None, body } => self.future(f, body, i, env, true)?,
            Formula::Bind(x, body) => {
                let mut inner: Vec<(String, usize)> = env.iter().filter(|(y, _)| y != x).cloned().collect();
                inner.push((x.clone(), i));
                self.eval(body, i, &inner)?
            }
            other => return Err(EvalError::Unsupported(format!("`{other}` is not a hybrid formula"))),
        };
        self.memo.insert(key, v);
        Ok(v)
    }

    fn future(
        &mut self,
        whole: &'w Formula,
        body: &'w Formula,
        i: usize,
        env: &[(String, usize)],
        universal: bool,
    ) -> Result<TriBool, EvalError> {
        let settle = self.settle(whole, i, env);
        let mut k = i;
        while k < self.n {
            let v = self.eval(body, k, env)?;
            let v = if universal { !v } else { v };
            match v {
                TriBool::True => return Ok(TriBool::from_bool(!universal)),
                TriBool::Unknown => break,
                TriBool::False => {}
            }
            k += 1;
        }
        Ok(if k > settle { TriBool::from_bool(universal) } else { TriBool::Unknown })
    }
}

fn lookup(env: &[(String, usize)], x: &str) -> Option<usize> {
    env.iter().rev().find(|(y, _)| y == x).map(|(_, p)| *p)
}

/// Truth of `f` at position `i` under the variable assignment `g`.
pub fn eval_hl(
    w: &Lasso,
    i: usize,
    g: &BTreeMap<String, usize>,
    f: &Formula,
    horizon: Option<usize>,
) -> Result<TriBool, EvalError> {
    let far = g.values().copied().max().unwrap_or(0).max(i);
    let h = horizon.unwrap_or(far + w.stem.len() + 4 * w.cycle.len());
    for x in f.free_vars() {
        if !g.contains_key(&x) {
            return Err(EvalError::UnboundVar(x));
        }
    }
    let env: Vec<(String, usize)> = g.iter().map(|(k, v)| (k.clone(), *v)).collect();
    HlEvaluator::new(w, h)?.eval(f, i, &env)
}
