//! Point semantics of parametric LTL.

use std::collections::HashMap;

use super::{settle_point, EvalError, Horizon, ParamValuation, TriBool};
use crate::syntax::ast::{Cmp, Formula};
use crate::syntax::lasso::Lasso;

enum Node {
    True,
    Prop(String),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Next(usize),
    Until(usize, usize),
    F(Option<(Cmp, usize)>, usize),
    G(Option<(Cmp, usize)>, usize),
}

/// Truth values of a formula at every position up to the horizon.
pub struct PointModel {
    horizon: usize,
    root: Vec<TriBool>,
}

struct Builder<'f> {
    ids: HashMap<&'f Formula, usize>,
    nodes: Vec<Node>,
    depth: Vec<usize>,
}

impl<'f> Builder<'f> {
    fn add(&mut self, f: &'f Formula, alpha: &ParamValuation) -> Result<usize, EvalError> {
        if let Some(&id) = self.ids.get(f) {
            return Ok(id);
        }
        let bound = |c: &Option<crate::syntax::ast::ParamConstraint>| -> Result<_, EvalError> {
            match c {
                None => Ok(None),
                Some(c) if c.cmp.is_upper() => Ok(Some((c.cmp, alpha.get(&c.param)?))),
                Some(c) => Err(EvalError::Unsupported(format!("bound {}{}", c.cmp.symbol(), c.param))),
            }
        };
        let (node, depth) = match f {
            Formula::True => (Node::True, 0),
            Formula::Prop(p) => (Node::Prop(p.clone()), 0),
            Formula::Not(a) => {
                let a = self.add(a, alpha)?;
                (Node::Not(a), self.depth[a])
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Until(a, b) => {
                let (a, b) = (self.add(a, alpha)?, self.add(b, alpha)?);
                let d = self.depth[a].max(self.depth[b]);
                match f {
                    Formula::And(..) => (Node::And(a, b), d),
                    Formula::Or(..) => (Node::Or(a, b), d),
                    Formula::Implies(..) => (Node::Implies(a, b), d),
                    _ => (Node::Until(a, b), d + 1),
                }
            }
            Formula::Next(a) => {
                let a = self.add(a, alpha)?;
                (Node::Next(a), self.depth[a] + 1)
            }
            Formula::Eventually { bound: b, body } => {
                let a = self.add(body, alpha)?;
                (Node::F(bound(b)?, a), self.depth[a] + 1)
            }
            Formula::Always { bound: b, body } => {
                let a = self.add(body, alpha)?;
                (Node::G(bound(b)?, a), self.depth[a] + 1)
            }
            other => return Err(EvalError::Unsupported(format!("`{other}` is not a PLTL formula"))),
        };
        let id = self.nodes.len();
        self.nodes.push(node);
        self.depth.push(depth);
        self.ids.insert(f, id);
        Ok(id)
    }
}

/// Last offset `k` admitted by `F_{~a}` / `G_{~a}` (offsets start at 0).
fn last_offset(cmp: Cmp, a: usize) -> Option<usize> {
    match cmp {
        Cmp::Le => Some(a),
        Cmp::Lt => a.checked_sub(1),
        _ => unreachable!("lower bounds rejected earlier"),
    }
}

impl PointModel {
    pub fn build(w: &Lasso, alpha: &ParamValuation, f: &Formula, horizon: Option<usize>) -> Result<Self, EvalError> {
        let bound = horizon.unwrap_or_else(|| Horizon::default_for(w, alpha, f));
        let min = Horizon::min_for(w);
        if bound < min {
            return Err(EvalError::HorizonTooSmall { horizon: bound, min });
        }
        let mut b = Builder { ids: HashMap::new(), nodes: Vec::new(), depth: Vec::new() };
        let root = b.add(f, alpha)?;
        let n = bound + 1;
        let (stem, period, mp) = (w.stem.len(), w.cycle.len(), alpha.max_value());
        let mut vals: Vec<Vec<TriBool>> = Vec::with_capacity(b.nodes.len());
        for (id, node) in b.nodes.iter().enumerate() {
            let settle = |i: usize| settle_point(i, stem, period, 2, b.depth[id], mp);
            let col: Vec<TriBool> = match node {
                Node::True => vec![TriBool::True; n],
                Node::Prop(p) => (0..n).map(|i| TriBool::from_bool(w.holds(i, p))).collect(),
                Node::Not(a) => vals[*a].iter().map(|&x| !x).collect(),
                Node::And(a, c) => (0..n).map(|i| vals[*a][i].and(vals[*c][i])).collect(),
                Node::Or(a, c) => (0..n).map(|i| vals[*a][i].or(vals[*c][i])).collect(),
                Node::Implies(a, c) => (0..n).map(|i| (!vals[*a][i]).or(vals[*c][i])).collect(),
                Node::Next(a) => (0..n).map(|i| if i + 1 < n { vals[*a][i + 1] } else { TriBool::Unknown }).collect(),
                Node::Until(a, c) => (0..n).map(|i| until(&vals[*a], &vals[*c], i, settle(i))).collect(),
                Node::F(None, a) => {
                    let t = vec![TriBool::True; n];
                    (0..n).map(|i| until(&t, &vals[*a], i, settle(i))).collect()
                }
                Node::G(None, a) => {
                    let t = vec![TriBool::True; n];
                    let neg: Vec<TriBool> = vals[*a].iter().map(|&x| !x).collect();
                    (0..n).map(|i| !until(&t, &neg, i, settle(i))).collect()
                }
                Node::F(Some((cmp, k)), a) => {
                    (0..n).map(|i| bounded_any(&vals[*a], i, last_offset(*cmp, *k), false)).collect()
                }
                Node::G(Some((cmp, k)), a) => {
                    (0..n).map(|i| bounded_any(&vals[*a], i, last_offset(*cmp, *k), true)).collect()
                }
            };
            vals.push(col);
        }
        Ok(PointModel { horizon: bound, root: vals.swap_remove(root) })
    }

    pub fn get(&self, i: usize) -> Result<TriBool, EvalError> {
        self.root
            .get(i)
            .copied()
            .ok_or(EvalError::BeyondHorizon { i, j: i, horizon: self.horizon })
    }
}

/// `phi U psi` at `i`; false is reported only once the conclusive scan
/// reaches `settle`.
pub(crate) fn until(phi: &[TriBool], psi: &[TriBool], i: usize, settle: usize) -> TriBool {
    let n = phi.len();
    let mut k = i;
    while k < n {
        match psi[k] {
            TriBool::True => return TriBool::True,
            TriBool::Unknown => break,
            TriBool::False => {}
        }
        match phi[k] {
            TriBool::False => return TriBool::False,
            TriBool::Unknown => break,
            TriBool::True => {}
        }
        k += 1;
    }
    if k > settle {
        TriBool::False
    } else {
        TriBool::Unknown
    }
}

/// Existential (or, with `universal`, universal) over positions `i..=i+last`.
fn bounded_any(vals: &[TriBool], i: usize, last: Option<usize>, universal: bool) -> TriBool {
    let Some(last) = last else {
        return TriBool::from_bool(universal);
    };
    let n = vals.len();
    let mut acc = TriBool::False;
    for k in i..=(i + last) {
        let v = if k < n { vals[k] } else { TriBool::Unknown };
        acc = acc.or(if universal { !v } else { v });
        if acc == TriBool::True {
            break;
        }
    }
    if universal {
        !acc
    } else {
        acc
    }
}

pub fn eval_pltl(
    w: &Lasso,
    i: usize,
    alpha: &ParamValuation,
    f: &Formula,
    horizon: Option<usize>,
) -> Result<TriBool, EvalError> {
    let h = horizon.unwrap_or_else(|| Horizon::default_for(w, alpha, f).max(i));
    PointModel::build(w, alpha, f, Some(h))?.get(i)
}
