//! Homogeneous interval semantics over lassos.
//!
//! Truth values are tabulated for every interval `[i,j]` with `j <= H` and
//! every distinct subformula. Quantifiers ranging over right endpoints past
//! `H` answer true once a witness is found, and false only when the
//! conclusive part of the search extends far enough into the loop.

use std::collections::HashMap;

use super::{settle_point, EvalError, Horizon, Interval, ParamValuation, Table, TriBool};
use crate::syntax::ast::{Cmp, Formula, Mode, Rel};
use crate::syntax::lasso::Lasso;

const NONE: u32 = u32::MAX;

enum Node {
    True,
    Prop(String),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Modal { rel: Rel, mode: Mode, len: Option<(Cmp, usize)>, child: usize },
}

struct Dag<'f> {
    ids: HashMap<&'f Formula, usize>,
    nodes: Vec<Node>,
    depth: Vec<usize>,
}

impl<'f> Dag<'f> {
    fn add(&mut self, f: &'f Formula, alpha: &ParamValuation) -> Result<usize, EvalError> {
        if let Some(&id) = self.ids.get(f) {
            return Ok(id);
        }
        let (node, depth) = match f {
            Formula::True => (Node::True, 0),
            Formula::Prop(p) => (Node::Prop(p.clone()), 0),
            Formula::Not(a) => {
                let a = self.add(a, alpha)?;
                (Node::Not(a), self.depth[a])
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let (a, b) = (self.add(a, alpha)?, self.add(b, alpha)?);
                let d = self.depth[a].max(self.depth[b]);
                let node = match f {
                    Formula::And(..) => Node::And(a, b),
                    Formula::Or(..) => Node::Or(a, b),
                    _ => Node::Implies(a, b),
                };
                (node, d)
            }
            Formula::Modal { op, constraint, body } => {
                let child = self.add(body, alpha)?;
                let len = match constraint {
                    Some(c) => Some((c.cmp, alpha.get(&c.param)?)),
                    None => None,
                };
                (Node::Modal { rel: op.rel, mode: op.mode, len, child }, self.depth[child] + 1)
            }
            other => return Err(EvalError::Unsupported(format!("`{other}` is not an interval formula"))),
        };
        let id = self.nodes.len();
        self.nodes.push(node);
        self.depth.push(depth);
        self.ids.insert(f, id);
        Ok(id)
    }
}

/// Truth table of one formula over all intervals up to a horizon.
pub struct IntervalModel {
    horizon: usize,
    root: Table,
}

struct Ctx<'a> {
    w: &'a Lasso,
    n: usize,
    settle: usize,
    max_param: usize,
}

impl IntervalModel {
    /// Builds the table with the default horizon.
    pub fn build(w: &Lasso, alpha: &ParamValuation, f: &Formula) -> Result<Self, EvalError> {
        let h = Horizon::default_for(w, alpha, f);
        Self::build_with(w, alpha, f, Horizon { bound: h, settle_periods: 2 })
    }

    pub fn build_with(w: &Lasso, alpha: &ParamValuation, f: &Formula, h: Horizon) -> Result<Self, EvalError> {
        let min = Horizon::min_for(w);
        if h.bound < min {
            return Err(EvalError::HorizonTooSmall { horizon: h.bound, min });
        }
        let mut dag = Dag { ids: HashMap::new(), nodes: Vec::new(), depth: Vec::new() };
        let root = dag.add(f, alpha)?;
        let n = h.bound + 1;
        let ctx = Ctx { w, n, settle: h.settle_periods, max_param: alpha.max_value() };
        let mut tables: Vec<Option<Table>> = Vec::with_capacity(dag.nodes.len());
        let mut remaining = vec![0usize; dag.nodes.len()];
        for node in &dag.nodes {
            for c in children(node) {
                remaining[c] += 1;
            }
        }
        for (id, node) in dag.nodes.iter().enumerate() {
            let t = match node {
                Node::True => Table::new(n, TriBool::True),
                Node::Prop(p) => prop_table(&ctx, p),
                Node::Not(a) => map1(tables[*a].as_ref().unwrap(), |x| !x),
                Node::And(a, b) => map2(&ctx, tables[*a].as_ref().unwrap(), tables[*b].as_ref().unwrap(), TriBool::and),
                Node::Or(a, b) => map2(&ctx, tables[*a].as_ref().unwrap(), tables[*b].as_ref().unwrap(), TriBool::or),
                Node::Implies(a, b) => {
                    map2(&ctx, tables[*a].as_ref().unwrap(), tables[*b].as_ref().unwrap(), |x, y| (!x).or(y))
                }
                Node::Modal { rel, mode, len, child } => {
                    let c = tables[*child].as_ref().unwrap();
                    match mode {
                        Mode::Exists => modal_table(&ctx, *rel, *len, c, dag.depth[id]),
                        Mode::Forall => {
                            let neg = map1(c, |x| !x);
                            map1(&modal_table(&ctx, *rel, *len, &neg, dag.depth[id]), |x| !x)
                        }
                    }
                }
            };
            tables.push(Some(t));
            for c in children(node) {
                remaining[c] -= 1;
                if remaining[c] == 0 && c != root {
                    tables[c] = None;
                }
            }
        }
        let root_table = tables[root].take().unwrap();
        Ok(IntervalModel { horizon: h.bound, root: root_table })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn get(&self, iv: Interval) -> Result<TriBool, EvalError> {
        if iv.j > self.horizon {
            return Err(EvalError::BeyondHorizon { i: iv.i, j: iv.j, horizon: self.horizon });
        }
        Ok(self.root.get(iv.i, iv.j))
    }
}

fn children(n: &Node) -> Vec<usize> {
    match n {
        Node::True | Node::Prop(_) => vec![],
        Node::Not(a) => vec![*a],
        Node::Modal { child, .. } => vec![*child],
        Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) => vec![*a, *b],
    }
}

fn prop_table(ctx: &Ctx, p: &str) -> Table {
    let mut t = Table::new(ctx.n, TriBool::False);
    for i in 0..ctx.n {
        for j in i..ctx.n {
            if !ctx.w.holds(j, p) {
                break;
            }
            t.set(i, j, TriBool::True);
        }
    }
    t
}

fn map1(a: &Table, f: impl Fn(TriBool) -> TriBool) -> Table {
    Table { n: a.n, data: a.data.iter().map(|&x| f(x)).collect() }
}

fn map2(ctx: &Ctx, a: &Table, b: &Table, f: impl Fn(TriBool, TriBool) -> TriBool) -> Table {
    let mut t = Table::new(ctx.n, TriBool::False);
    for k in 0..t.data.len() {
        t.data[k] = f(a.data[k], b.data[k]);
    }
    t
}

/// Next-occurrence indices along rows (`[v][z]`, z ascending) and columns
/// (`[z][v]`, v ascending).
struct Index {
    n: usize,
    row_true: Vec<u32>,
    row_unk: Vec<u32>,
    col_true: Vec<u32>,
    col_unk: Vec<u32>,
}

impl Index {
    fn new(c: &Table) -> Self {
        let n = c.n;
        let mut ix = Index {
            n,
            row_true: vec![NONE; n * n],
            row_unk: vec![NONE; n * n],
            col_true: vec![NONE; n * n],
            col_unk: vec![NONE; n * n],
        };
        for v in 0..n {
            let (mut nt, mut nu) = (NONE, NONE);
            for z in (v..n).rev() {
                match c.get(v, z) {
                    TriBool::True => nt = z as u32,
                    TriBool::Unknown => nu = z as u32,
                    TriBool::False => {}
                }
                ix.row_true[v * n + z] = nt;
                ix.row_unk[v * n + z] = nu;
            }
        }
        for z in 0..n {
            let (mut nt, mut nu) = (NONE, NONE);
            for v in (0..=z).rev() {
                match c.get(v, z) {
                    TriBool::True => nt = v as u32,
                    TriBool::Unknown => nu = v as u32,
                    TriBool::False => {}
                }
                ix.col_true[z * n + v] = nt;
                ix.col_unk[z * n + v] = nu;
            }
        }
        ix
    }
}

/// Admissible interval lengths `[lo, hi]` for a constraint (`hi = None`
/// for no upper bound). `None` when no length qualifies.
fn length_window(len: Option<(Cmp, usize)>) -> Option<(usize, Option<usize>)> {
    match len {
        None => Some((1, None)),
        Some((Cmp::Lt, a)) if a <= 1 => None,
        Some((Cmp::Lt, a)) => Some((1, Some(a - 1))),
        Some((Cmp::Le, a)) => Some((1, Some(a))),
        Some((Cmp::Gt, a)) => Some((a + 1, None)),
        Some((Cmp::Ge, a)) => Some((a.max(1), None)),
    }
}

struct Search<'a> {
    ctx: &'a Ctx<'a>,
    ix: Index,
    lo: usize,
    hi: Option<usize>,
    depth: usize,
}

impl Search<'_> {
    fn settle(&self, start: usize) -> usize {
        let w = self.ctx.w;
        settle_point(start, w.stem.len(), w.cycle.len(), self.ctx.settle, self.depth, self.ctx.max_param)
    }

    /// Existential over `[v, z]` with `z` in `[a, b]` (`b = None`: unbounded),
    /// further restricted by the length window.
    fn row(&self, v: usize, a: usize, b: Option<usize>) -> TriBool {
        let a = a.max(v + self.lo - 1);
        let b = match (b, self.hi) {
            (Some(b), Some(h)) => Some(b.min(v + h - 1)),
            (Some(b), None) => Some(b),
            (None, Some(h)) => Some(v + h - 1),
            (None, None) => None,
        };
        if let Some(b) = b {
            if b < a {
                return TriBool::False;
            }
        }
        let n = self.ix.n;
        if a >= n {
            return TriBool::Unknown;
        }
        let last = n - 1;
        let hi = b.map_or(last, |b| b.min(last));
        let nt = self.ix.row_true[v * n + a];
        if nt != NONE && nt as usize <= hi {
            return TriBool::True;
        }
        let nu = self.ix.row_unk[v * n + a];
        match b {
            Some(b) if b <= last => {
                if nu != NONE && nu as usize <= b {
                    TriBool::Unknown
                } else {
                    TriBool::False
                }
            }
            Some(_) => TriBool::Unknown,
            None => {
                let zc = if nu == NONE { last } else { (nu as usize).saturating_sub(1) };
                if (nu == NONE || nu as usize > a) && zc >= self.settle(a) {
                    TriBool::False
                } else {
                    TriBool::Unknown
                }
            }
        }
    }

    /// Existential over `[v, z]` with `v` in `[a, b]`, for a fixed `z`.
    fn col(&self, z: usize, a: usize, b: usize) -> TriBool {
        let mut a = a;
        let mut b = b.min(z);
        if let Some(h) = self.hi {
            a = a.max((z + 1).saturating_sub(h));
        }
        if z + 1 < self.lo {
            return TriBool::False;
        }
        b = b.min(z + 1 - self.lo);
        if b < a {
            return TriBool::False;
        }
        let n = self.ix.n;
        let nt = self.ix.col_true[z * n + a];
        if nt != NONE && nt as usize <= b {
            return TriBool::True;
        }
        let nu = self.ix.col_unk[z * n + a];
        if nu != NONE && nu as usize <= b {
            TriBool::Unknown
        } else {
            TriBool::False
        }
    }
}

fn any(vals: impl Iterator<Item = TriBool>) -> TriBool {
    let mut acc = TriBool::False;
    for v in vals {
        acc = acc.or(v);
        if acc == TriBool::True {
            break;
        }
    }
    acc
}

fn modal_table(ctx: &Ctx, rel: Rel, len: Option<(Cmp, usize)>, c: &Table, depth: usize) -> Table {
    let n = ctx.n;
    let mut t = Table::new(n, TriBool::False);
    let Some((lo, hi)) = length_window(len) else {
        return t;
    };
    let s = Search { ctx, ix: Index::new(c), lo, hi, depth };
    match rel {
        Rel::L => {
            // rowres[v]: some interval starting at v qualifies.
            let rowres: Vec<TriBool> = (0..n).map(|v| s.row(v, v, None)).collect();
            let mut next_true = vec![NONE; n + 1];
            let mut next_unk = vec![NONE; n + 1];
            for v in (0..n).rev() {
                next_true[v] = if rowres[v] == TriBool::True { v as u32 } else { next_true[v + 1] };
                next_unk[v] = if rowres[v] == TriBool::Unknown { v as u32 } else { next_unk[v + 1] };
            }
            for y in 0..n {
                let a = y + 1;
                let val = if a >= n {
                    TriBool::Unknown
                } else if next_true[a] != NONE {
                    TriBool::True
                } else {
                    let nu = next_unk[a];
                    let vc = if nu == NONE { n - 1 } else { (nu as usize).saturating_sub(1) };
                    if (nu == NONE || nu as usize > a) && vc >= s.settle(a) {
                        TriBool::False
                    } else {
                        TriBool::Unknown
                    }
                };
                for x in 0..=y {
                    t.set(x, y, val);
                }
            }
        }
        Rel::Lbar => {
            let colres: Vec<TriBool> = (0..n).map(|z| s.col(z, 0, z)).collect();
            let mut acc = TriBool::False;
            for x in 0..n {
                for y in x..n {
                    t.set(x, y, acc);
                }
                acc = acc.or(colres[x]);
            }
        }
        _ => {
            for x in 0..n {
                for y in x..n {
                    let v = match rel {
                        Rel::A => s.row(y, y, None),
                        Rel::Bbar => s.row(x, y + 1, None),
                        Rel::BbarW => s.row(x, y, None),
                        Rel::B => {
                            if y == x {
                                TriBool::False
                            } else {
                                s.row(x, x, Some(y - 1))
                            }
                        }
                        Rel::E => s.col(y, x + 1, y),
                        Rel::Ebar => {
                            if x == 0 {
                                TriBool::False
                            } else {
                                s.col(y, 0, x - 1)
                            }
                        }
                        Rel::EbarW => s.col(y, 0, x),
                        Rel::Abar => s.col(x, 0, x),
                        Rel::D => {
                            if y < x + 2 {
                                TriBool::False
                            } else {
                                any((x + 1..y).map(|v| s.row(v, v, Some(y - 1))))
                            }
                        }
                        Rel::Dbar => any((0..x).map(|v| s.row(v, y + 1, None))),
                        Rel::O => {
                            if y < x + 2 {
                                TriBool::False
                            } else {
                                any((x + 1..y).map(|v| s.row(v, y + 1, None)))
                            }
                        }
                        Rel::Obar => {
                            if y < x + 2 {
                                TriBool::False
                            } else {
                                any((0..x).map(|v| s.row(v, x + 1, Some(y - 1))))
                            }
                        }
                        Rel::L | Rel::Lbar => unreachable!(),
                    };
                    t.set(x, y, v);
                }
            }
        }
    }
    t
}

/// Evaluates `f` at `iv`. `horizon = None` selects the default horizon.
pub fn eval_interval(
    w: &Lasso,
    iv: Interval,
    alpha: &ParamValuation,
    f: &Formula,
    horizon: Option<usize>,
) -> Result<TriBool, EvalError> {
    let bound = horizon.unwrap_or_else(|| Horizon::default_for(w, alpha, f).max(iv.j));
    IntervalModel::build_with(w, alpha, f, Horizon { bound, settle_periods: 2 })?.get(iv)
}

/// `(w, alpha) |= f`, i.e. truth at `[0,0]`.
pub fn eval_trace(w: &Lasso, alpha: &ParamValuation, f: &Formula) -> Result<TriBool, EvalError> {
    eval_interval(w, Interval::new(0, 0), alpha, f, None)
}
