//! Shared abstract syntax for interval formulas (PHS/HS), point formulas (PLTL)
//! and linear-time hybrid formulas (HL).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Allen relation tag of an interval modality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    A,
    Abar,
    L,
    Lbar,
    B,
    Bbar,
    /// Reflexive closure of `Bbar`.
    BbarW,
    E,
    Ebar,
    /// Reflexive closure of `Ebar`.
    EbarW,
    D,
    Dbar,
    O,
    Obar,
}

impl Rel {
    pub const ALL: [Rel; 14] = [
        Rel::A,
        Rel::Abar,
        Rel::L,
        Rel::Lbar,
        Rel::B,
        Rel::Bbar,
        Rel::BbarW,
        Rel::E,
        Rel::Ebar,
        Rel::EbarW,
        Rel::D,
        Rel::Dbar,
        Rel::O,
        Rel::Obar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rel::A => "A",
            Rel::Abar => "Abar",
            Rel::L => "L",
            Rel::Lbar => "Lbar",
            Rel::B => "B",
            Rel::Bbar => "Bbar",
            Rel::BbarW => "Bbar_w",
            Rel::E => "E",
            Rel::Ebar => "Ebar",
            Rel::EbarW => "Ebar_w",
            Rel::D => "D",
            Rel::Dbar => "Dbar",
            Rel::O => "O",
            Rel::Obar => "Obar",
        }
    }

    pub fn from_name(s: &str) -> Option<Rel> {
        Rel::ALL.iter().copied().find(|r| r.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    /// `<X>`
    Exists,
    /// `[X]`
    Forall,
}

impl Mode {
    pub fn dual(self) -> Mode {
        match self {
            Mode::Exists => Mode::Forall,
            Mode::Forall => Mode::Exists,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AllenOp {
    pub rel: Rel,
    pub mode: Mode,
}

impl AllenOp {
    pub fn exists(rel: Rel) -> Self {
        AllenOp { rel, mode: Mode::Exists }
    }
    pub fn forall(rel: Rel) -> Self {
        AllenOp { rel, mode: Mode::Forall }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Cmp {
    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }

    /// `<` and `<=`.
    pub fn is_upper(self) -> bool {
        matches!(self, Cmp::Lt | Cmp::Le)
    }

    pub fn holds(self, lhs: usize, rhs: usize) -> bool {
        match self {
            Cmp::Lt => lhs < rhs,
            Cmp::Le => lhs <= rhs,
            Cmp::Gt => lhs > rhs,
            Cmp::Ge => lhs >= rhs,
        }
    }
}

/// Parameter kind: upward parameters bound lengths from above in existential
/// position, downward ones from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Upward,
    Downward,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Upward => Kind::Downward,
            Kind::Downward => Kind::Upward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamConstraint {
    pub cmp: Cmp,
    pub param: String,
}

impl ParamConstraint {
    pub fn new(cmp: Cmp, param: impl Into<String>) -> Self {
        ParamConstraint { cmp, param: param.into() }
    }

    /// The kind a parameter must have when this constraint decorates an
    /// operator of the given mode.
    pub fn required_kind(&self, mode: Mode) -> Kind {
        match (mode, self.cmp.is_upper()) {
            (Mode::Exists, true) | (Mode::Forall, false) => Kind::Upward,
            _ => Kind::Downward,
        }
    }
}

/// Declared parameters, split into upward and downward sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamDecl {
    pub upward: BTreeSet<String>,
    pub downward: BTreeSet<String>,
}

impl ParamDecl {
    pub fn kind_of(&self, p: &str) -> Option<Kind> {
        if self.upward.contains(p) {
            Some(Kind::Upward)
        } else if self.downward.contains(p) {
            Some(Kind::Downward)
        } else {
            None
        }
    }

    pub fn is_empty(&self) -> bool {
        self.upward.is_empty() && self.downward.is_empty()
    }

    pub fn all(&self) -> impl Iterator<Item = &String> {
        self.upward.iter().chain(self.downward.iter())
    }
}

/// Formula tree. Interval, point and hybrid dialects share one type; the
/// parser and the individual passes check which node kinds they accept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    True,
    Prop(String),
    /// Hybrid position variable.
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Modal {
        op: AllenOp,
        constraint: Option<ParamConstraint>,
        body: Box<Formula>,
    },
    /// Strict next position.
    Next(Box<Formula>),
    /// Strict previous position (false at position 0).
    Yesterday(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    /// Reflexive eventually, optionally bounded (`F_{<=u}`).
    Eventually {
        bound: Option<ParamConstraint>,
        body: Box<Formula>,
    },
    /// Reflexive always, optionally bounded (`G_{<=l}`).
    Always {
        bound: Option<ParamConstraint>,
        body: Box<Formula>,
    },
    /// Reflexive past.
    Past(Box<Formula>),
    /// `down x. body`
    Bind(String, Box<Formula>),
}

pub fn tt() -> Formula {
    Formula::True
}

pub fn ff() -> Formula {
    Formula::Not(Box::new(Formula::True))
}

pub fn prop(name: impl Into<String>) -> Formula {
    Formula::Prop(name.into())
}

pub fn var(name: impl Into<String>) -> Formula {
    Formula::Var(name.into())
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

/// `(a -> b) & (b -> a)`
pub fn iff(a: Formula, b: Formula) -> Formula {
    and(implies(a.clone(), b.clone()), implies(b, a))
}

/// Left-nested conjunction; `true` when empty.
pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Formula {
    items.into_iter().reduce(and).unwrap_or(Formula::True)
}

/// Left-nested disjunction; `!true` when empty.
pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Formula {
    items.into_iter().reduce(or).unwrap_or_else(ff)
}

pub fn ex(rel: Rel, body: Formula) -> Formula {
    Formula::Modal { op: AllenOp::exists(rel), constraint: None, body: Box::new(body) }
}

pub fn all(rel: Rel, body: Formula) -> Formula {
    Formula::Modal { op: AllenOp::forall(rel), constraint: None, body: Box::new(body) }
}

pub fn ex_c(rel: Rel, cmp: Cmp, param: &str, body: Formula) -> Formula {
    Formula::Modal {
        op: AllenOp::exists(rel),
        constraint: Some(ParamConstraint::new(cmp, param)),
        body: Box::new(body),
    }
}

pub fn all_c(rel: Rel, cmp: Cmp, param: &str, body: Formula) -> Formula {
    Formula::Modal {
        op: AllenOp::forall(rel),
        constraint: Some(ParamConstraint::new(cmp, param)),
        body: Box::new(body),
    }
}

pub fn modal(op: AllenOp, constraint: Option<ParamConstraint>, body: Formula) -> Formula {
    Formula::Modal { op, constraint, body: Box::new(body) }
}

pub fn next(f: Formula) -> Formula {
    Formula::Next(Box::new(f))
}

pub fn yesterday(f: Formula) -> Formula {
    Formula::Yesterday(Box::new(f))
}

pub fn until(a: Formula, b: Formula) -> Formula {
    Formula::Until(Box::new(a), Box::new(b))
}

pub fn eventually(f: Formula) -> Formula {
    Formula::Eventually { bound: None, body: Box::new(f) }
}

pub fn always(f: Formula) -> Formula {
    Formula::Always { bound: None, body: Box::new(f) }
}

pub fn past(f: Formula) -> Formula {
    Formula::Past(Box::new(f))
}

pub fn bind(x: impl Into<String>, f: Formula) -> Formula {
    Formula::Bind(x.into(), Box::new(f))
}

impl Formula {
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | Prop(_) | Var(_) => vec![],
            Not(a) | Next(a) | Yesterday(a) | Past(a) | Bind(_, a) => vec![a],
            Modal { body, .. } | Eventually { body, .. } | Always { body, .. } => vec![body],
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) => vec![a, b],
        }
    }

    /// Kinds required by the operators carrying each parameter, as the
    /// grammar assigns them; `None` when a parameter needs both kinds.
    pub fn syntactic_decl(&self) -> Option<ParamDecl> {
        let mut decl = ParamDecl::default();
        let mut ok = true;
        self.visit(&mut |g| {
            let (p, kind) = match g {
                Formula::Modal { op, constraint: Some(c), .. } => (&c.param, c.required_kind(op.mode)),
                Formula::Eventually { bound: Some(c), .. } => (&c.param, Kind::Upward),
                Formula::Always { bound: Some(c), .. } => (&c.param, Kind::Downward),
                _ => return,
            };
            let (mine, other) = match kind {
                Kind::Upward => (&mut decl.upward, &decl.downward),
                Kind::Downward => (&mut decl.downward, &decl.upward),
            };
            ok &= !other.contains(p);
            mine.insert(p.clone());
        });
        ok.then_some(decl)
    }

    /// Number of distinct subformulas.
    pub fn size(&self) -> usize {
        fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>) {
            if seen.insert(f) {
                for c in f.children() {
                    walk(c, seen);
                }
            }
        }
        let mut seen = HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    /// Number of nodes in the tree.
    pub fn tree_size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::tree_size).sum::<usize>()
    }

    /// Nesting depth of temporal operators.
    pub fn modal_depth(&self) -> usize {
        use Formula::*;
        let inner = self.children().into_iter().map(Formula::modal_depth).max().unwrap_or(0);
        match self {
            Modal { .. } | Next(_) | Yesterday(_) | Until(..) | Eventually { .. } | Always { .. } | Past(_) => {
                inner + 1
            }
            _ => inner,
        }
    }

    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Modal { constraint: Some(c), .. }
            | Formula::Eventually { bound: Some(c), .. }
            | Formula::Always { bound: Some(c), .. } => {
                out.insert(c.param.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn any(&self, pred: &impl Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Var(x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                Formula::Bind(x, body) => {
                    bound.push(x.clone());
                    walk(body, bound, out);
                    bound.pop();
                }
                _ => {
                    for c in f.children() {
                        walk(c, bound, out);
                    }
                }
            }
        }
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// All variables, free or bound.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Var(x) | Formula::Bind(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    /// Positive normal form: negation only in front of propositions or `true`,
    /// no implications.
    pub fn is_pnf(&self) -> bool {
        match self {
            Formula::Not(inner) => matches!(**inner, Formula::Prop(_) | Formula::True),
            Formula::Implies(..) => false,
            _ => self.children().into_iter().all(Formula::is_pnf),
        }
    }

    pub fn is_parametric(&self) -> bool {
        !self.params().is_empty()
    }

    /// True if the formula only uses interval constructs.
    pub fn is_interval(&self) -> bool {
        !self.any(&|f| {
            matches!(
                f,
                Formula::Var(_)
                    | Formula::Next(_)
                    | Formula::Yesterday(_)
                    | Formula::Until(..)
                    | Formula::Eventually { .. }
                    | Formula::Always { .. }
                    | Formula::Past(_)
                    | Formula::Bind(..)
            )
        })
    }

    /// Every modality's relation is in `rels`.
    pub fn uses_only(&self, rels: &[Rel]) -> bool {
        !self.any(&|f| matches!(f, Formula::Modal { op, .. } if !rels.contains(&op.rel)))
    }

    pub fn map_children(&self, mut g: impl FnMut(&Formula) -> Formula) -> Formula {
        use Formula::*;
        let bx = |f: Formula| Box::new(f);
        match self {
            True | Prop(_) | Var(_) => self.clone(),
            Not(a) => Not(bx(g(a))),
            And(a, b) => And(bx(g(a)), bx(g(b))),
            Or(a, b) => Or(bx(g(a)), bx(g(b))),
            Implies(a, b) => Implies(bx(g(a)), bx(g(b))),
            Modal { op, constraint, body } => Modal { op: *op, constraint: constraint.clone(), body: bx(g(body)) },
            Next(a) => Next(bx(g(a))),
            Yesterday(a) => Yesterday(bx(g(a))),
            Until(a, b) => Until(bx(g(a)), bx(g(b))),
            Eventually { bound, body } => Eventually { bound: bound.clone(), body: bx(g(body)) },
            Always { bound, body } => Always { bound: bound.clone(), body: bx(g(body)) },
            Past(a) => Past(bx(g(a))),
            Bind(x, a) => Bind(x.clone(), bx(g(a))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_formula(self))
    }
}

/// `len_k`: holds exactly on intervals of length `k` (k >= 1).
pub fn len(k: usize) -> Formula {
    assert!(k >= 1, "len_k needs k >= 1");
    let mut lower = Formula::True;
    for _ in 0..k - 1 {
        lower = ex(Rel::B, lower);
    }
    let mut upper = ff();
    for _ in 0..k {
        upper = all(Rel::B, upper);
    }
    if k == 1 {
        upper
    } else {
        and(lower, upper)
    }
}

/// `right(phi) = <A>(len_1 & phi)`: phi holds at the right endpoint.
pub fn right(f: Formula) -> Formula {
    ex(Rel::A, and(len(1), f))
}
