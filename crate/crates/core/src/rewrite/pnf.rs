use std::collections::BTreeMap;

use super::RewriteError;
use crate::syntax::ast::*;

/// Positive normal form: negation only on propositions, `true` and, outside
/// the interval logic, on operators without a dual.
pub fn to_pnf(f: &Formula) -> Formula {
    pos(f)
}

fn pos(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::Prop(_) | Formula::Var(_) => f.clone(),
        Formula::Not(a) => neg(a),
        Formula::And(a, b) => and(pos(a), pos(b)),
        Formula::Or(a, b) => or(pos(a), pos(b)),
        Formula::Implies(a, b) => or(neg(a), pos(b)),
        _ => f.map_children(pos),
    }
}

/// PNF of `!f`.
fn neg(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::Prop(_) | Formula::Var(_) => not(f.clone()),
        Formula::Not(a) => pos(a),
        Formula::And(a, b) => or(neg(a), neg(b)),
        Formula::Or(a, b) => and(neg(a), neg(b)),
        Formula::Implies(a, b) => and(pos(a), neg(b)),
        Formula::Modal { op, constraint, body } => Formula::Modal {
            op: AllenOp { rel: op.rel, mode: op.mode.dual() },
            constraint: constraint.clone(),
            body: Box::new(neg(body)),
        },
        Formula::Next(a) => next(neg(a)),
        Formula::Eventually { bound, body } => Formula::Always { bound: bound.clone(), body: Box::new(neg(body)) },
        Formula::Always { bound, body } => Formula::Eventually { bound: bound.clone(), body: Box::new(neg(body)) },
        Formula::Bind(x, a) => bind(x.clone(), neg(a)),
        Formula::Until(..) | Formula::Yesterday(_) | Formula::Past(_) => not(pos(f)),
    }
}

/// Parameter kinds as used by a formula in positive normal form. Parameters
/// of `decl` that do not occur keep their declared kind.
pub fn pnf_kinds(f: &Formula, decl: &ParamDecl) -> Result<ParamDecl, RewriteError> {
    let mut used: BTreeMap<String, Kind> = BTreeMap::new();
    let mut clash = None;
    f.visit(&mut |g| {
        let (c, kind) = match g {
            Formula::Modal { op, constraint: Some(c), .. } => (c, c.required_kind(op.mode)),
            Formula::Eventually { bound: Some(c), .. } => (c, Kind::Upward),
            Formula::Always { bound: Some(c), .. } => (c, Kind::Downward),
            _ => return,
        };
        if let Some(k) = used.insert(c.param.clone(), kind) {
            if k != kind {
                clash = Some(c.param.clone());
            }
        }
    });
    if let Some(p) = clash {
        return Err(RewriteError::MixedPolarity(p));
    }
    let mut out = ParamDecl::default();
    for p in decl.all() {
        if !used.contains_key(p) {
            used.insert(p.clone(), decl.kind_of(p).unwrap());
        }
    }
    for (p, k) in used {
        match k {
            Kind::Upward => out.upward.insert(p),
            Kind::Downward => out.downward.insert(p),
        };
    }
    Ok(out)
}
