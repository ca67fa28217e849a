use super::pnf::to_pnf;
use super::RewriteError;
use crate::syntax::ast::*;

/// Translates a PLTL formula into a PHS formula over `A` and `B` that holds
/// on `[i,i]` exactly when the input holds at position `i`.
pub fn pltl_to_pab(f: &Formula) -> Result<Formula, RewriteError> {
    Ok(to_pnf(&tr(f)?))
}

fn point(f: Formula) -> Formula {
    right(f)
}

fn tr(f: &Formula) -> Result<Formula, RewriteError> {
    let ex_a = |c: &ParamConstraint, b: Formula| modal(AllenOp::exists(Rel::A), Some(c.clone()), b);
    let all_a = |c: &ParamConstraint, b: Formula| modal(AllenOp::forall(Rel::A), Some(c.clone()), b);
    Ok(match f {
        Formula::True | Formula::Prop(_) => f.clone(),
        Formula::Not(a) => not(tr(a)?),
        Formula::And(a, b) => and(tr(a)?, tr(b)?),
        Formula::Or(a, b) => or(tr(a)?, tr(b)?),
        Formula::Implies(a, b) => implies(tr(a)?, tr(b)?),
        Formula::Next(a) => ex(Rel::A, and(len(2), point(tr(a)?))),
        Formula::Until(a, b) => ex(Rel::A, and(point(tr(b)?), all(Rel::B, point(tr(a)?)))),
        Formula::Eventually { bound: None, body } => ex(Rel::A, point(tr(body)?)),
        Formula::Always { bound: None, body } => all(Rel::A, point(tr(body)?)),
        Formula::Eventually { bound: Some(c), body } if c.cmp == Cmp::Lt => {
            ex_a(&ParamConstraint::new(Cmp::Le, c.param.clone()), point(tr(body)?))
        }
        Formula::Eventually { bound: Some(c), body } if c.cmp == Cmp::Le => {
            let g = tr(body)?;
            or(g.clone(), ex_a(c, ex(Rel::A, and(len(2), point(g)))))
        }
        Formula::Always { bound: Some(c), body } if c.cmp == Cmp::Lt => {
            all_a(&ParamConstraint::new(Cmp::Le, c.param.clone()), point(tr(body)?))
        }
        Formula::Always { bound: Some(c), body } if c.cmp == Cmp::Le => {
            let g = tr(body)?;
            and(g.clone(), all_a(c, all(Rel::A, or(not(len(2)), point(g)))))
        }
        other => return Err(RewriteError::NotPltl(other.to_string())),
    })
}
