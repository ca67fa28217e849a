use super::pnf::to_pnf;
use super::{RewriteError, RewriteTrace};
use crate::syntax::ast::*;

/// Replaces every downward parameter by 1, leaving only existential
/// modalities with `<`/`<=` constraints. Universal `>`/`>=` constraints must
/// have been removed first.
pub fn to_prompt(f: &Formula) -> Result<Formula, RewriteError> {
    to_prompt_traced(f, &mut RewriteTrace::default())
}

pub fn to_prompt_traced(f: &Formula, trace: &mut RewriteTrace) -> Result<Formula, RewriteError> {
    let f = if f.is_pnf() { f.clone() } else { to_pnf(f) };
    if let Some(bad) = find(&f, |op, c| op.mode == Mode::Forall && !c.cmp.is_upper()) {
        return Err(RewriteError::Precondition(format!("universal upward constraint remains in `{bad}`")));
    }
    Ok(prompt(&f, &mut Vec::new(), trace))
}

fn find(f: &Formula, pred: impl Fn(&AllenOp, &ParamConstraint) -> bool) -> Option<Formula> {
    let mut out = None;
    f.visit(&mut |g| {
        if let Formula::Modal { op, constraint: Some(c), .. } = g {
            if out.is_none() && pred(op, c) {
                out = Some(g.clone());
            }
        }
    });
    out
}

fn prompt(f: &Formula, path: &mut Vec<usize>, trace: &mut RewriteTrace) -> Formula {
    let mut idx = 0;
    let g = f.map_children(|c| {
        path.push(idx);
        let r = prompt(c, path, trace);
        path.pop();
        idx += 1;
        r
    });
    let Formula::Modal { op, constraint: Some(c), body } = &g else {
        return g;
    };
    let body = (**body).clone();
    let (rule, out) = match (op.mode, c.cmp) {
        (Mode::Exists, Cmp::Ge) => ("prompt-ex-ge", ex(op.rel, body)),
        (Mode::Exists, Cmp::Gt) => ("prompt-ex-gt", ex(op.rel, and(ex(Rel::B, tt()), body))),
        (Mode::Forall, Cmp::Le) => ("prompt-all-le", all(op.rel, or(ex(Rel::B, tt()), body))),
        (Mode::Forall, Cmp::Lt) => ("prompt-all-lt", tt()),
        _ => return g,
    };
    trace.push(rule, path);
    out
}
