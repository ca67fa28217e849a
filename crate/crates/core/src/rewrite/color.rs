use super::{RewriteError, RewriteTrace};
use crate::syntax::ast::*;

fn negate(d: &Formula) -> Formula {
    match d {
        Formula::Not(a) => (**a).clone(),
        _ => not(d.clone()),
    }
}

/// `theta_d`: `d` holds at the right endpoint while, along the interval, the
/// colour changes at most once, from `d` to its negation.
pub fn theta(d: &Formula) -> Formula {
    let nd = right(negate(d));
    and(right(d.clone()), all(Rel::B, implies(nd.clone(), all(Rel::B, nd))))
}

/// Both colours occur infinitely often.
pub fn alt_c(c: &str) -> Formula {
    let p = prop(c);
    and(
        all(Rel::A, ex(Rel::A, right(p.clone()))),
        all(Rel::A, ex(Rel::A, right(not(p)))),
    )
}

/// Replaces each `<X>_{<u}`/`<X>_{<=u}` by `<X>(... & (theta_c | theta_!c))`.
pub fn rel_c(f: &Formula, c: &str) -> Result<Formula, RewriteError> {
    check(f, c)?;
    Ok(rel(f, c, &mut Vec::new(), &mut RewriteTrace::default()))
}

/// `rel_c(f) & alt_c`.
pub fn colorize(f: &Formula, c: &str) -> Result<Formula, RewriteError> {
    colorize_traced(f, c, &mut RewriteTrace::default())
}

pub fn colorize_traced(f: &Formula, c: &str, trace: &mut RewriteTrace) -> Result<Formula, RewriteError> {
    check(f, c)?;
    Ok(and(rel(f, c, &mut Vec::new(), trace), alt_c(c)))
}

fn check(f: &Formula, c: &str) -> Result<(), RewriteError> {
    if f.props().contains(c) {
        return Err(RewriteError::ColorCollision(c.to_string()));
    }
    let mut bad = None;
    f.visit(&mut |g| {
        if let Formula::Modal { op, constraint: Some(k), .. } = g {
            if bad.is_none() && (op.mode != Mode::Exists || !k.cmp.is_upper()) {
                bad = Some(g.to_string());
            }
        }
    });
    match bad {
        Some(g) => Err(RewriteError::Precondition(format!("`{g}` is not an existential upward modality"))),
        None if !f.is_pnf() => Err(RewriteError::Precondition("input is not in positive normal form".into())),
        None => Ok(()),
    }
}

fn rel(f: &Formula, c: &str, path: &mut Vec<usize>, trace: &mut RewriteTrace) -> Formula {
    let mut idx = 0;
    let g = f.map_children(|x| {
        path.push(idx);
        let r = rel(x, c, path, trace);
        path.pop();
        idx += 1;
        r
    });
    match g {
        Formula::Modal { op, constraint: Some(_), body } => {
            trace.push("color", path);
            let p = prop(c);
            modal(op, None, and(*body, or(theta(&p), theta(&not(p)))))
        }
        g => g,
    }
}
