use super::pnf::to_pnf;
use super::{RewriteError, RewriteTrace};
use crate::syntax::ast::*;

/// Target fragment of `to_core_fragment`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// `B`, `Bbar`, `E`, `Ebar`, plus parametric `Bbar_w` and `Ebar_w`.
    BBbarEEbar,
    /// `A`, `B`, `Bbar`, plus parametric `Bbar_w`.
    ABBbar,
}

impl Target {
    fn keeps(self, rel: Rel, parametric: bool) -> bool {
        match self {
            Target::BBbarEEbar => match rel {
                Rel::B | Rel::Bbar | Rel::E | Rel::Ebar => true,
                Rel::BbarW | Rel::EbarW => parametric,
                _ => false,
            },
            Target::ABBbar => match rel {
                Rel::A | Rel::B | Rel::Bbar => true,
                Rel::BbarW => parametric,
                _ => false,
            },
        }
    }
}

fn child(path: &mut Vec<usize>, i: usize) -> &mut Vec<usize> {
    path.push(i);
    path
}

fn upper_of(c: &ParamConstraint) -> Option<ParamConstraint> {
    match c.cmp {
        Cmp::Ge => Some(ParamConstraint::new(Cmp::Lt, c.param.clone())),
        Cmp::Gt => Some(ParamConstraint::new(Cmp::Le, c.param.clone())),
        _ => None,
    }
}

fn is_universal_upward(op: &AllenOp, c: &Option<ParamConstraint>) -> bool {
    op.mode == Mode::Forall && c.as_ref().is_some_and(|c| !c.cmp.is_upper())
}

/// Removes every universal modality with a `>`/`>=` constraint; the result
/// is in positive normal form.
pub fn drop_universal_upward(f: &Formula) -> Formula {
    drop_universal_upward_traced(f, &mut RewriteTrace::default())
}

pub fn drop_universal_upward_traced(f: &Formula, trace: &mut RewriteTrace) -> Formula {
    let f = if f.is_pnf() { f.clone() } else { to_pnf(f) };
    drop_uu(&f, &mut Vec::new(), trace)
}

fn drop_uu(f: &Formula, path: &mut Vec<usize>, trace: &mut RewriteTrace) -> Formula {
    let mut idx = 0;
    let g = f.map_children(|c| {
        let r = drop_uu(c, child(path, idx), trace);
        path.pop();
        idx += 1;
        r
    });
    match &g {
        Formula::Modal { op, constraint, body } if is_universal_upward(op, constraint) => {
            let c = constraint.as_ref().unwrap();
            let (rule, out) = eliminate(op.rel, c, body);
            trace.push(rule, path);
            if out.any(&|h| matches!(h, Formula::Modal { op, constraint, .. } if is_universal_upward(op, constraint))) {
                drop_uu(&out, path, trace)
            } else {
                out
            }
        }
        _ => g,
    }
}

fn eliminate(rel: Rel, c: &ParamConstraint, phi: &Formula) -> (&'static str, Formula) {
    let lo = upper_of(c).unwrap();
    let phi = phi.clone();
    let ex_lo = |r: Rel, b: Formula| modal(AllenOp::exists(r), Some(lo.clone()), b);
    match rel {
        Rel::B => ("uu-B", all(Rel::B, or(phi, ex_lo(Rel::BbarW, tt())))),
        Rel::E => ("uu-E", all(Rel::E, or(phi, ex_lo(Rel::EbarW, tt())))),
        Rel::Bbar => ("uu-Bbar", or(ex_lo(Rel::Bbar, all(Rel::Bbar, phi.clone())), all(Rel::Bbar, phi))),
        Rel::Ebar => ("uu-Ebar", or(ex_lo(Rel::Ebar, all(Rel::Ebar, phi.clone())), all(Rel::Ebar, phi))),
        Rel::BbarW => ("uu-Bbar_w", or(ex_lo(Rel::BbarW, all(Rel::Bbar, phi.clone())), all(Rel::BbarW, phi))),
        Rel::EbarW => ("uu-Ebar_w", or(ex_lo(Rel::EbarW, all(Rel::Ebar, phi.clone())), all(Rel::EbarW, phi))),
        Rel::A if c.cmp == Cmp::Gt => ("uu-A", ex_lo(Rel::A, all(Rel::Bbar, phi))),
        Rel::A => ("uu-A", or(ex_lo(Rel::A, all(Rel::Bbar, phi.clone())), all(Rel::A, phi))),
        other => {
            let neg = to_pnf(&not(phi));
            ("uu-core", to_pnf(&not(core_exists(other, Some(c.clone()), neg))))
        }
    }
}

/// `<rel>_c phi` expressed with `B`, `Bbar`, `E`, `Ebar` and parametric
/// `Bbar_w`/`Ebar_w`. `phi` is already converted.
fn core_exists(rel: Rel, c: Option<ParamConstraint>, phi: Formula) -> Formula {
    let len1 = || len(1);
    let not_len1 = || ex(Rel::B, tt());
    let ex_c = |r: Rel, b: Formula| modal(AllenOp::exists(r), c.clone(), b);
    match (rel, c.is_some()) {
        (Rel::B | Rel::Bbar | Rel::E | Rel::Ebar, _) | (Rel::BbarW | Rel::EbarW, true) => ex_c(rel, phi),
        (Rel::BbarW, false) => or(phi.clone(), ex(Rel::Bbar, phi)),
        (Rel::EbarW, false) => or(phi.clone(), ex(Rel::Ebar, phi)),
        (Rel::A, true) => {
            let core = and(len1(), ex_c(Rel::BbarW, phi));
            or(core.clone(), ex(Rel::E, core))
        }
        (Rel::A, false) => {
            let core = and(all(Rel::E, ff()), or(phi.clone(), ex(Rel::Bbar, phi)));
            or(core.clone(), ex(Rel::E, core))
        }
        (Rel::Abar, true) => {
            let core = and(len1(), ex_c(Rel::EbarW, phi));
            or(core.clone(), ex(Rel::B, core))
        }
        (Rel::Abar, false) => {
            let core = and(all(Rel::B, ff()), or(phi.clone(), ex(Rel::Ebar, phi)));
            or(core.clone(), ex(Rel::B, core))
        }
        (Rel::L, true) => ex(Rel::Bbar, ex(Rel::E, and(len1(), ex_c(Rel::BbarW, phi)))),
        (Rel::L, false) => ex(Rel::Bbar, ex(Rel::E, and(len1(), or(phi.clone(), ex(Rel::Bbar, phi))))),
        (Rel::Lbar, true) => ex(Rel::Ebar, ex(Rel::B, and(len1(), ex_c(Rel::EbarW, phi)))),
        (Rel::Lbar, false) => ex(Rel::Ebar, ex(Rel::B, and(len1(), or(phi.clone(), ex(Rel::Ebar, phi))))),
        (Rel::D, _) => ex(Rel::B, ex_c(Rel::E, phi)),
        (Rel::Dbar, _) => ex(Rel::Bbar, ex_c(Rel::Ebar, phi)),
        (Rel::O, _) => ex(Rel::E, and(not_len1(), ex_c(Rel::Bbar, phi))),
        (Rel::Obar, _) => ex(Rel::B, and(not_len1(), ex_c(Rel::Ebar, phi))),
    }
}

/// Rewrites into the target fragment. Fails on relations the target cannot
/// express (only possible for `ABBbar`).
pub fn to_core_fragment(f: &Formula, target: Target) -> Result<Formula, RewriteError> {
    to_core_fragment_traced(f, target, &mut RewriteTrace::default())
}

pub fn to_core_fragment_traced(f: &Formula, target: Target, trace: &mut RewriteTrace) -> Result<Formula, RewriteError> {
    let f = if f.is_pnf() { f.clone() } else { to_pnf(f) };
    core(&f, target, &mut Vec::new(), trace)
}

fn core(f: &Formula, target: Target, path: &mut Vec<usize>, trace: &mut RewriteTrace) -> Result<Formula, RewriteError> {
    let mut err = None;
    let mut idx = 0;
    let g = f.map_children(|c| {
        let r = core(c, target, child(path, idx), trace);
        path.pop();
        idx += 1;
        r.unwrap_or_else(|e| {
            err.get_or_insert(e);
            Formula::True
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let Formula::Modal { op, constraint, body } = &g else {
        return Ok(g);
    };
    if target.keeps(op.rel, constraint.is_some()) {
        return Ok(g);
    }
    if target == Target::ABBbar && op.rel != Rel::BbarW {
        return Err(RewriteError::FragmentViolation(g.to_string()));
    }
    let rule = core_rule_name(op.rel);
    trace.push(rule, path);
    Ok(match op.mode {
        Mode::Exists => core_exists(op.rel, constraint.clone(), (**body).clone()),
        Mode::Forall => {
            let neg = to_pnf(&not((**body).clone()));
            to_pnf(&not(core_exists(op.rel, constraint.clone(), neg)))
        }
    })
}

fn core_rule_name(rel: Rel) -> &'static str {
    match rel {
        Rel::A => "core-A",
        Rel::Abar => "core-Abar",
        Rel::L => "core-L",
        Rel::Lbar => "core-Lbar",
        Rel::BbarW => "core-Bbar_w",
        Rel::EbarW => "core-Ebar_w",
        Rel::D => "core-D",
        Rel::Dbar => "core-Dbar",
        Rel::O => "core-O",
        Rel::Obar => "core-Obar",
        Rel::B | Rel::Bbar | Rel::E | Rel::Ebar => "core-keep",
    }
}
