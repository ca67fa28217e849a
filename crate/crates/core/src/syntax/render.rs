//! Pretty printer producing text accepted by the parser.

use super::ast::*;

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNTIL: u8 = 4;
const PREFIX: u8 = 5;

pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    go(f, 0, &mut out);
    out
}

fn constraint(c: &Option<ParamConstraint>, out: &mut String) {
    if let Some(c) = c {
        out.push_str("_{");
        out.push_str(c.cmp.symbol());
        out.push_str(&c.param);
        out.push('}');
    }
}

fn wrap(need: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if need {
        out.push('(');
    }
    body(out);
    if need {
        out.push(')');
    }
}

fn prefix(op: &str, body: &Formula, out: &mut String) {
    out.push_str(op);
    out.push(' ');
    go(body, PREFIX, out);
}

/// `ctx` is the binding strength of the surrounding position; 0 means the
/// formula may extend to the right without parentheses.
fn go(f: &Formula, ctx: u8, out: &mut String) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::Prop(p) | Formula::Var(p) => out.push_str(p),
        Formula::Not(g) => {
            out.push('!');
            go(g, PREFIX, out);
        }
        Formula::And(a, b) => wrap(ctx > AND, out, |out| {
            go(a, AND, out);
            out.push_str(" & ");
            go(b, AND + 1, out);
        }),
        Formula::Or(a, b) => wrap(ctx > OR, out, |out| {
            go(a, OR, out);
            out.push_str(" | ");
            go(b, OR + 1, out);
        }),
        Formula::Implies(a, b) => wrap(ctx > IMPLIES, out, |out| {
            go(a, IMPLIES + 1, out);
            out.push_str(" -> ");
            go(b, IMPLIES, out);
        }),
        Formula::Until(a, b) => wrap(ctx > UNTIL, out, |out| {
            go(a, UNTIL + 1, out);
            out.push_str(" U ");
            go(b, UNTIL, out);
        }),
        Formula::Modal { op, constraint: c, body } => {
            let name = op.rel.name();
            match op.mode {
                Mode::Exists => {
                    out.push('<');
                    out.push_str(name);
                    out.push('>');
                }
                Mode::Forall => {
                    out.push('[');
                    out.push_str(name);
                    out.push(']');
                }
            }
            constraint(c, out);
            out.push(' ');
            go(body, PREFIX, out);
        }
        Formula::Next(g) => prefix("X", g, out),
        Formula::Yesterday(g) => prefix("Y", g, out),
        Formula::Past(g) => prefix("P", g, out),
        Formula::Eventually { bound, body } | Formula::Always { bound, body } => {
            out.push(if matches!(f, Formula::Eventually { .. }) { 'F' } else { 'G' });
            constraint(bound, out);
            out.push(' ');
            go(body, PREFIX, out);
        }
        Formula::Bind(x, body) => wrap(ctx != 0, out, |out| {
            out.push_str("down ");
            out.push_str(x);
            out.push_str(". ");
            go(body, 0, out);
        }),
    }
}
