//! A subset of the Hanoi Omega-Automata format (state-based Büchi
//! acceptance, explicit labels on edges) and DOT export.

use super::guard::{Cube, Guard};
use super::nba::Nba;
use super::AutomataError;

fn hoa_guard(g: &Guard) -> String {
    if g.is_true() {
        return "t".into();
    }
    if g.is_false() {
        return "f".into();
    }
    let cube = |c: &Cube| {
        let mut lits = Vec::new();
        for a in 0..64 {
            if c.pos & (1 << a) != 0 {
                lits.push(format!("{a}"));
            } else if c.neg & (1 << a) != 0 {
                lits.push(format!("!{a}"));
            }
        }
        lits.join("&")
    };
    g.cubes().iter().map(cube).collect::<Vec<_>>().join(" | ")
}

pub fn to_hoa(a: &Nba) -> String {
    let mut s = String::new();
    s.push_str("HOA: v1\n");
    s.push_str(&format!("States: {}\n", a.num_states()));
    s.push_str(&format!("Start: {}\n", a.init));
    s.push_str(&format!("AP: {}", a.atoms.len()));
    for name in &a.atoms {
        s.push_str(&format!(" \"{name}\""));
    }
    s.push('\n');
    s.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\n--BODY--\n");
    for q in 0..a.num_states() {
        s.push_str(&format!("State: {q}{}\n", if a.accepting[q] { " {0}" } else { "" }));
        for (g, t) in &a.edges[q] {
            s.push_str(&format!("[{}] {t}\n", hoa_guard(g)));
        }
    }
    s.push_str("--END--\n");
    s
}

fn err(line: usize, msg: impl Into<String>) -> AutomataError {
    AutomataError::Hoa { line, msg: msg.into() }
}

/// Parses what `to_hoa` writes: `[label] target` edges with labels built
/// from `t`, `f`, atom indices, `!`, `&` and `|` (no parentheses).
pub fn parse_hoa(text: &str) -> Result<Nba, AutomataError> {
    let mut states = None;
    let mut start = None;
    let mut atoms: Option<Vec<String>> = None;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    for (ln, line) in lines.by_ref() {
        if line == "--BODY--" {
            break;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| err(ln, "expected `Key: value`"))?;
        let rest = rest.trim();
        match key {
            "HOA" | "acc-name" | "name" | "tool" | "properties" => {}
            "States" => states = Some(rest.parse::<usize>().map_err(|_| err(ln, "bad state count"))?),
            "Start" => start = Some(rest.parse::<usize>().map_err(|_| err(ln, "bad start state"))?),
            "Acceptance" => {
                if rest.split_whitespace().collect::<Vec<_>>() != ["1", "Inf(0)"] {
                    return Err(err(ln, "only `Acceptance: 1 Inf(0)` is supported"));
                }
            }
            "AP" => {
                let mut parts = rest.splitn(2, char::is_whitespace);
                let count: usize = parts.next().unwrap_or("").parse().map_err(|_| err(ln, "bad AP count"))?;
                let names: Vec<String> = parts.next().unwrap_or("").split('"').skip(1).step_by(2).map(String::from).collect();
                if names.len() != count {
                    return Err(err(ln, "AP count does not match names"));
                }
                atoms = Some(names);
            }
            other => return Err(err(ln, format!("unsupported header `{other}`"))),
        }
    }
    let n = states.ok_or_else(|| err(0, "missing States"))?;
    let mut a = Nba::new(atoms.unwrap_or_default())?;
    for _ in 0..n {
        a.add_state(false);
    }
    a.init = start.ok_or_else(|| err(0, "missing Start"))?;
    if a.init >= n {
        return Err(err(0, "start state out of range"));
    }
    let mut cur = None;
    for (ln, line) in lines {
        if line == "--END--" {
            return Ok(a);
        }
        if let Some(rest) = line.strip_prefix("State:") {
            let mut parts = rest.split_whitespace();
            let q: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(ln, "bad state id"))?;
            if q >= n {
                return Err(err(ln, "state out of range"));
            }
            a.accepting[q] = parts.next() == Some("{0}");
            cur = Some(q);
        } else if let Some(rest) = line.strip_prefix('[') {
            let (label, target) = rest.split_once(']').ok_or_else(|| err(ln, "unterminated label"))?;
            let t: usize = target.trim().parse().map_err(|_| err(ln, "bad target"))?;
            if t >= n {
                return Err(err(ln, "target out of range"));
            }
            let q = cur.ok_or_else(|| err(ln, "edge before any State"))?;
            let g = parse_label(label, a.atoms.len()).map_err(|m| err(ln, m))?;
            a.add_edge(q, g, t);
        } else {
            return Err(err(ln, format!("unexpected `{line}`")));
        }
    }
    Err(err(0, "missing --END--"))
}

fn parse_label(s: &str, n_atoms: usize) -> Result<Guard, String> {
    let mut acc = Guard::ff();
    for disj in s.split('|') {
        let mut cube = Guard::tt();
        for lit in disj.split('&').map(str::trim) {
            let g = match lit {
                "t" => Guard::tt(),
                "f" => Guard::ff(),
                _ => {
                    let (neg, num) = match lit.strip_prefix('!') {
                        Some(r) => (true, r.trim()),
                        None => (false, lit),
                    };
                    let i: usize = num.parse().map_err(|_| format!("bad literal `{lit}`"))?;
                    if i >= n_atoms {
                        return Err(format!("atom index {i} out of range"));
                    }
                    Guard::lit(i, !neg)
                }
            };
            cube = cube.and(&g);
        }
        acc = acc.or(&cube);
    }
    Ok(acc)
}

pub fn to_dot(a: &Nba) -> String {
    let mut s = String::from("digraph nba {\n  rankdir=LR;\n  init [shape=point];\n");
    for q in 0..a.num_states() {
        let shape = if a.accepting[q] { "doublecircle" } else { "circle" };
        s.push_str(&format!("  q{q} [shape={shape}, label=\"{q}\"];\n"));
    }
    s.push_str(&format!("  init -> q{};\n", a.init));
    for q in 0..a.num_states() {
        for (g, t) in &a.edges[q] {
            let label = g.render(&a.atoms).replace('"', "\\\"");
            s.push_str(&format!("  q{q} -> q{t} [label=\"{label}\"];\n"));
        }
    }
    s.push_str("}\n");
    s
}
