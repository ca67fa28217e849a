use std::collections::HashMap;

use super::guard::{Guard, Mask};
use super::nba::Nba;
use super::AutomataError;

fn same_inventory(a: &Nba, b: &Nba) -> Result<(), AutomataError> {
    if a.atoms != b.atoms {
        let diff = a
            .atoms
            .iter()
            .chain(b.atoms.iter())
            .find(|x| !a.atoms.contains(x) || !b.atoms.contains(x))
            .cloned()
            .unwrap_or_else(|| "atom order".into());
        return Err(AutomataError::InventoryMismatch(diff));
    }
    Ok(())
}

/// Explores a product lazily from `init`, numbering states in discovery
/// order. `step` lists the guarded successors of a product state.
pub(crate) fn explore<S: Clone + Eq + std::hash::Hash>(
    atoms: Vec<String>,
    init: S,
    accepting: impl Fn(&S) -> bool,
    mut step: impl FnMut(&S) -> Result<Vec<(Guard, S)>, AutomataError>,
    budget: usize,
) -> Result<Nba, AutomataError> {
    let mut out = Nba::new(atoms)?;
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut todo = vec![init.clone()];
    index.insert(init.clone(), out.add_state(accepting(&init)));
    let mut edges = 0usize;
    while let Some(s) = todo.pop() {
        let from = index[&s];
        let succ = step(&s)?;
        edges += succ.len();
        if edges > budget.saturating_mul(16) {
            return Err(AutomataError::Budget { budget, context: String::new() });
        }
        for (g, t) in succ {
            if g.is_false() {
                continue;
            }
            let to = match index.get(&t) {
                Some(&k) => k,
                None => {
                    if out.num_states() >= budget {
                        return Err(AutomataError::Budget { budget, context: String::new() });
                    }
                    let k = out.add_state(accepting(&t));
                    index.insert(t.clone(), k);
                    todo.push(t);
                    k
                }
            };
            out.add_edge(from, g, to);
        }
    }
    Ok(out)
}

/// Language intersection. Weak or all-accepting operands use the plain
/// product, otherwise the two-copy degeneralised product.
pub fn intersect(a: &Nba, b: &Nba) -> Result<Nba, AutomataError> {
    same_inventory(a, b)?;
    let all_acc = |x: &Nba| x.accepting.iter().all(|&f| f);
    let plain = all_acc(a) || all_acc(b) || (a.is_weak() && b.is_weak());
    let out = if plain {
        explore(
            a.atoms.clone(),
            (a.init, b.init),
            |&(p, q)| a.accepting[p] && b.accepting[q],
            |&(p, q)| {
                let mut v = Vec::new();
                for (g, t) in &a.edges[p] {
                    for (h, u) in &b.edges[q] {
                        v.push((g.and(h), (*t, *u)));
                    }
                }
                Ok(v)
            },
            usize::MAX,
        )?
    } else {
        explore(
            a.atoms.clone(),
            (a.init, b.init, 0u8),
            |&(p, _, c)| c == 0 && a.accepting[p],
            |&(p, q, c)| {
                let nc = match c {
                    0 if a.accepting[p] => 1,
                    1 if b.accepting[q] => 0,
                    c => c,
                };
                let mut v = Vec::new();
                for (g, t) in &a.edges[p] {
                    for (h, u) in &b.edges[q] {
                        v.push((g.and(h), (*t, *u, nc)));
                    }
                }
                Ok(v)
            },
            usize::MAX,
        )?
    };
    Ok(out.reduce())
}

/// Language union (disjoint copies under a fresh initial state).
pub fn union(a: &Nba, b: &Nba) -> Result<Nba, AutomataError> {
    same_inventory(a, b)?;
    let mut out = Nba::new(a.atoms.clone())?;
    let root = out.add_state(false);
    let off_a = out.num_states();
    for &f in &a.accepting {
        out.add_state(f);
    }
    let off_b = out.num_states();
    for &f in &b.accepting {
        out.add_state(f);
    }
    for (x, off) in [(a, off_a), (b, off_b)] {
        for q in 0..x.num_states() {
            for (g, t) in &x.edges[q] {
                out.add_edge(off + q, g.clone(), off + t);
            }
        }
        for (g, t) in &x.edges[x.init] {
            out.add_edge(root, g.clone(), off + t);
        }
    }
    out.init = root;
    Ok(out.reduce())
}

/// Position relation used by `retarget_marker`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Retarget {
    /// marker moved one position right
    Next,
    /// marker moved one position left (none at position 0)
    Previous,
    /// marker moved to some position at or after its current one
    Future,
    /// marker moved to some position at or before its current one
    Past,
    /// the marker is placed where the evaluation marker is
    BindToE,
}

/// `{ w : exists j in rel(i) with w[marker moved from i to j] in L(A) }`,
/// where `i` is the marker's position. For `BindToE` the marker is read at
/// the position of `eval_marker`.
pub fn retarget_marker(a: &Nba, marker: &str, rel: Retarget, eval_marker: &str) -> Result<Nba, AutomataError> {
    let m = a.atom(marker).ok_or_else(|| AutomataError::UnknownMarker(marker.into()))?;
    if rel == Retarget::BindToE {
        let e = a.atom(eval_marker).ok_or_else(|| AutomataError::UnknownMarker(eval_marker.into()))?;
        let mut out = a.clone();
        for es in &mut out.edges {
            for (g, _) in es.iter_mut() {
                *g = g.rename(m, e);
            }
        }
        return Ok(out.reduce());
    }
    let here = Guard::lit(m, true);
    let not_here = Guard::lit(m, false);
    // phase 0: before the original marker (Future, Next) or before the new
    // one (Past, Previous); the last phase is "both passed"
    let out = explore(
        a.atoms.clone(),
        (a.init, 0u8),
        |&(q, ph)| ph == 2 && a.accepting[q],
        |&(q, ph)| {
            let mut v = Vec::new();
            for (g, t) in &a.edges[q] {
                let placed = g.assign(m, true);
                let absent = g.assign(m, false);
                match (rel, ph) {
                    (Retarget::Next, 0) => {
                        v.push((absent.and(&not_here), (*t, 0)));
                        v.push((absent.and(&here), (*t, 1)));
                    }
                    (Retarget::Next, 1) => v.push((placed.and(&not_here), (*t, 2))),
                    (Retarget::Previous, 0) => {
                        v.push((absent.and(&not_here), (*t, 0)));
                        v.push((placed.and(&not_here), (*t, 1)));
                    }
                    (Retarget::Previous, 1) => v.push((absent.and(&here), (*t, 2))),
                    (Retarget::Future, 0) => {
                        v.push((absent.and(&not_here), (*t, 0)));
                        v.push((placed.and(&here), (*t, 2)));
                        v.push((absent.and(&here), (*t, 1)));
                    }
                    (Retarget::Future, 1) => {
                        v.push((absent.and(&not_here), (*t, 1)));
                        v.push((placed.and(&not_here), (*t, 2)));
                    }
                    (Retarget::Past, 0) => {
                        v.push((absent.and(&not_here), (*t, 0)));
                        v.push((placed.and(&here), (*t, 2)));
                        v.push((placed.and(&not_here), (*t, 1)));
                    }
                    (Retarget::Past, 1) => {
                        v.push((absent.and(&not_here), (*t, 1)));
                        v.push((absent.and(&here), (*t, 2)));
                    }
                    (_, _) => v.push((absent.and(&not_here), (*t, 2))),
                }
            }
            Ok(v)
        },
        usize::MAX,
    )?;
    Ok(out.reduce())
}

/// Existentially eliminates the given atoms from every guard; the atoms
/// are removed from the inventory.
pub fn project_markers(a: &Nba, markers: &[&str]) -> Result<Nba, AutomataError> {
    let mut idx = Vec::new();
    for m in markers {
        if let Some(i) = a.atom(m) {
            idx.push(i);
        }
    }
    let keep: Vec<String> = a.atoms.iter().enumerate().filter(|(i, _)| !idx.contains(i)).map(|(_, s)| s.clone()).collect();
    let map: Vec<usize> = {
        let mut k = 0;
        (0..a.atoms.len())
            .map(|i| {
                if idx.contains(&i) {
                    usize::MAX
                } else {
                    k += 1;
                    k - 1
                }
            })
            .collect()
    };
    let mut out = Nba::new(keep)?;
    for &f in &a.accepting {
        out.add_state(f);
    }
    out.init = a.init;
    for q in 0..a.num_states() {
        for (g, t) in &a.edges[q] {
            let mut h = g.clone();
            for &i in &idx {
                h = h.exists(i);
            }
            out.add_edge(q, h.remap(&map), *t);
        }
    }
    Ok(out.reduce())
}

/// Words of `L(A)` whose colour blocks (maximal runs of equal truth value of
/// `color`) all have length at most `k`.
pub fn bound_counter(a: &Nba, k: usize, color: &str) -> Result<Nba, AutomataError> {
    if k == 0 {
        return Err(AutomataError::ZeroBound);
    }
    let c = a.atom(color).ok_or_else(|| AutomataError::UnknownMarker(color.into()))?;
    // (state, length of the current block, its colour); length 0 before the
    // first letter
    let out = explore(
        a.atoms.clone(),
        (a.init, 0usize, false),
        |&(q, n, _)| n > 0 && a.accepting[q],
        |&(q, n, last)| {
            let mut v = Vec::new();
            for (g, t) in &a.edges[q] {
                for col in [false, true] {
                    let len = if n > 0 && col == last { n + 1 } else { 1 };
                    if len <= k {
                        v.push((g.and(&Guard::lit(c, col)), (*t, len, col)));
                    }
                }
            }
            Ok(v)
        },
        usize::MAX,
    )?;
    Ok(out.reduce())
}

/// `marker` occurs exactly once.
pub fn exactly_once(atoms: &[String], marker: &str) -> Result<Nba, AutomataError> {
    let mut a = Nba::new(atoms.to_vec())?;
    let m = a.atom(marker).ok_or_else(|| AutomataError::UnknownMarker(marker.into()))?;
    let before = a.add_state(false);
    let after = a.add_state(true);
    a.add_edge(before, Guard::lit(m, false), before);
    a.add_edge(before, Guard::lit(m, true), after);
    a.add_edge(after, Guard::lit(m, false), after);
    Ok(a)
}

/// At the first position carrying `marker`, `guard` holds.
pub fn at_marker(atoms: &[String], marker: &str, guard: Guard) -> Result<Nba, AutomataError> {
    let mut a = Nba::new(atoms.to_vec())?;
    let m = a.atom(marker).ok_or_else(|| AutomataError::UnknownMarker(marker.into()))?;
    let before = a.add_state(false);
    let done = a.add_state(true);
    a.add_edge(before, Guard::lit(m, false), before);
    a.add_edge(before, Guard::lit(m, true).and(&guard), done);
    a.add_edge(done, Guard::tt(), done);
    Ok(a)
}

/// The first letter carries `marker` and no later letter does.
pub fn only_at_zero(atoms: &[String], marker: &str) -> Result<Nba, AutomataError> {
    let mut a = Nba::new(atoms.to_vec())?;
    let m = a.atom(marker).ok_or_else(|| AutomataError::UnknownMarker(marker.into()))?;
    let start = a.add_state(false);
    let rest = a.add_state(true);
    a.add_edge(start, Guard::lit(m, true), rest);
    a.add_edge(rest, Guard::lit(m, false), rest);
    Ok(a)
}

/// Letter mask helper for tests and witnesses.
pub fn mask_of(a: &Nba, names: &[&str]) -> Mask {
    names.iter().filter_map(|n| a.atom(n)).fold(0, |m, i| m | (1 << i))
}
