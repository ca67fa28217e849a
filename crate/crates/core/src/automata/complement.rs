use std::collections::BTreeSet;

use super::guard::{minterms, Guard, Mask};
use super::nba::Nba;
use super::ops::explore;
use super::AutomataError;

/// Largest number of atoms a letter enumeration may range over.
pub const MAX_LETTER_ATOMS: u32 = 12;

/// Which construction `complement` used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Method {
    Trivial,
    Deterministic,
    Breakpoint,
    SemiDeterministic,
    Ranking,
}

/// Automaton for the complement language over the same inventory. Fails
/// when more than `budget` states would be built.
pub fn complement(a: &Nba, budget: usize) -> Result<Nba, AutomataError> {
    complement_with_method(a, budget).map(|(n, _)| n)
}

pub fn complement_with_method(a: &Nba, budget: usize) -> Result<(Nba, Method), AutomataError> {
    let a = a.reduce();
    if a.edges[a.init].is_empty() {
        return Ok((Nba::universal(a.atoms.clone())?, Method::Trivial));
    }
    if a.num_states() == 1 && a.accepting[0] && a.edges[0].iter().any(|(g, _)| g.is_true()) {
        return Ok((Nba::empty(a.atoms.clone())?, Method::Trivial));
    }
    let (out, method) = if a.is_deterministic() {
        (deterministic(&a)?, Method::Deterministic)
    } else if a.is_weak() {
        (breakpoint(&a, budget)?, Method::Breakpoint)
    } else if let Some(det_part) = semi_deterministic_part(&a) {
        (ncsb(&a, &det_part, budget)?, Method::SemiDeterministic)
    } else {
        match semi_determinize(&a, budget).and_then(|l| {
            let reduced = l.reduce();
            match semi_deterministic_part(&reduced) {
                Some(det) => ncsb(&reduced, &det, budget),
                None => ncsb(&l, &semi_deterministic_part(&l).expect("semi-determinisation output"), budget),
            }
        }) {
            Ok(out) => (out, Method::SemiDeterministic),
            Err(AutomataError::Budget { .. }) => (ranking(&a, budget)?, Method::Ranking),
            Err(e) => return Err(e),
        }
    };
    Ok((out.reduce(), method))
}

fn letters(a: &Nba, states: impl IntoIterator<Item = usize>) -> Result<(Mask, Vec<Mask>), AutomataError> {
    let support = a.support_of(states);
    if support.count_ones() > MAX_LETTER_ATOMS {
        return Err(AutomataError::Alphabet(support.count_ones() as usize));
    }
    Ok((support, minterms(support).collect()))
}

fn post(a: &Nba, set: &[usize], letter: Mask) -> Vec<usize> {
    let s: BTreeSet<usize> = set.iter().flat_map(|&q| a.successors(q, letter)).collect();
    s.into_iter().collect()
}

/// Complement of a deterministic automaton: guess the point after which the
/// unique run avoids accepting states.
fn deterministic(a: &Nba) -> Result<Nba, AutomataError> {
    let n = a.num_states();
    let mut out = Nba::new(a.atoms.clone())?;
    for _ in 0..=n {
        out.add_state(false);
    }
    let safe: Vec<Option<usize>> = (0..=n)
        .map(|q| if q == n || !a.accepting[q] { Some(out.add_state(true)) } else { None })
        .collect();
    out.init = a.init;
    let sink = n;
    for q in 0..=n {
        let mut es: Vec<(Guard, usize)> = if q == n { Vec::new() } else { a.edges[q].clone() };
        let covered = es.iter().fold(Guard::ff(), |acc, (g, _)| acc.or(g));
        es.push((covered.not(), sink));
        for (g, t) in es {
            out.add_edge(q, g.clone(), t);
            if let Some(st) = safe[t] {
                out.add_edge(q, g.clone(), st);
                if let Some(sq) = safe[q] {
                    out.add_edge(sq, g, st);
                }
            }
        }
    }
    Ok(out)
}

/// Breakpoint construction for weak automata: the complement accepts when
/// every run eventually stays among rejecting states.
fn breakpoint(a: &Nba, budget: usize) -> Result<Nba, AutomataError> {
    let init = (vec![a.init], Vec::<usize>::new());
    explore(
        a.atoms.clone(),
        init,
        |(_, o)| o.is_empty(),
        |(s, o)| {
            let (support, ls) = letters(a, s.iter().copied())?;
            let mut v = Vec::with_capacity(ls.len());
            for m in ls {
                let s2 = post(a, s, m);
                let base = if o.is_empty() { s2.clone() } else { post(a, o, m) };
                let o2: Vec<usize> = base.into_iter().filter(|&q| a.accepting[q]).collect();
                v.push((Guard::minterm(m, support), (s2, o2)));
            }
            Ok(v)
        },
        budget,
    )
}

/// States reachable from an accepting state, if the automaton is
/// deterministic there.
fn semi_deterministic_part(a: &Nba) -> Option<Vec<bool>> {
    let n = a.num_states();
    let mut det = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&q| a.accepting[q]).collect();
    for &q in &stack {
        det[q] = true;
    }
    while let Some(q) = stack.pop() {
        for (_, t) in &a.edges[q] {
            if !det[*t] {
                det[*t] = true;
                stack.push(*t);
            }
        }
    }
    let ok = (0..n).filter(|&q| det[q]).all(|q| {
        let es = &a.edges[q];
        (0..es.len()).all(|i| (i + 1..es.len()).all(|k| es[i].0.and(&es[k].0).is_false()))
    });
    ok.then_some(det)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Sd {
    Up(usize),
    Down(Vec<usize>, Vec<usize>),
}

/// Equivalent automaton that is deterministic after its accepting states:
/// the original copy may jump into a subset `R` with a set `B` of states
/// reached through an accepting state since the last breakpoint `B = R`.
fn semi_determinize(a: &Nba, budget: usize) -> Result<Nba, AutomataError> {
    explore(
        a.atoms.clone(),
        Sd::Up(a.init),
        |s| matches!(s, Sd::Down(r, b) if r == b),
        |s| match s {
            Sd::Up(q) => {
                let mut v = Vec::new();
                for (g, t) in &a.edges[*q] {
                    v.push((g.clone(), Sd::Up(*t)));
                    if a.accepting[*t] {
                        v.push((g.clone(), Sd::Down(vec![*t], vec![*t])));
                    }
                }
                Ok(v)
            }
            Sd::Down(r, b) => {
                let (support, ls) = letters(a, r.iter().copied())?;
                let mut v = Vec::new();
                for m in ls {
                    let r2 = post(a, r, m);
                    if r2.is_empty() {
                        continue;
                    }
                    let mut b2: BTreeSet<usize> = if b == r { BTreeSet::new() } else { post(a, b, m).into_iter().collect() };
                    b2.extend(r2.iter().copied().filter(|&q| a.accepting[q]));
                    v.push((Guard::minterm(m, support), Sd::Down(r2, b2.into_iter().collect())));
                }
                Ok(v)
            }
        },
        budget,
    )
}

type Ncsb = (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

/// Complement of a semi-deterministic automaton: `N` tracks the
/// nondeterministic part, `C` deterministic runs that may still accept,
/// `S` runs guessed to never accept again, `B` the runs owed a move to `S`.
fn ncsb(a: &Nba, det: &[bool], budget: usize) -> Result<Nba, AutomataError> {
    let (n0, c0): (Vec<usize>, Vec<usize>) = if det[a.init] { (vec![], vec![a.init]) } else { (vec![a.init], vec![]) };
    let init: Ncsb = (n0, c0.clone(), vec![], c0);
    explore(
        a.atoms.clone(),
        init,
        |(_, _, _, b)| b.is_empty(),
        |(n, c, s, b)| {
            let all: Vec<usize> = n.iter().chain(c).chain(s).copied().collect();
            let (support, ls) = letters(a, all)?;
            let mut v = Vec::new();
            for m in ls {
                let n_post = post(a, n, m);
                let n2: Vec<usize> = n_post.iter().copied().filter(|&q| !det[q]).collect();
                let s_forced = post(a, s, m);
                if s_forced.iter().any(|&q| a.accepting[q]) {
                    continue;
                }
                let mut pool: BTreeSet<usize> = n_post.iter().copied().filter(|&q| det[q]).collect();
                pool.extend(post(a, c, m));
                for q in &s_forced {
                    pool.remove(q);
                }
                // only runs owed to the breakpoint may be guessed safe
                let b_post = post(a, b, m);
                let (optional, forced_c): (Vec<usize>, Vec<usize>) =
                    pool.iter().copied().partition(|&q| !a.accepting[q] && b_post.binary_search(&q).is_ok());
                if optional.len() > 16 {
                    return Err(AutomataError::Budget { budget, context: String::new() });
                }
                for choice in 0u32..(1 << optional.len()) {
                    let mut c2 = forced_c.clone();
                    let mut s2 = s_forced.clone();
                    for (i, &q) in optional.iter().enumerate() {
                        if choice & (1 << i) != 0 {
                            s2.push(q);
                        } else {
                            c2.push(q);
                        }
                    }
                    c2.sort_unstable();
                    s2.sort_unstable();
                    let b2: Vec<usize> = if b.is_empty() {
                        c2.clone()
                    } else {
                        b_post.iter().copied().filter(|q| c2.binary_search(q).is_ok()).collect()
                    };
                    v.push((Guard::minterm(m, support), (n2.clone(), c2, s2, b2)));
                }
            }
            Ok(v)
        },
        budget,
    )
}

/// Rank-based complementation with level rankings bounded by twice the
/// number of rejecting states and a breakpoint set of even-ranked states.
fn ranking(a: &Nba, budget: usize) -> Result<Nba, AutomataError> {
    const NONE: u8 = u8::MAX;
    let n = a.num_states();
    let max_rank = (2 * a.accepting.iter().filter(|&&f| !f).count()).min(250) as u8;
    let mut f0 = vec![NONE; n];
    f0[a.init] = max_rank;
    let init = (f0, Vec::<usize>::new());
    explore(
        a.atoms.clone(),
        init,
        |(_, o)| o.is_empty(),
        |(f, o)| {
            let present: Vec<usize> = (0..n).filter(|&q| f[q] != NONE).collect();
            let (support, ls) = letters(a, present.iter().copied())?;
            let mut v = Vec::new();
            for m in ls {
                let mut bound = vec![NONE; n];
                for &q in &present {
                    for t in a.successors(q, m) {
                        bound[t] = bound[t].min(f[q]);
                    }
                }
                let targets: Vec<usize> = (0..n).filter(|&q| bound[q] != NONE).collect();
                let options: Vec<Vec<u8>> = targets
                    .iter()
                    .map(|&q| (0..=bound[q]).filter(|r| !a.accepting[q] || r % 2 == 0).collect())
                    .collect();
                if options.iter().any(Vec::is_empty) {
                    continue;
                }
                let o_post: Vec<usize> = if o.is_empty() { targets.clone() } else { post(a, o, m) };
                let mut pick = vec![0usize; targets.len()];
                loop {
                    let mut f2 = vec![NONE; n];
                    for (i, &q) in targets.iter().enumerate() {
                        f2[q] = options[i][pick[i]];
                    }
                    let o2: Vec<usize> = o_post.iter().copied().filter(|&q| f2[q] != NONE && f2[q].is_multiple_of(2)).collect();
                    v.push((Guard::minterm(m, support), (f2, o2)));
                    if v.len() > budget {
                        return Err(AutomataError::Budget { budget, context: String::new() });
                    }
                    let mut i = 0;
                    while i < pick.len() {
                        pick[i] += 1;
                        if pick[i] < options[i].len() {
                            break;
                        }
                        pick[i] = 0;
                        i += 1;
                    }
                    if i == pick.len() {
                        break;
                    }
                }
            }
            Ok(v)
        },
        budget,
    )
}
