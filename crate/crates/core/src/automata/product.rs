use std::collections::VecDeque;

use serde::Serialize;

use super::emptiness::LassoWitness;
use super::nba::Nba;
use super::AutomataError;
use crate::syntax::kripke::Kripke;
use crate::syntax::lasso::{Lasso, Letter};

/// Product of a Kripke structure with an automaton over its atoms plus a
/// colour atom. State `(s, q, C)` is labelled `Lab(s) ∪ C`.
#[derive(Debug, Clone, Serialize)]
pub struct FairProduct {
    pub states: Vec<(usize, usize, bool)>,
    pub init: usize,
    pub succ: Vec<Vec<usize>>,
    pub fair: Vec<bool>,
    pub labels: Vec<Letter>,
    pub color: String,
}

impl FairProduct {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn colored(&self, v: usize) -> bool {
        self.labels[v].contains(&self.color)
    }
}

pub fn product_with_kripke(k: &Kripke, a: &Nba, color: &str) -> Result<FairProduct, AutomataError> {
    let mut expected: Vec<String> = k.atoms.iter().cloned().collect();
    expected.push(color.to_string());
    expected.sort();
    expected.dedup();
    let mut have = a.atoms.clone();
    have.sort();
    if have != expected {
        let diff = expected.iter().chain(have.iter()).find(|x| !have.contains(x) || !expected.contains(x)).cloned();
        return Err(AutomataError::InventoryMismatch(diff.unwrap_or_default()));
    }
    let (ns, nq) = (k.num_states(), a.num_states());
    let id = |s: usize, q: usize, c: bool| (s * nq + q) * 2 + usize::from(c);
    let mut states = Vec::with_capacity(ns * nq * 2);
    let mut labels = Vec::with_capacity(ns * nq * 2);
    let mut fair = Vec::with_capacity(ns * nq * 2);
    let mut succ = Vec::with_capacity(ns * nq * 2);
    for s in 0..ns {
        for q in 0..nq {
            for c in [false, true] {
                let mut label = k.labels[s].clone();
                if c {
                    label.insert(color.to_string());
                }
                let m = a.letter_mask(&label);
                let mut out = Vec::new();
                for &s2 in &k.succ[s] {
                    for q2 in a.successors(q, m) {
                        out.push(id(s2, q2, false));
                        out.push(id(s2, q2, true));
                    }
                }
                out.sort_unstable();
                out.dedup();
                states.push((s, q, c));
                labels.push(label);
                fair.push(a.accepting[q]);
                succ.push(out);
            }
        }
    }
    Ok(FairProduct { states, init: id(k.init, a.init, false), succ, fair, labels, color: color.to_string() })
}

/// A fair lasso of the product in which every colour block revisits some
/// product state. The witness lasso carries the product labels; its state
/// sequences are product states.
pub fn find_pumpable_fair_path(p: &FairProduct) -> Option<LassoWitness> {
    let n = p.num_states();
    // node (v, slot): slot < n guesses repeat state `slot`, n is "no guess",
    // n + 1 is "repeat seen"
    let width = n + 2;
    let node = |v: usize, slot: usize| v * width + slot;
    let step = |v: usize, slot: usize, w: usize, out: &mut Vec<usize>| {
        if p.colored(v) == p.colored(w) {
            if slot == n + 1 {
                out.push(node(w, n + 1));
            } else if slot == n {
                out.push(node(w, n));
                out.push(node(w, w));
            } else if w == slot {
                out.push(node(w, n + 1));
            } else {
                out.push(node(w, slot));
            }
        } else if slot == n + 1 {
            out.push(node(w, n));
            out.push(node(w, w));
        }
    };
    // explicit reachable graph
    let mut index = vec![usize::MAX; n * width];
    let mut ids = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    for start in [node(p.init, n), node(p.init, p.init)] {
        if index[start] == usize::MAX {
            index[start] = ids.len();
            ids.push(start);
            succ.push(Vec::new());
            queue.push_back(start);
        }
    }
    let mut buf = Vec::new();
    while let Some(x) = queue.pop_front() {
        let (v, slot) = (x / width, x % width);
        let from = index[x];
        for &w in &p.succ[v] {
            buf.clear();
            step(v, slot, w, &mut buf);
            for &y in &buf {
                if index[y] == usize::MAX {
                    index[y] = ids.len();
                    ids.push(y);
                    succ.push(Vec::new());
                    queue.push_back(y);
                }
                succ[from].push(index[y]);
            }
        }
    }
    let fair = |i: usize| p.fair[ids[i] / width];
    let mut aug = Nba::new(Vec::new()).unwrap();
    for i in 0..ids.len() {
        aug.add_state(fair(i));
    }
    for (i, ss) in succ.iter().enumerate() {
        for &j in ss {
            aug.add_edge(i, super::guard::Guard::tt(), j);
        }
    }
    aug.init = 0;
    let mut best: Option<LassoWitness> = None;
    for start in 0..ids.len().min(2) {
        aug.init = start;
        if let Some(w) = super::emptiness::is_empty(&aug) {
            best = Some(w);
            break;
        }
    }
    let w = best?;
    let to_v = |i: &usize| ids[*i] / width;
    let stem_states: Vec<usize> = w.stem_states.iter().map(to_v).collect();
    let loop_states: Vec<usize> = w.loop_states.iter().map(to_v).collect();
    let lasso = Lasso {
        stem: stem_states.iter().map(|&v| p.labels[v].clone()).collect(),
        cycle: loop_states.iter().map(|&v| p.labels[v].clone()).collect(),
    };
    Some(LassoWitness { lasso, stem_states, loop_states })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PumpReplayError {
    Shape,
    Edge { step: usize },
    NotFair,
    BlockWithoutRevisit { start: usize },
}

/// Checks edges, fairness and that every finished colour block of the
/// unrolled path revisits a state.
pub fn replay_pumpable(p: &FairProduct, w: &LassoWitness) -> Result<(), PumpReplayError> {
    let states: Vec<usize> = w.stem_states.iter().chain(&w.loop_states).copied().collect();
    if w.loop_states.is_empty() || states[0] != p.init {
        return Err(PumpReplayError::Shape);
    }
    for t in 0..states.len() {
        let next = if t + 1 == states.len() { w.loop_states[0] } else { states[t + 1] };
        if !p.succ[states[t]].contains(&next) {
            return Err(PumpReplayError::Edge { step: t });
        }
    }
    if !w.loop_states.iter().any(|&v| p.fair[v]) {
        return Err(PumpReplayError::NotFair);
    }
    let mut run: Vec<usize> = w.stem_states.clone();
    for _ in 0..3 {
        run.extend(&w.loop_states);
    }
    let mut start = 0;
    for t in 1..run.len() {
        if p.colored(run[t]) != p.colored(run[t - 1]) {
            let block = &run[start..t];
            let mut seen = std::collections::HashSet::new();
            if !block.iter().any(|v| !seen.insert(*v)) {
                return Err(PumpReplayError::BlockWithoutRevisit { start });
            }
            start = t;
        }
    }
    Ok(())
}
