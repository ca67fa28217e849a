use std::collections::VecDeque;

use serde::Serialize;

use super::guard::Mask;
use super::nba::{tarjan, Nba};
use crate::syntax::lasso::Lasso;

/// An accepted lasso with its run: `stem_states[t]` (resp. `loop_states[t]`)
/// is the state before reading the `t`-th stem (resp. loop) letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LassoWitness {
    pub lasso: Lasso,
    pub stem_states: Vec<usize>,
    pub loop_states: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    Shape,
    Guard { step: usize },
    NotFair,
}

impl LassoWitness {
    /// Checks that the run starts initially, respects every guard and visits
    /// an accepting state in the loop.
    pub fn replay(&self, a: &Nba) -> Result<(), ReplayError> {
        let states: Vec<usize> = self.stem_states.iter().chain(&self.loop_states).copied().collect();
        let letters: Vec<Mask> = self.lasso.stem.iter().chain(&self.lasso.cycle).map(|l| a.letter_mask(l)).collect();
        if states.len() != letters.len() || self.loop_states.is_empty() || states[0] != a.init {
            return Err(ReplayError::Shape);
        }
        for t in 0..states.len() {
            let next = if t + 1 == states.len() { self.loop_states[0] } else { states[t + 1] };
            if !a.successors(states[t], letters[t]).any(|s| s == next) {
                return Err(ReplayError::Guard { step: t });
            }
        }
        if !self.loop_states.iter().any(|&q| a.accepting[q]) {
            return Err(ReplayError::NotFair);
        }
        Ok(())
    }
}

/// `None` if the language is empty, otherwise an accepted lasso.
pub fn is_empty(a: &Nba) -> Option<LassoWitness> {
    let n = a.num_states();
    let succ: Vec<Vec<usize>> = a.edges.iter().map(|es| es.iter().map(|(_, t)| *t).collect()).collect();
    let reach = bfs_tree(&succ, a.init, |_| true);
    let mut comp_of = vec![usize::MAX; n];
    let comps = tarjan(&succ);
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            comp_of[q] = i;
        }
    }
    for (ci, c) in comps.iter().enumerate() {
        let Some(&acc) = c.iter().find(|&&q| a.accepting[q] && reach[q].is_some()) else { continue };
        if !(c.len() > 1 || succ[acc].contains(&acc)) {
            continue;
        }
        let stem_path = path_to(&reach, a.init, acc);
        // cycle inside the component: one step out of acc, then back
        let mut cycle = None;
        for &t in &succ[acc] {
            if comp_of[t] != ci {
                continue;
            }
            let back = bfs_tree(&succ, t, |q| comp_of[q] == ci);
            if back[acc].is_some() {
                let mut p = vec![acc];
                p.extend(path_to(&back, t, acc));
                cycle = Some(p);
                break;
            }
        }
        let cycle = cycle?;
        // state sequences and letters along the edges
        let mut states: Vec<usize> = stem_path.clone();
        states.pop();
        let stem_len = states.len();
        states.extend(cycle[..cycle.len() - 1].iter().copied());
        let mut all_letters = Vec::new();
        let stem_edges = stem_path.windows(2).map(|w| (w[0], w[1]));
        let loop_edges = cycle.windows(2).map(|w| (w[0], w[1]));
        for (p, q) in stem_edges.chain(loop_edges) {
            let g = a.edges[p].iter().find(|(_, t)| *t == q).map(|(g, _)| g).expect("edge on path");
            all_letters.push(a.mask_letter(g.sample().expect("satisfiable guard")));
        }
        let lasso = Lasso { stem: all_letters[..stem_len].to_vec(), cycle: all_letters[stem_len..].to_vec() };
        return Some(LassoWitness {
            lasso,
            stem_states: states[..stem_len].to_vec(),
            loop_states: states[stem_len..].to_vec(),
        });
    }
    None
}

fn bfs_tree(succ: &[Vec<usize>], from: usize, allowed: impl Fn(usize) -> bool) -> Vec<Option<usize>> {
    let mut parent = vec![None; succ.len()];
    parent[from] = Some(from);
    let mut queue = VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        for &t in &succ[q] {
            if parent[t].is_none() && allowed(t) {
                parent[t] = Some(q);
                queue.push_back(t);
            }
        }
    }
    parent
}

/// Vertex path from the BFS root to `to` (both included).
fn path_to(parent: &[Option<usize>], root: usize, to: usize) -> Vec<usize> {
    let mut p = vec![to];
    let mut cur = to;
    while cur != root {
        cur = parent[cur].expect("reachable");
        p.push(cur);
    }
    p.reverse();
    p
}
