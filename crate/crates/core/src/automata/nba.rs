use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::guard::{bits, Guard, Mask};
use super::AutomataError;
use crate::syntax::lasso::{Lasso, Letter};

/// Büchi automaton with guard-labelled transitions and one initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nba {
    pub atoms: Vec<String>,
    pub init: usize,
    pub edges: Vec<Vec<(Guard, usize)>>,
    pub accepting: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NbaStats {
    pub states: usize,
    pub transitions: usize,
    pub accepting: usize,
}

impl Nba {
    pub fn new(atoms: Vec<String>) -> Result<Self, AutomataError> {
        if atoms.len() > 64 {
            return Err(AutomataError::TooManyAtoms(atoms.len()));
        }
        Ok(Nba { atoms, init: 0, edges: Vec::new(), accepting: Vec::new() })
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.edges.push(Vec::new());
        self.accepting.push(accepting);
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, guard: Guard, to: usize) {
        if guard.is_false() {
            return;
        }
        if let Some(e) = self.edges[from].iter_mut().find(|(_, t)| *t == to) {
            e.0 = e.0.or(&guard);
        } else {
            self.edges[from].push((guard, to));
        }
    }

    /// Accepts every word over `atoms`.
    pub fn universal(atoms: Vec<String>) -> Result<Self, AutomataError> {
        let mut a = Nba::new(atoms)?;
        let q = a.add_state(true);
        a.add_edge(q, Guard::tt(), q);
        Ok(a)
    }

    /// Accepts no word.
    pub fn empty(atoms: Vec<String>) -> Result<Self, AutomataError> {
        let mut a = Nba::new(atoms)?;
        a.add_state(false);
        Ok(a)
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn stats(&self) -> NbaStats {
        NbaStats {
            states: self.num_states(),
            transitions: self.edges.iter().map(Vec::len).sum(),
            accepting: self.accepting.iter().filter(|&&b| b).count(),
        }
    }

    pub fn atom(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn letter_mask(&self, letter: &Letter) -> Mask {
        letter.iter().filter_map(|a| self.atom(a)).fold(0, |m, i| m | (1 << i))
    }

    pub fn mask_letter(&self, m: Mask) -> Letter {
        bits(m).filter(|&i| i < self.atoms.len()).map(|i| self.atoms[i].clone()).collect()
    }

    pub fn successors(&self, q: usize, letter: Mask) -> impl Iterator<Item = usize> + '_ {
        self.edges[q].iter().filter(move |(g, _)| g.holds(letter)).map(|(_, t)| *t)
    }

    /// Atoms mentioned by the outgoing guards of `states`.
    pub fn support_of(&self, states: impl IntoIterator<Item = usize>) -> Mask {
        states.into_iter().flat_map(|q| self.edges[q].iter()).fold(0, |m, (g, _)| m | g.support())
    }

    /// Same automaton over a larger inventory; existing atoms keep their
    /// meaning, new atoms are unconstrained.
    pub fn with_atoms(&self, atoms: &[String]) -> Result<Nba, AutomataError> {
        let mut map = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            map.push(atoms.iter().position(|b| b == a).ok_or_else(|| AutomataError::InventoryMismatch(a.clone()))?);
        }
        if atoms.len() > 64 {
            return Err(AutomataError::TooManyAtoms(atoms.len()));
        }
        let edges = self.edges.iter().map(|es| es.iter().map(|(g, t)| (g.remap(&map), *t)).collect()).collect();
        Ok(Nba { atoms: atoms.to_vec(), init: self.init, edges, accepting: self.accepting.clone() })
    }

    pub fn is_deterministic(&self) -> bool {
        (0..self.num_states()).all(|q| {
            let es = &self.edges[q];
            (0..es.len()).all(|i| (i + 1..es.len()).all(|k| es[i].0.and(&es[k].0).is_false()))
        })
    }

    /// Strongly connected components (Tarjan), in reverse topological order.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let succ: Vec<Vec<usize>> = self.edges.iter().map(|es| es.iter().map(|(_, t)| *t).collect()).collect();
        tarjan(&succ)
    }

    /// Every SCC is entirely accepting or entirely rejecting.
    pub fn is_weak(&self) -> bool {
        self.sccs().iter().all(|c| c.iter().all(|&q| self.accepting[q] == self.accepting[c[0]]))
    }

    /// Restricts to states reachable from the initial state from which an
    /// accepting cycle is reachable, then merges bisimilar states.
    pub fn reduce(&self) -> Nba {
        self.trim().quotient()
    }

    pub fn trim(&self) -> Nba {
        let n = self.num_states();
        let mut reach = vec![false; n];
        let mut stack = vec![self.init];
        reach[self.init] = true;
        while let Some(q) = stack.pop() {
            for (_, t) in &self.edges[q] {
                if !reach[*t] {
                    reach[*t] = true;
                    stack.push(*t);
                }
            }
        }
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|q| if reach[q] { self.edges[q].iter().map(|(_, t)| *t).collect() } else { Vec::new() })
            .collect();
        let mut live = vec![false; n];
        for comp in tarjan(&succ) {
            let nontrivial = comp.len() > 1 || succ[comp[0]].contains(&comp[0]);
            if reach[comp[0]] && nontrivial && comp.iter().any(|&q| self.accepting[q]) {
                for &q in &comp {
                    live[q] = true;
                }
            }
        }
        let mut pred = vec![Vec::new(); n];
        for q in 0..n {
            for &t in &succ[q] {
                pred[t].push(q);
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &pred[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        if !live[self.init] {
            return Nba::empty(self.atoms.clone()).unwrap();
        }
        let mut index = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.init]);
        index[self.init] = 0;
        order.push(self.init);
        while let Some(q) = queue.pop_front() {
            for (_, t) in &self.edges[q] {
                if live[*t] && index[*t] == usize::MAX {
                    index[*t] = order.len();
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        let mut out = Nba::new(self.atoms.clone()).unwrap();
        for &q in &order {
            out.add_state(self.accepting[q]);
        }
        for &q in &order {
            for (g, t) in &self.edges[q] {
                if live[*t] {
                    out.add_edge(index[q], g.clone(), index[*t]);
                }
            }
        }
        out
    }

    /// Merges states with equal acceptance and syntactically equal outgoing
    /// guards into equal classes (a bisimulation quotient).
    pub fn quotient(&self) -> Nba {
        let n = self.num_states();
        let mut class: Vec<usize> = self.accepting.iter().map(|&b| usize::from(b)).collect();
        let mut count = 0;
        loop {
            let mut sig_index: HashMap<(usize, Vec<(usize, Guard)>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut by_class: Vec<(usize, Guard)> = Vec::new();
                for (g, t) in &self.edges[q] {
                    let c = class[*t];
                    match by_class.iter_mut().find(|(k, _)| *k == c) {
                        Some(e) => e.1 = e.1.or(g),
                        None => by_class.push((c, g.clone())),
                    }
                }
                by_class.sort();
                let len = sig_index.len();
                next[q] = *sig_index.entry((class[q], by_class)).or_insert(len);
            }
            let k = sig_index.len();
            class = next;
            if k == count {
                break;
            }
            count = k;
        }
        if count == n {
            return self.clone();
        }
        let mut rep = vec![usize::MAX; count];
        for q in 0..n {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let mut out = Nba::new(self.atoms.clone()).unwrap();
        for c in 0..count {
            out.add_state(self.accepting[rep[c]]);
        }
        out.init = class[self.init];
        for c in 0..count {
            for (g, t) in &self.edges[rep[c]] {
                out.add_edge(c, g.clone(), class[*t]);
            }
        }
        out
    }

    /// Membership of an ultimately periodic word.
    pub fn accepts(&self, w: &Lasso) -> bool {
        let letters: Vec<Mask> = w.stem.iter().chain(w.cycle.iter()).map(|l| self.letter_mask(l)).collect();
        let (m, total) = (w.stem.len(), letters.len());
        let n = self.num_states();
        let id = |pos: usize, q: usize| pos * n + q;
        let mut succ = vec![Vec::new(); total * n];
        let mut seen = vec![false; total * n];
        let mut stack = vec![(0, self.init)];
        seen[id(0, self.init)] = true;
        while let Some((pos, q)) = stack.pop() {
            let np = if pos + 1 == total { m } else { pos + 1 };
            for t in self.successors(q, letters[pos]) {
                succ[id(pos, q)].push(id(np, t));
                if !seen[id(np, t)] {
                    seen[id(np, t)] = true;
                    stack.push((np, t));
                }
            }
        }
        tarjan(&succ).iter().any(|c| {
            seen[c[0]]
                && (c.len() > 1 || succ[c[0]].contains(&c[0]))
                && c.iter().any(|&v| self.accepting[v % n])
        })
    }

    pub fn atoms_set(&self) -> BTreeSet<String> {
        self.atoms.iter().cloned().collect()
    }
}

impl fmt::Display for Nba {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "atoms {{{}}}", self.atoms.join(", "))?;
        writeln!(f, "init {}", self.init)?;
        for q in 0..self.num_states() {
            writeln!(f, "state {}{}", q, if self.accepting[q] { " accepting" } else { "" })?;
            for (g, t) in &self.edges[q] {
                writeln!(f, "  [{}] -> {}", g.render(&self.atoms), t)?;
            }
        }
        Ok(())
    }
}

/// Iterative Tarjan; components come out in reverse topological order.
pub(crate) fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}
