//! Transition guards: boolean formulas over atom indices in disjunctive
//! normal form. A letter is a bitmask of the atoms that hold.

use std::fmt;

pub type Mask = u64;

/// Conjunction of literals: `pos` atoms true, `neg` atoms false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub pos: Mask,
    pub neg: Mask,
}

impl Cube {
    pub const TRUE: Cube = Cube { pos: 0, neg: 0 };

    pub fn holds(&self, letter: Mask) -> bool {
        letter & self.pos == self.pos && letter & self.neg == 0
    }

    fn and(&self, o: &Cube) -> Option<Cube> {
        let c = Cube { pos: self.pos | o.pos, neg: self.neg | o.neg };
        (c.pos & c.neg == 0).then_some(c)
    }

    fn implies(&self, o: &Cube) -> bool {
        o.pos & !self.pos == 0 && o.neg & !self.neg == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Guard {
    cubes: Vec<Cube>,
}

impl Guard {
    pub fn tt() -> Self {
        Guard { cubes: vec![Cube::TRUE] }
    }

    pub fn ff() -> Self {
        Guard { cubes: Vec::new() }
    }

    pub fn lit(atom: usize, positive: bool) -> Self {
        let b = 1 << atom;
        Guard::from_cubes(vec![if positive { Cube { pos: b, neg: 0 } } else { Cube { pos: 0, neg: b } }])
    }

    /// Exactly the letter `m` on the atoms of `support`.
    pub fn minterm(m: Mask, support: Mask) -> Self {
        Guard { cubes: vec![Cube { pos: m & support, neg: support & !m }] }
    }

    pub fn from_cubes(cubes: Vec<Cube>) -> Self {
        let mut g = Guard { cubes };
        g.normalize();
        g
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    fn normalize(&mut self) {
        self.cubes.retain(|c| c.pos & c.neg == 0);
        self.cubes.sort();
        self.cubes.dedup();
        if self.cubes.len() > 1 {
            let cs = std::mem::take(&mut self.cubes);
            for (i, c) in cs.iter().enumerate() {
                let subsumed = cs.iter().enumerate().any(|(k, d)| k != i && c.implies(d) && (!d.implies(c) || k < i));
                if !subsumed {
                    self.cubes.push(*c);
                }
            }
        }
        self.merge_adjacent();
    }

    /// Combines cubes that differ in the polarity of exactly one atom.
    fn merge_adjacent(&mut self) {
        loop {
            let mut merged = None;
            'find: for i in 0..self.cubes.len() {
                for k in i + 1..self.cubes.len() {
                    let (a, b) = (self.cubes[i], self.cubes[k]);
                    let flip = (a.pos ^ b.pos) | (a.neg ^ b.neg);
                    if flip.count_ones() == 1 && a.pos ^ b.pos == a.neg ^ b.neg {
                        merged = Some((i, k, Cube { pos: a.pos & !flip, neg: a.neg & !flip }));
                        break 'find;
                    }
                }
            }
            let Some((i, k, c)) = merged else { break };
            self.cubes.remove(k);
            self.cubes[i] = c;
            let cs = std::mem::take(&mut self.cubes);
            self.cubes = cs.iter().copied().filter(|d| *d == c || !d.implies(&c)).collect();
            self.cubes.sort();
            self.cubes.dedup();
        }
    }

    pub fn is_false(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn is_true(&self) -> bool {
        self.cubes.contains(&Cube::TRUE)
    }

    pub fn holds(&self, letter: Mask) -> bool {
        self.cubes.iter().any(|c| c.holds(letter))
    }

    pub fn and(&self, o: &Guard) -> Guard {
        let mut out = Vec::with_capacity(self.cubes.len() * o.cubes.len());
        for a in &self.cubes {
            for b in &o.cubes {
                if let Some(c) = a.and(b) {
                    out.push(c);
                }
            }
        }
        Guard::from_cubes(out)
    }

    pub fn or(&self, o: &Guard) -> Guard {
        let mut cubes = self.cubes.clone();
        cubes.extend_from_slice(&o.cubes);
        Guard::from_cubes(cubes)
    }

    pub fn not(&self) -> Guard {
        let mut acc = Guard::tt();
        for c in &self.cubes {
            let mut lits = Vec::new();
            for a in bits(c.pos) {
                lits.push(Cube { pos: 0, neg: 1 << a });
            }
            for a in bits(c.neg) {
                lits.push(Cube { pos: 1 << a, neg: 0 });
            }
            acc = acc.and(&Guard::from_cubes(lits));
            if acc.is_false() {
                break;
            }
        }
        acc
    }

    pub fn support(&self) -> Mask {
        self.cubes.iter().fold(0, |m, c| m | c.pos | c.neg)
    }

    /// Cofactor: `atom` replaced by the constant `value`.
    pub fn assign(&self, atom: usize, value: bool) -> Guard {
        let b = 1 << atom;
        let cubes = self
            .cubes
            .iter()
            .filter(|c| if value { c.neg & b == 0 } else { c.pos & b == 0 })
            .map(|c| Cube { pos: c.pos & !b, neg: c.neg & !b })
            .collect();
        Guard::from_cubes(cubes)
    }

    /// Every occurrence of `from` replaced by `to`.
    pub fn rename(&self, from: usize, to: usize) -> Guard {
        let (f, t) = (1 << from, 1 << to);
        let cubes = self
            .cubes
            .iter()
            .map(|c| {
                let mut d = Cube { pos: c.pos & !f, neg: c.neg & !f };
                if c.pos & f != 0 {
                    d.pos |= t;
                }
                if c.neg & f != 0 {
                    d.neg |= t;
                }
                d
            })
            .collect();
        Guard::from_cubes(cubes)
    }

    /// Existential elimination of `atom`.
    pub fn exists(&self, atom: usize) -> Guard {
        self.assign(atom, true).or(&self.assign(atom, false))
    }

    /// Atom indices rewritten through `map` (old index to new index).
    pub fn remap(&self, map: &[usize]) -> Guard {
        let mv = |m: Mask| bits(m).fold(0, |acc, a| acc | (1 << map[a]));
        Guard::from_cubes(self.cubes.iter().map(|c| Cube { pos: mv(c.pos), neg: mv(c.neg) }).collect())
    }

    /// Some letter satisfying the guard, with unconstrained atoms false.
    pub fn sample(&self) -> Option<Mask> {
        self.cubes.first().map(|c| c.pos)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_false() {
            return "false".into();
        }
        if self.is_true() {
            return "true".into();
        }
        let cube = |c: &Cube| {
            let mut lits = Vec::new();
            for a in 0..names.len() {
                if c.pos & (1 << a) != 0 {
                    lits.push(names[a].clone());
                } else if c.neg & (1 << a) != 0 {
                    lits.push(format!("!{}", names[a]));
                }
            }
            lits.join(" & ")
        };
        self.cubes.iter().map(cube).collect::<Vec<_>>().join(" | ")
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..64).map(|i| format!("a{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m & (1 << i) != 0)
}

/// All letters over the atoms of `support` (other atoms false).
pub fn minterms(support: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == support { None } else { Some((cur.wrapping_sub(support)) & support) };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_ops() {
        let p = Guard::lit(0, true);
        let q = Guard::lit(1, true);
        let g = p.and(&q.not());
        assert!(g.holds(0b01));
        assert!(!g.holds(0b11));
        assert!(p.or(&p.not()).is_true());
        assert!(p.and(&p.not()).is_false());
        assert_eq!(g.not().and(&g), Guard::ff());
    }

    #[test]
    fn cofactor_rename_exists() {
        let g = Guard::lit(0, true).and(&Guard::lit(2, false));
        assert!(g.assign(2, true).is_false());
        assert_eq!(g.assign(2, false), Guard::lit(0, true));
        assert_eq!(g.rename(2, 1), Guard::lit(0, true).and(&Guard::lit(1, false)));
        assert_eq!(g.exists(2), Guard::lit(0, true));
    }

    #[test]
    fn minterm_enumeration() {
        let ms: Vec<Mask> = minterms(0b101).collect();
        assert_eq!(ms, vec![0b000, 0b001, 0b100, 0b101]);
        assert_eq!(minterms(0).count(), 1);
    }

    #[test]
    fn normal_form_merges() {
        let g = Guard::minterm(0b01, 0b11).or(&Guard::minterm(0b00, 0b11));
        assert_eq!(g, Guard::lit(1, false));
    }
}
