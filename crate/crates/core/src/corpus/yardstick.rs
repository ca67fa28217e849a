use num_bigint::BigUint;
use serde::Serialize;

use super::CorpusError;
use crate::rewrite::pltl_to_pab;
use crate::syntax::ast::*;
use crate::syntax::kripke::Kripke;
use crate::syntax::lasso::{Lasso, Letter};

pub const HASH1: &str = "hash1";
pub const HASH2: &str = "hash2";
pub const DOLLAR: &str = "dollar";
pub const ZERO: &str = "zero";
pub const ONE: &str = "one";
/// Largest `n` whose lengths are computed; `2^(2^n)` has `2^n` bits.
pub const MAX_N: usize = 20;
pub const YARDSTICK_ATOMS: [&str; 5] = [HASH1, HASH2, DOLLAR, ZERO, ONE];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YardstickSpec {
    pub n: usize,
}

impl YardstickSpec {
    pub fn new(n: usize) -> Result<Self, CorpusError> {
        if n == 0 {
            return Err(CorpusError::ZeroN);
        }
        if n > MAX_N {
            return Err(CorpusError::TooLarge(n));
        }
        Ok(YardstickSpec { n })
    }

    pub fn sub_block_len(&self) -> BigUint {
        BigUint::from(self.n + 1)
    }

    pub fn sub_blocks(&self) -> BigUint {
        BigUint::from(1u8) << self.n
    }

    pub fn block_len(&self) -> BigUint {
        self.sub_block_len() * self.sub_blocks()
    }

    pub fn blocks(&self) -> BigUint {
        BigUint::from(1u8) << (1usize << self.n)
    }

    pub fn prefix_len(&self) -> BigUint {
        self.block_len() * self.blocks()
    }
}

fn bit(b: bool) -> &'static str {
    if b { ONE } else { ZERO }
}

/// The trace listing every block value in increasing order, then `{$}^ω`.
/// Sub-block `i` of block `v` carries bit `i` of `v` (least significant
/// first) and its own index in `n` bits, most significant first.
pub fn yardstick_trace(n: usize, budget: usize) -> Result<Lasso, CorpusError> {
    let spec = YardstickSpec::new(n)?;
    let length = spec.prefix_len();
    if length > BigUint::from(budget) {
        return Err(CorpusError::Budget { length, budget });
    }
    let (subs, blocks) = (1usize << n, 1usize << (1usize << n));
    let letter = |atoms: &[&str]| -> Letter { atoms.iter().map(|s| s.to_string()).collect() };
    let mut stem = Vec::new();
    for v in 0..blocks {
        for i in 0..subs {
            let content = bit((v >> i) & 1 == 1);
            stem.push(if i == 0 { letter(&[HASH1, HASH2, content]) } else { letter(&[HASH1, content]) });
            for h in 1..=n {
                stem.push(letter(&[bit((i >> (n - h)) & 1 == 1)]));
            }
        }
    }
    Ok(Lasso::new(stem, vec![letter(&[DOLLAR])]).expect("nonempty cycle"))
}

fn nexts(k: usize, f: Formula) -> Formula {
    (0..k).fold(f, |g, _| next(g))
}

/// Block structure of the trace as an LTL formula.
pub fn psi_bl_ltl(n: usize) -> Formula {
    let (h1, h2, d, z, o) = (prop(HASH1), prop(HASH2), prop(DOLLAR), prop(ZERO), prop(ONE));
    let one_bit = || iff(z.clone(), not(o.clone()));
    let bit_letter = and_all([not(h1.clone()), not(h2.clone()), not(d.clone()), one_bit()]);
    let start_letter = and_all([h1.clone(), not(d.clone()), one_bit()]);
    let dollar_letter = and_all([d.clone(), not(h1.clone()), not(h2.clone()), not(z.clone()), not(o.clone())]);
    let index_is = |p: &Formula| and_all((1..=n).map(|h| nexts(h, p.clone())));
    let incr = or_all((0..=n).map(|j| {
        let same = (1..j).map(|h| iff(nexts(h, o.clone()), nexts(n + 1 + h, o.clone())));
        let flip = (j >= 1).then(|| and(nexts(j, z.clone()), nexts(n + 1 + j, o.clone())));
        let carry = (j + 1..=n).map(|h| and(nexts(h, o.clone()), nexts(n + 1 + h, z.clone())));
        and_all(same.chain(flip).chain(carry))
    }));
    let shape = always(implies(
        h1.clone(),
        and_all([
            start_letter,
            and_all((1..=n).map(|h| nexts(h, bit_letter.clone()))),
            nexts(n + 1, or(h1.clone(), d.clone())),
        ]),
    ));
    let marks = always(implies(h1.clone(), iff(h2.clone(), index_is(&z))));
    let step = always(implies(and(h1.clone(), nexts(n + 1, h1.clone())), incr));
    let tail = and_all([
        always(implies(d.clone(), and(dollar_letter, next(d.clone())))),
        eventually(d.clone()),
        always(implies(and(h1.clone(), nexts(n + 1, d.clone())), index_is(&o))),
    ]);
    let first = and_all([h1.clone(), h2.clone(), z.clone(), next(until(implies(h1.clone(), z.clone()), h2.clone()))]);
    let last = always(implies(and(h1.clone(), next(until(not(h2.clone()), d.clone()))), o.clone()));
    and_all([first, shape, marks, step, tail, last])
}

pub fn psi_bl(n: usize) -> Formula {
    pltl_to_pab(&psi_bl_ltl(n)).expect("LTL input")
}

pub fn psi_one(p: &str) -> Formula {
    let r = || right(prop(p));
    and_all([
        or(r(), ex(Rel::B, r())),
        not(ex(Rel::B, and(r(), ex(Rel::B, r())))),
        not(and(r(), ex(Rel::B, r()))),
    ])
}

pub fn psi_not(p: &str) -> Formula {
    and(not(right(prop(p))), not(ex(Rel::B, right(prop(p)))))
}

pub fn theta_eq(n: usize) -> Formula {
    and_all((1..=n).map(|h| {
        or_all([ZERO, ONE].map(|b| and(ex(Rel::B, and(len(h), right(prop(b)))), ex(Rel::A, and(len(h + 1), right(prop(b)))))))
    }))
}

pub fn psi_eq(n: usize, b: bool, b2: bool) -> Formula {
    let inner = and_all([psi_one(HASH2), theta_eq(n), right(and(prop(bit(b2)), prop(HASH1)))]);
    implies(prop(HASH1), and(prop(bit(b)), ex(Rel::A, and(len(2), ex(Rel::A, inner)))))
}

pub fn psi_inc(n: usize) -> Formula {
    let r2 = || right(prop(HASH2));
    let psi_l = all(Rel::B, implies(right(prop(HASH1)), right(psi_eq(n, true, false))));
    let same = or(right(psi_eq(n, false, false)), right(psi_eq(n, true, true)));
    let psi_r = ex(Rel::A, and(len(2), all(Rel::A, implies(and(psi_not(HASH2), right(prop(HASH1))), same))));
    let body = and_all([psi_one(HASH2), right(and(prop(HASH1), psi_eq(n, false, true))), psi_l, psi_r]);
    all(Rel::A, implies(and(r2(), ex(Rel::A, and(not(len(1)), r2()))), ex(Rel::A, body)))
}

pub fn yardstick_formula(n: usize) -> Result<Formula, CorpusError> {
    YardstickSpec::new(n)?;
    Ok(and(psi_bl(n), psi_inc(n)))
}

fn reach_dollar() -> Formula {
    ex_c(Rel::A, Cmp::Le, "u", ex(Rel::A, and(len(1), prop(DOLLAR))))
}

pub fn sat_lowerbound_formula(n: usize) -> Result<Formula, CorpusError> {
    Ok(and(yardstick_formula(n)?, reach_dollar()))
}

/// The complete structure over all letters, started at `{#1, #2, 0}`, with
/// the implication from the yardstick formula to reaching `$`.
pub fn mc_lowerbound_instance(n: usize) -> Result<(Kripke, Formula), CorpusError> {
    let f = implies(yardstick_formula(n)?, reach_dollar());
    let count = 1usize << YARDSTICK_ATOMS.len();
    let labels: Vec<Letter> = (0..count)
        .map(|m| YARDSTICK_ATOMS.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, a)| a.to_string()).collect())
        .collect();
    let start: Letter = [HASH1, HASH2, ZERO].iter().map(|s| s.to_string()).collect();
    let init = labels.iter().position(|l| *l == start).expect("all letters present");
    let names = (0..count).map(|m| format!("s{m}")).collect();
    let k = Kripke::new(
        YARDSTICK_ATOMS.iter().map(|s| s.to_string()).collect(),
        names,
        labels,
        vec![(0..count).collect(); count],
        init,
    )
    .expect("complete structure");
    Ok((k, f))
}
