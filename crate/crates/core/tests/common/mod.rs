#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use phs::semantics::{Horizon, Interval, IntervalModel, ParamValuation, TriBool};
use phs::syntax::ast::*;
use phs::syntax::lasso::{Lasso, Letter};
use proptest::prelude::*;

/// Brute-force interval semantics: every quantifier ranges over the intervals
/// inside `[0, window]` and nothing else.
pub struct Naive<'a> {
    pub w: &'a Lasso,
    pub alpha: &'a ParamValuation,
    pub window: usize,
    memo: HashMap<(*const Formula, usize, usize), bool>,
}

impl<'a> Naive<'a> {
    pub fn new(w: &'a Lasso, alpha: &'a ParamValuation, window: usize) -> Self {
        Naive { w, alpha, window, memo: HashMap::new() }
    }

    pub fn eval(&mut self, f: &Formula, x: usize, y: usize) -> bool {
        let key = (f as *const Formula, x, y);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match f {
            Formula::True => true,
            Formula::Prop(p) => (x..=y).all(|k| self.w.holds(k, p)),
            Formula::Not(a) => !self.eval(a, x, y),
            Formula::And(a, b) => self.eval(a, x, y) && self.eval(b, x, y),
            Formula::Or(a, b) => self.eval(a, x, y) || self.eval(b, x, y),
            Formula::Implies(a, b) => !self.eval(a, x, y) || self.eval(b, x, y),
            Formula::Modal { op, constraint, body } => {
                let bound = constraint.as_ref().map(|c| (c.cmp, self.alpha.0[&c.param]));
                let mut found = op.mode == Mode::Forall;
                'outer: for v in 0..=self.window {
                    for z in v..=self.window {
                        if !related(op.rel, x, y, v, z) {
                            continue;
                        }
                        if let Some((cmp, a)) = bound {
                            if !cmp.holds(z - v + 1, a) {
                                continue;
                            }
                        }
                        let b = self.eval(body, v, z);
                        if op.mode == Mode::Exists && b {
                            found = true;
                            break 'outer;
                        }
                        if op.mode == Mode::Forall && !b {
                            found = false;
                            break 'outer;
                        }
                    }
                }
                found
            }
            other => panic!("naive oracle: unsupported {other}"),
        };
        self.memo.insert(key, v);
        v
    }
}

/// Allen relation between `[x,y]` and `[v,z]`, written out directly.
pub fn related(rel: Rel, x: usize, y: usize, v: usize, z: usize) -> bool {
    match rel {
        Rel::A => v == y,
        Rel::Abar => z == x,
        Rel::L => v > y,
        Rel::Lbar => z < x,
        Rel::B => v == x && z < y,
        Rel::Bbar => v == x && z > y,
        Rel::BbarW => v == x && z >= y,
        Rel::E => z == y && v > x,
        Rel::Ebar => z == y && v < x,
        Rel::EbarW => z == y && v <= x,
        Rel::D => x < v && z < y,
        Rel::Dbar => v < x && y < z,
        Rel::O => x < v && v < y && y < z,
        Rel::Obar => v < x && x < z && z < y,
    }
}

/// Compares two interval formulas on all intervals with `j <= span`, using
/// the table oracle; returns the first interval where both are conclusive
/// and differ.
pub fn differ(w: &Lasso, alpha: &ParamValuation, f: &Formula, g: &Formula, span: usize) -> Option<Interval> {
    let bound = Horizon::default_for(w, alpha, f).max(Horizon::default_for(w, alpha, g)).max(span) + 6;
    let h = Horizon { bound, settle_periods: 2 };
    let mf = IntervalModel::build_with(w, alpha, f, h).unwrap();
    let mg = IntervalModel::build_with(w, alpha, g, h).unwrap();
    for i in 0..=span {
        for j in i..=span {
            let iv = Interval::new(i, j);
            let (a, b) = (mf.get(iv).unwrap(), mg.get(iv).unwrap());
            if a.is_conclusive() && b.is_conclusive() && a != b {
                return Some(iv);
            }
        }
    }
    None
}

/// Fraction of conclusive cells, for guarding against vacuous comparisons.
pub fn conclusive(w: &Lasso, alpha: &ParamValuation, f: &Formula, span: usize) -> usize {
    let m = IntervalModel::build(w, alpha, f).unwrap();
    let span = span.min(m.horizon());
    (0..=span).flat_map(|i| (i..=span).map(move |j| (i, j))).filter(|&(i, j)| m.get(Interval::new(i, j)).unwrap() != TriBool::Unknown).count()
}

pub const ATOMS: [&str; 2] = ["p", "q"];

pub fn arb_letter() -> impl Strategy<Value = Letter> {
    prop::collection::btree_set(prop::sample::select(ATOMS.to_vec()), 0..=2)
        .prop_map(|s| s.into_iter().map(String::from).collect::<BTreeSet<_>>())
}

pub fn arb_lasso() -> impl Strategy<Value = Lasso> {
    (prop::collection::vec(arb_letter(), 0..=2), prop::collection::vec(arb_letter(), 1..=3))
        .prop_map(|(s, c)| Lasso::new(s, c).unwrap())
}

pub fn arb_rel() -> impl Strategy<Value = Rel> {
    prop::sample::select(Rel::ALL.to_vec())
}

pub fn arb_cmp() -> impl Strategy<Value = Cmp> {
    prop::sample::select(vec![Cmp::Lt, Cmp::Le, Cmp::Gt, Cmp::Ge])
}

/// Interval formulas over `p`, `q`; constrained modalities use `u`.
pub fn arb_interval_formula(depth: u32, params: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(tt()),
        Just(prop("p")),
        Just(prop("q")),
    ];
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        let modal_c = (arb_rel(), any::<bool>(), prop::option::of(arb_cmp()), inner.clone()).prop_map(
            move |(rel, exists, c, b)| {
                let mode = if exists { Mode::Exists } else { Mode::Forall };
                let c = if params { c.map(|c| ParamConstraint::new(c, "u")) } else { None };
                modal(AllenOp { rel, mode }, c, b)
            },
        );
        prop_oneof![
            inner.clone().prop_map(not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| implies(a, b)),
            modal_c,
        ]
    })
}

pub fn reaches_future(rel: Rel) -> bool {
    matches!(rel, Rel::A | Rel::L | Rel::Bbar | Rel::BbarW | Rel::Dbar | Rel::O)
}

/// No future-reaching modality lies below another one.
pub fn future_depth_one(f: &Formula) -> bool {
    fn go(f: &Formula, under: bool) -> bool {
        match f {
            Formula::Modal { op, body, .. } if reaches_future(op.rel) => !under && go(body, true),
            _ => f.children().into_iter().all(|c| go(c, under)),
        }
    }
    go(f, false)
}

/// PLTL formulas over `p`, `q` with bounds on `u` (F) and `l` (G).
pub fn arb_pltl_formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(tt()), Just(prop("p")), Just(prop("q"))];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        let strict = any::<bool>();
        prop_oneof![
            inner.clone().prop_map(not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
            inner.clone().prop_map(next),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| until(a, b)),
            inner.clone().prop_map(eventually),
            inner.clone().prop_map(always),
            (strict, inner.clone()).prop_map(|(s, b)| Formula::Eventually {
                bound: Some(ParamConstraint::new(if s { Cmp::Lt } else { Cmp::Le }, "u")),
                body: Box::new(b),
            }),
            (strict, inner).prop_map(|(s, b)| Formula::Always {
                bound: Some(ParamConstraint::new(if s { Cmp::Lt } else { Cmp::Le }, "l")),
                body: Box::new(b),
            }),
        ]
    })
}

/// Guards over the first two atoms of an automaton.
pub fn small_guard(i: u8, n_atoms: usize) -> phs::automata::Guard {
    use phs::automata::Guard;
    let lit = |a: usize, v: bool| Guard::lit(a, v);
    match (i % 7, n_atoms) {
        (0, _) => Guard::tt(),
        (1, _) | (5, 1) => lit(0, true),
        (2, _) | (6, 1) => lit(0, false),
        (3, 1) => lit(0, true),
        (4, 1) => lit(0, false),
        (3, _) => lit(1, true),
        (4, _) => lit(1, false),
        (5, _) => lit(0, true).and(&lit(1, false)),
        _ => lit(0, false).or(&lit(1, true)),
    }
}

/// Random automata with 1..=`max_states` states over `atoms`.
pub fn arb_nba(atoms: &'static [&'static str], max_states: usize) -> impl Strategy<Value = phs::automata::Nba> {
    (1..=max_states).prop_flat_map(move |n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec((0..n, any::<u8>(), 0..n), 0..=3 * n),
        )
            .prop_map(move |(acc, edges)| {
                let mut a = phs::automata::Nba::new(atoms.iter().map(|s| s.to_string()).collect()).unwrap();
                for f in acc {
                    a.add_state(f);
                }
                for (s, g, t) in edges {
                    a.add_edge(s, small_guard(g, atoms.len()), t);
                }
                a
            })
    })
}

/// `count` lassos over `atoms` drawn from a seeded generator.
pub fn sample_lassos(atoms: &[&str], count: usize, seed: u64) -> Vec<Lasso> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let letter = |rng: &mut rand_chacha::ChaCha8Rng| -> Letter {
        atoms.iter().filter(|_| rng.gen_bool(0.5)).map(|s| s.to_string()).collect()
    };
    (0..count)
        .map(|_| {
            let s = rng.gen_range(0..=3);
            let c = rng.gen_range(1..=4);
            let stem = (0..s).map(|_| letter(&mut rng)).collect();
            let cycle = (0..c).map(|_| letter(&mut rng)).collect();
            Lasso::new(stem, cycle).unwrap()
        })
        .collect()
}

/// Every maximal block of equal `c` values has length at most `k`.
pub fn k_bounded(w: &Lasso, c: &str, k: usize) -> bool {
    if w.cycle.iter().all(|l| l.contains(c) == w.cycle[0].contains(c)) {
        return false;
    }
    let n = w.stem.len() + 3 * w.cycle.len();
    let mut run = 0;
    for i in 0..n {
        run = if i > 0 && w.holds(i, c) == w.holds(i - 1, c) { run + 1 } else { 1 };
        if run > k {
            return false;
        }
    }
    true
}

/// Every lasso over `atoms` with stem length `<= max_stem` and loop length
/// in `1..=max_loop`.
pub fn all_lassos(atoms: &[&str], max_stem: usize, max_loop: usize) -> Vec<Lasso> {
    let letters: Vec<Letter> = (0..1usize << atoms.len())
        .map(|m| atoms.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, a)| a.to_string()).collect())
        .collect();
    let words = |len: usize| -> Vec<Vec<Letter>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| letters.iter().map(move |l| { let mut v = w.clone(); v.push(l.clone()); v })).collect();
        }
        out
    };
    let mut out = Vec::new();
    for s in 0..=max_stem {
        for l in 1..=max_loop {
            for stem in words(s) {
                for cycle in words(l) {
                    out.push(Lasso::new(stem.clone(), cycle).unwrap());
                }
            }
        }
    }
    out
}

/// All valuations of `params` with values in `1..=max`.
pub fn valuation_grid(params: &BTreeSet<String>, max: usize) -> Vec<ParamValuation> {
    let mut out = vec![ParamValuation::new()];
    for p in params {
        out = out.into_iter().flat_map(|v| (1..=max).map(move |x| v.clone().with(p.clone(), x))).collect();
    }
    out
}

/// A (lasso, valuation) pair satisfying `f` found by exhaustive search.
pub fn brute_sat(f: &Formula, lassos: &[Lasso], max_value: usize) -> Option<(Lasso, ParamValuation)> {
    let grid = valuation_grid(&f.params(), max_value);
    lassos.iter().find_map(|w| {
        grid.iter()
            .find(|a| phs::semantics::eval_trace(w, a, f) == Ok(TriBool::True))
            .map(|a| (w.clone(), a.clone()))
    })
}

/// Whether `w` is the label sequence of some path of `k` from its initial
/// state; the reachable sets at loop boundaries repeat within `2^|S|`
/// unrollings.
pub fn is_model_trace(k: &phs::syntax::kripke::Kripke, w: &Lasso) -> bool {
    let n = w.stem.len() + ((1usize << k.num_states().min(12)) + 1) * w.cycle.len();
    let mut cur: BTreeSet<usize> = [k.init].into_iter().filter(|&s| k.labels[s] == *w.letter(0)).collect();
    for i in 1..n {
        cur = cur.iter().flat_map(|&s| k.succ[s].iter().copied()).filter(|&t| k.labels[t] == *w.letter(i)).collect();
    }
    !cur.is_empty()
}
