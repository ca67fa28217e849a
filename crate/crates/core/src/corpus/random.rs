use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CorpusError;
use crate::rewrite::{pnf_kinds, to_pnf};
use crate::semantics::ParamValuation;
use crate::syntax::ast::*;
use crate::syntax::kripke::Kripke;
use crate::syntax::lasso::{Lasso, Letter};

/// Bounds on generated instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub name: String,
    pub depth: usize,
    pub atoms: Vec<String>,
    pub params: Vec<String>,
    pub max_params: usize,
    /// Bound on distinct subformulas.
    pub max_size: usize,
    pub max_stem: usize,
    pub max_loop: usize,
    pub max_value: usize,
}

impl Profile {
    pub fn tiny() -> Self {
        Profile {
            name: "tiny".into(),
            depth: 2,
            atoms: vec!["p".into(), "q".into()],
            params: vec!["u".into()],
            max_params: 1,
            max_size: 8,
            max_stem: 3,
            max_loop: 3,
            max_value: 6,
        }
    }

    pub fn small() -> Self {
        Profile {
            name: "small".into(),
            depth: 3,
            atoms: vec!["p".into(), "q".into(), "r".into()],
            params: vec!["u".into(), "v".into()],
            max_params: 2,
            max_size: 16,
            max_stem: 4,
            max_loop: 4,
            max_value: 8,
        }
    }
}

impl FromStr for Profile {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, CorpusError> {
        match s {
            "tiny" => Ok(Profile::tiny()),
            "small" => Ok(Profile::small()),
            _ => Err(CorpusError::UnknownProfile(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub formula: Formula,
    pub lasso: Lasso,
    pub valuation: ParamValuation,
}

const RELS: [Rel; 12] = [
    Rel::A, Rel::Abar, Rel::L, Rel::Lbar, Rel::B, Rel::Bbar, Rel::E, Rel::Ebar, Rel::D, Rel::Dbar, Rel::O, Rel::Obar,
];

fn gen_formula(rng: &mut ChaCha8Rng, p: &Profile, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.15) { tt() } else { prop(p.atoms.choose(rng).unwrap().clone()) };
    }
    match rng.gen_range(0..10) {
        0 | 1 => not(gen_formula(rng, p, depth)),
        2 => and(gen_formula(rng, p, depth - 1), gen_formula(rng, p, depth - 1)),
        3 => or(gen_formula(rng, p, depth - 1), gen_formula(rng, p, depth - 1)),
        _ => {
            let rel = *RELS.choose(rng).unwrap();
            let mode = if rng.gen_bool(0.5) { Mode::Exists } else { Mode::Forall };
            let constraint = (!p.params.is_empty() && rng.gen_bool(0.5)).then(|| {
                let cmp = *[Cmp::Lt, Cmp::Le, Cmp::Gt, Cmp::Ge].choose(rng).unwrap();
                ParamConstraint::new(cmp, p.params.choose(rng).unwrap().clone())
            });
            modal(AllenOp { rel, mode }, constraint, gen_formula(rng, p, depth - 1))
        }
    }
}

fn acceptable(f: &Formula, p: &Profile) -> bool {
    f.params().len() <= p.max_params
        && f.size() <= p.max_size
        && f.syntactic_decl().is_some()
        && pnf_kinds(&to_pnf(f), &ParamDecl::default()).is_ok()
}

fn gen_lasso(rng: &mut ChaCha8Rng, atoms: &[String], max_stem: usize, max_loop: usize) -> Lasso {
    let letter = |rng: &mut ChaCha8Rng| -> Letter { atoms.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect() };
    let stem = (0..rng.gen_range(0..=max_stem)).map(|_| letter(rng)).collect();
    let cycle = (0..rng.gen_range(1..=max_loop.max(1))).map(|_| letter(rng)).collect();
    Lasso::new(stem, cycle).expect("nonempty cycle")
}

/// An endless, seed-determined stream of well-kinded formulas with a
/// lasso and a valuation of their parameters.
pub fn random_instances(seed: u64, profile: Profile) -> impl Iterator<Item = Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::from_fn(move || {
        let formula = loop {
            let f = gen_formula(&mut rng, &profile, profile.depth);
            if acceptable(&f, &profile) {
                break f;
            }
        };
        let lasso = gen_lasso(&mut rng, &profile.atoms, profile.max_stem, profile.max_loop);
        let mut valuation = ParamValuation::new();
        for u in formula.params() {
            valuation.set(u, rng.gen_range(1..=profile.max_value));
        }
        Some(Instance { formula, lasso, valuation })
    })
}

pub const TINY_SEED: u64 = 2024;

/// Forty distinct temporal formulas of the tiny profile.
pub fn tiny_corpus() -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    for inst in random_instances(TINY_SEED, Profile::tiny()) {
        if inst.formula.modal_depth() >= 1 && !out.contains(&inst.formula) {
            out.push(inst.formula);
            if out.len() == 40 {
                break;
            }
        }
    }
    out
}

/// A left-total structure with `states` states, each with one or two
/// successors, started in state 0.
pub fn random_kripke(rng: &mut impl Rng, states: usize, atoms: &[String]) -> Kripke {
    let labels: Vec<Letter> = (0..states).map(|_| atoms.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()).collect();
    let succ = (0..states)
        .map(|_| {
            let mut s: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..states)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let names = (0..states).map(|i| format!("s{i}")).collect();
    Kripke::new(atoms.iter().cloned().collect(), names, labels, succ, 0).expect("left-total")
}

/// Model-checking instances over at most three states and the tiny profile.
pub fn tiny_mc_instances(count: usize, seed: u64) -> Vec<(Kripke, Formula)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profile = Profile::tiny();
    random_instances(seed, profile.clone())
        .filter(|i| i.formula.modal_depth() >= 1)
        .take(count)
        .map(|i| {
            let states = rng.gen_range(1..=3);
            (random_kripke(&mut rng, states, &profile.atoms), i.formula)
        })
        .collect()
}
