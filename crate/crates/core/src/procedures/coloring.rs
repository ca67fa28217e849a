use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{bounded_valuation, fresh_color, ProcError};
use crate::rewrite::{colorize, pnf_kinds};
use crate::semantics::{eval_trace, ParamValuation, TriBool};
use crate::syntax::ast::*;
use crate::syntax::lasso::{Lasso, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringShape {
    /// Every block has length at least `k`.
    Spaced,
    /// Every block has length at most `k`.
    Bounded,
    /// Every block has length exactly `k`.
    Exact,
}

/// A colouring of `c` as a lasso over `{c}`: blocks alternate in colour,
/// starting with `c` iff `start`, and their lengths follow `shape`.
pub fn random_coloring(rng: &mut impl Rng, c: &str, k: usize, shape: ColoringShape, start: bool) -> Lasso {
    let block = |rng: &mut _| match shape {
        ColoringShape::Spaced => Rng::gen_range(rng, k..=k + 2),
        ColoringShape::Bounded => Rng::gen_range(rng, 1..=k),
        ColoringShape::Exact => k,
    };
    let stem_blocks: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| block(rng)).collect();
    let mut cycle_blocks: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| block(rng)).collect();
    if cycle_blocks.len() % 2 == 1 {
        cycle_blocks.extend(cycle_blocks.clone());
    }
    let letter = |on: bool| -> Letter { if on { [c.to_string()].into() } else { Letter::new() } };
    let expand = |blocks: &[usize], first: usize| -> Vec<Letter> {
        blocks.iter().enumerate().flat_map(|(i, &n)| std::iter::repeat_n(letter(start ^ ((first + i) % 2 == 1)), n)).collect()
    };
    Lasso::new(expand(&stem_blocks, 0), expand(&cycle_blocks, stem_blocks.len())).expect("nonempty cycle")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Pointwise union of two lassos.
pub fn overlay(w: &Lasso, col: &Lasso) -> Lasso {
    let s = w.stem.len().max(col.stem.len());
    let (a, b) = (w.cycle.len(), col.cycle.len());
    let p = a / gcd(a, b) * b;
    let at = |i: usize| -> Letter { w.letter(i).union(col.letter(i)).cloned().collect() };
    Lasso::new((0..s).map(at).collect(), (s..s + p).map(at).collect()).expect("nonempty cycle")
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma2Violation {
    pub part: u8,
    pub k: usize,
    pub coloring: Lasso,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Lemma2Report {
    pub part1_checked: usize,
    pub part1_skipped: usize,
    pub part2_checked: usize,
    pub part2_skipped: usize,
    pub violations: Vec<Lemma2Violation>,
}

/// Samples colourings of `w` and checks both directions of the colouring
/// lemma for the prompt formula `f`; part 2 draws `k` from `1..=max_k`.
pub fn verify_lemma2(
    f: &Formula,
    w: &Lasso,
    alpha: &ParamValuation,
    samples: usize,
    max_k: usize,
    seed: u64,
) -> Result<Lemma2Report, ProcError> {
    let mut taken = f.props();
    taken.extend(w.atoms());
    let c = fresh_color(&taken);
    let cf = colorize(f, &c)?;
    let decl = pnf_kinds(f, &ParamDecl::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Lemma2Report::default();

    let holds = eval_trace(w, alpha, f)?;
    let k = decl.upward.iter().map(|u| alpha.get(u)).collect::<Result<Vec<_>, _>>()?.into_iter().max().unwrap_or(1);
    for _ in 0..samples {
        if holds != TriBool::True {
            rep.part1_skipped += 1;
            continue;
        }
        let start = rng.gen_bool(0.5);
        let col = random_coloring(&mut rng, &c, k, ColoringShape::Spaced, start);
        match eval_trace(&overlay(w, &col), &ParamValuation::new(), &cf)? {
            TriBool::True => rep.part1_checked += 1,
            TriBool::Unknown => rep.part1_skipped += 1,
            TriBool::False => {
                rep.part1_checked += 1;
                rep.violations.push(Lemma2Violation { part: 1, k, coloring: col });
            }
        }
    }

    for _ in 0..samples {
        let k = rng.gen_range(1..=max_k.max(1));
        let start = rng.gen_bool(0.5);
        let col = random_coloring(&mut rng, &c, k, ColoringShape::Bounded, start);
        if eval_trace(&overlay(w, &col), &ParamValuation::new(), &cf)? != TriBool::True {
            rep.part2_skipped += 1;
            continue;
        }
        let mut beta = bounded_valuation(&decl, f, k);
        for (p, v) in &alpha.0 {
            beta.0.entry(p.clone()).or_insert(*v);
        }
        match eval_trace(w, &beta, f)? {
            TriBool::True => rep.part2_checked += 1,
            TriBool::Unknown => rep.part2_skipped += 1,
            TriBool::False => {
                rep.part2_checked += 1;
                rep.violations.push(Lemma2Violation { part: 2, k, coloring: col });
            }
        }
    }
    Ok(rep)
}
