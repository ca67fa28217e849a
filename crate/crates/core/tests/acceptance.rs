//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use phs::automata::{bound_counter, complement, intersect, is_empty, replay_pumpable};
use phs::compile::{hs_to_nba, Fragment, DEFAULT_BUDGET};
use phs::corpus::*;
use phs::hybrid::{hl1_open, hl2_open, X, X_L, X_R};
use phs::procedures::*;
use phs::rewrite::*;
use phs::semantics::*;
use phs::syntax::ast::*;
use phs::syntax::lasso::Lasso;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn draw<S: Strategy>(s: &S, runner: &mut TestRunner) -> S::Value {
    s.new_tree(runner).unwrap().current()
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

// ---------------------------------------------------------------- criterion 1

const SPAN: usize = 5;
const PER_RULE: usize = 500;

/// Small parameter-free bodies over `p`, `q`, occasionally under one modality.
fn body(rng: &mut ChaCha8Rng) -> Formula {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..6) {
        0 => tt(),
        1 => prop("p"),
        2 => prop("q"),
        3 => not(prop("p")),
        4 => and(prop("p"), prop("q")),
        _ => or(prop("q"), not(prop("p"))),
    };
    if rng.gen_bool(0.35) {
        let rel = *Rel::ALL.choose(rng).unwrap();
        let b = leaf(rng);
        if rng.gen_bool(0.5) {
            ex(rel, b)
        } else {
            all(rel, b)
        }
    } else {
        leaf(rng)
    }
}

fn random_lasso(rng: &mut ChaCha8Rng) -> Lasso {
    let letter = |rng: &mut ChaCha8Rng| ["p", "q"].iter().filter(|_| rng.gen_bool(0.5)).map(|s| s.to_string()).collect();
    let stem = (0..rng.gen_range(0..=3)).map(|_| letter(rng)).collect();
    let cycle = (0..rng.gen_range(1..=3)).map(|_| letter(rng)).collect();
    Lasso::new(stem, cycle).unwrap()
}

/// Conclusive agreements and disagreements of `f` and `g` over all
/// intervals inside `[0, SPAN]`.
fn compare(w: &Lasso, alpha: &ParamValuation, f: &Formula, g: &Formula) -> (usize, Option<Interval>) {
    let bound = Horizon::default_for(w, alpha, f).max(Horizon::default_for(w, alpha, g)) + SPAN + 6;
    let h = Horizon { bound, settle_periods: 2 };
    let mf = IntervalModel::build_with(w, alpha, f, h).unwrap();
    let mg = IntervalModel::build_with(w, alpha, g, h).unwrap();
    let mut agree = 0;
    for i in 0..=SPAN {
        for j in i..=SPAN {
            let iv = Interval::new(i, j);
            let (a, b) = (mf.get(iv).unwrap(), mg.get(iv).unwrap());
            if a.is_conclusive() && b.is_conclusive() {
                if a != b {
                    return (agree, Some(iv));
                }
                agree += 1;
            }
        }
    }
    (agree, None)
}

type Rewriter = Box<dyn Fn(&mut ChaCha8Rng) -> Option<(Formula, Formula, ParamValuation)>>;

fn rule_suite() -> Vec<(String, Rewriter)> {
    let mut rules: Vec<(String, Rewriter)> = Vec::new();
    let cmps = [Cmp::Lt, Cmp::Le, Cmp::Gt, Cmp::Ge];
    for rel in Rel::ALL {
        rules.push((
            format!("negation/{}", rel.name()),
            Box::new(move |rng| {
                let mode = if rng.gen_bool(0.5) { Mode::Exists } else { Mode::Forall };
                let c = rng.gen_bool(0.7).then(|| ParamConstraint::new(*cmps.choose(rng).unwrap(), "u"));
                let f = not(modal(AllenOp { rel, mode }, c, body(rng)));
                let g = to_pnf(&f);
                assert!(g.is_pnf(), "{g}");
                Some((f, g, ParamValuation::new().with("u", rng.gen_range(1..=4))))
            }),
        ));
        rules.push((
            format!("universal-upward/{}", rel.name()),
            Box::new(move |rng| {
                let cmp = if rng.gen_bool(0.5) { Cmp::Ge } else { Cmp::Gt };
                let f = all_c(rel, cmp, "u", body(rng));
                let g = drop_universal_upward(&f);
                let left = g.any(&|h| matches!(h, Formula::Modal { op, constraint: Some(c), .. } if op.mode == Mode::Forall && !c.cmp.is_upper()));
                assert!(!left, "{g}");
                Some((f, g, ParamValuation::new().with("u", rng.gen_range(1..=4))))
            }),
        ));
        for (target, name, keep) in [
            (Target::BBbarEEbar, "BBbarEEbar", &[Rel::B, Rel::Bbar, Rel::E, Rel::Ebar, Rel::BbarW, Rel::EbarW][..]),
            (Target::ABBbar, "ABBbar", &[Rel::A, Rel::B, Rel::Bbar, Rel::BbarW][..]),
        ] {
            rules.push((
                format!("core-{name}/{}", rel.name()),
                Box::new(move |rng| {
                    let mode = if rng.gen_bool(0.6) { Mode::Exists } else { Mode::Forall };
                    let c = rng.gen_bool(0.7).then(|| ParamConstraint::new(*cmps.choose(rng).unwrap(), "u"));
                    let b = if target == Target::ABBbar { leaf_only(rng) } else { body(rng) };
                    let f = modal(AllenOp { rel, mode }, c, b);
                    let g = to_core_fragment(&f, target).ok()?;
                    assert!(g.uses_only(keep), "{f} -> {g}");
                    Some((f, g, ParamValuation::new().with("u", rng.gen_range(1..=4))))
                }),
            ));
        }
    }
    let shapes: [(&str, Mode, Cmp); 4] =
        [("exists>=", Mode::Exists, Cmp::Ge), ("exists>", Mode::Exists, Cmp::Gt), ("forall<=", Mode::Forall, Cmp::Le), ("forall<", Mode::Forall, Cmp::Lt)];
    for (name, mode, cmp) in shapes {
        rules.push((
            format!("prompt/{name}"),
            Box::new(move |rng| {
                let rel = *Rel::ALL.choose(rng).unwrap();
                let f = to_pnf(&modal(AllenOp { rel, mode }, Some(ParamConstraint::new(cmp, "l")), body(rng)));
                let g = to_prompt(&f).unwrap();
                assert!(g.params().is_empty(), "{g}");
                Some((f, g, ParamValuation::new().with("l", 1)))
            }),
        ));
    }
    rules
}

fn leaf_only(rng: &mut ChaCha8Rng) -> Formula {
    [tt(), prop("p"), prop("q"), not(prop("q")), and(prop("p"), prop("q"))].choose(rng).unwrap().clone()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut rules, mut min, mut unsupported) = (0, usize::MAX, Vec::new());
    for (name, rewrite) in rule_suite() {
        let (mut samples, mut attempts, mut produced) = (0, 0, 0);
        while samples < PER_RULE && attempts < 2000 {
            attempts += 1;
            let Some((f, g, alpha)) = rewrite(&mut rng) else { continue };
            produced += 1;
            let w = random_lasso(&mut rng);
            let (n, bad) = compare(&w, &alpha, &f, &g);
            if let Some(iv) = bad {
                return Err(format!("{name}: {f} vs {g} differ at [{},{}] on {w} with {alpha}", iv.i, iv.j));
            }
            samples += n;
        }
        if produced == 0 {
            unsupported.push(name);
            continue;
        }
        ensure(samples >= PER_RULE, || format!("{name}: only {samples} conclusive samples"))?;
        rules += 1;
        min = min.min(samples);
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("runtime {}", secs(t)))?;
    Ok(format!(
        "{rules} rules, >= {min} conclusive samples each, 0 violations, {} (outside the ABBbar target: {})",
        secs(t),
        unsupported.iter().map(|s| s.rsplit('/').next().unwrap()).collect::<Vec<_>>().join(" ")
    ))
}

// ---------------------------------------------------------------- criterion 2

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::deterministic();
    let (strat, lassos) = (arb_pltl_formula(3), arb_lasso());
    let mut samples = 0;
    let mut formulas = 0;
    while samples < 600 {
        let (f, w) = (draw(&strat, &mut runner), draw(&lassos, &mut runner));
        let (u, l) = (draw(&(1usize..=4), &mut runner), draw(&(1usize..=4), &mut runner));
        let g = pltl_to_pab(&f).map_err(|e| e.to_string())?;
        ensure(g.uses_only(&[Rel::A, Rel::B]), || format!("{g} leaves A/B"))?;
        let alpha = ParamValuation::new().with("u", u).with("l", l);
        let pm = PointModel::build(&w, &alpha, &f, Some(40)).unwrap();
        let im = IntervalModel::build_with(&w, &alpha, &g, Horizon { bound: 40, settle_periods: 2 }).unwrap();
        formulas += 1;
        for i in 0..=5 {
            let (a, b) = (pm.get(i).unwrap(), im.get(Interval::new(i, i)).unwrap());
            if a.is_conclusive() && b.is_conclusive() {
                ensure(a == b, || format!("{f} -> {g} at {i} on {w} with {alpha}: {a:?} vs {b:?}"))?;
                samples += 1;
            }
        }
    }
    Ok(format!("{samples} conclusive samples over {formulas} formulas, 0 violations, {}", secs(start.elapsed())))
}

// ---------------------------------------------------------------- criterion 3

fn over(rels: Vec<Rel>) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(tt()), Just(prop("p")), Just(prop("q"))];
    leaf.prop_recursive(3, 16, 2, move |inner| {
        let rels = rels.clone();
        prop_oneof![
            inner.clone().prop_map(not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
            (prop::sample::select(rels), any::<bool>(), inner).prop_map(|(r, e, b)| if e { ex(r, b) } else { all(r, b) }),
        ]
    })
}

fn hybrid_law(two: bool, runner: &mut TestRunner) -> Result<usize, String> {
    const H: usize = 40;
    let rels = if two { vec![Rel::B, Rel::Bbar, Rel::E, Rel::Ebar] } else { vec![Rel::A, Rel::B, Rel::Bbar] };
    let strat = over(rels);
    let lassos = (prop::collection::vec(arb_letter(), 0..=3), prop::collection::vec(arb_letter(), 1..=2))
        .prop_map(|(s, c)| Lasso::new(s, c).unwrap());
    let mut samples = 0;
    while samples < 400 {
        let (f, w) = (draw(&strat, runner), draw(&lassos, runner));
        let m = IntervalModel::build_with(&w, &ParamValuation::new(), &f, Horizon { bound: H, settle_periods: 2 }).unwrap();
        let g = if two { hl2_open(&f) } else { hl1_open(&f) }.map_err(|e| e.to_string())?;
        for i in 0..=5 {
            for j in i..=5 {
                let (at, env): (usize, BTreeMap<String, usize>) = if two {
                    (i, [(X_L.to_string(), i), (X_R.to_string(), j)].into())
                } else {
                    (j, [(X.to_string(), i)].into())
                };
                let a = m.get(Interval::new(i, j)).unwrap();
                let b = eval_hl(&w, at, &env, &g, Some(H)).unwrap();
                if a.is_conclusive() && b.is_conclusive() {
                    ensure(a == b, || format!("{f} at [{i},{j}] on {w}: {a:?} vs {b:?}"))?;
                    samples += 1;
                }
            }
        }
    }
    Ok(samples)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::deterministic();
    let f = hybrid_law(true, &mut runner)?;
    let h = hybrid_law(false, &mut runner)?;
    Ok(format!("two-variable law {f} samples, one-variable law {h} samples, 0 violations, {}", secs(start.elapsed())))
}

// ---------------------------------------------------------------- criterion 4

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::deterministic();
    let mut automata = 0;
    const ONE: &[&str] = &["p"];
    const TWO: &[&str] = &["p", "q"];
    for (atoms, count) in [(ONE, 120), (TWO, 80)] {
        let strat = arb_nba(atoms, 6);
        for seed in 0..count {
            let a = draw(&strat, &mut runner);
            let c = complement(&a, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(is_empty(&intersect(&a, &c).unwrap()).is_none(), || format!("complement overlaps {a:?}"))?;
            for w in sample_lassos(atoms, 200, seed) {
                ensure(a.accepts(&w) ^ c.accepts(&w), || format!("membership of {w} in {a:?}"))?;
            }
            automata += 1;
        }
    }
    let strat = arb_nba(&["p", "c"], 6);
    let (mut counters, mut witnesses) = (0, 0);
    for seed in 0..120u64 {
        let a = draw(&strat, &mut runner);
        let k = 1 + (seed as usize % 3);
        let b = bound_counter(&a, k, "c").map_err(|e| e.to_string())?;
        if let Some(w) = is_empty(&b) {
            ensure(w.replay(&b).is_ok() && k_bounded(&w.lasso, "c", k) && a.accepts(&w.lasso), || format!("witness {} for k={k}", w.lasso))?;
            witnesses += 1;
        }
        for w in sample_lassos(&["p", "c"], 200, seed) {
            ensure(b.accepts(&w) == (a.accepts(&w) && k_bounded(&w, "c", k)), || format!("bound {k} on {w}"))?;
        }
        counters += 1;
    }
    Ok(format!(
        "{automata} automata complemented (disjoint, 200 lassos each), {counters} bound counters ({witnesses} witnesses k-bounded), 0 violations, {}",
        secs(start.elapsed())
    ))
}

// ---------------------------------------------------------------- criterion 5

fn tiny_formula() -> impl Strategy<Value = Formula> {
    let op = || (arb_rel(), any::<bool>()).prop_map(|(rel, e)| AllenOp { rel, mode: if e { Mode::Exists } else { Mode::Forall } });
    prop_oneof![
        1 => arb_interval_formula(2, false),
        2 => (op(), arb_interval_formula(1, false)).prop_map(|(o, b)| modal(o, None, b)),
        2 => (op(), op(), arb_interval_formula(0, false)).prop_map(|(o, p, b)| modal(o, None, modal(p, None, b))),
    ]
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::deterministic();
    let strat = tiny_formula();
    let (mut conclusive, mut formulas, mut accepted) = (0, 0, 0);
    let mut round = 0u64;
    while conclusive < 300 {
        let f = draw(&strat, &mut runner);
        let (a, _) = hs_to_nba(&f, Fragment::Auto, DEFAULT_BUDGET).map_err(|e| format!("{f}: {e}"))?;
        formulas += 1;
        for w in sample_lassos(&["p", "q"], 4, round) {
            let Some(truth) = eval_trace(&w, &ParamValuation::new(), &f).unwrap().to_bool() else { continue };
            ensure(a.accepts(&w) == truth, || format!("{f} on {w}: oracle {truth}"))?;
            conclusive += 1;
            accepted += usize::from(truth);
        }
        round += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(600), || format!("runtime {}", secs(t)))?;
    Ok(format!("{conclusive} conclusive samples ({accepted} accepted) over {formulas} formulas, 0 violations, {}", secs(t)))
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut total = Lemma2Report::default();
    let mut instances = 0;
    for (i, inst) in random_instances(6, Profile::tiny()).enumerate() {
        if total.part1_checked >= 200 && total.part2_checked >= 200 {
            break;
        }
        ensure(i < 2000, || format!("only {} / {} samples", total.part1_checked, total.part2_checked))?;
        let pl = pipeline(&inst.formula, &ParamDecl::default(), "c").map_err(|e| e.to_string())?;
        let alpha = pl.prompt.params().into_iter().fold(ParamValuation::new(), |a, u| {
            let v = inst.valuation.0.get(&u).copied().unwrap_or(2);
            a.with(u, v)
        });
        let Ok(rep) = verify_lemma2(&pl.prompt, &inst.lasso, &alpha, 10, 3, i as u64) else { continue };
        ensure(rep.violations.is_empty(), || format!("{} on {}: {:?}", pl.prompt, inst.lasso, rep.violations))?;
        total.part1_checked += rep.part1_checked;
        total.part2_checked += rep.part2_checked;
        total.part1_skipped += rep.part1_skipped;
        total.part2_skipped += rep.part2_skipped;
        instances += 1;
    }
    Ok(format!(
        "part 1: {} colourings, part 2: {} colourings ({instances} formula/trace pairs; skipped {}/{}), 0 violations, {}",
        total.part1_checked,
        total.part2_checked,
        total.part1_skipped,
        total.part2_skipped,
        secs(start.elapsed())
    ))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let corpus = tiny_corpus();
    ensure(corpus.len() == 40, || format!("corpus has {} formulas", corpus.len()))?;
    let mut by_atoms: BTreeMap<Vec<String>, Vec<Lasso>> = BTreeMap::new();
    let (mut empty, mut nonempty, mut strict) = (0, 0, 0);
    for f in &corpus {
        let atoms: Vec<String> = f.props().into_iter().collect();
        let lassos = by_atoms.entry(atoms.clone()).or_insert_with(|| {
            let names: Vec<&str> = atoms.iter().map(String::as_str).collect();
            all_lassos(&names, 3, 3)
        });
        let r = check_sat(f, &Options::default()).map_err(|e| format!("{f}: {e}"))?;
        let brute = brute_sat(f, lassos, 6);
        match r.verdict {
            SatVerdict::Nonempty => {
                nonempty += 1;
                let (w, alpha) = (r.witness.as_ref().unwrap(), r.valuation.as_ref().unwrap());
                ensure(r.verified == Some(true), || format!("{f}: witness not verified"))?;
                ensure(eval_trace(w, alpha, f) == Ok(TriBool::True), || format!("{f}: witness {w} fails"))?;
                ensure(brute.is_some(), || format!("{f}: nonempty but no bounded brute-force model"))?;
                let pl = pipeline(f, &ParamDecl::default(), &r.color).unwrap();
                let strict_u = strict_upward(&pl.prompt);
                let want = 2 * (2 * r.n_c + 1);
                ensure(r.bound == 2 * r.n_c + 1, || format!("{f}: bound {}", r.bound))?;
                for u in &pl.decl.upward {
                    let expect = if strict_u.contains(u) { want + 1 } else { want };
                    strict += usize::from(strict_u.contains(u));
                    ensure(alpha.get(u) == Ok(expect), || format!("{f}: alpha({u}) = {:?}, want {expect}", alpha.get(u)))?;
                }
                for l in &pl.decl.downward {
                    ensure(alpha.get(l) == Ok(1), || format!("{f}: downward {l} = {:?}", alpha.get(l)))?;
                }
            }
            SatVerdict::Empty => {
                empty += 1;
                ensure(brute.is_none(), || format!("{f}: empty but brute force finds {brute:?}"))?;
            }
        }
    }
    Ok(format!(
        "40 formulas: {nonempty} nonempty (all witnesses re-verified, alpha = 2(2N_c+1); {strict} strict parameters get 2(2N_c+1)+1), {empty} empty, all match brute force, {}",
        secs(start.elapsed())
    ))
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (mut holds, mut empty, mut paths) = (0, 0, 0);
    let instances = tiny_mc_instances(24, 8);
    ensure(instances.len() >= 20, || format!("{} instances", instances.len()))?;
    for (k, f) in &instances {
        let r = check_mc(k, f, &Options::default()).map_err(|e| format!("{f}: {e}"))?;
        match r.verdict {
            McVerdict::HoldsForSomeValuation => {
                holds += 1;
                let alpha = r.valuation.as_ref().unwrap();
                let pl = pipeline(f, &ParamDecl::default(), &r.color).unwrap();
                let strict_u = strict_upward(&pl.prompt);
                let want = 2 * (r.automaton_states * r.model_states + 1);
                for u in &pl.decl.upward {
                    let expect = if strict_u.contains(u) { want + 1 } else { want };
                    ensure(alpha.get(u) == Ok(expect), || format!("{f}: alpha({u}) = {:?}, want {expect}", alpha.get(u)))?;
                }
                for l in &pl.decl.downward {
                    ensure(alpha.get(l) == Ok(1), || format!("{f}: downward {l}"))?;
                }
                for w in kripke_lassos(k, 3, 3).unwrap() {
                    ensure(eval_trace(&w, alpha, f) != Ok(TriBool::False), || format!("{f} fails on path {w} with {alpha}"))?;
                    paths += 1;
                }
            }
            McVerdict::Empty => {
                empty += 1;
                let (p, w) = (r.product.as_ref().unwrap(), r.counterexample.as_ref().unwrap());
                replay_pumpable(p, w).map_err(|e| format!("{f}: replay {e:?}"))?;
                for v in 1..=4 {
                    let t = pump_counterexample(p, w, v).ok_or_else(|| format!("{f}: not pumpable"))?;
                    ensure(is_model_trace(k, &t), || format!("{f}: {t} is not a path"))?;
                    let alpha = f.params().into_iter().fold(ParamValuation::new(), |a, u| a.with(u, v));
                    ensure(eval_trace(&t, &alpha, f) == Ok(TriBool::False), || format!("{f}: {t} with {alpha} not refuted"))?;
                }
            }
        }
    }
    ensure(holds > 0 && empty > 0, || format!("degenerate split: {holds} holds, {empty} empty"))?;
    Ok(format!(
        "{} instances: {holds} hold ({paths} model paths confirmed, alpha = 2(|Q||S|+1)), {empty} empty (counterexamples replay and refute values 1..4), {}",
        instances.len(),
        secs(start.elapsed())
    ))
}

// ---------------------------------------------------------------- criterion 9

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let none = ParamValuation::new();
    let w1 = yardstick_trace(1, DEFAULT_TRACE_BUDGET).map_err(|e| e.to_string())?;
    ensure(w1.stem.len() == 16, || format!("1-trace prefix {}", w1.stem.len()))?;
    ensure(eval_trace(&w1, &none, &yardstick_formula(1).unwrap()) == Ok(TriBool::True), || "psi_1 fails on the 1-trace".into())?;
    let phi = sat_lowerbound_formula(1).unwrap();
    let sweep: Vec<TriBool> = (1..=20).map(|u| eval_trace(&w1, &none.clone().with("u", u), &phi).unwrap()).collect();
    let min = sweep.iter().position(|&v| v == TriBool::True).map(|i| i + 1);
    ensure(min == Some(17), || format!("minimal alpha(u) {min:?}"))?;
    ensure(sweep[..16].iter().all(|&v| v == TriBool::False), || "sweep below 17 is not false".into())?;
    let w2 = yardstick_trace(2, DEFAULT_TRACE_BUDGET).map_err(|e| e.to_string())?;
    ensure(w2.stem.len() == 192, || format!("2-trace prefix {}", w2.stem.len()))?;
    ensure(eval_trace(&w2, &none, &yardstick_formula(2).unwrap()) == Ok(TriBool::True), || "psi_2 fails on the 2-trace".into())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("runtime {}", secs(t)))?;
    Ok(format!("prefix 16, psi_1 holds, minimal alpha(u) = 17, prefix 192, psi_2 holds, {}", secs(t)))
}

// ---------------------------------------------------------------- criterion 10

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for n in 1..=2usize {
        let f = succinct_family(n);
        let atoms: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
        let names: Vec<&str> = atoms.iter().map(String::as_str).collect();
        let (mut samples, mut members, mut seed) = (0, 0, 0u64);
        while samples < 500 {
            for w in sample_lassos(&names, 50, 1000 * n as u64 + seed) {
                let h = w.stem.len() + 20 * w.cycle.len() + 20;
                let Some(truth) = eval_interval(&w, Interval::new(0, 0), &ParamValuation::new(), &f, Some(h)).unwrap().to_bool() else {
                    continue;
                };
                let member = membership_check(&w, n);
                ensure(truth == member, || format!("n={n}: {w}: formula {truth}, membership {member}"))?;
                samples += 1;
                members += usize::from(member);
            }
            seed += 1;
        }
        parts.push(format!("n={n}: {samples} samples ({members} members)"));
    }
    let sizes: Vec<usize> = (1..=8).map(|n| succinct_family(n).size()).collect();
    let steps: BTreeSet<usize> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
    ensure(steps.len() == 1, || format!("sizes {sizes:?} are not linear"))?;
    Ok(format!(
        "{}, 0 violations; distinct subformulas {:?} for n=1..8 (+{} per step), {}",
        parts.join(", "),
        sizes,
        steps.iter().next().unwrap(),
        secs(start.elapsed())
    ))
}

// ----------------------------------------------------------------------------

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rewrite soundness", criterion_1),
        ("PLTL embedding", criterion_2),
        ("hybrid translation laws", criterion_3),
        ("automata algebra", criterion_4),
        ("compiler oracle triangle", criterion_5),
        ("colouring lemma", criterion_6),
        ("end-to-end satisfiability", criterion_7),
        ("end-to-end model checking", criterion_8),
        ("yardstick numbers", criterion_9),
        ("succinctness family", criterion_10),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|n| n != i + 1) {
            continue;
        }
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
