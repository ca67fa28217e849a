use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use phs::automata::{to_dot, to_hoa, Nba};
use phs::compile::{hl_to_nba, hs_to_nba, CompilationReport, Fragment};
use phs::corpus::{
    mc_lowerbound_instance, random_instances, sat_lowerbound_formula, succinct_family, succinct_family_verbatim,
    yardstick_formula, yardstick_trace, CorpusError, Profile, YardstickSpec,
};
use phs::hybrid::{abb_to_hl1, hs_to_hl2};
use phs::procedures::{check_mc, check_sat, fresh_color, pump_counterexample, McVerdict, Options, SatVerdict};
use phs::rewrite::{
    colorize_traced, drop_universal_upward_traced, pipeline, pltl_to_pab, pnf_kinds, to_pnf, to_prompt_traced,
    RewriteTrace, Stage,
};
use phs::semantics::{eval_hl, eval_interval, eval_pltl, Interval, ParamValuation, TriBool};
use phs::syntax::ast::{Formula, ParamDecl, Rel};
use phs::syntax::kripke::{parse_kripke, Kripke};
use phs::syntax::lasso::{parse_lasso, Lasso};
use phs::syntax::parser::{parse_formula, render_decl, Dialect};
use phs::syntax::render::render_formula;
use serde_json::{json, Map, Value};

use crate::args::{Command, Emit, Family, FormulaArgs, Source, Target};
use crate::error::CliError;

const ABB: [Rel; 4] = [Rel::A, Rel::B, Rel::Bbar, Rel::BbarW];

/// Records to print and the exit code of a successful run.
#[derive(Debug)]
pub struct Outcome {
    pub records: Vec<Value>,
    pub code: i32,
}

impl Outcome {
    fn one(record: Value, code: i32) -> Self {
        Outcome { records: vec![record], code }
    }
}

struct Loaded {
    formula: Formula,
    decl: ParamDecl,
    dialect: Dialect,
    origin: String,
}

impl Loaded {
    /// The formula as an interval formula; PLTL input is translated.
    fn interval(&self) -> Result<Formula, CliError> {
        match self.dialect {
            Dialect::Phs => Ok(self.formula.clone()),
            Dialect::Pltl => Ok(pltl_to_pab(&self.formula)?),
            Dialect::Hl => Err(CliError::input(&self.origin, "this command expects an interval or PLTL formula")),
        }
    }
}

pub fn run(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Parse(input) => parse(&input),
        Command::Rewrite { input, stage, color, trace } => rewrite(&input, stage, color, trace),
        Command::Eval { input, trace, valuation, interval, horizon } => eval(&input, &trace, &valuation, &interval, horizon),
        Command::Compile { input, to, fragment, budget, emit, out, report, colored } => {
            compile(&input, to, fragment, budget.budget, emit, out.as_deref(), report, colored)
        }
        Command::Sat { input, budget, emit_witness, minimize, dump } => {
            sat(&input, budget.budget, emit_witness.as_deref(), minimize, dump.as_deref())
        }
        Command::Mc { input, model, budget, pump, dump } => mc(&input, &model, budget.budget, pump, dump.as_deref()),
        Command::Gen { family, n, out, trace_budget, seed, profile, count } => {
            gen(family, n, &out, trace_budget, seed, &profile, count)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::file(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::file(path, e))
}

fn load(args: &FormulaArgs) -> Result<Loaded, CliError> {
    let Source { file, formula_file, expr } = &args.source;
    let (text, origin) = match (file.as_ref().or(formula_file.as_ref()), expr) {
        (Some(p), _) => (read(p)?, p.display().to_string()),
        (None, Some(e)) => (e.clone(), "<expr>".to_string()),
        (None, None) => return Err(CliError::Usage("no formula given".into())),
    };
    let parsed = parse_formula(&text, args.dialect).map_err(|e| CliError::input(&origin, e))?;
    Ok(Loaded { formula: parsed.formula, decl: parsed.decl, dialect: args.dialect, origin })
}

fn load_lasso(path: &Path) -> Result<Lasso, CliError> {
    parse_lasso(&read(path)?).map_err(|e| CliError::input(path.display().to_string(), e))
}

fn load_kripke(path: &Path) -> Result<Kripke, CliError> {
    parse_kripke(&read(path)?).map_err(|e| CliError::input(path.display().to_string(), e))
}

/// Declarations plus formula, re-parseable by `parse_formula`.
pub fn formula_file(f: &Formula) -> String {
    let decl = f.syntactic_decl().unwrap_or_default();
    format!("{}{}\n", render_decl(&decl), render_formula(f))
}

fn names(set: &BTreeSet<String>) -> Value {
    json!(set.iter().collect::<Vec<_>>())
}

fn decl_json(decl: &ParamDecl) -> Value {
    json!({"upward": names(&decl.upward), "downward": names(&decl.downward)})
}

fn dialect_name(d: Dialect) -> &'static str {
    match d {
        Dialect::Phs => "phs",
        Dialect::Pltl => "pltl",
        Dialect::Hl => "hl",
    }
}

fn report_json(report: &CompilationReport, subformulas: bool) -> Value {
    let mut v = json!(report);
    if !subformulas {
        if let Value::Object(m) = &mut v {
            m.remove("subformulas");
        }
    }
    v
}

fn parse(args: &FormulaArgs) -> Result<Outcome, CliError> {
    let l = load(args)?;
    let f = &l.formula;
    Ok(Outcome::one(
        json!({
            "command": "parse",
            "dialect": dialect_name(l.dialect),
            "formula": render_formula(f),
            "decl": decl_json(&l.decl),
            "props": names(&f.props()),
            "size": f.size(),
            "modal_depth": f.modal_depth(),
        }),
        0,
    ))
}

fn stage_name(s: Stage) -> &'static str {
    match s {
        Stage::Pnf => "pnf",
        Stage::DropUu => "drop-uu",
        Stage::Prompt => "prompt",
        Stage::Colorize => "colorize",
        Stage::Pipeline => "pipeline",
    }
}

fn rewrite(args: &FormulaArgs, stage: Stage, color: Option<String>, show_trace: bool) -> Result<Outcome, CliError> {
    let l = load(args)?;
    let f = l.interval()?;
    let color = color.unwrap_or_else(|| fresh_color(&f.props()));
    let mut rec = Map::new();
    rec.insert("command".into(), json!("rewrite"));
    rec.insert("stage".into(), json!(stage_name(stage)));
    rec.insert("input".into(), json!(render_formula(&f)));
    let mut trace = RewriteTrace::default();
    let pnf = to_pnf(&f);
    let mut out = pnf.clone();
    if stage != Stage::Pnf {
        let decl = pnf_kinds(&pnf, &l.decl)?;
        rec.insert("decl".into(), decl_json(&decl));
        let dropped = drop_universal_upward_traced(&pnf, &mut trace);
        out = dropped.clone();
        if stage != Stage::DropUu {
            let prompt = to_prompt_traced(&dropped, &mut trace)?;
            out = prompt.clone();
            if matches!(stage, Stage::Colorize | Stage::Pipeline) {
                out = colorize_traced(&prompt, &color, &mut trace)?;
                rec.insert("color".into(), json!(color));
            }
            if stage == Stage::Pipeline {
                rec.insert("pnf".into(), json!(render_formula(&pnf)));
                rec.insert("dropped".into(), json!(render_formula(&dropped)));
                rec.insert("prompt".into(), json!(render_formula(&prompt)));
            }
        }
    }
    rec.insert("output".into(), json!(render_formula(&out)));
    rec.insert("size".into(), json!(out.size()));
    rec.insert("rules".into(), json!(trace.steps.len()));
    if show_trace {
        rec.insert("trace".into(), json!(trace));
    }
    Ok(Outcome::one(Value::Object(rec), 0))
}

fn parse_interval(s: &str) -> Result<Interval, CliError> {
    let bad = || CliError::Usage(format!("interval must be `i:j` with i <= j, got `{s}`"));
    let (i, j) = s.split_once(':').ok_or_else(bad)?;
    let (i, j): (usize, usize) = (i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?);
    if i > j {
        return Err(bad());
    }
    Ok(Interval::new(i, j))
}

fn eval(args: &FormulaArgs, trace: &Path, valuation: &str, interval: &str, horizon: Option<usize>) -> Result<Outcome, CliError> {
    let l = load(args)?;
    let w = load_lasso(trace)?;
    let alpha = ParamValuation::parse(valuation).map_err(CliError::Usage)?;
    let iv = parse_interval(interval)?;
    let value = match l.dialect {
        Dialect::Phs => eval_interval(&w, iv, &alpha, &l.formula, horizon)?,
        Dialect::Pltl => eval_pltl(&w, iv.i, &alpha, &l.formula, horizon)?,
        Dialect::Hl => eval_hl(&w, iv.i, &BTreeMap::new(), &l.formula, horizon)?,
    };
    let (name, code) = match value {
        TriBool::True => ("true", 0),
        TriBool::False => ("false", 1),
        TriBool::Unknown => ("inconclusive", 2),
    };
    Ok(Outcome::one(
        json!({
            "command": "eval",
            "interval": [iv.i, iv.j],
            "valuation": alpha,
            "value": name,
        }),
        code,
    ))
}

fn emit_automaton(a: &Nba, emit: Option<Emit>, out: Option<&Path>, rec: &mut Map<String, Value>) -> Result<(), CliError> {
    let Some(emit) = emit else { return Ok(()) };
    let (key, text) = match emit {
        Emit::Hoa => ("hoa", to_hoa(a)),
        Emit::Dot => ("dot", to_dot(a)),
    };
    match out {
        Some(p) => {
            write(p, &text)?;
            rec.insert("emitted".into(), json!(p.display().to_string()));
        }
        None => {
            rec.insert(key.into(), json!(text));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn compile(
    args: &FormulaArgs,
    to: Target,
    fragment: Fragment,
    budget: usize,
    emit: Option<Emit>,
    out: Option<&Path>,
    report: bool,
    colored: bool,
) -> Result<Outcome, CliError> {
    let l = load(args)?;
    let mut rec = Map::new();
    rec.insert("command".into(), json!("compile"));
    let f = if l.dialect == Dialect::Hl {
        l.formula.clone()
    } else {
        let f = l.interval()?;
        if colored {
            let color = fresh_color(&f.props());
            rec.insert("color".into(), json!(color));
            pipeline(&f, &ParamDecl::default(), &color)?.colored
        } else {
            f
        }
    };
    match to {
        Target::Hl => {
            if l.dialect == Dialect::Hl {
                return Err(CliError::Usage("input is already a hybrid formula".into()));
            }
            let route = match fragment {
                Fragment::Auto if f.uses_only(&ABB) => Fragment::Hl1,
                Fragment::Auto => Fragment::Hl2,
                r => r,
            };
            let hl = match route {
                Fragment::Hl1 => abb_to_hl1(&f),
                _ => hs_to_hl2(&f),
            }
            .map_err(|e| CliError::input(&l.origin, e))?;
            rec.insert("to".into(), json!("hl"));
            rec.insert("route".into(), json!(route));
            rec.insert("formula".into(), json!(render_formula(&hl.formula)));
            rec.insert("vars".into(), names(&hl.vars));
            rec.insert("size".into(), json!(hl.formula.size()));
        }
        Target::Nba => {
            let (a, rep) = match l.dialect {
                Dialect::Hl => hl_to_nba(&f, budget)?,
                _ => hs_to_nba(&f, fragment, budget)?,
            };
            rec.insert("to".into(), json!("nba"));
            rec.insert("atoms".into(), json!(a.atoms));
            rec.insert("automaton".into(), json!(a.stats()));
            rec.insert("deterministic".into(), json!(a.is_deterministic()));
            rec.insert("report".into(), report_json(&rep, report));
            emit_automaton(&a, emit, out, &mut rec)?;
        }
    }
    Ok(Outcome::one(Value::Object(rec), 0))
}

fn dump_pipeline(dir: &Path, f: &Formula, color: &str, budget: usize) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::file(dir, e))?;
    let pl = pipeline(f, &ParamDecl::default(), color)?;
    let mut files = Vec::new();
    for (name, g) in [("pnf.phs", &pl.pnf), ("dropped.phs", &pl.dropped), ("prompt.phs", &pl.prompt), ("colored.phs", &pl.colored)] {
        write(&dir.join(name), &formula_file(g))?;
        files.push(name.to_string());
    }
    let (a, _) = hs_to_nba(&pl.colored, Fragment::Auto, budget)?;
    write(&dir.join("colored.hoa"), &to_hoa(&a))?;
    files.push("colored.hoa".into());
    Ok(files)
}

fn sat(args: &FormulaArgs, budget: usize, emit_witness: Option<&Path>, minimize: bool, dump: Option<&Path>) -> Result<Outcome, CliError> {
    let l = load(args)?;
    let f = l.interval()?;
    let r = check_sat(&f, &Options { budget, minimize })?;
    let mut rec = json!({
        "command": "sat",
        "verdict": r.verdict,
        "valuation": r.valuation,
        "minimized": r.minimized,
        "bound": r.bound,
        "color": r.color,
        "n_c": r.n_c,
        "verified": r.verified,
        "automaton": r.automaton,
        "bounded": r.bounded,
        "witness": r.witness.as_ref().map(|w| w.to_string()),
        "report": report_json(&r.report, false),
    });
    if let (Some(path), Some(w)) = (emit_witness, &r.witness) {
        write(path, &w.to_string())?;
        rec["witness_file"] = json!(path.display().to_string());
    }
    if let Some(dir) = dump {
        rec["dumped"] = json!(dump_pipeline(dir, &f, &r.color, budget)?);
    }
    let code = match r.verdict {
        SatVerdict::Nonempty => 0,
        SatVerdict::Empty => 1,
    };
    Ok(Outcome::one(rec, code))
}

fn mc(args: &FormulaArgs, model: &Path, budget: usize, pump: Option<usize>, dump: Option<&Path>) -> Result<Outcome, CliError> {
    let l = load(args)?;
    let f = l.interval()?;
    let k = load_kripke(model)?;
    let r = check_mc(&k, &f, &Options { budget, minimize: false })?;
    let counterexample = match (&r.counterexample, &r.product) {
        (Some(w), Some(p)) => {
            let path = |vs: &[usize]| vs.iter().map(|&v| k.names[p.states[v].0].clone()).collect::<Vec<_>>();
            let mut c = json!({
                "trace": w.lasso.to_string(),
                "model_stem": path(&w.stem_states),
                "model_loop": path(&w.loop_states),
            });
            if let Some(n) = pump {
                let t = pump_counterexample(p, w, n.max(1))
                    .ok_or_else(|| CliError::Internal("counterexample is not pumpable".into()))?;
                c["pumped"] = json!(t.to_string());
            }
            c
        }
        _ => Value::Null,
    };
    let mut rec = json!({
        "command": "mc",
        "verdict": r.verdict,
        "valuation": r.valuation,
        "color": r.color,
        "automaton_states": r.automaton_states,
        "model_states": r.model_states,
        "product_states": r.product_states,
        "confirmed_paths": r.confirmed_paths,
        "counterexample": counterexample,
        "report": report_json(&r.report, false),
    });
    if let Some(dir) = dump {
        let mut files = dump_pipeline(dir, &f, &r.color, budget)?;
        write(&dir.join("model.kripke"), &k.to_string())?;
        files.push("model.kripke".into());
        rec["dumped"] = json!(files);
    }
    let code = match r.verdict {
        McVerdict::HoldsForSomeValuation => 0,
        McVerdict::Empty => 1,
    };
    Ok(Outcome::one(rec, code))
}

fn gen(family: Family, n: usize, out: &Path, trace_budget: usize, seed: u64, profile: &str, count: usize) -> Result<Outcome, CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::file(out, e))?;
    let mut files: Vec<(String, String)> = Vec::new();
    let mut rec = Map::new();
    rec.insert("command".into(), json!("gen"));
    let tag = format!("n{n}");
    match family {
        Family::Yardstick => {
            let spec = YardstickSpec::new(n)?;
            rec.insert("prefix_len".into(), json!(spec.prefix_len().to_string()));
            files.push((format!("yardstick_{tag}.phs"), formula_file(&yardstick_formula(n)?)));
            match yardstick_trace(n, trace_budget) {
                Ok(w) => files.push((format!("yardstick_{tag}.lasso"), w.to_string())),
                Err(e @ CorpusError::Budget { .. }) => {
                    rec.insert("trace_skipped".into(), json!(e.to_string()));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Family::SatLb => files.push((format!("sat_lb_{tag}.phs"), formula_file(&sat_lowerbound_formula(n)?))),
        Family::McLb => {
            let (k, f) = mc_lowerbound_instance(n)?;
            files.push((format!("mc_lb_{tag}.kripke"), k.to_string()));
            files.push((format!("mc_lb_{tag}.phs"), formula_file(&f)));
        }
        Family::Succinct => {
            if n == 0 {
                return Err(CorpusError::ZeroN.into());
            }
            files.push((format!("succinct_{tag}.phs"), formula_file(&succinct_family(n))));
            files.push((format!("succinct_verbatim_{tag}.phs"), formula_file(&succinct_family_verbatim(n))));
        }
        Family::Random => {
            let profile: Profile = profile.parse()?;
            let mut valuations = Map::new();
            for (i, inst) in random_instances(seed, profile).take(count).enumerate() {
                let stem = format!("random_{seed}_{i:03}");
                files.push((format!("{stem}.phs"), formula_file(&inst.formula)));
                files.push((format!("{stem}.lasso"), inst.lasso.to_string()));
                valuations.insert(stem, json!(inst.valuation.to_string()));
            }
            rec.insert("seed".into(), json!(seed));
            rec.insert("valuations".into(), Value::Object(valuations));
        }
    }
    for (name, text) in &files {
        write(&out.join(name), text)?;
    }
    rec.insert("family".into(), json!(family_name(family)));
    rec.insert("n".into(), json!(n));
    rec.insert("out".into(), json!(out.display().to_string()));
    rec.insert("files".into(), json!(files.iter().map(|(name, _)| name).collect::<Vec<_>>()));
    Ok(Outcome::one(Value::Object(rec), 0))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Yardstick => "yardstick",
        Family::SatLb => "sat-lb",
        Family::McLb => "mc-lb",
        Family::Succinct => "succinct",
        Family::Random => "random",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use phs::syntax::parser::parse_formula;

    #[test]
    fn intervals() {
        assert_eq!(parse_interval("2:5").unwrap(), Interval::new(2, 5));
        assert!(parse_interval("5:2").is_err());
        assert!(parse_interval("x").is_err());
    }

    #[test]
    fn formula_files_round_trip() {
        for f in [sat_lowerbound_formula(1).unwrap(), succinct_family(2)] {
            let back = parse_formula(&formula_file(&f), Dialect::Phs).unwrap();
            assert_eq!(back.formula, f);
        }
    }
}
