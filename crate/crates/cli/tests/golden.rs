//! Fixed inputs must produce byte-identical JSON-lines reports.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    env: &'static [(&'static str, &'static str)],
    exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, env: &[], exit }
}

const CASES: &[Case] = &[
    case("sat_prompt_a", &["sat", "prompt_a.phs"], 0),
    case("sat_minimize", &["sat", "prompt_a.phs", "--minimize"], 0),
    case("sat_contradiction", &["sat", "contradiction.phs"], 1),
    case("sat_pltl", &["sat", "fp.pltl", "--dialect", "pltl"], 0),
    Case { name: "sat_budget_env", args: &["sat", "prompt_a.phs"], env: &[("PHS_BUDGET", "3")], exit: 3 },
    case("mc_k1_gp", &["mc", "--model", "k1.kripke", "--formula", "gp.phs"], 0),
    case("mc_k1_reach_q", &["mc", "--model", "k1.kripke", "--formula", "reach_q.phs", "--pump", "3"], 1),
    case("mc_atom_mismatch", &["mc", "--model", "k1.kripke", "-e", "r"], 65),
    case("eval_false", &["eval", "--trace", "t.lasso", "--formula", "prompt_a.phs", "--valuation", "u=1"], 1),
    case("eval_true", &["eval", "--trace", "t.lasso", "--formula", "prompt_a.phs", "--valuation", "u=3"], 0),
    case("eval_interval", &["eval", "--trace", "t.lasso", "-e", "<B> q", "--interval", "1:3"], 0),
    case("eval_pltl", &["eval", "--trace", "t.lasso", "--formula", "fp.pltl", "--dialect", "pltl", "--valuation", "u=2"], 0),
    case("eval_inconclusive", &["eval", "--trace", "t.lasso", "-e", "<A> <A> ([B] !true & r)", "--horizon", "6"], 2),
    case("eval_missing_param", &["eval", "--trace", "t.lasso", "--formula", "prompt_a.phs"], 65),
    case("eval_bad_valuation", &["eval", "--trace", "t.lasso", "--formula", "prompt_a.phs", "--valuation", "u=0"], 64),
    case("parse_text", &["parse", "prompt_a.phs", "--format", "text"], 0),
    case("parse_pltl", &["parse", "fp.pltl", "--dialect", "pltl"], 0),
    case("parse_error", &["parse", "-e", "<A> (p &"], 65),
    case("rewrite_pipeline", &["rewrite", "prompt_a.phs", "--stage", "pipeline"], 0),
    case("rewrite_pnf", &["rewrite", "-e", "!<A> (p & !<B> q)", "--stage", "pnf"], 0),
    case("rewrite_drop_uu", &["rewrite", "-e", "upward u; [B]_{>=u} p", "--stage", "drop-uu", "--trace"], 0),
    case("compile_hl1", &["compile", "bbar.phs", "--to", "hl"], 0),
    case("compile_hl2", &["compile", "-e", "<E> p", "--to", "hl"], 0),
    case("compile_hoa_report", &["compile", "bbar.phs", "--emit", "hoa", "--report"], 0),
    case("compile_dot", &["compile", "-e", "<E> p", "--fragment", "hl2", "--emit", "dot"], 0),
    case("compile_colored", &["compile", "prompt_a.phs", "--colored"], 0),
    case("compile_parametric", &["compile", "prompt_a.phs"], 65),
    case("missing_file", &["sat", "nope.phs"], 66),
    case("usage", &["sat"], 64),
    case("gen_yardstick", &["gen", "yardstick", "--n", "1", "--out", "gen"], 0),
    case("gen_yardstick_budget", &["gen", "yardstick", "--n", "2", "--out", "gen", "--trace-budget", "100"], 0),
    case("gen_sat_lb", &["gen", "sat-lb", "--n", "1", "--out", "gen"], 0),
    case("gen_mc_lb", &["gen", "mc-lb", "--n", "1", "--out", "gen"], 0),
    case("gen_succinct", &["gen", "succinct", "--n", "2", "--out", "gen"], 0),
    case("gen_random", &["gen", "random", "--seed", "5", "--count", "3", "--out", "gen"], 0),
    case("gen_zero", &["gen", "sat-lb", "--n", "0", "--out", "gen"], 64),
];

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// Fresh working directory holding copies of the fixtures.
fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    for e in fs::read_dir(tests_dir().join("fixtures")).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
    dir
}

fn run(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_phs"));
    cmd.current_dir(dir).args(args).env_remove("PHS_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for c in CASES {
        let dir = workdir(c.name);
        let (stdout, code) = run(&dir, c.args, c.env);
        if code != c.exit {
            failures.push(format!("{}: exit {code}, expected {}", c.name, c.exit));
        }
        let path = tests_dir().join("golden").join(format!("{}.jsonl", c.name));
        if update {
            fs::write(&path, &stdout).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == stdout => {}
            Ok(want) => failures.push(format!("{}: report differs\n--- want\n{want}--- got\n{stdout}", c.name)),
            Err(e) => failures.push(format!("{}: {}: {e}", c.name, path.display())),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn reports_are_reproducible() {
    let dir = workdir("repro");
    for args in [&["sat", "prompt_a.phs"][..], &["mc", "--model", "k1.kripke", "--formula", "reach_q.phs"]] {
        assert_eq!(run(&dir, args, &[]), run(&dir, args, &[]));
    }
}

#[test]
fn every_json_line_parses() {
    let dir = workdir("lines");
    for c in CASES.iter().filter(|c| !c.args.contains(&"text")) {
        let (stdout, _) = run(&dir, c.args, c.env);
        for line in stdout.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("{}: {e}: {line}", c.name));
            assert!(v.get("command").is_some(), "{}: {line}", c.name);
        }
    }
}

#[test]
fn timings_only_on_request() {
    let dir = workdir("timings");
    let (plain, _) = run(&dir, &["sat", "prompt_a.phs"], &[]);
    let (timed, _) = run(&dir, &["sat", "prompt_a.phs", "--timings"], &[]);
    assert!(!plain.contains("\"stages\""));
    assert!(timed.contains("\"stages\""));
}

#[test]
fn witness_file_round_trips() {
    let dir = workdir("witness");
    let (stdout, code) = run(&dir, &["sat", "prompt_a.phs", "--emit-witness", "w.lasso", "--dump", "stages"], &[]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    let alpha = v["valuation"]["u"].as_u64().unwrap().to_string();
    let (out, code) = run(&dir, &["eval", "--trace", "w.lasso", "--formula", "prompt_a.phs", "--valuation", &format!("u={alpha}")], &[]);
    assert_eq!(code, 0, "{out}");
    for f in ["pnf.phs", "dropped.phs", "prompt.phs", "colored.phs"] {
        let (_, code) = run(&dir, &["parse", &format!("stages/{f}")], &[]);
        assert_eq!(code, 0, "{f}");
    }
    assert!(fs::read_to_string(dir.join("stages/colored.hoa")).unwrap().starts_with("HOA: v1"));
}

#[test]
fn generated_files_parse() {
    let dir = workdir("gen_parse");
    for fam in ["yardstick", "sat-lb", "mc-lb", "succinct"] {
        let (_, code) = run(&dir, &["gen", fam, "--n", "1", "--out", "out"], &[]);
        assert_eq!(code, 0, "{fam}");
    }
    let (_, code) = run(&dir, &["gen", "random", "--count", "4", "--out", "out"], &[]);
    assert_eq!(code, 0);
    let mut formulas = 0;
    for e in fs::read_dir(dir.join("out")).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "phs") {
            let (out, code) = run(&dir, &["parse", p.to_str().unwrap()], &[]);
            assert_eq!(code, 0, "{}: {out}", p.display());
            formulas += 1;
        }
    }
    assert!(formulas >= 9);
    let (out, code) = run(&dir, &["eval", "--trace", "out/yardstick_n1.lasso", "--formula", "out/yardstick_n1.phs"], &[]);
    assert_eq!(code, 0, "{out}");
    let (out, code) = run(&dir, &["mc", "--model", "out/mc_lb_n1.kripke", "--formula", "out/mc_lb_n1.phs"], &[]);
    assert!(code == 0 || code == 1 || code == 3, "{out}");
}
