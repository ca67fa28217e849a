mod common;

use std::collections::BTreeMap;

use common::*;
use phs::hybrid::*;
use phs::semantics::{eval_hl, Horizon, Interval, IntervalModel, ParamValuation};
use phs::syntax::ast::*;
use phs::syntax::lasso::Lasso;
use proptest::prelude::*;

fn small_lasso() -> impl Strategy<Value = Lasso> {
    (prop::collection::vec(arb_letter(), 0..=3), prop::collection::vec(arb_letter(), 1..=2))
        .prop_map(|(s, c)| Lasso::new(s, c).unwrap())
}

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
    .prop_filter("modal depth", |f| f.modal_depth() <= 3)
}

const H: usize = 40;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 120, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn two_variable_law(w in small_lasso(), f in over(vec![Rel::B, Rel::Bbar, Rel::E, Rel::Ebar])) {
        let alpha = ParamValuation::new();
        let m = IntervalModel::build_with(&w, &alpha, &f, Horizon { bound: H, settle_periods: 2 }).unwrap();
        let g = hl2_open(&f).unwrap();
        for i in 0..=6 {
            for j in i..=6 {
                let env: BTreeMap<String, usize> = [(X_L.to_string(), i), (X_R.to_string(), j)].into();
                let a = m.get(Interval::new(i, j)).unwrap();
                let b = eval_hl(&w, i, &env, &g, Some(H)).unwrap();
                if a.is_conclusive() && b.is_conclusive() {
                    prop_assert_eq!(a, b, "{} at [{},{}] on {}", f, i, j, w);
                }
            }
        }
    }

    #[test]
    fn one_variable_law(w in small_lasso(), f in over(vec![Rel::A, Rel::B, Rel::Bbar])) {
        let alpha = ParamValuation::new();
        let m = IntervalModel::build_with(&w, &alpha, &f, Horizon { bound: H, settle_periods: 2 }).unwrap();
        let g = hl1_open(&f).unwrap();
        for i in 0..=6 {
            for j in i..=6 {
                let env: BTreeMap<String, usize> = [(X.to_string(), i)].into();
                let a = m.get(Interval::new(i, j)).unwrap();
                let b = eval_hl(&w, j, &env, &g, Some(H)).unwrap();
                if a.is_conclusive() && b.is_conclusive() {
                    prop_assert_eq!(a, b, "{} at [{},{}] on {}", f, i, j, w);
                }
            }
        }
    }

    #[test]
    fn linear_size(f in over(vec![Rel::B, Rel::Bbar, Rel::E, Rel::Ebar])) {
        let g = hs_to_hl2(&f).unwrap();
        prop_assert!(g.formula.tree_size() <= 12 * f.tree_size() + 4);
        prop_assert!(g.is_sentence());
    }
}

#[test]
fn homogeneous_p_on_constant_trace() {
    let w = Lasso::from_strs(&[], &[&["p"]]);
    let g: BTreeMap<String, usize> = [(X.to_string(), 1)].into();
    let h = hl1_open(&prop("p")).unwrap();
    assert_eq!(eval_hl(&w, 3, &g, &h, None).unwrap().to_bool(), Some(true));
}
