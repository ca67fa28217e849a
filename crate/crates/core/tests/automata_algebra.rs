mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use phs::automata::*;
use proptest::prelude::*;

const ONE: &[&str] = &["p"];
const TWO: &[&str] = &["p", "q"];
const COLOURED: &[&str] = &["p", "c"];
const BUDGET: usize = 200_000;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn boolean_laws(a in arb_nba(TWO, 4), b in arb_nba(TWO, 4), seed in any::<u64>()) {
        let i = intersect(&a, &b).unwrap();
        let u = union(&a, &b).unwrap();
        prop_assert!(i.num_states() <= 2 * a.num_states() * b.num_states());
        let ca = complement(&a, BUDGET).unwrap();
        for w in sample_lassos(TWO, 200, seed) {
            let (x, y) = (a.accepts(&w), b.accepts(&w));
            prop_assert_eq!(i.accepts(&w), x && y, "intersection on {}", w);
            prop_assert_eq!(u.accepts(&w), x || y, "union on {}", w);
            prop_assert_eq!(ca.accepts(&w), !x, "complement on {}", w);
        }
    }

    #[test]
    fn complement_is_disjoint_and_complete(a in arb_nba(ONE, 6), seed in any::<u64>()) {
        let c = complement(&a, BUDGET).unwrap();
        prop_assert!(is_empty(&intersect(&a, &c).unwrap()).is_none());
        for w in sample_lassos(ONE, 200, seed) {
            prop_assert!(a.accepts(&w) ^ c.accepts(&w), "membership on {}", w);
        }
    }

    #[test]
    fn complement_two_atoms(a in arb_nba(TWO, 6), seed in any::<u64>()) {
        let c = complement(&a, BUDGET).unwrap();
        prop_assert!(is_empty(&intersect(&a, &c).unwrap()).is_none());
        for w in sample_lassos(TWO, 200, seed) {
            prop_assert!(a.accepts(&w) ^ c.accepts(&w), "membership on {}", w);
        }
    }

    #[test]
    fn witnesses_replay(a in arb_nba(TWO, 6)) {
        if let Some(w) = is_empty(&a) {
            prop_assert_eq!(w.replay(&a), Ok(()));
            prop_assert!(a.accepts(&w.lasso));
        } else {
            for w in sample_lassos(TWO, 50, 7) {
                prop_assert!(!a.accepts(&w));
            }
        }
    }

    #[test]
    fn bound_counter_is_k_bounded(a in arb_nba(COLOURED, 5), k in 1usize..=3, seed in any::<u64>()) {
        let b = bound_counter(&a, k, "c").unwrap();
        prop_assert!(b.num_states() <= a.num_states() * k * 2 + 1);
        if let Some(w) = is_empty(&b) {
            prop_assert_eq!(w.replay(&b), Ok(()));
            prop_assert!(k_bounded(&w.lasso, "c", k), "witness {}", w.lasso);
            prop_assert!(a.accepts(&w.lasso));
        }
        for w in sample_lassos(COLOURED, 200, seed) {
            prop_assert_eq!(b.accepts(&w), a.accepts(&w) && k_bounded(&w, "c", k), "on {}", w);
        }
    }

    #[test]
    fn hoa_round_trip(a in arb_nba(TWO, 6)) {
        prop_assert_eq!(parse_hoa(&to_hoa(&a)).unwrap(), a);
    }
}

fn arb_product() -> impl Strategy<Value = FairProduct> {
    (2usize..=12).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(prop::bool::weighted(0.4), n),
            prop::collection::vec(prop::collection::vec(0..n, 1..=2), n),
        )
            .prop_map(|(colored, fair, succ)| {
                let labels = colored.iter().map(|&c| if c { BTreeSet::from(["c".to_string()]) } else { BTreeSet::new() }).collect();
                let states = colored.iter().enumerate().map(|(i, &c)| (i, 0, c)).collect();
                FairProduct { states, init: 0, succ, fair, labels, color: "c".into() }
            })
    })
}

/// Every colour block of the infinite path `stem loop^ω` revisits a state.
fn pumpable(p: &FairProduct, stem: &[usize], cycle: &[usize]) -> bool {
    let at = |i: usize| if i < stem.len() { stem[i] } else { cycle[(i - stem.len()) % cycle.len()] };
    let col = |i: usize| p.colored(at(i));
    let horizon = stem.len() + 2 * cycle.len();
    for start in 0..horizon {
        if start > 0 && col(start) == col(start - 1) {
            continue;
        }
        let mut seen = HashSet::new();
        let mut revisit = false;
        let mut i = start;
        loop {
            if !seen.insert(at(i)) {
                revisit = true;
            }
            i += 1;
            if col(i) != col(start) {
                break;
            }
            if i > horizon + cycle.len() {
                revisit = true;
                break;
            }
        }
        if !revisit {
            return false;
        }
    }
    true
}

fn brute_force(p: &FairProduct, max_len: usize) -> bool {
    fn go(p: &FairProduct, path: &mut Vec<usize>, max_len: usize) -> bool {
        let last = *path.last().unwrap();
        for s in 0..path.len() {
            let cycle = &path[s..];
            if p.succ[last].contains(&path[s]) && cycle.iter().any(|&v| p.fair[v]) && pumpable(p, &path[..s], cycle) {
                return true;
            }
        }
        if path.len() == max_len {
            return false;
        }
        for &w in &p.succ[last] {
            path.push(w);
            if go(p, path, max_len) {
                return true;
            }
            path.pop();
        }
        false
    }
    go(p, &mut vec![p.init], max_len)
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn pumpable_search_matches_enumeration(p in arb_product()) {
        let found = find_pumpable_fair_path(&p);
        if let Some(w) = &found {
            prop_assert_eq!(replay_pumpable(&p, w), Ok(()));
            prop_assert!(pumpable(&p, &w.stem_states, &w.loop_states));
        }
        if brute_force(&p, 8) {
            prop_assert!(found.is_some());
        }
    }
}
