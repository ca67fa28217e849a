//! Bounded enumeration of the ultimately periodic traces of a Kripke
//! structure.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::syntax::kripke::Kripke;
use crate::syntax::lasso::Lasso;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("lasso enumeration bounds must be at least 1")]
pub struct ZeroBound;

/// Every trace labelling a path `s0 .. s_{m-1} (t_0 .. t_{l-1})^ω` of `k`
/// with `m <= max_stem` and `1 <= l <= max_loop`, as normalised lassos
/// without duplicates.
pub fn kripke_lassos(k: &Kripke, max_stem: usize, max_loop: usize) -> Result<Vec<Lasso>, ZeroBound> {
    if max_stem == 0 || max_loop == 0 {
        return Err(ZeroBound);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut path = vec![k.init];
    extend(k, &mut path, max_stem + max_loop, &mut |path| {
        let total = path.len();
        let last = path[total - 1];
        for m in total.saturating_sub(max_loop)..total.min(max_stem + 1) {
            if k.succ[last].contains(&path[m]) {
                let label = |s: &usize| k.labels[*s].clone();
                let lasso = Lasso {
                    stem: path[..m].iter().map(label).collect(),
                    cycle: path[m..].iter().map(label).collect(),
                }
                .normalize();
                let key = format!("{lasso}");
                if seen.insert(key) {
                    out.push(lasso);
                }
            }
        }
    });
    Ok(out)
}

fn extend(k: &Kripke, path: &mut Vec<usize>, max_len: usize, visit: &mut impl FnMut(&[usize])) {
    visit(path);
    if path.len() == max_len {
        return;
    }
    let last = *path.last().unwrap();
    for &s in &k.succ[last] {
        path.push(s);
        extend(k, path, max_len, visit);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::kripke::parse_kripke;

    #[test]
    fn self_loop() {
        let k = parse_kripke("state s0 {p}\ninit s0\nedge s0 s0\n").unwrap();
        let ls = kripke_lassos(&k, 2, 2).unwrap();
        assert_eq!(ls, vec![Lasso::from_strs(&[], &[&["p"]])]);
    }

    #[test]
    fn two_cycle() {
        let k = parse_kripke("state s0 {p}\nstate s1 {q}\ninit s0\nedge s0 s1\nedge s1 s0\n").unwrap();
        let ls = kripke_lassos(&k, 1, 2).unwrap();
        let target = Lasso::from_strs(&[], &[&["p"], &["q"]]);
        assert!(ls.iter().any(|l| l.same_word(&target)));
    }

    #[test]
    fn zero_bounds() {
        let k = parse_kripke("state s0 {p}\ninit s0\nedge s0 s0\n").unwrap();
        assert_eq!(kripke_lassos(&k, 0, 1), Err(ZeroBound));
        assert_eq!(kripke_lassos(&k, 1, 0), Err(ZeroBound));
    }
}
