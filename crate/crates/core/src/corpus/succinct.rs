use crate::syntax::ast::*;
use crate::syntax::lasso::Lasso;

fn atom(i: usize) -> String {
    format!("p{i}")
}

/// `p` holds at the left endpoint iff it holds at the right one.
pub fn theta(p: &str) -> Formula {
    iff(ex(Rel::B, and(len(1), prop(p))), ex(Rel::A, and(len(1), prop(p))))
}

fn agreement(n: usize) -> Formula {
    implies(and_all((1..=n).map(|i| theta(&atom(i)))), theta(&atom(0)))
}

/// Words in which positions agreeing on `p1..pn` agree on `p0`. Singleton
/// intervals are excluded: there the left-endpoint test is false.
pub fn succinct_family(n: usize) -> Formula {
    all(Rel::A, all(Rel::A, implies(ex(Rel::B, tt()), agreement(n))))
}

/// The agreement formula quantified over all intervals, singletons included.
pub fn succinct_family_verbatim(n: usize) -> Formula {
    all(Rel::A, all(Rel::A, agreement(n)))
}

/// Decides membership by comparing every pair of positions of the stem and
/// one loop, which covers every letter occurrence pattern of the word.
pub fn membership_check(w: &Lasso, n: usize) -> bool {
    let span = w.stem.len() + w.cycle.len();
    let key = |i: usize| (1..=n).map(|k| w.holds(i, &atom(k))).collect::<Vec<_>>();
    let p0 = |i: usize| w.holds(i, &atom(0));
    (0..span).all(|i| (i + 1..span).all(|j| key(i) != key(j) || p0(i) == p0(j)))
}
