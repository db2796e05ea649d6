use super::{parse, Formula};
use crate::ipomset::{Ipomset, RawPomset};

/// Named formulas, with a one-line description each.
pub const BUILTINS: &[(&str, &str)] = &[
    ("prop31", "every event is an a concurrent with exactly one other event"),
    ("p2n", "the alternating two-row pomsets P_0, P_2, P_4, ..."),
    ("complement-p2n", "pomsets with empty interfaces outside the p2n family"),
];

pub fn builtin(name: &str) -> Option<Formula> {
    match name {
        "prop31" => Some(prop31()),
        "p2n" => Some(p2n_family()),
        "complement-p2n" => Some(complement_p2n()),
        _ => None,
    }
}

pub fn prop31() -> Formula {
    parse("forall x. a(x) & exists! y. x || y").expect("builtin parses")
}

const NO_INTERFACES: &str = "forall x. !S(x) & !T(x)";

/// Every event is an `a` in one of four positions: a middle event below
/// two neighbours, a middle event above two, the first event, or the last.
/// Other events are comparable to it. The two neighbours are distinct.
pub fn p2n_family() -> Formula {
    let text = format!(
        "({NO_INTERFACES}) & forall x. a(x) & (
            (exists y y'. !(y = y') & y ~> x & y' ~> x
                & forall z. (z = x | z = y | z = y') | z < x | x < z)
          | (exists y y'. !(y = y') & x ~> y & x ~> y'
                & forall z. (z = x | z = y | z = y') | z < x | x < z)
          | (exists y. x ~> y & forall z. (z = x | z = y) | x < z)
          | (exists y. y ~> x & forall z. (z = x | z = y) | z < x))"
    );
    parse(&text).expect("builtin parses")
}

pub fn complement_p2n() -> Formula {
    p2n_family().not().and(parse(NO_INTERFACES).expect("builtin parses"))
}

/// `P_{2n}`: `2n` events `a`, event `i` concurrent with `i ± 1` and before
/// every event from `i + 2` on; even-indexed events are first in event
/// order.
pub fn p2n(n: usize) -> Ipomset {
    let k = 2 * n;
    let prec: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (i + 2..k).map(move |j| (i, j))).collect();
    let order: Vec<(usize, usize)> =
        (0..k.saturating_sub(1)).map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) }).collect();
    RawPomset::with_labels(&"a".repeat(k))
        .prec(&prec)
        .order(&order)
        .validate()
        .expect("P_2n is an interval pomset")
}

/// `n` sequential copies of two concurrent `a`s.
pub fn prop31_member(n: usize) -> Ipomset {
    let k = 2 * n;
    let prec: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (0..k).filter(move |&j| j / 2 > i / 2).map(move |j| (i, j))).collect();
    let order: Vec<(usize, usize)> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    RawPomset::with_labels(&"a".repeat(k))
        .prec(&prec)
        .order(&order)
        .validate()
        .expect("sequence of concurrent pairs is an interval pomset")
}
