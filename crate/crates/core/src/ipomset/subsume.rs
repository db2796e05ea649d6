//! Subsumption: `P ⊑ Q` when `P` has the same events, labels, interfaces and
//! event order as `Q` but possibly more precedence.

use std::collections::HashSet;

use super::{transitive_closure, two_plus_two, Ipomset, PomsetSet};

pub fn is_subsumed(p: &Ipomset, q: &Ipomset) -> bool {
    subsumption_witness(p, q).is_some()
}

/// A bijection `f` from events of `p` to events of `q` (`f[x]` is the image
/// of `x`) witnessing `p ⊑ q`.
pub fn subsumption_witness(p: &Ipomset, q: &Ipomset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let count = |x: &Ipomset| x.prec_rows().iter().map(|r| r.count_ones()).sum::<u32>();
    if count(p) < count(q) {
        return None;
    }
    let mut pl: Vec<_> = p.labels().to_vec();
    let mut ql: Vec<_> = q.labels().to_vec();
    pl.sort();
    ql.sort();
    if pl != ql {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = 0u64;
    search(p, q, 0, &mut f, &mut used).then_some(f)
}

fn compatible(p: &Ipomset, q: &Ipomset, x: usize, fx: usize, y: usize, fy: usize) -> bool {
    if q.precedes(fx, fy) && !p.precedes(x, y) || q.precedes(fy, fx) && !p.precedes(y, x) {
        return false;
    }
    if p.concurrent(x, y) {
        // reflection already makes f(x), f(y) concurrent in q
        p.event_ordered(x, y) == q.event_ordered(fx, fy)
    } else {
        true
    }
}

fn search(p: &Ipomset, q: &Ipomset, x: usize, f: &mut [usize], used: &mut u64) -> bool {
    if x == p.len() {
        return true;
    }
    for fx in 0..q.len() {
        if *used >> fx & 1 == 1
            || p.label(x) != q.label(fx)
            || p.is_source(x) != q.is_source(fx)
            || p.is_target(x) != q.is_target(fx)
        {
            continue;
        }
        if !(0..x).all(|y| compatible(p, q, x, fx, y, f[y])) {
            continue;
        }
        f[x] = fx;
        *used |= 1 << fx;
        if search(p, q, x + 1, f, used) {
            return true;
        }
        *used &= !(1 << fx);
    }
    false
}

/// All pomsets subsumed by `q`, up to isomorphism.
///
/// Explores every strict order containing the precedence of `q` that can
/// be reached by adding pairs `x < y` with `x` outside the target and `y`
/// outside the source interface; the interval orders among them are
/// exactly the precedences of pomsets below `q`.
pub fn downward_closure(q: &Ipomset) -> PomsetSet {
    let n = q.len();
    let (sources, targets) = q.interface_masks();
    let start = q.prec_rows().to_vec();
    let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut out = PomsetSet::new();
    while let Some(prec) = stack.pop() {
        if two_plus_two(&prec).is_none() {
            out.insert(with_precedence(q, &prec));
        }
        for x in (0..n).filter(|&x| targets >> x & 1 == 0) {
            for y in (0..n).filter(|&y| sources >> y & 1 == 0 && y != x) {
                if prec[x] >> y & 1 == 1 || prec[y] >> x & 1 == 1 {
                    continue;
                }
                let mut next = prec.clone();
                next[x] |= 1 << y;
                transitive_closure(&mut next);
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    out
}

fn with_precedence(q: &Ipomset, prec: &[u64]) -> Ipomset {
    let event_order = q
        .order_rows()
        .iter()
        .enumerate()
        .map(|(x, &row)| {
            (0..q.len()).fold(0u64, |m, y| {
                let comparable = prec[x] >> y & 1 == 1 || prec[y] >> x & 1 == 1;
                if row >> y & 1 == 1 && !comparable {
                    m | 1 << y
                } else {
                    m
                }
            })
        })
        .collect();
    let (sources, targets) = q.interface_masks();
    Ipomset::from_parts(
        q.names().to_vec(),
        q.labels().to_vec(),
        prec.to_vec(),
        event_order,
        sources,
        targets,
    )
}
