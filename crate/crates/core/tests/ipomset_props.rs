mod common;

use common::{arb_pair, arb_pomset, arb_word, word_from_seeds};
use hdalang::ipomset::{downward_closure, is_subsumed, Ipomset, PomsetDoc};
use proptest::prelude::*;

/// `P ⊑ Q` by trying every bijection.
fn subsumed_by_permutations(p: &Ipomset, q: &Ipomset) -> bool {
    let n = p.len();
    if n != q.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let f = |x: usize| perm[x];
        let ok = (0..n).all(|x| {
            p.label(x) == q.label(f(x)) && p.is_source(x) == q.is_source(f(x)) && p.is_target(x) == q.is_target(f(x))
        }) && (0..n).all(|x| {
            (0..n).all(|y| {
                (!q.precedes(f(x), f(y)) || p.precedes(x, y))
                    && (p.precedes(x, y) || p.precedes(y, x) || x == y || p.event_ordered(x, y) == q.event_ordered(f(x), f(y)))
            })
        });
        if ok {
            return true;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { return false };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

proptest! {
    #[test]
    fn sparse_round_trip(w in arb_word(3)) {
        let p = w.glue();
        let d = p.st_decompose_sparse();
        prop_assert!(d.is_sparse());
        prop_assert!(d.glue().is_isomorphic(&p));
        prop_assert_eq!(d.event_count(), p.len());
        prop_assert_eq!(p.dimension(), d.max_width());
    }

    #[test]
    fn gluing_is_associative((p, q) in arb_pair(), seeds in prop::collection::vec(any::<u64>(), 0..4)) {
        let src: Vec<bool> = q.target_conclist().labels().iter().map(|l| l.as_str() == "b").collect();
        let r = word_from_seeds(&src, &seeds, 3).glue();
        let left = p.glue(&q).unwrap().glue(&r).unwrap();
        let right = p.glue(&q.glue(&r).unwrap()).unwrap();
        prop_assert!(left.is_isomorphic(&right));
    }

    #[test]
    fn identities_are_units(p in arb_pomset(3)) {
        let s = Ipomset::identity(&p.source_conclist());
        let t = Ipomset::identity(&p.target_conclist());
        prop_assert!(s.glue(&p).unwrap().is_isomorphic(&p));
        prop_assert!(p.glue(&t).unwrap().is_isomorphic(&p));
    }

    #[test]
    fn gluing_adds_events((p, q) in arb_pair()) {
        let pq = p.glue(&q).unwrap();
        prop_assert_eq!(pq.len(), p.len() + q.len() - q.source_events().len());
        prop_assert_eq!(pq.source_conclist(), p.source_conclist());
        prop_assert_eq!(pq.target_conclist(), q.target_conclist());
    }

    #[test]
    fn document_round_trip(p in arb_pomset(3)) {
        let doc: PomsetDoc = p.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: PomsetDoc = serde_json::from_str(&json).unwrap();
        prop_assert!(back.to_ipomset().unwrap().is_isomorphic(&p));
    }

    #[test]
    fn downward_closure_is_subsumption(p in arb_pomset(2)) {
        prop_assume!(p.len() <= 5);
        let down = downward_closure(&p);
        prop_assert!(down.contains(&p));
        for q in down.iter() {
            prop_assert!(is_subsumed(q, &p));
            prop_assert!(subsumed_by_permutations(q, &p));
        }
    }

    #[test]
    fn subsumption_matches_brute_force(p in arb_pomset(3)) {
        prop_assume!(p.len() <= 5);
        // pairs inside one downward closure exercise both outcomes
        let down: Vec<Ipomset> = downward_closure(&p).iter().cloned().collect();
        for q in &down {
            for r in &down {
                prop_assert_eq!(is_subsumed(q, r), subsumed_by_permutations(q, r));
            }
        }
    }

    #[test]
    fn removing_target_events_commutes((p, q) in arb_pair()) {
        let pq = p.glue(&q).unwrap();
        let fresh: Vec<usize> = q.target_events().into_iter().filter(|&e| !q.is_source(e)).collect();
        prop_assume!(!fresh.is_empty());
        let removed_q = q.remove_events(&fresh).unwrap();
        // the fresh events of Q are the last ones in P ∗ Q's target interface that came from Q
        let glued_removed = p.glue(&removed_q).unwrap();
        prop_assert_eq!(glued_removed.len(), pq.len() - fresh.len());
    }
}
