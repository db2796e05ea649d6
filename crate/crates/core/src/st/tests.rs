use super::*;
use crate::corpus;
use crate::ipomset::{PomsetEnumerator, Subset};

#[test]
fn fig2_automaton_counts() {
    let a = StAutomaton::from_hda(&corpus::fig2_hda());
    assert_eq!(a.len(), 24);
    // one starter and one terminator per nonempty subset of each cell
    assert_eq!(a.transition_count(), 2 * 12 + 2 * 3 * 3);
}

#[test]
fn sparse_acceptance_matches_the_hda() {
    for (name, x) in corpus::hdas() {
        let a = StAutomaton::from_hda(&x);
        let d = a.determinize_reachable();
        assert!(d.automaton.is_deterministic(), "{name}");
        let alphabet: Vec<_> = x.conclists().flat_map(|u| u.labels().to_vec()).collect::<BTreeSet<_>>().into_iter().collect();
        for p in PomsetEnumerator::new(&alphabet).max_events(4).max_dim(2).collect().unwrap() {
            let w = p.st_decompose_sparse();
            assert_eq!(a.accepts(&w), x.accepts(&p), "{name}: {p}");
            assert_eq!(d.automaton.accepts(&w), x.accepts(&p), "{name}: {p}");
        }
    }
}

#[test]
fn suffix_equivalence_on_fig5b() {
    let x = corpus::fig5b_hda();
    let a = StAutomaton::from_hda(&x);
    let q = |n: &str| a.state(n).unwrap();
    assert!(a.sparse_suffix_equivalent(q("e20"), q("e22")).unwrap());
    let w = a.distinguishing_suffix(q("e00"), q("e20")).unwrap().unwrap();
    let ends = |s| a.run(StateSet::from([s]), w.letters()).iter().any(|f| a.finals().contains(f));
    assert_ne!(ends(q("e00")), ends(q("e20")));
    assert!(matches!(
        a.distinguishing_suffix(q("e00"), q("e01")),
        Err(StError::LabelMismatch(..))
    ));
}

#[test]
fn ill_typed_transition_is_rejected() {
    let u = Conclist::from_chars("a");
    let states = vec![("p".to_string(), Conclist::empty()), ("q".to_string(), u.clone())];
    let bad = StLetter::terminator(u.clone(), Subset::singleton(0));
    let err = StAutomaton::new(states.clone(), StateSet::from([0]), StateSet::new(), vec![(0, bad, 1)]);
    assert!(matches!(err, Err(StError::IllTyped { .. })));
    let good = StLetter::starter(u, Subset::singleton(0));
    assert!(StAutomaton::new(states, StateSet::from([0]), StateSet::from([1]), vec![(0, good, 1)]).is_ok());
}

#[test]
fn monoids_of_word_automata() {
    let a_star = StAutomaton::from_hda(&corpus::word_a_star()).determinize_reachable().automaton;
    let aa_star = StAutomaton::from_hda(&corpus::word_aa_star()).determinize_reachable().automaton;
    let m = a_star.transition_monoid();
    m.check().unwrap();
    assert!(m.is_aperiodic());
    let n = aa_star.transition_monoid();
    n.check().unwrap();
    assert_eq!(n.aperiodicity().unwrap_err().period, 2);
}

#[test]
fn counter_routes_on_automata() {
    for (name, x) in corpus::hdas() {
        let a = StAutomaton::from_hda(&x);
        assert_eq!(a.is_counter_free(), x.is_counter_free(), "{name}");
    }
}

#[test]
fn doc_round_trip() {
    let a = StAutomaton::from_hda(&corpus::fig5b_hda());
    let json = serde_json::to_string(&a).unwrap();
    let b: StAutomaton = serde_json::from_str(&json).unwrap();
    assert_eq!(a, b);
}
