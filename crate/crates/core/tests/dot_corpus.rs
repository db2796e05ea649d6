use hdalang::corpus;
use hdalang::dot::{hda_to_dot, pomset_to_dot, presentation_to_dot, st_automaton_to_dot};
use hdalang::st::StAutomaton;

#[test]
fn fig3_pomset_edges() {
    let dot = pomset_to_dot(&corpus::fig3_pomset());
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let solid = dot.lines().filter(|l| l.contains("->") && !l.contains("dotted")).count();
    let dotted = dot.lines().filter(|l| l.contains("style=dotted")).count();
    assert_eq!((nodes, solid, dotted), (4, 3, 3));
}

#[test]
fn dot_output_is_stable() {
    let x = corpus::fig2_hda();
    assert_eq!(hda_to_dot(&x), hda_to_dot(&x.clone()));
    let a = StAutomaton::from_hda(&x);
    let dot = st_automaton_to_dot(&a);
    assert_eq!(dot, st_automaton_to_dot(&StAutomaton::from_hda(&x)));
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), a.transitions().count());
    let p = corpus::fig5a_presentation();
    assert!(presentation_to_dot(&p).starts_with("digraph presentation"));
}

#[test]
fn hda_dot_has_two_faces_per_event() {
    let x = corpus::fig2_hda();
    let expected: usize = x.cells().map(|c| 2 * x.conclist(c).len()).sum();
    let edges = hda_to_dot(&x).lines().filter(|l| l.contains("->")).count();
    assert_eq!(edges, expected);
}

#[test]
fn every_corpus_entry_passes() {
    for entry in corpus::entries() {
        let report = corpus::run(entry.name).unwrap_or_else(|e| panic!("{}: {e}", entry.name));
        assert!(report.passed(), "{}", entry.name);
        assert!(!report.checks.is_empty());
    }
}

#[test]
fn unknown_corpus_entry() {
    assert!(matches!(corpus::run("fig9"), Err(corpus::CorpusError::Unknown(_))));
}
