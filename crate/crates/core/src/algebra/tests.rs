use super::*;
use crate::corpus;
use crate::ipomset::{parse_alphabet, Conclist, Ipomset, PomsetEnumerator, StLetter, Subset};
use std::collections::{BTreeMap, BTreeSet};

fn small(alphabet: &str, n: usize) -> Vec<Ipomset> {
    PomsetEnumerator::new(&parse_alphabet(alphabet)).max_events(n).max_dim(2).collect().unwrap()
}

#[test]
fn fig5a_round_trips_and_recognizes_like_its_automaton() {
    let m = corpus::fig5a_presentation();
    let json = serde_json::to_string(&m).unwrap();
    let back: Presentation = serde_json::from_str(&json).unwrap();
    assert_eq!(back.len(), m.len());
    let a = m.to_st_automaton();
    let x = corpus::fig5b_hda();
    for p in small("ab", 4) {
        let w = p.st_decompose_sparse();
        assert_eq!(m.recognizes(&p), a.accepts(&w), "{p}");
        assert_eq!(m.recognizes(&p), x.accepts(&p), "{p}");
        assert_eq!(back.phi(&p).map(|e| back.name(e).to_string()), m.phi(&p).map(|e| m.name(e).to_string()));
    }
}

#[test]
fn categories_satisfy_their_laws() {
    for (name, x) in corpus::hdas() {
        let t = transition_category(&x);
        t.category.check_laws().unwrap_or_else(|v| panic!("{name}: {v:?}"));
        let s = syntactic_category(&t);
        s.category.check_laws().unwrap_or_else(|v| panic!("{name}: {v:?}"));
        assert!(s.category.len() <= t.category.len());
        // a quotient of an aperiodic category stays aperiodic
        if t.category.is_aperiodic() {
            assert!(s.category.is_aperiodic(), "{name}");
        }
    }
}

#[test]
fn recognition_through_categories() {
    for (name, x) in corpus::hdas() {
        let t = transition_category(&x);
        let s = syntactic_category(&t);
        let alphabet: BTreeSet<_> = x.conclists().flat_map(|u| u.labels().to_vec()).collect();
        let alphabet: String = alphabet.iter().map(|l| l.as_str()).collect();
        for p in small(&alphabet, 3) {
            assert_eq!(t.recognizes(&p), x.accepts(&p), "{name}: {p}");
            assert_eq!(s.recognizes(&t, &p), x.accepts(&p), "{name}: {p}");
        }
    }
}

#[test]
fn closure_requires_empty_sources() {
    let u = Conclist::from_chars("a");
    let m = Presentation::new(
        vec![Element { name: "m".into(), src: u.clone(), tgt: u.clone() }],
        BTreeMap::new(),
        BTreeMap::from([(u, 0)]),
        BTreeSet::new(),
        None,
    )
    .unwrap();
    assert_eq!(coherent_closure(&m).unwrap_err(), AlgebraError::SourceNotEmpty("m".into()));
}

#[test]
fn hda_construction_requires_lower_faces() {
    let m = corpus::fig5a_presentation();
    assert!(matches!(presentation_to_hda(&m), Err(AlgebraError::NotCoherent(_))));
}

#[test]
fn ill_typed_action_is_rejected() {
    let e = Conclist::empty();
    let a = Conclist::from_chars("a");
    let elements = vec![
        Element { name: "p".into(), src: e.clone(), tgt: e.clone() },
        Element { name: "q".into(), src: e.clone(), tgt: e.clone() },
    ];
    let actions = BTreeMap::from([((0, StLetter::starter(a, Subset::singleton(0))), 1)]);
    let err = Presentation::new(elements, actions, BTreeMap::new(), BTreeSet::new(), None).unwrap_err();
    assert!(matches!(err, AlgebraError::IllTypedAction { .. }));
}

#[test]
fn closure_and_untrimmed_hda_agree_on_the_language() {
    let m = corpus::fig5a_presentation();
    let c = coherent_closure(&m).unwrap();
    assert!(c.validate(3).is_valid());
    let full = presentation_to_hda_untrimmed(&c).unwrap();
    let trimmed = presentation_to_hda(&c).unwrap();
    assert!(trimmed.len() < full.len());
    assert_eq!(full.enumerate_language(4).unwrap(), trimmed.enumerate_language(4).unwrap());
    for p in small("ab", 4).into_iter().filter(|p| p.source_conclist().is_empty()) {
        assert_eq!(c.recognizes(&p), m.recognizes(&p), "{p}");
    }
}

#[test]
fn suffix_presentation_of_words() {
    // (aa)* has two live suffix classes on vertices and two on edges
    let s = suffix_presentation(&corpus::word_aa_star());
    let vertices = s.presentation.elements().iter().filter(|e| e.tgt.is_empty()).count();
    assert_eq!(vertices, 2);
    assert!(!s.presentation.is_counter_free());
    let s = suffix_presentation(&corpus::word_a_star());
    assert_eq!(s.presentation.elements().iter().filter(|e| e.tgt.is_empty()).count(), 1);
    assert!(s.presentation.is_counter_free());
}
