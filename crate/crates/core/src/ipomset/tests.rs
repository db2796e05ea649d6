use super::*;

fn c(s: &str) -> Conclist {
    Conclist::from_chars(s)
}

fn s(ix: &[usize]) -> Subset {
    Subset::from_indices(ix.iter().copied())
}

/// a1, b, c, a2 with a1 < c, a1 < a2, b < a2; a2 still running at the end.
pub(crate) fn fig3() -> Ipomset {
    RawPomset::with_labels("abca")
        .prec(&[(0, 2), (0, 3), (1, 3)])
        .order(&[(0, 1), (2, 1), (2, 3)])
        .targets(&[3])
        .validate()
        .unwrap()
}

#[test]
fn empty_pomset_is_identity_on_empty() {
    let p = RawPomset::default().validate().unwrap();
    assert!(p.is_isomorphic(&Ipomset::empty()));
    assert!(p.st_decompose_sparse().is_empty());
    assert_eq!(p.dimension(), 0);
}

#[test]
fn two_plus_two_rejected_with_witness() {
    let err = RawPomset::with_labels("abcd")
        .prec(&[(0, 1), (2, 3)])
        .order(&[(0, 2), (0, 3), (1, 2), (1, 3)])
        .validate()
        .unwrap_err();
    match err {
        IpomsetError::NotIntervalOrder { a, b, c, d } => {
            let pairs = [(a.as_str(), b.as_str()), (c.as_str(), d.as_str())];
            assert!(pairs.contains(&("e0", "e1")) && pairs.contains(&("e2", "e3")));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn validation_errors() {
    let cyc = RawPomset::with_labels("ab").prec(&[(0, 1), (1, 0)]).validate();
    assert!(matches!(cyc, Err(IpomsetError::PrecedenceCyclic(_))));
    let incomplete = RawPomset::with_labels("ab").validate();
    assert!(matches!(incomplete, Err(IpomsetError::EventOrderIncomplete(..))));
    let eo_cycle = RawPomset::with_labels("abc").order(&[(0, 1), (1, 2), (2, 0)]).validate();
    assert!(matches!(eo_cycle, Err(IpomsetError::EventOrderCyclic(_))));
    let src = RawPomset::with_labels("ab").prec(&[(0, 1)]).sources(&[1]).validate();
    assert!(matches!(src, Err(IpomsetError::InterfaceNotExtremal { expected: "minimal", .. })));
    let tgt = RawPomset::with_labels("ab").prec(&[(0, 1)]).targets(&[0]).validate();
    assert!(matches!(tgt, Err(IpomsetError::InterfaceNotExtremal { expected: "maximal", .. })));
}

#[test]
fn event_order_on_comparable_pairs_is_dropped() {
    let p = RawPomset::with_labels("ab").prec(&[(0, 1)]).order(&[(1, 0)]).validate().unwrap();
    assert!(!p.event_ordered(1, 0));
    assert!(p.is_word());
}

#[test]
fn starter_then_terminator_glues_to_parallel_pair() {
    let st = StLetter::starter(c("ab"), s(&[0])).to_ipomset();
    let te = StLetter::terminator(c("ab"), s(&[1])).to_ipomset();
    let p = st.glue(&te).unwrap();
    let expected = RawPomset::with_labels("ab").order(&[(0, 1)]).sources(&[1]).targets(&[0]);
    assert!(p.is_isomorphic(&expected.validate().unwrap()));
}

#[test]
fn glue_interface_mismatch() {
    let a = StLetter::starter(c("a"), s(&[0])).to_ipomset();
    let b = StLetter::terminator(c("b"), s(&[0])).to_ipomset();
    assert!(matches!(a.glue(&b), Err(IpomsetError::InterfaceMismatch { .. })));
}

#[test]
fn identity_laws() {
    let p = fig3();
    assert!(p.glue(&Ipomset::identity(&p.target_conclist())).unwrap().is_isomorphic(&p));
    assert!(Ipomset::identity(&p.source_conclist()).glue(&p).unwrap().is_isomorphic(&p));
}

#[test]
fn fig3_sparse_decomposition() {
    let w = fig3().st_decompose_sparse();
    let expected = vec![
        StLetter::starter(c("ab"), s(&[0, 1])),
        StLetter::terminator(c("ab"), s(&[0])),
        StLetter::starter(c("cb"), s(&[0])),
        StLetter::terminator(c("cb"), s(&[1])),
        StLetter::starter(c("ca"), s(&[1])),
        StLetter::terminator(c("ca"), s(&[0])),
    ];
    assert_eq!(w.letters(), expected.as_slice());
    assert!(w.is_sparse());
    assert!(w.glue().is_isomorphic(&fig3()));
    assert_eq!(fig3().dimension(), 2);
}

#[test]
fn isomorphism_respects_event_order() {
    let ab = RawPomset::with_labels("ab").order(&[(0, 1)]).validate().unwrap();
    let ba = RawPomset::with_labels("ab").order(&[(1, 0)]).validate().unwrap();
    assert!(!ab.is_isomorphic(&ba));
    let renamed = RawPomset::with_labels("ba").order(&[(1, 0)]).validate().unwrap();
    assert!(ab.is_isomorphic(&renamed));
}

#[test]
fn subsumption_direction() {
    let seq = Ipomset::word(&[Label::new("a"), Label::new("b")]);
    let par = RawPomset::with_labels("ab").order(&[(0, 1)]).validate().unwrap();
    assert!(is_subsumed(&seq, &par));
    assert!(!is_subsumed(&par, &seq));
}

#[test]
fn downward_closure_of_parallel_pair() {
    let par = RawPomset::with_labels("ab").order(&[(0, 1)]).validate().unwrap();
    let down = downward_closure(&par);
    let ab = Ipomset::word(&[Label::new("a"), Label::new("b")]);
    let ba = Ipomset::word(&[Label::new("b"), Label::new("a")]);
    let expected: PomsetSet = [par, ab, ba].into_iter().collect();
    assert_eq!(down, expected);
}

#[test]
fn remove_target_events() {
    let p = RawPomset::with_labels("ab").order(&[(0, 1)]).targets(&[0, 1]).validate().unwrap();
    assert_eq!(p.remove_events(&[]).unwrap(), p);
    let b = p.remove_events(&[0]).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b.label(0).as_str(), "b");
    assert!(b.is_target(0));
    assert_eq!(fig3().remove_events(&[0]), Err(IpomsetError::NotInTargetInterface));
}

#[test]
fn enumerate_small_cases() {
    let a = [Label::new("a")];
    let none = enumerate_pomsets(&a, 0, 0, None).unwrap();
    assert_eq!(none.len(), 1);
    assert!(none[0].is_isomorphic(&Ipomset::empty()));
    // one-event classes: a with each interface combination, plus id_∅
    let one: Vec<_> = enumerate_pomsets(&a, 1, 1, None).unwrap();
    assert_eq!(one.iter().filter(|p| p.len() == 1).count(), 4);
    let from_empty = enumerate_pomsets(&a, 1, 1, Some(&Conclist::empty())).unwrap();
    assert_eq!(from_empty.iter().filter(|p| p.len() == 1).count(), 2);
    assert!(matches!(
        PomsetEnumerator::new(&a).max_events(9).bound(7).count(),
        Err(IpomsetError::BoundTooLarge { requested: 9, max: 7 })
    ));
}

#[test]
fn doc_roundtrip() {
    let p = fig3();
    let json = serde_json::to_string(&p).unwrap();
    let q: Ipomset = serde_json::from_str(&json).unwrap();
    assert!(p.is_isomorphic(&q));
    let bad = r#"{"events":[{"id":"x","label":"a"}],"precedence":[["x","y"]]}"#;
    assert!(serde_json::from_str::<Ipomset>(bad).is_err());
}
