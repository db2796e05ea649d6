use super::*;
use crate::corpus;
use crate::ipomset::{parse_alphabet, PomsetEnumerator};

fn s(ix: &[usize]) -> Subset {
    Subset::from_indices(ix.iter().copied())
}

fn dashed_path(x: &Hda) -> Path {
    let id = |n: &str| x.cell(n).unwrap();
    let step = |dir, subset, to| Step { dir, subset, to };
    Path {
        start: id("v00"),
        steps: vec![
            step(Direction::Up, s(&[0, 1]), id("x")),
            step(Direction::Down, s(&[0]), id("w10")),
            step(Direction::Up, s(&[0]), id("y")),
            step(Direction::Down, s(&[1]), id("h11")),
            step(Direction::Up, s(&[1]), id("z")),
            step(Direction::Down, s(&[0]), id("w21")),
        ],
    }
}

#[test]
fn fig2_shape() {
    let x = corpus::fig2_hda();
    let count = |d: usize| x.cells().filter(|&c| x.conclist(c).len() == d).count();
    assert_eq!((count(0), count(1), count(2)), (9, 12, 3));
    assert_eq!(x.dimension(), 2);
}

#[test]
fn swapped_endpoint_breaks_precubical_identities() {
    let mut doc = corpus::fig2_hda().to_doc();
    doc.upper.get_mut("h00").unwrap().insert(0, "v11".into());
    match doc.to_hda() {
        Err(HdaError::PrecubicalViolation { cell, .. }) => assert_eq!(cell, "x"),
        other => panic!("expected a violation, got {other:?}"),
    }
}

#[test]
fn ill_typed_face_is_rejected() {
    let mut b = HdaBuilder::new();
    let v = b.cell("v", Conclist::empty());
    let e = b.cell("e", Conclist::from_chars("a"));
    let f = b.cell("f", Conclist::from_chars("a"));
    b.lower(e, 0, v).upper(e, 0, f);
    assert!(matches!(b.build(), Err(HdaError::FaceTypeMismatch { .. })));
    let mut b = HdaBuilder::new();
    let v = b.cell("v", Conclist::empty());
    let e = b.cell("e", Conclist::from_chars("a"));
    b.lower(e, 0, v);
    assert!(matches!(b.build(), Err(HdaError::MissingFace { upper: true, .. })));
}

#[test]
fn dashed_path_recognizes_fig3() {
    let x = corpus::fig2_hda();
    let path = dashed_path(&x);
    let p = x.ev_path(&path).unwrap();
    assert!(p.is_isomorphic(&corpus::fig3_pomset()));
    assert!(x.accepts(&p));
    assert!(!x.accepts(&Ipomset::empty()));
    let mut broken = path.clone();
    broken.steps[1].to = x.cell("w00").unwrap();
    assert!(matches!(x.ev_path(&broken), Err(HdaError::InvalidPath(_))));
}

#[test]
fn normalization_keeps_the_pomset() {
    let x = corpus::fig2_hda();
    let v00 = x.cell("v00").unwrap();
    let mut checked = 0;
    x.visit_paths(v00, 6, &mut |path| {
        let n = x.normalize_path(path);
        assert!(n.len() <= path.len());
        assert!(x.ev_path(&n).unwrap().is_isomorphic(&x.ev_path(path).unwrap()));
        checked += 1;
    });
    assert!(checked > 50);
}

#[test]
fn reach_sets_follow_paths() {
    let x = corpus::fig2_hda();
    let v00 = x.cell("v00").unwrap();
    let p = corpus::fig3_pomset();
    assert_eq!(x.reach_set(v00, &p).unwrap(), CellSet::from([x.cell("w21").unwrap()]));
    let err = x.reach_set(x.cell("x").unwrap(), &p).unwrap_err();
    assert!(matches!(err, HdaError::InterfaceMismatch { .. }));
}

#[test]
fn sequence_and_pomset_acceptance_agree() {
    let x = corpus::fig2_hda();
    for p in PomsetEnumerator::new(&parse_alphabet("abc")).max_events(4).max_dim(2).collect().unwrap() {
        assert_eq!(x.accepts(&p), x.accepts_sequence(&p.st_decompose_sparse()), "{p}");
    }
}

#[test]
fn doc_round_trip_and_isomorphism() {
    for (name, x) in corpus::hdas() {
        let json = serde_json::to_string(&x).unwrap();
        let y: Hda = serde_json::from_str(&json).unwrap();
        assert!(x.is_isomorphic(&y), "{name}");
    }
    assert!(!corpus::fig2_hda().is_isomorphic(&corpus::fig5b_hda()));
    assert!(!corpus::word_a_star().is_isomorphic(&corpus::word_aa_star()));
}

#[test]
fn trim_keeps_the_language() {
    for (name, x) in corpus::hdas() {
        let t = x.trim();
        assert!(t.len() <= x.len());
        assert!(t.trim().is_isomorphic(&t), "{name}");
        assert_eq!(t.enumerate_language(4).unwrap(), x.enumerate_language(4).unwrap(), "{name}");
    }
}

#[test]
fn word_counters() {
    assert!(corpus::word_a_star().is_counter_free());
    let x = corpus::word_aa_star();
    let w = x.counter_witness().unwrap();
    assert_eq!(w.witness.period, 2);
    assert_eq!(w.cells.len(), 2);
    assert!(w.pomset.is_word());
}

#[test]
fn language_bound_is_enforced() {
    let x = corpus::word_a_star();
    assert!(matches!(x.enumerate_language_bounded(9, 8), Err(HdaError::BoundTooLarge { .. })));
    let l = x.enumerate_language(3).unwrap();
    // ε, a, aa, aaa
    assert_eq!(l.len(), 4);
}
