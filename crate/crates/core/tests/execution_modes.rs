use hdalang::fo::{fo_language, Formula};
use hdalang::ipomset::{Label, PomsetEnumerator};
use hdalang::Execution;

fn ab() -> Vec<Label> {
    vec![Label::new("a"), Label::new("b")]
}

#[test]
fn enumeration_agrees_across_modes() {
    let e = PomsetEnumerator::new(&ab()).max_events(5).max_dim(2);
    let seq = e.clone().execution(Execution::Sequential);
    let par = e.execution(Execution::Parallel);
    assert_eq!(seq.forms().unwrap(), par.forms().unwrap());
    assert_eq!(seq.count().unwrap(), par.count().unwrap());
    let wide = |p: &hdalang::Ipomset| p.dimension() == 2;
    assert_eq!(seq.filter(wide).unwrap(), par.filter(wide).unwrap());
}

#[test]
fn violation_search_finds_the_same_witness() {
    let e = PomsetEnumerator::new(&ab()).max_events(5).max_dim(3);
    let check = |w: &hdalang::StSequence| w.event_count() < 4 || w.max_width() < 3;
    let seq = e.clone().execution(Execution::Sequential).find_violation(check).unwrap();
    let par = e.execution(Execution::Parallel).find_violation(check).unwrap();
    assert!(seq.is_some());
    assert_eq!(seq, par);
}

#[test]
fn fo_models_agree_across_modes() {
    let phi: Formula = hdalang::fo::parse("forall x. exists y. x = y | x < y").unwrap();
    let seq = hdalang::fo::FoLanguage::new(&ab(), 4, 2).execution(Execution::Sequential).models(&phi).unwrap();
    let par = fo_language(&phi, &ab(), 4, 2).unwrap();
    assert_eq!(seq, par);
}
