use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::presentation::{ElemId, Element, Presentation};
use super::AlgebraError;
use crate::ipomset::{Conclist, StKind, StLetter, Subset};

/// A coherent element: for a pomset `P` with target `U`, the values
/// `φ(P − A)` for every `A ⊆ U`, indexed by the bits of `A`.
type Tuple = Vec<Option<ElemId>>;

/// Closure of a presentation (all sources empty) under tuples of lower
/// faces. Actions follow the two exchange laws for removing target events:
///
/// * `(P ∗ S{U}{B}) − A = (P − (A∖B)) ∗ S{U−A}{B∖A}`
/// * `(P ∗ T{U}{B}) − A = (P − A) ∗ T{U−A}{B}` for `A ⊆ U − B`
///
/// and the lower face at `B` keeps the components above `B`. A tuple is
/// accepting when its `∅`-component is.
pub fn coherent_closure(p: &Presentation) -> Result<Presentation, AlgebraError> {
    if let Some(e) = p.elements().iter().find(|e| !e.src.is_empty()) {
        return Err(AlgebraError::SourceNotEmpty(e.name.clone()));
    }
    let universe = p.letter_universe();
    let mut by_source: BTreeMap<Conclist, Vec<&StLetter>> = BTreeMap::new();
    for l in &universe {
        by_source.entry(l.source()).or_default().push(l);
    }

    let mut tuples: Vec<(Conclist, Tuple)> = Vec::new();
    let mut index: HashMap<(Conclist, Tuple), ElemId> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |key: (Conclist, Tuple), tuples: &mut Vec<(Conclist, Tuple)>, queue: &mut VecDeque<ElemId>| {
        if key.1.iter().all(Option::is_none) {
            return None;
        }
        Some(*index.entry(key.clone()).or_insert_with(|| {
            tuples.push(key);
            queue.push_back(tuples.len() - 1);
            tuples.len() - 1
        }))
    };

    let empty = Conclist::empty();
    let mut initials = BTreeMap::new();
    if let Some(i) = p.initial(&empty) {
        let id = intern((empty.clone(), vec![Some(i)]), &mut tuples, &mut queue).expect("live");
        initials.insert(empty, id);
    }
    let mut actions = BTreeMap::new();
    let mut lower = BTreeMap::new();
    while let Some(id) = queue.pop_front() {
        let (u, t) = tuples[id].clone();
        for &l in by_source.get(&u).into_iter().flatten() {
            let next = act_tuple(p, &t, l);
            if let Some(to) = intern((l.target(), next), &mut tuples, &mut queue) {
                actions.insert((id, l.clone()), to);
            }
        }
        for b in u.full().subsets().filter(|b| !b.is_empty()) {
            let rest = u.full().minus(b);
            let face: Tuple = (0..1u64 << rest.len())
                .map(|a| t[b.union(Subset::from_bits(a).expand(rest)).bits() as usize])
                .collect();
            if let Some(to) = intern((u.remove(b), face), &mut tuples, &mut queue) {
                lower.insert((id, b), to);
            }
        }
    }

    let mut seen: HashMap<String, usize> = HashMap::new();
    let elements = tuples
        .iter()
        .map(|(u, t)| {
            let base = p.show(t[0]);
            let k = seen.entry(base.clone()).or_insert(0);
            *k += 1;
            let name = if *k == 1 { base } else { format!("{base}#{k}") };
            Element { name, src: Conclist::empty(), tgt: u.clone() }
        })
        .collect();
    let accepting: BTreeSet<ElemId> =
        (0..tuples.len()).filter(|&i| p.is_accepting(tuples[i].1[0])).collect();
    Presentation::new(elements, actions, initials, accepting, Some(lower))
}

fn act_tuple(p: &Presentation, t: &Tuple, l: &StLetter) -> Tuple {
    let u = l.conclist();
    let b = l.subset();
    match l.kind() {
        StKind::Starter => (0..1u64 << u.len())
            .map(|bits| {
                let a = Subset::from_bits(bits);
                let before = a.minus(b).compress(u.full().minus(b));
                let letter = StLetter::starter(u.remove(a), b.minus(a).compress(u.full().minus(a)));
                p.act(t[before.bits() as usize], &letter)
            })
            .collect(),
        StKind::Terminator => {
            let rest = u.full().minus(b);
            (0..1u64 << rest.len())
                .map(|bits| {
                    let a = Subset::from_bits(bits).expand(rest);
                    let letter = StLetter::terminator(u.remove(a), b.compress(u.full().minus(a)));
                    p.act(t[a.bits() as usize], &letter)
                })
                .collect()
        }
        StKind::Identity => t.clone(),
    }
}
