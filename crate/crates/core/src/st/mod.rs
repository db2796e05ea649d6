//! ST-automata: word automata over starters and terminators whose states
//! carry conclists compatible with the letters.

mod doc;
mod monoid;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::hda::Hda;
use crate::ipomset::{Conclist, StKind, StLetter, StSequence};
use crate::relation::{CounterWitness, Generator, Relation, RelationClosure};

pub use doc::{StAutomatonDoc, StStateDoc, StTransitionDoc};
pub use monoid::{FiniteMonoid, MonoidError, MonoidWitness};

pub type StateId = usize;
pub type StateSet = BTreeSet<StateId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StError {
    #[error("duplicate state id `{0}`")]
    DuplicateState(String),
    #[error("unknown state id `{0}`")]
    UnknownState(String),
    #[error("states carry different conclists: {0} and {1}")]
    LabelMismatch(Conclist, Conclist),
    #[error("transition {from} -{letter}-> {to} does not match the state conclists")]
    IllTyped { from: String, letter: StLetter, to: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StAutomaton {
    names: Vec<String>,
    labels: Vec<Conclist>,
    initial: StateSet,
    finals: StateSet,
    /// Outgoing transitions per state and letter.
    delta: Vec<BTreeMap<StLetter, StateSet>>,
}

impl StAutomaton {
    /// Builds an automaton and checks that every transition is typed by the
    /// conclists of its endpoints. Identity letters are not allowed as
    /// transitions.
    pub fn new(
        states: Vec<(String, Conclist)>,
        initial: StateSet,
        finals: StateSet,
        transitions: Vec<(StateId, StLetter, StateId)>,
    ) -> Result<Self, StError> {
        let mut seen = HashSet::new();
        for (n, _) in &states {
            if !seen.insert(n.clone()) {
                return Err(StError::DuplicateState(n.clone()));
            }
        }
        let (names, labels): (Vec<_>, Vec<_>) = states.into_iter().unzip();
        let mut delta = vec![BTreeMap::<StLetter, StateSet>::new(); names.len()];
        for (p, l, q) in transitions {
            if l.is_identity() || l.source() != labels[p] || l.target() != labels[q] {
                return Err(StError::IllTyped { from: names[p].clone(), letter: l, to: names[q].clone() });
            }
            delta[p].entry(l).or_default().insert(q);
        }
        Ok(StAutomaton { names, labels, initial, finals, delta })
    }

    /// States are the cells; a starter leads from `δ⁰_A(x)` to `x` and a
    /// terminator from `x` to `δ¹_A(x)`.
    pub fn from_hda(x: &Hda) -> Self {
        let states = x.cells().map(|c| (x.name(c).to_string(), x.conclist(c).clone())).collect();
        let mut transitions = Vec::new();
        for c in x.cells() {
            let u = x.conclist(c);
            for a in u.full().subsets().filter(|a| !a.is_empty()) {
                transitions.push((x.lower_face(c, a), StLetter::starter(u.clone(), a), c));
                transitions.push((c, StLetter::terminator(u.clone(), a), x.upper_face(c, a)));
            }
        }
        StAutomaton::new(states, x.initial().clone(), x.accepting().clone(), transitions)
            .expect("faces give well-typed transitions")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn label(&self, q: StateId) -> &Conclist {
        &self.labels[q]
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &StLetter, StateId)> {
        self.delta.iter().enumerate().flat_map(|(p, m)| {
            m.iter().flat_map(move |(l, qs)| qs.iter().map(move |&q| (p, l, q)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flat_map(|m| m.values()).map(BTreeSet::len).sum()
    }

    /// Letters occurring on transitions.
    pub fn letters(&self) -> BTreeSet<StLetter> {
        self.delta.iter().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn is_deterministic(&self) -> bool {
        let mut init_labels = HashSet::new();
        self.initial.iter().all(|&q| init_labels.insert(&self.labels[q]))
            && self.delta.iter().all(|m| m.values().all(|qs| qs.len() <= 1))
    }

    pub fn step(&self, set: &StateSet, letter: &StLetter) -> StateSet {
        if letter.is_identity() {
            return set.iter().copied().filter(|&q| &self.labels[q] == letter.conclist()).collect();
        }
        set.iter()
            .filter_map(|&q| self.delta[q].get(letter))
            .flatten()
            .copied()
            .collect()
    }

    pub fn run(&self, start: StateSet, letters: &[StLetter]) -> StateSet {
        letters.iter().fold(start, |s, l| self.step(&s, l))
    }

    fn start_set(&self, u: &Conclist) -> StateSet {
        self.initial.iter().copied().filter(|&q| &self.labels[q] == u).collect()
    }

    pub fn accepts(&self, w: &StSequence) -> bool {
        self.run(self.start_set(w.source()), w.letters()).iter().any(|q| self.finals.contains(q))
    }

    /// Subset construction over reachable sets. Each subset holds states of
    /// one conclist; the empty subset of each conclist acts as its sink.
    pub fn determinize_reachable(&self) -> Determinized {
        let letters: Vec<StLetter> = self.letters().into_iter().collect();
        let mut by_source: BTreeMap<Conclist, Vec<&StLetter>> = BTreeMap::new();
        for l in &letters {
            by_source.entry(l.source()).or_default().push(l);
        }
        let mut index: HashMap<(Conclist, StateSet), StateId> = HashMap::new();
        let mut subsets: Vec<(Conclist, StateSet)> = Vec::new();
        let mut queue = VecDeque::new();
        let mut intern = |key: (Conclist, StateSet), subsets: &mut Vec<_>, queue: &mut VecDeque<_>| {
            *index.entry(key.clone()).or_insert_with(|| {
                subsets.push(key);
                queue.push_back(subsets.len() - 1);
                subsets.len() - 1
            })
        };
        let start_labels: BTreeSet<Conclist> =
            self.initial.iter().map(|&q| self.labels[q].clone()).collect();
        let mut initial = StateSet::new();
        for u in start_labels {
            let s = self.start_set(&u);
            initial.insert(intern((u, s), &mut subsets, &mut queue));
        }
        let mut transitions = Vec::new();
        while let Some(i) = queue.pop_front() {
            let (u, set) = subsets[i].clone();
            for &l in by_source.get(&u).into_iter().flatten() {
                let next = self.step(&set, l);
                let j = intern((l.target(), next), &mut subsets, &mut queue);
                transitions.push((i, l.clone(), j));
            }
        }
        let finals = subsets
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| s.iter().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i)
            .collect();
        let states = subsets
            .iter()
            .map(|(u, s)| {
                let names: Vec<&str> = s.iter().map(|&q| self.names[q].as_str()).collect();
                let name = if names.is_empty() { format!("sink{u}") } else { format!("{{{}}}", names.join(",")) };
                (name, u.clone())
            })
            .collect();
        let automaton = StAutomaton::new(states, initial, finals, transitions)
            .expect("subset transitions are typed");
        Determinized { automaton, subsets: subsets.into_iter().map(|(_, s)| s).collect() }
    }

    /// Whether `q1` and `q2` accept the same sparse ST-sequences.
    pub fn sparse_suffix_equivalent(&self, q1: StateId, q2: StateId) -> Result<bool, StError> {
        Ok(self.distinguishing_suffix(q1, q2)?.is_none())
    }

    /// A shortest sparse word accepted from exactly one of `q1`, `q2`.
    pub fn distinguishing_suffix(
        &self,
        q1: StateId,
        q2: StateId,
    ) -> Result<Option<StSequence>, StError> {
        if self.labels[q1] != self.labels[q2] {
            return Err(StError::LabelMismatch(self.labels[q1].clone(), self.labels[q2].clone()));
        }
        let w = self.distinguish_sets(&StateSet::from([q1]), &StateSet::from([q2]));
        Ok(w.map(|letters| StSequence::new_unchecked(self.labels[q1].clone(), letters)))
    }

    /// Breadth-first search over pairs of subsets reached by the same
    /// alternating word.
    pub(crate) fn distinguish_sets(&self, s1: &StateSet, s2: &StateSet) -> Option<Vec<StLetter>> {
        let letters: Vec<StLetter> = self.letters().into_iter().collect();
        let accepting = |s: &StateSet| s.iter().any(|q| self.finals.contains(q));
        type Key = (StateSet, StateSet, Option<StKind>);
        let start: Key = (s1.clone(), s2.clone(), None);
        let mut parent: HashMap<Key, Option<(Key, StLetter)>> = HashMap::from([(start.clone(), None)]);
        let mut queue = VecDeque::from([start]);
        while let Some(key) = queue.pop_front() {
            let (a, b, last) = &key;
            if accepting(a) != accepting(b) {
                let mut word = Vec::new();
                let mut cur = key.clone();
                while let Some(Some((prev, l))) = parent.get(&cur) {
                    word.push(l.clone());
                    cur = prev.clone();
                }
                word.reverse();
                return Some(word);
            }
            let label = a.iter().chain(b.iter()).next().map(|&q| &self.labels[q]);
            let Some(label) = label else { continue };
            for l in letters.iter().filter(|l| &l.source() == label && Some(l.kind()) != *last) {
                let next: Key = (self.step(a, l), self.step(b, l), Some(l.kind()));
                if next.0.is_empty() && next.1.is_empty() {
                    continue;
                }
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((key.clone(), l.clone())));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Transformation monoid of a deterministic automaton. Letters act on
    /// the states plus one extra sink that absorbs every ill-typed or
    /// missing transition.
    pub fn transition_monoid(&self) -> FiniteMonoid {
        let n = self.len();
        let sink = n;
        let gens: Vec<Vec<usize>> = self
            .letters()
            .iter()
            .map(|l| {
                (0..=n)
                    .map(|q| {
                        if q == sink {
                            return sink;
                        }
                        self.delta[q].get(l).and_then(|qs| qs.first().copied()).unwrap_or(sink)
                    })
                    .collect()
            })
            .collect();
        FiniteMonoid::from_transformations(n + 1, &gens)
    }

    /// Relations between states of each conclist induced by all words,
    /// closed under composition.
    pub fn relation_closure(&self) -> RelationClosure {
        let objects: Vec<Conclist> =
            self.labels.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let members: Vec<Vec<StateId>> = objects
            .iter()
            .map(|u| (0..self.len()).filter(|&q| &self.labels[q] == u).collect())
            .collect();
        let obj = |c: &Conclist| objects.iter().position(|o| o == c).expect("state label");
        let pos = |q: StateId| members[obj(&self.labels[q])].iter().position(|&p| p == q).expect("member");
        let mut gens: BTreeMap<StLetter, Relation> = BTreeMap::new();
        for (p, l, q) in self.transitions() {
            let (s, t) = (obj(&l.source()), obj(&l.target()));
            gens.entry(l.clone())
                .or_insert_with(|| Relation::empty(members[s].len(), members[t].len()))
                .insert(pos(p), pos(q));
        }
        let generators = gens
            .into_iter()
            .map(|(letter, rel)| Generator {
                src: obj(&letter.source()),
                tgt: obj(&letter.target()),
                letter,
                rel,
            })
            .collect();
        let sizes = members.iter().map(Vec::len).collect();
        RelationClosure::build(objects, sizes, generators)
    }

    /// A letter word looping at some conclist whose reachability relation
    /// has power period above one.
    pub fn counter_witness(&self) -> Option<CounterWitness> {
        self.relation_closure().counter()
    }

    pub fn is_counter_free(&self) -> bool {
        self.counter_witness().is_none()
    }
}

/// A deterministic automaton over reachable subsets, with the subset each
/// of its states stands for.
#[derive(Clone, Debug)]
pub struct Determinized {
    pub automaton: StAutomaton,
    pub subsets: Vec<StateSet>,
}

#[cfg(test)]
mod tests;
