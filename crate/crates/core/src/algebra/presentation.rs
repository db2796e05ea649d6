//! Finite presentations of pomset modules: elements typed by source and
//! target conclists, acted on by starters and terminators.
//!
//! Actions not listed lead to an implicit dead element of the right type,
//! which absorbs every further action and is never accepting. It is
//! represented by `None`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::AlgebraError;
use crate::ipomset::{glue_st, Conclist, Ipomset, StKind, StLetter, StSequence, Subset};
use crate::relation::{CounterWitness, Generator, Relation, RelationClosure};
use crate::st::StAutomaton;

pub type ElemId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub src: Conclist,
    pub tgt: Conclist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    elements: Vec<Element>,
    actions: BTreeMap<(ElemId, StLetter), ElemId>,
    initials: BTreeMap<Conclist, ElemId>,
    accepting: BTreeSet<ElemId>,
    lower: Option<BTreeMap<(ElemId, Subset), ElemId>>,
}

/// Outcome of [`Presentation::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Longest letter words used for the consistency check.
    pub max_letters: usize,
    pub words_checked: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Presentation {
    pub fn new(
        elements: Vec<Element>,
        actions: BTreeMap<(ElemId, StLetter), ElemId>,
        initials: BTreeMap<Conclist, ElemId>,
        accepting: BTreeSet<ElemId>,
        lower: Option<BTreeMap<(ElemId, Subset), ElemId>>,
    ) -> Result<Self, AlgebraError> {
        let p = Presentation { elements, actions, initials, accepting, lower };
        p.check_typing()?;
        Ok(p)
    }

    fn check_typing(&self) -> Result<(), AlgebraError> {
        let mut names = BTreeSet::new();
        for e in &self.elements {
            if !names.insert(&e.name) {
                return Err(AlgebraError::DuplicateElement(e.name.clone()));
            }
        }
        for ((m, l), to) in &self.actions {
            let (em, et) = (&self.elements[*m], &self.elements[*to]);
            if l.is_identity() || l.source() != em.tgt || l.target() != et.tgt || em.src != et.src {
                return Err(AlgebraError::IllTypedAction {
                    element: em.name.clone(),
                    letter: l.clone(),
                    to: et.name.clone(),
                });
            }
        }
        for (u, &m) in &self.initials {
            let e = &self.elements[m];
            if &e.src != u || &e.tgt != u {
                return Err(AlgebraError::IllTypedInitial(e.name.clone()));
            }
        }
        for (&(m, a), &to) in self.lower.iter().flatten() {
            let (em, et) = (&self.elements[m], &self.elements[to]);
            if a.is_empty() || !a.is_subset_of(em.tgt.full()) || et.tgt != em.tgt.remove(a) || et.src != em.src {
                return Err(AlgebraError::IllTypedLower(em.name.clone()));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, name: &str) -> Option<ElemId> {
        self.elements.iter().position(|e| e.name == name)
    }

    pub fn name(&self, m: ElemId) -> &str {
        &self.elements[m].name
    }

    pub fn tgt(&self, m: ElemId) -> &Conclist {
        &self.elements[m].tgt
    }

    pub fn src(&self, m: ElemId) -> &Conclist {
        &self.elements[m].src
    }

    pub fn actions(&self) -> impl Iterator<Item = (ElemId, &StLetter, ElemId)> {
        self.actions.iter().map(|((m, l), &to)| (*m, l, to))
    }

    pub fn initials(&self) -> &BTreeMap<Conclist, ElemId> {
        &self.initials
    }

    pub fn initial(&self, u: &Conclist) -> Option<ElemId> {
        self.initials.get(u).copied()
    }

    pub fn accepting(&self) -> &BTreeSet<ElemId> {
        &self.accepting
    }

    pub fn is_accepting(&self, m: Option<ElemId>) -> bool {
        m.is_some_and(|m| self.accepting.contains(&m))
    }

    pub fn has_lower_faces(&self) -> bool {
        self.lower.is_some()
    }

    pub fn lower_faces(&self) -> Option<&BTreeMap<(ElemId, Subset), ElemId>> {
        self.lower.as_ref()
    }

    /// `m · l`; `None` stands for the dead element.
    pub fn act(&self, m: Option<ElemId>, l: &StLetter) -> Option<ElemId> {
        let m = m?;
        if l.kind() == StKind::Identity {
            return (&self.elements[m].tgt == l.conclist()).then_some(m);
        }
        self.actions.get(&(m, l.clone())).copied()
    }

    pub fn act_word(&self, m: Option<ElemId>, letters: &[StLetter]) -> Option<ElemId> {
        letters.iter().fold(m, |m, l| self.act(m, l))
    }

    /// `φ(P) = φ(id_S) · w` for the sparse decomposition `w` of `P`.
    pub fn phi(&self, p: &Ipomset) -> Option<ElemId> {
        let w = p.st_decompose_sparse();
        self.phi_sequence(&w)
    }

    pub fn phi_sequence(&self, w: &StSequence) -> Option<ElemId> {
        self.act_word(self.initial(w.source()), w.letters())
    }

    /// Like [`Presentation::phi`], but reports the first missing action
    /// instead of going to the dead element.
    pub fn try_phi(&self, p: &Ipomset) -> Result<ElemId, AlgebraError> {
        let w = p.st_decompose_sparse();
        let mut m = self.initial(w.source()).ok_or_else(|| AlgebraError::ActionUndefined {
            element: format!("initial{}", w.source()),
            letter: None,
        })?;
        for l in w.letters() {
            m = self.act(Some(m), l).ok_or_else(|| AlgebraError::ActionUndefined {
                element: self.elements[m].name.clone(),
                letter: Some(l.clone()),
            })?;
        }
        Ok(m)
    }

    pub fn recognizes(&self, p: &Ipomset) -> bool {
        self.is_accepting(self.phi(p))
    }

    /// Lower face `m − A` for positions `A` of the target; `m` itself for
    /// the empty set. Missing entries are dead.
    pub fn lower_face(&self, m: Option<ElemId>, a: Subset) -> Option<ElemId> {
        let m = m?;
        if a.is_empty() {
            return Some(m);
        }
        self.lower.as_ref()?.get(&(m, a)).copied()
    }

    /// Distinct target conclists, in order.
    pub fn types(&self) -> Vec<Conclist> {
        self.elements.iter().map(|e| e.tgt.clone()).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Every non-identity starter and terminator whose conclist is the
    /// target type of some element.
    pub fn letter_universe(&self) -> Vec<StLetter> {
        let types = self.types();
        let mut out = Vec::new();
        for u in &types {
            for a in u.full().subsets().filter(|a| !a.is_empty()) {
                if types.contains(&u.remove(a)) {
                    out.push(StLetter::starter(u.clone(), a));
                    out.push(StLetter::terminator(u.clone(), a));
                }
            }
        }
        out.sort();
        out
    }

    /// Typing, module consistency on letter words of up to `max_letters`
    /// letters (each word must act like the sparse decomposition of its
    /// glue), and coherence of lower faces when present.
    pub fn validate(&self, max_letters: usize) -> ValidationReport {
        let mut report = ValidationReport { max_letters, ..Default::default() };
        if let Err(e) = self.check_typing() {
            report.violations.push(e.to_string());
            return report;
        }
        let universe = self.letter_universe();
        let mut by_source: BTreeMap<Conclist, Vec<&StLetter>> = BTreeMap::new();
        for l in &universe {
            by_source.entry(l.source()).or_default().push(l);
        }
        for m in 0..self.len() {
            let mut stack: Vec<Vec<StLetter>> = vec![Vec::new()];
            while let Some(word) = stack.pop() {
                let cur = word.last().map(StLetter::target).unwrap_or_else(|| self.tgt(m).clone());
                if !word.is_empty() {
                    report.words_checked += 1;
                    let direct = self.act_word(Some(m), &word);
                    let sparse = glue_st(self.tgt(m), &word)
                        .expect("words are built well typed")
                        .st_decompose_sparse();
                    let via = self.act_word(Some(m), sparse.letters());
                    if direct != via {
                        let w: Vec<String> = word.iter().map(ToString::to_string).collect();
                        report.violations.push(format!(
                            "{} · {} gives {} but its sparse form {} gives {}",
                            self.name(m),
                            w.join(" "),
                            self.show(direct),
                            sparse,
                            self.show(via)
                        ));
                    }
                }
                if word.len() < max_letters {
                    for &l in by_source.get(&cur).into_iter().flatten() {
                        let mut next = word.clone();
                        next.push(l.clone());
                        stack.push(next);
                    }
                }
            }
        }
        if self.lower.is_some() {
            self.check_coherence(&universe, &mut report.violations);
        }
        report
    }

    pub(crate) fn show(&self, m: Option<ElemId>) -> String {
        m.map_or_else(|| "dead".to_string(), |m| self.name(m).to_string())
    }

    fn check_coherence(&self, universe: &[StLetter], out: &mut Vec<String>) {
        for m in 0..self.len() {
            let u = self.tgt(m).clone();
            for b in u.full().subsets().filter(|b| !b.is_empty()) {
                // (m − B) − A' = m − (B ∪ A')
                let rest = u.full().minus(b);
                for a in Subset::full(rest.len()).subsets() {
                    let two = self.lower_face(self.lower_face(Some(m), b), a);
                    let one = self.lower_face(Some(m), b.union(a.expand(rest)));
                    if two != one {
                        out.push(format!("{}: iterated lower faces disagree at {:?}, {:?}", self.name(m), b, a));
                    }
                }
            }
            for l in universe.iter().filter(|l| l.source() == u) {
                let lu = l.conclist().clone();
                let b = l.subset();
                let moved = self.act(Some(m), l);
                let candidates: Vec<Subset> = match l.kind() {
                    StKind::Starter => lu.full().subsets().collect(),
                    _ => Subset::full(l.target().len()).subsets().collect(),
                };
                for a in candidates {
                    let (lhs, rhs) = match l.kind() {
                        StKind::Starter => {
                            let keep_b = lu.full().minus(b);
                            let keep_a = lu.full().minus(a);
                            let face = self.lower_face(Some(m), a.minus(b).compress(keep_b));
                            let letter = StLetter::starter(lu.remove(a), b.minus(a).compress(keep_a));
                            (self.lower_face(moved, a), self.act(face, &letter))
                        }
                        _ => {
                            let keep_b = lu.full().minus(b);
                            let a_full = a.expand(keep_b);
                            let keep_a = lu.full().minus(a_full);
                            let letter = StLetter::terminator(lu.remove(a_full), b.compress(keep_a));
                            (self.lower_face(moved, a), self.act(self.lower_face(Some(m), a_full), &letter))
                        }
                    };
                    if lhs != rhs {
                        out.push(format!(
                            "({} · {l}) − {:?} is {} but the exchange law gives {}",
                            self.name(m),
                            a,
                            self.show(lhs),
                            self.show(rhs)
                        ));
                    }
                }
            }
        }
    }

    /// Transformations of the elements of each target type under all letter
    /// words, as functional relations (the dead element is dropped, so
    /// partial maps stand for maps into it).
    pub fn action_closure(&self) -> RelationClosure {
        let objects = self.types();
        let members: Vec<Vec<ElemId>> = objects
            .iter()
            .map(|u| (0..self.len()).filter(|&m| self.tgt(m) == u).collect())
            .collect();
        let obj = |c: &Conclist| objects.iter().position(|o| o == c);
        let pos = |m: ElemId| {
            let o = obj(self.tgt(m)).expect("element type");
            members[o].iter().position(|&x| x == m).expect("member")
        };
        let mut generators = Vec::new();
        for letter in self.letter_universe() {
            let (Some(s), Some(t)) = (obj(&letter.source()), obj(&letter.target())) else { continue };
            let mut rel = Relation::empty(members[s].len(), members[t].len());
            for &m in &members[s] {
                if let Some(to) = self.act(Some(m), &letter) {
                    rel.insert(pos(m), pos(to));
                }
            }
            generators.push(Generator { letter, src: s, tgt: t, rel });
        }
        let sizes = members.iter().map(Vec::len).collect();
        RelationClosure::build(objects, sizes, generators)
    }

    /// A letter word `x` and element type where `m · xⁿ` cycles with period
    /// above one for some `m`.
    pub fn counter_witness(&self) -> Option<CounterWitness> {
        self.action_closure().counter()
    }

    pub fn is_counter_free(&self) -> bool {
        self.counter_witness().is_none()
    }

    /// The deterministic ST-automaton of the action: states are elements,
    /// initial states the images of identities, final states `J`.
    pub fn to_st_automaton(&self) -> StAutomaton {
        let states = self.elements.iter().map(|e| (e.name.clone(), e.tgt.clone())).collect();
        let transitions = self.actions.iter().map(|((m, l), &to)| (*m, l.clone(), to)).collect();
        StAutomaton::new(
            states,
            self.initials.values().copied().collect(),
            self.accepting.clone(),
            transitions,
        )
        .expect("actions are typed")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub id: String,
    pub src: Conclist,
    pub tgt: Conclist,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub element: String,
    pub letter: StLetter,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerDoc {
    pub element: String,
    pub subset: Vec<usize>,
    pub to: String,
}

/// JSON form of a presentation; `initials` is keyed by comma-joined
/// conclists (`""` for the empty one).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub elements: Vec<ElementDoc>,
    #[serde(default)]
    pub actions: Vec<ActionDoc>,
    #[serde(default)]
    pub initials: BTreeMap<String, String>,
    #[serde(default)]
    pub accepting: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<LowerDoc>>,
}

impl PresentationDoc {
    pub fn to_presentation(&self) -> Result<Presentation, AlgebraError> {
        let index: HashMap<&str, ElemId> =
            self.elements.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
        let id = |n: &String| {
            index.get(n.as_str()).copied().ok_or_else(|| AlgebraError::UnknownElement(n.clone()))
        };
        let elements = self
            .elements
            .iter()
            .map(|e| Element { name: e.id.clone(), src: e.src.clone(), tgt: e.tgt.clone() })
            .collect();
        let mut actions = BTreeMap::new();
        for a in &self.actions {
            actions.insert((id(&a.element)?, a.letter.clone()), id(&a.to)?);
        }
        let mut initials = BTreeMap::new();
        for (k, v) in &self.initials {
            initials.insert(Conclist::from_key(k), id(v)?);
        }
        let accepting = self.accepting.iter().map(id).collect::<Result<_, _>>()?;
        let lower = match &self.lower {
            None => None,
            Some(rows) => {
                let mut map = BTreeMap::new();
                for r in rows {
                    map.insert((id(&r.element)?, Subset::from_indices(r.subset.iter().copied())), id(&r.to)?);
                }
                Some(map)
            }
        };
        Presentation::new(elements, actions, initials, accepting, lower)
    }
}

impl Presentation {
    pub fn to_doc(&self) -> PresentationDoc {
        let name = |m: ElemId| self.name(m).to_string();
        PresentationDoc {
            version: Some(1),
            elements: self
                .elements
                .iter()
                .map(|e| ElementDoc { id: e.name.clone(), src: e.src.clone(), tgt: e.tgt.clone() })
                .collect(),
            actions: self
                .actions()
                .map(|(m, l, to)| ActionDoc { element: name(m), letter: l.clone(), to: name(to) })
                .collect(),
            initials: self.initials.iter().map(|(u, &m)| (u.key(), name(m))).collect(),
            accepting: self.accepting.iter().map(|&m| name(m)).collect(),
            lower: self.lower.as_ref().map(|l| {
                l.iter()
                    .map(|(&(m, a), &to)| LowerDoc { element: name(m), subset: a.iter().collect(), to: name(to) })
                    .collect()
            }),
        }
    }
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PresentationDoc::deserialize(d)?.to_presentation().map_err(serde::de::Error::custom)
    }
}
