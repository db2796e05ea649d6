//! Higher-dimensional automata: precubical sets with initial and accepting
//! cells.
//!
//! Faces are stored per single event; a face along a set of events is the
//! composite of single faces, taken from the highest position downwards so
//! that the remaining positions keep their indices.

mod doc;
mod path;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::ipomset::{
    default_event_limit, Conclist, Ipomset, PomsetSet, StKind, StLetter, StSequence, Subset,
};
use crate::relation::{CounterWitness, Generator, Relation, RelationClosure};

pub use doc::{CellDoc, HdaDoc};
pub use path::{Direction, Path, Step};

pub type CellId = usize;
pub type CellSet = BTreeSet<CellId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HdaError {
    #[error("duplicate cell id `{0}`")]
    DuplicateCell(String),
    #[error("unknown cell id `{0}`")]
    UnknownCell(String),
    #[error("cell `{cell}` has no event at index {event}")]
    EventOutOfRange { cell: String, event: usize },
    #[error("cell `{cell}` is missing its {} face at event {event}", if *.upper { "upper" } else { "lower" })]
    MissingFace { cell: String, event: usize, upper: bool },
    #[error("face of `{cell}` at event {event} is `{face}` of type {found}, expected {expected}")]
    FaceTypeMismatch {
        cell: String,
        event: usize,
        face: String,
        expected: Conclist,
        found: Conclist,
    },
    #[error(
        "precubical identity fails at `{cell}`: faces ({i},{mu}) then ({j},{nu}) give `{left}` but the other order gives `{right}`"
    )]
    PrecubicalViolation {
        cell: String,
        i: usize,
        j: usize,
        mu: u8,
        nu: u8,
        left: String,
        right: String,
    },
    #[error("interface mismatch: cell has type {cell} but the pomset starts at {pomset}")]
    InterfaceMismatch { cell: Conclist, pomset: Conclist },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("enumeration bound {requested} exceeds the configured maximum {max}")]
    BoundTooLarge { requested: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hda {
    names: Vec<String>,
    types: Vec<Conclist>,
    lower: Vec<Vec<CellId>>,
    upper: Vec<Vec<CellId>>,
    initial: CellSet,
    accepting: CellSet,
    index: HashMap<String, CellId>,
    by_type: BTreeMap<Conclist, Vec<CellId>>,
}

/// Incremental construction of an [`Hda`]; [`HdaBuilder::build`] checks
/// all faces and precubical identities.
#[derive(Clone, Debug, Default)]
pub struct HdaBuilder {
    names: Vec<String>,
    types: Vec<Conclist>,
    lower: Vec<Vec<Option<CellId>>>,
    upper: Vec<Vec<Option<CellId>>>,
    initial: CellSet,
    accepting: CellSet,
    index: HashMap<String, CellId>,
    errors: Vec<HdaError>,
}

impl HdaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cell(&mut self, name: &str, conclist: Conclist) -> CellId {
        let id = self.names.len();
        if self.index.insert(name.to_string(), id).is_some() {
            self.errors.push(HdaError::DuplicateCell(name.to_string()));
        }
        self.names.push(name.to_string());
        self.lower.push(vec![None; conclist.len()]);
        self.upper.push(vec![None; conclist.len()]);
        self.types.push(conclist);
        id
    }

    pub fn id(&self, name: &str) -> Result<CellId, HdaError> {
        self.index.get(name).copied().ok_or_else(|| HdaError::UnknownCell(name.to_string()))
    }

    pub fn face(&mut self, cell: CellId, event: usize, upper: bool, face: CellId) -> &mut Self {
        let table = if upper { &mut self.upper } else { &mut self.lower };
        match table[cell].get_mut(event) {
            Some(slot) => *slot = Some(face),
            None => self.errors.push(HdaError::EventOutOfRange {
                cell: self.names[cell].clone(),
                event,
            }),
        }
        self
    }

    pub fn lower(&mut self, cell: CellId, event: usize, face: CellId) -> &mut Self {
        self.face(cell, event, false, face)
    }

    pub fn upper(&mut self, cell: CellId, event: usize, face: CellId) -> &mut Self {
        self.face(cell, event, true, face)
    }

    pub fn initial(&mut self, cell: CellId) -> &mut Self {
        self.initial.insert(cell);
        self
    }

    pub fn accepting(&mut self, cell: CellId) -> &mut Self {
        self.accepting.insert(cell);
        self
    }

    pub fn build(self) -> Result<Hda, HdaError> {
        if let Some(e) = self.errors.into_iter().next() {
            return Err(e);
        }
        let n = self.names.len();
        let mut lower = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        for x in 0..n {
            for (is_upper, table, out) in
                [(false, &self.lower, &mut lower), (true, &self.upper, &mut upper)]
            {
                let mut faces = Vec::with_capacity(self.types[x].len());
                for (e, f) in table[x].iter().enumerate() {
                    let f = f.ok_or_else(|| HdaError::MissingFace {
                        cell: self.names[x].clone(),
                        event: e,
                        upper: is_upper,
                    })?;
                    let expected = self.types[x].remove(Subset::singleton(e));
                    if self.types[f] != expected {
                        return Err(HdaError::FaceTypeMismatch {
                            cell: self.names[x].clone(),
                            event: e,
                            face: self.names[f].clone(),
                            expected,
                            found: self.types[f].clone(),
                        });
                    }
                    faces.push(f);
                }
                out.push(faces);
            }
        }
        let mut by_type: BTreeMap<Conclist, Vec<CellId>> = BTreeMap::new();
        for (x, t) in self.types.iter().enumerate() {
            by_type.entry(t.clone()).or_default().push(x);
        }
        let hda = Hda {
            names: self.names,
            types: self.types,
            lower,
            upper,
            initial: self.initial,
            accepting: self.accepting,
            index: self.index,
            by_type,
        };
        hda.check_precubical()?;
        Ok(hda)
    }
}

impl Hda {
    fn check_precubical(&self) -> Result<(), HdaError> {
        for x in 0..self.len() {
            let d = self.types[x].len();
            for j in 0..d {
                for i in 0..j {
                    for mu in [false, true] {
                        for nu in [false, true] {
                            // δ^μ_i δ^ν_j = δ^ν_{j-1} δ^μ_i
                            let left = self.single_face(self.single_face(x, j, nu), i, mu);
                            let right = self.single_face(self.single_face(x, i, mu), j - 1, nu);
                            if left != right {
                                return Err(HdaError::PrecubicalViolation {
                                    cell: self.names[x].clone(),
                                    i,
                                    j,
                                    mu: mu as u8,
                                    nu: nu as u8,
                                    left: self.names[left].clone(),
                                    right: self.names[right].clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn cells(&self) -> std::ops::Range<CellId> {
        0..self.len()
    }

    pub fn name(&self, x: CellId) -> &str {
        &self.names[x]
    }

    pub fn cell(&self, name: &str) -> Option<CellId> {
        self.index.get(name).copied()
    }

    pub fn conclist(&self, x: CellId) -> &Conclist {
        &self.types[x]
    }

    /// Cell types that occur, in conclist order.
    pub fn conclists(&self) -> impl Iterator<Item = &Conclist> {
        self.by_type.keys()
    }

    pub fn cells_of_type(&self, u: &Conclist) -> &[CellId] {
        self.by_type.get(u).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn initial(&self) -> &CellSet {
        &self.initial
    }

    pub fn accepting(&self) -> &CellSet {
        &self.accepting
    }

    pub fn dimension(&self) -> usize {
        self.types.iter().map(Conclist::len).max().unwrap_or(0)
    }

    pub fn single_face(&self, x: CellId, event: usize, upper: bool) -> CellId {
        if upper {
            self.upper[x][event]
        } else {
            self.lower[x][event]
        }
    }

    /// `δ⁰_A(x)` or `δ¹_A(x)` for a set `A` of positions of `ev(x)`.
    pub fn face(&self, x: CellId, subset: Subset, upper: bool) -> CellId {
        let mut positions: Vec<usize> = subset.iter().collect();
        positions.reverse();
        positions.into_iter().fold(x, |c, e| self.single_face(c, e, upper))
    }

    pub fn lower_face(&self, x: CellId, subset: Subset) -> CellId {
        self.face(x, subset, false)
    }

    pub fn upper_face(&self, x: CellId, subset: Subset) -> CellId {
        self.face(x, subset, true)
    }

    /// Cells reachable from `set` by reading `letter`.
    pub fn step(&self, set: &CellSet, letter: &StLetter) -> CellSet {
        match letter.kind() {
            StKind::Identity => {
                set.iter().copied().filter(|&x| &self.types[x] == letter.conclist()).collect()
            }
            StKind::Starter => self
                .cells_of_type(letter.conclist())
                .iter()
                .copied()
                .filter(|&x| set.contains(&self.lower_face(x, letter.subset())))
                .collect(),
            StKind::Terminator => set
                .iter()
                .copied()
                .filter(|&x| &self.types[x] == letter.conclist())
                .map(|x| self.upper_face(x, letter.subset()))
                .collect(),
        }
    }

    pub fn run(&self, start: CellSet, letters: &[StLetter]) -> CellSet {
        letters.iter().fold(start, |set, l| if set.is_empty() { set } else { self.step(&set, l) })
    }

    /// Initial cells of type `source`.
    pub fn start_set(&self, source: &Conclist) -> CellSet {
        self.initial.iter().copied().filter(|&x| &self.types[x] == source).collect()
    }

    /// Membership by running the sparse decomposition of `p` over sets of
    /// cells.
    pub fn accepts(&self, p: &Ipomset) -> bool {
        self.accepts_sequence(&p.st_decompose_sparse())
    }

    pub fn accepts_sequence(&self, w: &StSequence) -> bool {
        let end = self.run(self.start_set(w.source()), w.letters());
        end.iter().any(|x| self.accepting.contains(x))
    }

    /// `d(x, P)`: the cells reached from `x` along paths recognizing `P`.
    pub fn reach_set(&self, x: CellId, p: &Ipomset) -> Result<CellSet, HdaError> {
        let w = p.st_decompose_sparse();
        if w.source() != &self.types[x] {
            return Err(HdaError::InterfaceMismatch {
                cell: self.types[x].clone(),
                pomset: w.source().clone(),
            });
        }
        Ok(self.run(CellSet::from([x]), w.letters()))
    }

    /// Every starter leading out of cells of type `from`: for each cell `y`
    /// and set `A` with `ev(y) − A = from`.
    fn starters_from(&self, from: &Conclist, room: usize, max_dim: usize) -> Vec<StLetter> {
        let mut out = BTreeSet::new();
        for (u, _) in self.by_type.iter().filter(|(u, _)| u.len() > from.len() && u.len() <= max_dim) {
            if u.len() - from.len() > room {
                continue;
            }
            for a in u.full().subsets().filter(|a| a.len() == u.len() - from.len()) {
                if &u.remove(a) == from {
                    out.insert(StLetter::starter(u.clone(), a));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Accepted pomsets with at most `max_events` events, checked against
    /// the configured enumeration bound.
    pub fn enumerate_language(&self, max_events: usize) -> Result<PomsetSet, HdaError> {
        self.enumerate_language_bounded(max_events, default_event_limit())
    }

    pub fn enumerate_language_bounded(
        &self,
        max_events: usize,
        bound: usize,
    ) -> Result<PomsetSet, HdaError> {
        if max_events > bound {
            return Err(HdaError::BoundTooLarge { requested: max_events, max: bound });
        }
        let mut out = PomsetSet::new();
        let sources: BTreeSet<Conclist> =
            self.initial.iter().map(|&x| self.types[x].clone()).collect();
        for u in sources.into_iter().filter(|u| u.len() <= max_events) {
            let start = self.start_set(&u);
            let mut stack = vec![(start, Vec::<StLetter>::new(), u.len(), u.clone())];
            while let Some((set, word, events, cur)) = stack.pop() {
                if set.iter().any(|x| self.accepting.contains(x)) {
                    out.insert(StSequence::new_unchecked(u.clone(), word.clone()).glue());
                }
                let last = word.last().map(StLetter::kind);
                let mut next_letters = Vec::new();
                if last != Some(StKind::Starter) {
                    next_letters.extend(self.starters_from(&cur, max_events - events, usize::MAX));
                }
                if last != Some(StKind::Terminator) {
                    next_letters.extend(
                        cur.full()
                            .subsets()
                            .filter(|a| !a.is_empty())
                            .map(|a| StLetter::terminator(cur.clone(), a)),
                    );
                }
                for l in next_letters {
                    let next = self.step(&set, &l);
                    if next.is_empty() {
                        continue;
                    }
                    let added = if l.kind() == StKind::Starter { l.subset().len() } else { 0 };
                    let tgt = l.target();
                    let mut w = word.clone();
                    w.push(l);
                    stack.push((next, w, events + added, tgt));
                }
            }
        }
        Ok(out)
    }

    /// All single starter and terminator steps as letter-labeled relations
    /// between cell types.
    pub fn letter_relations(&self) -> (Vec<Conclist>, Vec<Generator>) {
        let objects: Vec<Conclist> = self.by_type.keys().cloned().collect();
        let obj = |c: &Conclist| objects.iter().position(|o| o == c).expect("cell type");
        let pos = |x: CellId| {
            self.cells_of_type(&self.types[x]).iter().position(|&y| y == x).expect("indexed")
        };
        let mut gens: BTreeMap<StLetter, Relation> = BTreeMap::new();
        for x in self.cells() {
            let t = &self.types[x];
            for a in t.full().subsets().filter(|a| !a.is_empty()) {
                let low = self.lower_face(x, a);
                let src = t.remove(a);
                gens.entry(StLetter::starter(t.clone(), a))
                    .or_insert_with(|| {
                        Relation::empty(self.cells_of_type(&src).len(), self.cells_of_type(t).len())
                    })
                    .insert(pos(low), pos(x));
                let up = self.upper_face(x, a);
                gens.entry(StLetter::terminator(t.clone(), a))
                    .or_insert_with(|| {
                        Relation::empty(self.cells_of_type(t).len(), self.cells_of_type(&src).len())
                    })
                    .insert(pos(x), pos(up));
            }
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
        (objects, generators)
    }

    /// The relations `t(P)` for all pomsets `P`, grouped by cell type.
    pub fn relation_closure(&self) -> RelationClosure {
        let (objects, generators) = self.letter_relations();
        let sizes = objects.iter().map(|u| self.cells_of_type(u).len()).collect();
        RelationClosure::build(objects, sizes, generators)
    }

    /// A pomset `P` and cell `x` for which `d(x, Pⁿ)` cycles with period
    /// above one, if any.
    pub fn counter_witness(&self) -> Option<HdaCounter> {
        let closure = self.relation_closure();
        let w = closure.counter()?;
        let cells = self.cells_of_type(&w.object);
        let word = StSequence::new(w.object.clone(), w.word.clone()).expect("closure words are typed");
        // cells whose reach sets actually cycle
        let mut cycling = Vec::new();
        for &x in cells {
            let mut seen: Vec<CellSet> = Vec::new();
            let mut cur = CellSet::from([x]);
            loop {
                cur = self.run(cur, word.letters());
                if let Some(j) = seen.iter().position(|s| *s == cur) {
                    if seen.len() - j > 1 {
                        cycling.push(x);
                    }
                    break;
                }
                seen.push(cur.clone());
            }
        }
        Some(HdaCounter { pomset: word.glue(), word, witness: w, cells: cycling })
    }

    pub fn is_counter_free(&self) -> bool {
        self.counter_witness().is_none()
    }

    /// Cells that are a face of some cell in `roots`, plus the roots.
    pub fn face_closure(&self, roots: impl IntoIterator<Item = CellId>) -> CellSet {
        let mut out = CellSet::new();
        for x in roots {
            for a in self.types[x].full().subsets() {
                out.insert(self.lower_face(x, a));
                out.insert(self.upper_face(x, a));
            }
        }
        out
    }

    /// Cells on some path from an initial to an accepting cell, closed
    /// under faces.
    pub fn trim(&self) -> Hda {
        let mut succ = vec![Vec::new(); self.len()];
        let mut pred = vec![Vec::new(); self.len()];
        for y in self.cells() {
            for e in 0..self.types[y].len() {
                for (from, to) in [(self.lower[y][e], y), (y, self.upper[y][e])] {
                    succ[from].push(to);
                    pred[to].push(from);
                }
            }
        }
        let reach = |start: &CellSet, next: &[Vec<CellId>]| {
            let mut seen = start.clone();
            let mut stack: Vec<CellId> = start.iter().copied().collect();
            while let Some(x) = stack.pop() {
                for &y in &next[x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            seen
        };
        let fwd = reach(&self.initial, &succ);
        let bwd = reach(&self.accepting, &pred);
        let keep = self.face_closure(fwd.intersection(&bwd).copied());
        self.restrict(&keep)
    }

    /// The sub-HDA on `keep`, which must be closed under faces.
    pub fn restrict(&self, keep: &CellSet) -> Hda {
        let mut b = HdaBuilder::new();
        let mut map = HashMap::new();
        for &x in keep {
            map.insert(x, b.cell(&self.names[x], self.types[x].clone()));
        }
        for &x in keep {
            for e in 0..self.types[x].len() {
                b.lower(map[&x], e, map[&self.lower[x][e]]);
                b.upper(map[&x], e, map[&self.upper[x][e]]);
            }
            if self.initial.contains(&x) {
                b.initial(map[&x]);
            }
            if self.accepting.contains(&x) {
                b.accepting(map[&x]);
            }
        }
        b.build().expect("restriction to a face-closed set is an HDA")
    }

    /// Isomorphism up to cell names: a type-preserving bijection commuting
    /// with all faces and preserving initial and accepting cells.
    pub fn is_isomorphic(&self, other: &Hda) -> bool {
        if self.len() != other.len() || self.initial.len() != other.initial.len() {
            return false;
        }
        let sig = |h: &Hda| {
            h.by_type.iter().map(|(k, v)| (k.clone(), v.len())).collect::<Vec<_>>()
        };
        if sig(self) != sig(other) {
            return false;
        }
        let mut order: Vec<CellId> = self.cells().collect();
        order.sort_by_key(|&x| std::cmp::Reverse(self.types[x].len()));
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        self.iso_search(other, &order, 0, &mut map, &mut used)
    }

    fn iso_search(
        &self,
        other: &Hda,
        order: &[CellId],
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(k) else { return true };
        let candidates: Vec<CellId> = if map[x] != usize::MAX {
            vec![map[x]]
        } else {
            other.cells_of_type(&self.types[x]).iter().copied().filter(|&y| !used[y]).collect()
        };
        let preassigned = map[x] != usize::MAX;
        for y in candidates {
            if self.initial.contains(&x) != other.initial.contains(&y)
                || self.accepting.contains(&x) != other.accepting.contains(&y)
            {
                continue;
            }
            // faces of x must map to faces of y
            let mut assigned = Vec::new();
            let mut ok = true;
            for e in 0..self.types[x].len() {
                for (fx, fy) in
                    [(self.lower[x][e], other.lower[y][e]), (self.upper[x][e], other.upper[y][e])]
                {
                    if map[fx] == usize::MAX {
                        if used[fy] {
                            ok = false;
                        } else {
                            map[fx] = fy;
                            used[fy] = true;
                            assigned.push(fx);
                        }
                    } else if map[fx] != fy {
                        ok = false;
                    }
                }
            }
            if !preassigned {
                map[x] = y;
                used[y] = true;
            }
            if ok && self.iso_search(other, order, k + 1, map, used) {
                return true;
            }
            if !preassigned {
                map[x] = usize::MAX;
                used[y] = false;
            }
            for fx in assigned {
                used[map[fx]] = false;
                map[fx] = usize::MAX;
            }
        }
        false
    }
}

/// A counter in an HDA: the generator word of an endomorphism whose
/// reachability relation cycles, the pomset it glues to, and the cells
/// whose reach sets cycle under it.
#[derive(Clone, Debug)]
pub struct HdaCounter {
    pub word: StSequence,
    pub pomset: Ipomset,
    pub witness: CounterWitness,
    pub cells: Vec<CellId>,
}

#[cfg(test)]
mod tests;
