//! Interval pomsets with interfaces.
//!
//! Events are indexed `0..n` (at most 64) and relations are stored as one
//! bit row per event. Precedence is kept transitively closed; the event
//! order is kept only on pairs that precedence leaves incomparable.

mod conclist;
mod doc;
mod enumerate;
mod error;
mod st;
mod subsume;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

pub use conclist::{parse_alphabet, Conclist, Label, Subset, MAX_WIDTH};
pub use doc::PomsetDoc;
pub use enumerate::{
    default_event_limit, enumerate_pomsets, PomsetEnumerator, DEFAULT_EVENT_LIMIT, EVENT_LIMIT_ENV,
};
pub use error::IpomsetError;
pub use st::{glue_st, CanonicalForm, StKind, StLetter, StSequence};
pub use subsume::{downward_closure, is_subsumed, subsumption_witness};

/// A candidate pomset before validation. Relations may be given in any
/// form whose transitive closure is a strict order.
#[derive(Clone, Debug, Default)]
pub struct RawPomset {
    pub names: Vec<String>,
    pub labels: Vec<Label>,
    pub precedence: Vec<(usize, usize)>,
    pub event_order: Vec<(usize, usize)>,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
}

impl RawPomset {
    /// Events named `e0, e1, ...` with the given single-character labels.
    pub fn with_labels(labels: &str) -> Self {
        let labels: Vec<Label> = labels.chars().map(|c| Label::new(&c.to_string())).collect();
        RawPomset {
            names: (0..labels.len()).map(|i| format!("e{i}")).collect(),
            labels,
            ..Default::default()
        }
    }

    pub fn prec(mut self, pairs: &[(usize, usize)]) -> Self {
        self.precedence.extend_from_slice(pairs);
        self
    }

    pub fn order(mut self, pairs: &[(usize, usize)]) -> Self {
        self.event_order.extend_from_slice(pairs);
        self
    }

    pub fn sources(mut self, s: &[usize]) -> Self {
        self.sources.extend_from_slice(s);
        self
    }

    pub fn targets(mut self, t: &[usize]) -> Self {
        self.targets.extend_from_slice(t);
        self
    }

    pub fn validate(self) -> Result<Ipomset, IpomsetError> {
        Ipomset::validate(self)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Ipomset {
    names: Vec<String>,
    labels: Vec<Label>,
    prec: Vec<u64>,
    event_order: Vec<u64>,
    sources: u64,
    targets: u64,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    Subset::from_bits(mask).iter()
}

impl Ipomset {
    pub(crate) fn from_parts(
        names: Vec<String>,
        labels: Vec<Label>,
        prec: Vec<u64>,
        event_order: Vec<u64>,
        sources: u64,
        targets: u64,
    ) -> Self {
        Ipomset { names, labels, prec, event_order, sources, targets }
    }

    /// The empty pomset `id_∅`.
    pub fn empty() -> Self {
        Self::identity(&Conclist::empty())
    }

    pub fn identity(u: &Conclist) -> Self {
        glue_st(u, &[]).expect("identity is well typed")
    }

    pub fn validate(raw: RawPomset) -> Result<Ipomset, IpomsetError> {
        let n = raw.labels.len();
        if n > 64 {
            return Err(IpomsetError::TooManyEvents(n));
        }
        let names = if raw.names.len() == n {
            raw.names
        } else {
            (0..n).map(|i| format!("e{i}")).collect()
        };
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(IpomsetError::DuplicateEvent(name.clone()));
            }
        }
        let check = |i: usize| -> Result<usize, IpomsetError> {
            if i < n {
                Ok(i)
            } else {
                Err(IpomsetError::UnknownEvent(format!("#{i}")))
            }
        };

        let mut prec = vec![0u64; n];
        for &(a, b) in &raw.precedence {
            prec[check(a)?] |= 1 << check(b)?;
        }
        transitive_closure(&mut prec);
        if let Some(x) = (0..n).find(|&x| prec[x] >> x & 1 == 1) {
            return Err(IpomsetError::PrecedenceCyclic(names[x].clone()));
        }
        if let Some((a, b, c, d)) = two_plus_two(&prec) {
            return Err(IpomsetError::NotIntervalOrder {
                a: names[a].clone(),
                b: names[b].clone(),
                c: names[c].clone(),
                d: names[d].clone(),
            });
        }

        let mut given = vec![0u64; n];
        for &(a, b) in &raw.event_order {
            given[check(a)?] |= 1 << check(b)?;
        }
        let mut closed = given.clone();
        transitive_closure(&mut closed);
        if let Some(x) = (0..n).find(|&x| closed[x] >> x & 1 == 1) {
            return Err(IpomsetError::EventOrderCyclic(names[x].clone()));
        }
        let mut event_order = vec![0u64; n];
        for x in 0..n {
            for y in x + 1..n {
                let comparable = prec[x] >> y & 1 == 1 || prec[y] >> x & 1 == 1;
                if comparable {
                    continue;
                }
                match (given[x] >> y & 1 == 1, given[y] >> x & 1 == 1) {
                    (true, _) => event_order[x] |= 1 << y,
                    (_, true) => event_order[y] |= 1 << x,
                    _ => {
                        return Err(IpomsetError::EventOrderIncomplete(
                            names[x].clone(),
                            names[y].clone(),
                        ))
                    }
                }
            }
        }

        let mut sources = 0u64;
        for &s in &raw.sources {
            sources |= 1 << check(s)?;
        }
        let mut targets = 0u64;
        for &t in &raw.targets {
            targets |= 1 << check(t)?;
        }
        for s in bits(sources) {
            if prec.iter().any(|row| row >> s & 1 == 1) {
                return Err(IpomsetError::InterfaceNotExtremal {
                    event: names[s].clone(),
                    expected: "minimal",
                });
            }
        }
        for t in bits(targets) {
            if prec[t] != 0 {
                return Err(IpomsetError::InterfaceNotExtremal {
                    event: names[t].clone(),
                    expected: "maximal",
                });
            }
        }
        Ok(Ipomset { names, labels: raw.labels, prec, event_order, sources, targets })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &Label {
        &self.labels[x]
    }

    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.prec[x] >> y & 1 == 1
    }

    /// Event order; only ever true on precedence-incomparable pairs.
    pub fn event_ordered(&self, x: usize, y: usize) -> bool {
        self.event_order[x] >> y & 1 == 1
    }

    pub fn concurrent(&self, x: usize, y: usize) -> bool {
        x != y && !self.precedes(x, y) && !self.precedes(y, x)
    }

    pub fn is_source(&self, x: usize) -> bool {
        self.sources >> x & 1 == 1
    }

    pub fn is_target(&self, x: usize) -> bool {
        self.targets >> x & 1 == 1
    }

    pub fn source_events(&self) -> Vec<usize> {
        self.sort_by_event_order(bits(self.sources).collect())
    }

    pub fn target_events(&self) -> Vec<usize> {
        self.sort_by_event_order(bits(self.targets).collect())
    }

    pub fn source_conclist(&self) -> Conclist {
        self.conclist_of(&self.source_events())
    }

    pub fn target_conclist(&self) -> Conclist {
        self.conclist_of(&self.target_events())
    }

    pub(crate) fn prec_rows(&self) -> &[u64] {
        &self.prec
    }

    pub(crate) fn order_rows(&self) -> &[u64] {
        &self.event_order
    }

    pub(crate) fn interface_masks(&self) -> (u64, u64) {
        (self.sources, self.targets)
    }

    fn conclist_of(&self, events: &[usize]) -> Conclist {
        Conclist::new(events.iter().map(|&e| self.labels[e].clone()).collect())
    }

    /// Sorts pairwise concurrent events by the event order.
    fn sort_by_event_order(&self, mut events: Vec<usize>) -> Vec<usize> {
        let mask = events.iter().fold(0u64, |m, &e| m | 1 << e);
        events.sort_by_key(|&e| {
            (0..self.len())
                .filter(|&o| mask >> o & 1 == 1 && self.event_ordered(o, e))
                .count()
        });
        events
    }

    /// Immediate precedence pairs (transitive reduction).
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in bits(self.prec[x]) {
                let via = bits(self.prec[x]).any(|z| self.precedes(z, y));
                if !via {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn event_order_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| bits(self.event_order[x]).map(move |y| (x, y)))
            .collect()
    }

    /// Gluing `self ∗ other` along the unique conclist isomorphism
    /// between the target interface of `self` and the source of `other`.
    pub fn glue(&self, other: &Ipomset) -> Result<Ipomset, IpomsetError> {
        let tp = self.target_events();
        let sq = other.source_events();
        let (left, right) = (self.conclist_of(&tp), other.conclist_of(&sq));
        if left != right {
            return Err(IpomsetError::InterfaceMismatch { left, right });
        }
        let n = self.len() + other.len() - sq.len();
        if n > 64 {
            return Err(IpomsetError::TooManyEvents(n));
        }
        // image of each event of `other` in the glued pomset
        let mut map = vec![usize::MAX; other.len()];
        for (p, q) in tp.iter().zip(&sq) {
            map[*q] = *p;
        }
        let mut names = self.names.clone();
        let mut labels = self.labels.clone();
        let taken: HashSet<String> = names.iter().cloned().collect();
        for q in 0..other.len() {
            if map[q] == usize::MAX {
                map[q] = labels.len();
                let mut name = other.names[q].clone();
                while taken.contains(&name) || names.contains(&name) {
                    name.push('\'');
                }
                names.push(name);
                labels.push(other.labels[q].clone());
            }
        }
        let mut raw = RawPomset { names, labels, ..Default::default() };
        for x in 0..self.len() {
            raw.precedence.extend(bits(self.prec[x]).map(|y| (x, y)));
            raw.event_order.extend(bits(self.event_order[x]).map(|y| (x, y)));
        }
        for x in 0..other.len() {
            raw.precedence.extend(bits(other.prec[x]).map(|y| (map[x], map[y])));
            raw.event_order.extend(bits(other.event_order[x]).map(|y| (map[x], map[y])));
        }
        for x in (0..self.len()).filter(|&x| !self.is_target(x)) {
            for y in (0..other.len()).filter(|&y| !other.is_source(y)) {
                raw.precedence.push((x, map[y]));
            }
        }
        raw.sources = bits(self.sources).collect();
        raw.targets = bits(other.targets).map(|y| map[y]).collect();
        Ipomset::validate(raw)
    }

    /// The subpomset induced by removing `remove` (a subset of the target
    /// interface, as event indices).
    pub fn remove_events(&self, remove: &[usize]) -> Result<Ipomset, IpomsetError> {
        let mask = remove.iter().fold(0u64, |m, &e| m | 1u64.checked_shl(e as u32).unwrap_or(0));
        if remove.iter().any(|&e| e >= self.len()) || mask & !self.targets != 0 {
            return Err(IpomsetError::NotInTargetInterface);
        }
        Ok(self.induced(!mask & mask_of(self.len())))
    }

    /// Removes the target-interface events at the given positions of the
    /// target conclist.
    pub fn remove_target_positions(&self, positions: Subset) -> Result<Ipomset, IpomsetError> {
        let t = self.target_events();
        if !positions.is_subset_of(Subset::full(t.len())) {
            return Err(IpomsetError::NotInTargetInterface);
        }
        let events: Vec<usize> = positions.iter().map(|p| t[p]).collect();
        self.remove_events(&events)
    }

    fn induced(&self, keep: u64) -> Ipomset {
        let kept: Vec<usize> = bits(keep).collect();
        let compress = |row: u64| -> u64 {
            kept.iter()
                .enumerate()
                .fold(0u64, |m, (k, &e)| if row >> e & 1 == 1 { m | 1 << k } else { m })
        };
        Ipomset {
            names: kept.iter().map(|&e| self.names[e].clone()).collect(),
            labels: kept.iter().map(|&e| self.labels[e].clone()).collect(),
            prec: kept.iter().map(|&e| compress(self.prec[e])).collect(),
            event_order: kept.iter().map(|&e| compress(self.event_order[e])).collect(),
            sources: compress(self.sources),
            targets: compress(self.targets),
        }
    }

    /// Size of a largest precedence antichain.
    pub fn dimension(&self) -> usize {
        self.st_decompose_sparse().max_width()
    }

    /// Sparse ST-decomposition: the unique alternating starter/terminator
    /// word gluing to this pomset.
    ///
    /// Predecessor sets of an interval order form a chain `D_0 ⊂ ... ⊂ D_m`.
    /// An event whose predecessor set is `D_i` starts in block `i`; it ends
    /// in block `r`, the last index whose `D_r` does not contain it. Each
    /// block emits the starter of its new events, then the terminator of its
    /// ending ones.
    pub fn st_decompose_sparse(&self) -> StSequence {
        let n = self.len();
        let pred: Vec<u64> = (0..n)
            .map(|x| (0..n).fold(0u64, |m, y| if self.precedes(y, x) { m | 1 << y } else { m }))
            .collect();
        let mut chain: Vec<u64> = pred.clone();
        chain.sort_by_key(|m| m.count_ones());
        chain.dedup();
        let start: Vec<usize> = pred
            .iter()
            .map(|p| chain.iter().position(|d| d == p).expect("present"))
            .collect();
        let finish: Vec<usize> = (0..n)
            .map(|x| chain.iter().filter(|d| *d >> x & 1 == 0).count() - 1)
            .collect();

        let mut active = self.source_events();
        let source = self.conclist_of(&active);
        let mut letters = Vec::new();
        for block in 0..chain.len() {
            let new: Vec<usize> =
                (0..n).filter(|&x| start[x] == block && !self.is_source(x)).collect();
            if !new.is_empty() {
                let mut next = active.clone();
                next.extend_from_slice(&new);
                let next = self.sort_by_event_order(next);
                let subset = Subset::from_indices(
                    next.iter().enumerate().filter(|(_, e)| new.contains(e)).map(|(i, _)| i),
                );
                letters.push(StLetter::starter(self.conclist_of(&next), subset));
                active = next;
            }
            let ending: Vec<usize> =
                (0..n).filter(|&x| finish[x] == block && !self.is_target(x)).collect();
            if !ending.is_empty() {
                let subset = Subset::from_indices(
                    active.iter().enumerate().filter(|(_, e)| ending.contains(e)).map(|(i, _)| i),
                );
                letters.push(StLetter::terminator(self.conclist_of(&active), subset));
                active.retain(|e| !ending.contains(e));
            }
        }
        StSequence::new_unchecked(source, letters)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.st_decompose_sparse()
    }

    pub fn is_isomorphic(&self, other: &Ipomset) -> bool {
        self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// Word pomsets: totally ordered, empty interfaces.
    pub fn is_word(&self) -> bool {
        self.sources == 0
            && self.targets == 0
            && (0..self.len()).all(|x| (0..self.len()).all(|y| x == y || !self.concurrent(x, y)))
    }

    /// The word `l1 l2 ... ln` as a sequential pomset.
    pub fn word(labels: &[Label]) -> Ipomset {
        let letters: Vec<StLetter> = labels
            .iter()
            .flat_map(|l| {
                let c = Conclist::new(vec![l.clone()]);
                [
                    StLetter::starter(c.clone(), Subset::singleton(0)),
                    StLetter::terminator(c, Subset::singleton(0)),
                ]
            })
            .collect();
        glue_st(&Conclist::empty(), &letters).expect("words are well typed")
    }
}

fn mask_of(n: usize) -> u64 {
    Subset::full(n).bits()
}

pub(crate) fn transitive_closure(rows: &mut [u64]) {
    let n = rows.len();
    for k in 0..n {
        let rk = rows[k];
        for row in rows.iter_mut() {
            if *row >> k & 1 == 1 {
                *row |= rk;
            }
        }
    }
}

/// Finds `a < b`, `c < d` with `a ≮ d` and `c ≮ b`, if any. An order is an
/// interval order iff its predecessor sets are totally ordered by inclusion;
/// two incomparable predecessor sets yield the witness directly.
pub(crate) fn two_plus_two(prec: &[u64]) -> Option<(usize, usize, usize, usize)> {
    let n = prec.len();
    let pred: Vec<u64> = (0..n)
        .map(|x| (0..n).fold(0u64, |m, y| if prec[y] >> x & 1 == 1 { m | 1 << y } else { m }))
        .collect();
    for b in 0..n {
        for d in 0..n {
            let only_b = pred[b] & !pred[d];
            let only_d = pred[d] & !pred[b];
            if only_b != 0 && only_d != 0 {
                let a = only_b.trailing_zeros() as usize;
                let c = only_d.trailing_zeros() as usize;
                return Some((a, b, c, d));
            }
        }
    }
    None
}

impl fmt::Debug for Ipomset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ipomset({})", self.canonical_form())
    }
}

impl fmt::Display for Ipomset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_form())
    }
}

/// A finite set of pomsets up to isomorphism, keyed by canonical form.
#[derive(Clone, Default)]
pub struct PomsetSet(BTreeMap<CanonicalForm, Ipomset>);

impl PartialEq for PomsetSet {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.keys().eq(other.0.keys())
    }
}

impl Eq for PomsetSet {}

impl PomsetSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` if the class was not present.
    pub fn insert(&mut self, p: Ipomset) -> bool {
        let key = p.canonical_form();
        if self.0.contains_key(&key) {
            return false;
        }
        self.0.insert(key, p);
        true
    }

    pub fn contains(&self, p: &Ipomset) -> bool {
        self.0.contains_key(&p.canonical_form())
    }

    pub fn contains_form(&self, form: &CanonicalForm) -> bool {
        self.0.contains_key(form)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Ipomset> {
        self.0.values()
    }

    pub fn forms(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.0.keys()
    }

    pub fn is_subset(&self, other: &PomsetSet) -> bool {
        self.0.keys().all(|k| other.0.contains_key(k))
    }

    /// Members not present in `other`.
    pub fn difference<'a>(&'a self, other: &'a PomsetSet) -> impl Iterator<Item = &'a Ipomset> {
        self.0.iter().filter(|(k, _)| !other.0.contains_key(*k)).map(|(_, v)| v)
    }

    pub fn retain(&mut self, mut f: impl FnMut(&Ipomset) -> bool) {
        self.0.retain(|_, v| f(v));
    }
}

impl FromIterator<Ipomset> for PomsetSet {
    fn from_iter<I: IntoIterator<Item = Ipomset>>(iter: I) -> Self {
        let mut s = PomsetSet::new();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Debug for PomsetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.keys()).finish()
    }
}

#[cfg(test)]
mod tests;
