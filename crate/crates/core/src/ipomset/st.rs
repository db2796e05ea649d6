//! Starters, terminators and ST-sequences.
//!
//! A starter `starter(U, A)` is the discrete pomset on the conclist `U` whose
//! events in `A` begin inside it; a terminator `terminator(U, A)` ends the
//! events of `A`. Gluing a well-typed word of such letters yields a pomset,
//! and every pomset has exactly one word that alternates between non-identity
//! starters and terminators: its sparse decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Conclist, Ipomset, IpomsetError, Label, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StKind {
    Starter,
    Terminator,
    #[serde(rename = "id")]
    Identity,
}

/// A starter, terminator or identity on a conclist. Letters with an empty
/// subset are always normalized to identities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StLetter {
    conclist: Conclist,
    kind: StKind,
    subset: Subset,
}

impl StLetter {
    pub fn new(conclist: Conclist, kind: StKind, subset: Subset) -> Result<Self, IpomsetError> {
        if !subset.is_subset_of(conclist.full()) {
            return Err(IpomsetError::SubsetOutOfRange {
                subset: subset.iter().collect(),
                len: conclist.len(),
            });
        }
        let kind = if subset.is_empty() { StKind::Identity } else { kind };
        let subset = if kind == StKind::Identity { Subset::EMPTY } else { subset };
        Ok(StLetter { conclist, kind, subset })
    }

    /// # Panics
    /// If `subset` has positions outside `conclist`.
    pub fn starter(conclist: Conclist, subset: Subset) -> Self {
        Self::new(conclist, StKind::Starter, subset).expect("starter subset out of range")
    }

    /// # Panics
    /// If `subset` has positions outside `conclist`.
    pub fn terminator(conclist: Conclist, subset: Subset) -> Self {
        Self::new(conclist, StKind::Terminator, subset).expect("terminator subset out of range")
    }

    pub fn identity(conclist: Conclist) -> Self {
        StLetter { conclist, kind: StKind::Identity, subset: Subset::EMPTY }
    }

    pub fn conclist(&self) -> &Conclist {
        &self.conclist
    }

    pub fn kind(&self) -> StKind {
        self.kind
    }

    pub fn subset(&self) -> Subset {
        self.subset
    }

    pub fn is_identity(&self) -> bool {
        self.kind == StKind::Identity
    }

    /// Source interface as a conclist.
    pub fn source(&self) -> Conclist {
        match self.kind {
            StKind::Starter => self.conclist.remove(self.subset),
            _ => self.conclist.clone(),
        }
    }

    /// Target interface as a conclist.
    pub fn target(&self) -> Conclist {
        match self.kind {
            StKind::Terminator => self.conclist.remove(self.subset),
            _ => self.conclist.clone(),
        }
    }

    pub fn to_ipomset(&self) -> Ipomset {
        glue_st(&self.source(), std::slice::from_ref(self)).expect("a single letter is well typed")
    }
}

impl fmt::Display for StLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            StKind::Starter => "S",
            StKind::Terminator => "T",
            StKind::Identity => "id",
        };
        write!(f, "{tag}{}", self.conclist)?;
        if !self.subset.is_empty() {
            write!(f, "{:?}", self.subset)?;
        }
        Ok(())
    }
}

impl fmt::Debug for StLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct LetterDoc {
    kind: StKind,
    conclist: Conclist,
    #[serde(default)]
    subset: Vec<usize>,
}

impl Serialize for StLetter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LetterDoc {
            kind: self.kind,
            conclist: self.conclist.clone(),
            subset: self.subset.iter().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StLetter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = LetterDoc::deserialize(d)?;
        if doc.subset.iter().any(|&i| i >= doc.conclist.len()) {
            return Err(serde::de::Error::custom(format!(
                "subset {:?} out of range for conclist {}",
                doc.subset, doc.conclist
            )));
        }
        StLetter::new(doc.conclist, doc.kind, Subset::from_indices(doc.subset))
            .map_err(serde::de::Error::custom)
    }
}

/// A well-typed word of ST-letters starting at a given interface.
///
/// The sparse decomposition of a pomset doubles as its canonical form: two
/// pomsets are isomorphic iff their sparse sequences are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StSequence {
    source: Conclist,
    letters: Vec<StLetter>,
}

/// Canonical encoding of a pomset up to isomorphism.
pub type CanonicalForm = StSequence;

impl StSequence {
    pub fn new(source: Conclist, letters: Vec<StLetter>) -> Result<Self, IpomsetError> {
        let mut cur = source.clone();
        for l in &letters {
            let s = l.source();
            if s != cur {
                return Err(IpomsetError::InterfaceMismatch { left: cur, right: s });
            }
            cur = l.target();
        }
        Ok(StSequence { source, letters })
    }

    /// Builds a sequence from a non-empty word, taking the source of the first letter.
    pub fn from_letters(letters: Vec<StLetter>) -> Result<Self, IpomsetError> {
        let source = letters.first().map(StLetter::source).unwrap_or_default();
        Self::new(source, letters)
    }

    pub(crate) fn new_unchecked(source: Conclist, letters: Vec<StLetter>) -> Self {
        StSequence { source, letters }
    }

    pub fn empty(source: Conclist) -> Self {
        StSequence { source, letters: Vec::new() }
    }

    pub fn source(&self) -> &Conclist {
        &self.source
    }

    pub fn target(&self) -> Conclist {
        self.letters
            .last()
            .map(StLetter::target)
            .unwrap_or_else(|| self.source.clone())
    }

    pub fn letters(&self) -> &[StLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Alternates between starters and terminators and has no identities.
    pub fn is_sparse(&self) -> bool {
        self.letters.iter().all(|l| !l.is_identity())
            && self.letters.windows(2).all(|w| w[0].kind != w[1].kind)
    }

    pub fn glue(&self) -> Ipomset {
        glue_st(&self.source, &self.letters).expect("sequence was checked on construction")
    }

    /// Number of events of the glued pomset.
    pub fn event_count(&self) -> usize {
        self.source.len()
            + self
                .letters
                .iter()
                .filter(|l| l.kind == StKind::Starter)
                .map(|l| l.subset.len())
                .sum::<usize>()
    }

    /// Largest conclist along the word.
    pub fn max_width(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.conclist.len())
            .chain(std::iter::once(self.source.len()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for StSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id{}", self.source);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Glues a word of ST-letters starting at `source`. Identity letters are
/// absorbed; the empty word yields the identity on `source`.
pub fn glue_st(source: &Conclist, letters: &[StLetter]) -> Result<Ipomset, IpomsetError> {
    let n = source.len()
        + letters
            .iter()
            .filter(|l| l.kind == StKind::Starter)
            .map(|l| l.subset.len())
            .sum::<usize>();
    if n > 64 {
        return Err(IpomsetError::TooManyEvents(n));
    }
    let mut labels: Vec<Label> = source.labels().to_vec();
    let mut start: Vec<i64> = vec![-1; source.len()];
    let mut end: Vec<i64> = vec![i64::MAX; source.len()];
    let mut event_order = vec![0u64; n];
    let mut active: Vec<usize> = (0..source.len()).collect();
    let record = |active: &[usize], eo: &mut Vec<u64>| {
        for (i, &x) in active.iter().enumerate() {
            for &y in &active[i + 1..] {
                eo[x] |= 1 << y;
            }
        }
    };
    record(&active, &mut event_order);
    let mut cur = source.clone();
    for (k, letter) in letters.iter().enumerate() {
        let expected = letter.source();
        if expected != cur {
            return Err(IpomsetError::InterfaceMismatch { left: cur, right: expected });
        }
        match letter.kind {
            StKind::Identity => {}
            StKind::Starter => {
                let mut old = active.iter();
                let mut next = Vec::with_capacity(letter.conclist.len());
                for (pos, label) in letter.conclist.labels().iter().enumerate() {
                    if letter.subset.contains(pos) {
                        let id = labels.len();
                        labels.push(label.clone());
                        start.push(k as i64);
                        end.push(i64::MAX);
                        next.push(id);
                    } else {
                        next.push(*old.next().expect("types checked"));
                    }
                }
                active = next;
                record(&active, &mut event_order);
            }
            StKind::Terminator => {
                let mut next = Vec::with_capacity(active.len());
                for (pos, &x) in active.iter().enumerate() {
                    if letter.subset.contains(pos) {
                        end[x] = k as i64;
                    } else {
                        next.push(x);
                    }
                }
                active = next;
            }
        }
        cur = letter.target();
    }
    let mut prec = vec![0u64; n];
    for x in 0..n {
        for y in 0..n {
            if end[x] < start[y] {
                prec[x] |= 1 << y;
            }
        }
    }
    let sources = (0..source.len()).fold(0u64, |m, i| m | 1 << i);
    let targets = active.iter().fold(0u64, |m, &i| m | 1 << i);
    let names = (0..n).map(|i| format!("e{i}")).collect();
    Ok(Ipomset::from_parts(names, labels, prec, event_order, sources, targets))
}
