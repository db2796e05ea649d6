use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A symbol of the alphabet. Cheap to clone; ordered lexically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(symbol: &str) -> Self {
        Label(Arc::from(symbol))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Label::new(&s))
    }
}

/// Parses a compact alphabet spec: either comma separated (`a,b,c`) or,
/// when there is no comma, one symbol per character (`abc`).
pub fn parse_alphabet(spec: &str) -> Vec<Label> {
    let mut out: Vec<Label> = if spec.contains(',') {
        spec.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Label::new)
            .collect()
    } else {
        spec.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Label::new(&c.to_string()))
            .collect()
    };
    out.sort();
    out.dedup();
    out
}

/// A set of positions in a conclist (at most 64 positions).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

pub const MAX_WIDTH: usize = 64;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(len: usize) -> Self {
        if len >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << len) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset(iter.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Re-indexes `self` relative to the positions of `kept`: the k-th set
    /// position of `kept` becomes position k. Bits outside `kept` are dropped.
    pub fn compress(self, kept: Subset) -> Subset {
        let mut out = 0u64;
        for (k, pos) in kept.iter().enumerate() {
            if self.contains(pos) {
                out |= 1 << k;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: position k maps to the k-th set
    /// position of `kept`.
    pub fn expand(self, kept: Subset) -> Subset {
        let mut out = 0u64;
        for (k, pos) in kept.iter().enumerate() {
            if self.contains(k) {
                out |= 1 << pos;
            }
        }
        Subset(out)
    }

    /// All subsets of `self`, including the empty one and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A conclist: labels of concurrently running events, listed in event order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Conclist(Vec<Label>);

impl Conclist {
    pub fn new(labels: Vec<Label>) -> Self {
        Conclist(labels)
    }

    pub fn empty() -> Self {
        Conclist(Vec::new())
    }

    /// Builds a conclist from single-character labels, e.g. `"ab"` is `[a, b]`.
    pub fn from_chars(s: &str) -> Self {
        Conclist(s.chars().map(|c| Label::new(&c.to_string())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// The conclist with the positions in `subset` removed.
    pub fn remove(&self, subset: Subset) -> Conclist {
        Conclist(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !subset.contains(*i))
                .map(|(_, l)| l.clone())
                .collect(),
        )
    }

    /// Key used in JSON maps: labels joined by commas, `""` for the empty conclist.
    pub fn key(&self) -> String {
        self.0.iter().map(Label::as_str).collect::<Vec<_>>().join(",")
    }

    pub fn from_key(key: &str) -> Conclist {
        if key.is_empty() {
            Conclist::empty()
        } else {
            Conclist(key.split(',').map(Label::new).collect())
        }
    }
}

impl fmt::Display for Conclist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.key())
    }
}

impl fmt::Debug for Conclist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compress_expand_inverse() {
        let kept = Subset::from_indices([0, 2, 3]);
        let s = Subset::from_indices([2, 3]);
        let c = s.compress(kept);
        assert_eq!(c, Subset::from_indices([1, 2]));
        assert_eq!(c.expand(kept), s);
    }

    #[test]
    fn subsets_enumerates_powerset() {
        let s = Subset::from_indices([1, 4, 5]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn conclist_key_roundtrip() {
        let c = Conclist::from_chars("abb");
        assert_eq!(Conclist::from_key(&c.key()), c);
        assert_eq!(Conclist::from_key(""), Conclist::empty());
        assert_eq!(c.remove(Subset::singleton(1)), Conclist::from_chars("ab"));
    }

    #[test]
    fn alphabet_spec() {
        assert_eq!(parse_alphabet("ba"), vec![Label::new("a"), Label::new("b")]);
        assert_eq!(parse_alphabet("foo, bar"), vec![Label::new("bar"), Label::new("foo")]);
    }
}
