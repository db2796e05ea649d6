//! Exhaustive enumeration of pomsets up to isomorphism.
//!
//! Every pomset has exactly one sparse ST-decomposition, so walking the tree
//! of alternating starter/terminator words visits each isomorphism class
//! once, with no deduplication needed.

use super::{Conclist, Ipomset, IpomsetError, Label, StKind, StLetter, StSequence, Subset};
use crate::par::{self, Execution};

pub const DEFAULT_EVENT_LIMIT: usize = 7;
pub const EVENT_LIMIT_ENV: &str = "IPOMSET_MAX_EVENTS";

/// The enumeration bound: `IPOMSET_MAX_EVENTS` if set and valid, else 7.
pub fn default_event_limit() -> usize {
    std::env::var(EVENT_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EVENT_LIMIT)
}

/// All pomsets over `alphabet` with at most `max_events` events and
/// dimension at most `max_dim`, optionally with a fixed source interface.
pub fn enumerate_pomsets(
    alphabet: &[Label],
    max_events: usize,
    max_dim: usize,
    source: Option<&Conclist>,
) -> Result<Vec<Ipomset>, IpomsetError> {
    let mut e = PomsetEnumerator::new(alphabet).max_events(max_events).max_dim(max_dim);
    if let Some(s) = source {
        e = e.source(s.clone());
    }
    e.collect()
}

#[derive(Clone, Debug)]
pub struct PomsetEnumerator {
    alphabet: Vec<Label>,
    max_events: usize,
    max_dim: usize,
    source: Option<Conclist>,
    bound: usize,
    exec: Execution,
}

#[derive(Clone)]
struct Node {
    letters: Vec<StLetter>,
    source: Conclist,
    current: Conclist,
    events: usize,
    last: StKind,
}

impl Node {
    fn sequence(&self) -> StSequence {
        StSequence::new_unchecked(self.source.clone(), self.letters.clone())
    }
}

const SPLIT: usize = 256;

impl PomsetEnumerator {
    pub fn new(alphabet: &[Label]) -> Self {
        PomsetEnumerator {
            alphabet: alphabet.to_vec(),
            max_events: 0,
            max_dim: 0,
            source: None,
            bound: default_event_limit(),
            exec: Execution::default(),
        }
    }

    pub fn max_events(mut self, n: usize) -> Self {
        self.max_events = n;
        self
    }

    pub fn max_dim(mut self, d: usize) -> Self {
        self.max_dim = d;
        self
    }

    pub fn source(mut self, s: Conclist) -> Self {
        self.source = Some(s);
        self
    }

    /// Raises or lowers the guard on `max_events` for this enumerator only.
    pub fn bound(mut self, b: usize) -> Self {
        self.bound = b;
        self
    }

    pub fn execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    fn check(&self) -> Result<(), IpomsetError> {
        if self.max_events > self.bound || self.max_events > 64 {
            return Err(IpomsetError::BoundTooLarge {
                requested: self.max_events,
                max: self.bound.min(64),
            });
        }
        Ok(())
    }

    /// Canonical forms of all classes, in a deterministic order that does
    /// not depend on the execution mode.
    pub fn forms(&self) -> Result<Vec<StSequence>, IpomsetError> {
        let mut out = Vec::new();
        let frontier = self.split(|w| {
            out.push(w.clone());
            true
        })?;
        out.extend(par::flat_map(self.exec, &frontier, |node| {
            let mut acc = Vec::new();
            self.walk(node, &mut |w| {
                acc.push(w.clone());
                true
            });
            acc
        }));
        Ok(out)
    }

    pub fn collect(&self) -> Result<Vec<Ipomset>, IpomsetError> {
        let forms = self.forms()?;
        Ok(par::map(self.exec, &forms, StSequence::glue))
    }

    /// Members satisfying `keep`, evaluated with the configured execution.
    /// Only the members are kept in memory.
    pub fn filter<F>(&self, keep: F) -> Result<Vec<Ipomset>, IpomsetError>
    where
        F: Fn(&Ipomset) -> bool + Sync + Send,
    {
        let mut out = Vec::new();
        let frontier = self.split(|w| {
            let p = w.glue();
            if keep(&p) {
                out.push(p);
            }
            true
        })?;
        out.extend(par::flat_map(self.exec, &frontier, |node| {
            let mut acc = Vec::new();
            self.walk(node, &mut |w| {
                let p = w.glue();
                if keep(&p) {
                    acc.push(p);
                }
                true
            });
            acc
        }));
        Ok(out)
    }

    pub fn count(&self) -> Result<usize, IpomsetError> {
        let mut n = 0;
        let frontier = self.split(|_| {
            n += 1;
            true
        })?;
        let rest: usize = par::map(self.exec, &frontier, |node| {
            let mut k = 0;
            self.walk(node, &mut |_| {
                k += 1;
                true
            });
            k
        })
        .into_iter()
        .sum();
        Ok(n + rest)
    }

    /// The first canonical form, in enumeration order, failing `check`.
    /// Nothing is stored, so this scales to universes too large to collect.
    pub fn find_violation<F>(&self, check: F) -> Result<Option<StSequence>, IpomsetError>
    where
        F: Fn(&StSequence) -> bool + Sync + Send,
    {
        let mut bad = None;
        let frontier = self.split(|w| {
            if check(w) {
                return true;
            }
            bad = Some(w.clone());
            false
        })?;
        if bad.is_some() {
            return Ok(bad);
        }
        Ok(par::find_map(self.exec, &frontier, |node| {
            let mut found = None;
            self.walk(node, &mut |w| {
                if check(w) {
                    return true;
                }
                found = Some(w.clone());
                false
            });
            found
        }))
    }

    /// Visits nodes breadth-first until the frontier is wide enough to
    /// share out, and returns that frontier. Stops early when `f` does.
    fn split(&self, mut f: impl FnMut(&StSequence) -> bool) -> Result<Vec<Node>, IpomsetError> {
        self.check()?;
        let mut frontier = self.roots();
        while !frontier.is_empty() && frontier.len() < SPLIT {
            let mut next = Vec::new();
            for node in frontier {
                if !f(&node.sequence()) {
                    return Ok(Vec::new());
                }
                next.extend(self.children(&node));
            }
            frontier = next;
        }
        Ok(frontier)
    }

    fn walk(&self, node: &Node, f: &mut impl FnMut(&StSequence) -> bool) -> bool {
        if !f(&node.sequence()) {
            return false;
        }
        self.children(node).iter().all(|child| self.walk(child, f))
    }

    fn roots(&self) -> Vec<Node> {
        let sources = match &self.source {
            Some(s) => vec![s.clone()],
            None => {
                let top = self.max_dim.min(self.max_events);
                let mut all = vec![Conclist::empty()];
                let mut layer = vec![Conclist::empty()];
                for _ in 0..top {
                    layer = layer
                        .iter()
                        .flat_map(|c| {
                            self.alphabet.iter().map(move |l| {
                                let mut v = c.labels().to_vec();
                                v.push(l.clone());
                                Conclist::new(v)
                            })
                        })
                        .collect();
                    all.extend(layer.iter().cloned());
                }
                all
            }
        };
        sources
            .into_iter()
            .filter(|s| s.len() <= self.max_dim && s.len() <= self.max_events)
            .map(|s| Node {
                letters: Vec::new(),
                current: s.clone(),
                events: s.len(),
                source: s,
                last: StKind::Identity,
            })
            .collect()
    }

    fn children(&self, node: &Node) -> Vec<Node> {
        let mut out = Vec::new();
        let width = node.current.len();
        if node.last != StKind::Starter {
            let room = (self.max_events - node.events).min(self.max_dim.saturating_sub(width));
            for k in 1..=room {
                let total = width + k;
                for positions in Subset::full(total).subsets().filter(|s| s.len() == k) {
                    for labels in words(&self.alphabet, k) {
                        let mut old = node.current.labels().iter();
                        let mut fresh = labels.iter();
                        let conclist: Vec<Label> = (0..total)
                            .map(|i| {
                                if positions.contains(i) {
                                    fresh.next().expect("k labels").clone()
                                } else {
                                    old.next().expect("width labels").clone()
                                }
                            })
                            .collect();
                        let letter = StLetter::starter(Conclist::new(conclist), positions);
                        out.push(self.extend(node, letter, k));
                    }
                }
            }
        }
        if node.last != StKind::Terminator {
            for subset in node.current.full().subsets().filter(|s| !s.is_empty()) {
                let letter = StLetter::terminator(node.current.clone(), subset);
                out.push(self.extend(node, letter, 0));
            }
        }
        out
    }

    fn extend(&self, node: &Node, letter: StLetter, added: usize) -> Node {
        let mut letters = node.letters.clone();
        let current = letter.target();
        let last = letter.kind();
        letters.push(letter);
        Node {
            letters,
            source: node.source.clone(),
            current,
            events: node.events + added,
            last,
        }
    }
}

fn words(alphabet: &[Label], k: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(l.clone());
                    w
                })
            })
            .collect();
    }
    out
}
