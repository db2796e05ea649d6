#![allow(dead_code)]

use hdalang::ipomset::{Conclist, Ipomset, Label, StLetter, StSequence, Subset};
use proptest::prelude::*;

/// Builds an alternating word from random seeds: each seed either starts
/// events (while width allows) or ends a nonempty subset of the active ones.
pub fn word_from_seeds(source: &[bool], seeds: &[u64], max_width: usize) -> StSequence {
    let label = |b: bool| Label::new(if b { "b" } else { "a" });
    let src = Conclist::new(source.iter().map(|&b| label(b)).collect());
    let mut cur = src.clone();
    let mut letters = Vec::new();
    let mut last_start = false;
    for &seed in seeds {
        let w = cur.len();
        let can_start = !last_start && w < max_width;
        let can_end = (last_start || letters.is_empty()) && w > 0;
        let start = can_start && (!can_end || seed & 1 == 0);
        if start {
            let k = 1 + (seed >> 1) as usize % (max_width - w);
            let total = w + k;
            let choices: Vec<Subset> = Subset::full(total).subsets().filter(|s| s.len() == k).collect();
            let pos = choices[(seed >> 4) as usize % choices.len()];
            let mut old = cur.labels().iter();
            let labels = (0..total)
                .map(|i| if pos.contains(i) { label(seed >> (20 + i) & 1 == 1) } else { old.next().unwrap().clone() })
                .collect();
            let l = StLetter::starter(Conclist::new(labels), pos);
            cur = l.target();
            letters.push(l);
            last_start = true;
        } else if can_end {
            let sub = Subset::from_bits((seed >> 1) % ((1 << w) - 1) + 1);
            let l = StLetter::terminator(cur.clone(), sub);
            cur = l.target();
            letters.push(l);
            last_start = false;
        }
    }
    StSequence::new(src, letters).expect("typed by construction")
}

pub fn arb_word(max_width: usize) -> impl Strategy<Value = StSequence> {
    (prop::collection::vec(any::<bool>(), 0..=2), prop::collection::vec(any::<u64>(), 0..8))
        .prop_map(move |(src, seeds)| word_from_seeds(&src[..src.len().min(max_width)], &seeds, max_width))
}

pub fn arb_pomset(max_width: usize) -> impl Strategy<Value = Ipomset> {
    arb_word(max_width).prop_map(|w| w.glue())
}

/// A pomset followed by a random continuation from its target.
pub fn arb_pair() -> impl Strategy<Value = (Ipomset, Ipomset)> {
    (arb_pomset(3), prop::collection::vec(any::<u64>(), 0..6)).prop_map(|(p, seeds)| {
        let src: Vec<bool> = p.target_conclist().labels().iter().map(|l| l.as_str() == "b").collect();
        let q = word_from_seeds(&src, &seeds, 3).glue();
        (p, q)
    })
}
