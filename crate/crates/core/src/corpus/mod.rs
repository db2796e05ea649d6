//! Built-in example documents: the figures and counterexamples of the
//! theory, as pomsets, HDAs and presentations.

mod entries;

pub use entries::{entries, run, CorpusEntry, CorpusError, CorpusReport};

use crate::algebra::Presentation;
use crate::hda::Hda;
use crate::ipomset::Ipomset;

pub const FIG1_LEFT: &str = include_str!("../../corpus/fig1-left.json");
pub const FIG1_RIGHT: &str = include_str!("../../corpus/fig1-right.json");
pub const FIG1_RESULT: &str = include_str!("../../corpus/fig1-result.json");
pub const FIG2_HDA: &str = include_str!("../../corpus/fig2-hda.json");
pub const FIG3_POMSET: &str = include_str!("../../corpus/fig3-pomset.json");
pub const FIG5A_PRESENTATION: &str = include_str!("../../corpus/fig5a-presentation.json");
pub const FIG5B_HDA: &str = include_str!("../../corpus/fig5b-hda.json");
pub const FIG5_MERGED_HDA: &str = include_str!("../../corpus/fig5-merged-hda.json");
pub const WORD_A_STAR: &str = include_str!("../../corpus/word-a-star.json");
pub const WORD_AA_STAR: &str = include_str!("../../corpus/word-aa-star.json");

fn pomset(doc: &str) -> Ipomset {
    serde_json::from_str(doc).expect("corpus pomset is valid")
}

fn hda(doc: &str) -> Hda {
    serde_json::from_str(doc).expect("corpus HDA is valid")
}

/// The two pomsets glued in the gluing example.
pub fn fig1_left() -> Ipomset {
    pomset(FIG1_LEFT)
}

pub fn fig1_right() -> Ipomset {
    pomset(FIG1_RIGHT)
}

pub fn fig1_result() -> Ipomset {
    pomset(FIG1_RESULT)
}

/// Three squares on a 3×3 grid of vertices; accepts the pomset of
/// [`fig3_pomset`] along its dashed path.
pub fn fig2_hda() -> Hda {
    hda(FIG2_HDA)
}

/// `a₁ < c`, `a₁ < a₂`, `b < a₂`, with `a₂` still running at the end.
pub fn fig3_pomset() -> Ipomset {
    pomset(FIG3_POMSET)
}

/// A counter-free presentation of `↓[a∥b]b* + a`.
pub fn fig5a_presentation() -> Presentation {
    serde_json::from_str(FIG5A_PRESENTATION).expect("corpus presentation is valid")
}

/// The HDA built from [`fig5a_presentation`]; its two b-edges between the
/// accepting vertices form a counter.
pub fn fig5b_hda() -> Hda {
    hda(FIG5B_HDA)
}

/// [`fig5b_hda`] with the three accepting vertices merged.
pub fn fig5_merged_hda() -> Hda {
    hda(FIG5_MERGED_HDA)
}

/// One vertex with an `a`-loop: the word language `a*`.
pub fn word_a_star() -> Hda {
    hda(WORD_A_STAR)
}

/// A two-vertex `a`-cycle: the word language `(aa)*`.
pub fn word_aa_star() -> Hda {
    hda(WORD_AA_STAR)
}

/// Every HDA of the corpus, by name.
pub fn hdas() -> Vec<(&'static str, Hda)> {
    vec![
        ("fig2", fig2_hda()),
        ("fig5b", fig5b_hda()),
        ("fig5-merged", fig5_merged_hda()),
        ("word-a-star", word_a_star()),
        ("word-aa-star", word_aa_star()),
    ]
}
