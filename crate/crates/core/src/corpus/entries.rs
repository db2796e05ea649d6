use thiserror::Error;

use crate::algebra::{coherent_closure, presentation_to_hda, suffix_presentation};
use crate::fo::{p2n, p2n_family, prop31, prop31_member, FoLanguage};
use crate::ipomset::{parse_alphabet, Conclist, PomsetSet};
use crate::st::StAutomaton;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus entry `{0}`")]
    Unknown(String),
    #[error("corpus entry `{entry}` failed check: {check}")]
    CorpusMismatch { entry: String, check: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
}

/// Outcome of every check of one entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub entry: String,
    pub checks: Vec<(String, bool)>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry { name: "fig1", description: "gluing two pomsets with interfaces" },
    CorpusEntry { name: "fig2", description: "three-square HDA and the pomset of its dashed path" },
    CorpusEntry { name: "fig3", description: "sparse step decomposition of a four-event pomset" },
    CorpusEntry { name: "fig5-presentation", description: "a counter-free presentation of ↓[a∥b]b* + a" },
    CorpusEntry { name: "fig5-counter", description: "its HDA, with a counter of period two" },
    CorpusEntry { name: "fig5-merged", description: "the suffix presentation's HDA, counter-free" },
    CorpusEntry { name: "prop31", description: "[a∥a]* is first-order but its word trace (aa)* is not" },
    CorpusEntry { name: "p2n", description: "the alternating pomsets P_2n and their formula" },
];

pub fn entries() -> &'static [CorpusEntry] {
    ENTRIES
}

/// Runs the checks of one entry. Returns the report when all pass.
pub fn run(name: &str) -> Result<CorpusReport, CorpusError> {
    let checks = match name {
        "fig1" => {
            let glued = super::fig1_left().glue(&super::fig1_right());
            vec![(
                "left ∗ right ≅ result",
                glued.is_ok_and(|g| g.is_isomorphic(&super::fig1_result())),
            )]
        }
        "fig2" => {
            let x = super::fig2_hda();
            let p = super::fig3_pomset();
            vec![
                ("24 cells of dimension ≤ 2", x.len() == 24 && x.dimension() == 2),
                ("accepts the path's pomset", x.accepts(&p)),
                ("ST-automaton on all cells", StAutomaton::from_hda(&x).len() == 24),
            ]
        }
        "fig3" => {
            let p = super::fig3_pomset();
            let w = p.st_decompose_sparse();
            vec![
                ("six letters", w.len() == 6),
                ("sparse", w.is_sparse()),
                ("glue inverts the decomposition", w.glue().is_isomorphic(&p)),
            ]
        }
        "fig5-presentation" => {
            let m = super::fig5a_presentation();
            vec![
                ("module laws on words of ≤ 3 letters", m.validate(3).is_valid()),
                ("counter-free", m.is_counter_free()),
            ]
        }
        "fig5-counter" => {
            let x = coherent_closure(&super::fig5a_presentation()).and_then(|c| presentation_to_hda(&c));
            let period = x.as_ref().ok().and_then(|x| x.counter_witness()).map(|w| w.witness.period);
            vec![
                ("isomorphic to the stored HDA", x.as_ref().is_ok_and(|x| x.is_isomorphic(&super::fig5b_hda()))),
                ("counter of period 2", period == Some(2)),
            ]
        }
        "fig5-merged" => {
            let x = super::fig5b_hda();
            let s = suffix_presentation(&x);
            let y = coherent_closure(&s.presentation).and_then(|c| presentation_to_hda(&c));
            let same = |n| match (&y, x.enumerate_language(n)) {
                (Ok(y), Ok(l)) => y.enumerate_language(n).is_ok_and(|k| k == l),
                _ => false,
            };
            vec![
                ("isomorphic to the stored HDA", y.as_ref().is_ok_and(|y| y.is_isomorphic(&super::fig5_merged_hda()))),
                ("counter-free", y.as_ref().is_ok_and(|y| y.is_counter_free())),
                ("same language up to 4 events", same(4)),
            ]
        }
        "prop31" => {
            let phi = prop31();
            vec![
                ("[a∥a]ⁿ satisfies the formula", (0..4).all(|n| phi.satisfies(&prop31_member(n)) == Ok(true))),
                ("a* is counter-free", super::word_a_star().is_counter_free()),
                ("(aa)* has a counter", !super::word_aa_star().is_counter_free()),
            ]
        }
        "p2n" => {
            let alphabet = parse_alphabet("a");
            let models = FoLanguage::new(&alphabet, 6, 2).source(Conclist::empty()).models(&p2n_family());
            let expected: PomsetSet = (0..4).map(p2n).collect();
            vec![(
                "models up to 6 events are P_0 … P_6",
                models.is_ok_and(|m| m.into_iter().collect::<PomsetSet>() == expected),
            )]
        }
        _ => return Err(CorpusError::Unknown(name.into())),
    };
    let report = CorpusReport {
        entry: name.into(),
        checks: checks.into_iter().map(|(c, ok)| (c.to_string(), ok)).collect(),
    };
    match report.checks.iter().find(|c| !c.1) {
        Some((check, _)) => Err(CorpusError::CorpusMismatch { entry: name.into(), check: check.clone() }),
        None => Ok(report),
    }
}
