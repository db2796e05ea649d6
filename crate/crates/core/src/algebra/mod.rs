//! Finite recognizers of pomset languages: categories of relations,
//! syntactic categories, presentations of modules, and the constructions
//! between presentations and HDAs.

mod category;
mod coherent;
mod presentation;
mod suffix;
mod syntactic;
mod to_hda;
mod transition;

#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::hda::HdaError;
use crate::ipomset::StLetter;

pub use category::{
    AperiodicityReport, CategoryLawViolation, CategoryWitness, FiniteCategory, MorphismInfo,
};
pub use coherent::coherent_closure;
pub use presentation::{
    ActionDoc, ElemId, Element, ElementDoc, LowerDoc, Presentation, PresentationDoc,
    ValidationReport,
};
pub use suffix::{suffix_presentation, SuffixPresentation};
pub use syntactic::{syntactic_category, SyntacticCategory};
pub use to_hda::{presentation_to_hda, presentation_to_hda_untrimmed};
pub use transition::{transition_category, TransitionCategory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element id `{0}`")]
    UnknownElement(String),
    #[error("action {element} · {letter} = {to} is not typed by the element interfaces")]
    IllTypedAction { element: String, letter: StLetter, to: String },
    #[error("initial element `{0}` must have equal source and target")]
    IllTypedInitial(String),
    #[error("lower face of `{0}` has the wrong type")]
    IllTypedLower(String),
    #[error("element `{0}` has a non-empty source interface")]
    SourceNotEmpty(String),
    #[error("presentation is not coherent: {0}")]
    NotCoherent(String),
    #[error("no action defined for {element}{}", letter.as_ref().map(|l| format!(" · {l}")).unwrap_or_default())]
    ActionUndefined { element: String, letter: Option<StLetter> },
    #[error(transparent)]
    Hda(#[from] HdaError),
}
