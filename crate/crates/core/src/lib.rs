//! Language theory of higher-dimensional automata: interval pomsets with
//! interfaces, HDAs, ST-automata, finite recognizers and first-order logic.

pub mod algebra;
pub mod corpus;
pub mod dot;
pub mod fo;
pub mod hda;
pub mod ipomset;
pub mod par;
pub mod relation;
pub mod st;

pub use ipomset::{Conclist, Ipomset, IpomsetError, Label, StLetter, StSequence, Subset};
pub use par::Execution;
