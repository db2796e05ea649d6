use thiserror::Error;

use super::Conclist;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IpomsetError {
    #[error("pomset has {0} events; at most 64 are supported")]
    TooManyEvents(usize),
    #[error("duplicate event id `{0}`")]
    DuplicateEvent(String),
    #[error("unknown event id `{0}`")]
    UnknownEvent(String),
    #[error("label `{0}` is not in the declared alphabet")]
    UnknownLabel(String),
    #[error("precedence contains a cycle through `{0}`")]
    PrecedenceCyclic(String),
    #[error("precedence is not an interval order: {a} < {b} and {c} < {d} form a 2+2")]
    NotIntervalOrder {
        a: String,
        b: String,
        c: String,
        d: String,
    },
    #[error("events `{0}` and `{1}` are concurrent but not related by the event order")]
    EventOrderIncomplete(String, String),
    #[error("event order contains a cycle through `{0}`")]
    EventOrderCyclic(String),
    #[error("interface event `{event}` is not {expected}")]
    InterfaceNotExtremal {
        event: String,
        expected: &'static str,
    },
    #[error("interface mismatch: {left} does not match {right}")]
    InterfaceMismatch { left: Conclist, right: Conclist },
    #[error("events to remove are not all in the target interface")]
    NotInTargetInterface,
    #[error("subset {subset:?} out of range for a conclist of length {len}")]
    SubsetOutOfRange { subset: Vec<usize>, len: usize },
    #[error("enumeration bound {requested} exceeds the configured maximum {max}")]
    BoundTooLarge { requested: usize, max: usize },
}
