//! First-order logic over pomsets with interfaces: variables range over
//! events, with label, interface, precedence and event-order atoms.

mod builtins;
mod eval;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::ipomset::{Conclist, Ipomset, IpomsetError, Label, PomsetEnumerator};
use crate::par::Execution;

pub use builtins::{builtin, complement_p2n, p2n, p2n_family, prop31, prop31_member, BUILTINS};
pub use parse::{parse, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Label(Label, String),
    Source(String),
    Target(String),
    Prec(String, String),
    EventOrder(String, String),
    Eq(String, String),
    Concurrent(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    ExistsUnique(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("no event `{0}` in the pomset")]
    UnknownEvent(String),
    #[error(transparent)]
    Enumeration(#[from] IpomsetError),
}

impl Formula {
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    /// Variables occurring free, in order of first occurrence.
    pub fn free_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let mut note = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Label(_, x) | Formula::Source(x) | Formula::Target(x) => note(x, bound),
            Formula::Prec(x, y)
            | Formula::EventOrder(x, y)
            | Formula::Eq(x, y)
            | Formula::Concurrent(x, y) => {
                note(x, bound);
                note(y, bound);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, a) | Formula::ExistsUnique(v, a) | Formula::Forall(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Whether the closed formula holds in `p`.
    pub fn satisfies(&self, p: &Ipomset) -> Result<bool, FoError> {
        self.satisfies_with(p, &[])
    }

    /// Evaluation with free variables bound to events, given by index.
    pub fn satisfies_with(&self, p: &Ipomset, env: &[(&str, usize)]) -> Result<bool, FoError> {
        let program = eval::compile(self, env.iter().map(|(v, _)| *v))?;
        let slots: Vec<usize> = env.iter().map(|&(_, e)| e).collect();
        if let Some(&(v, _)) = env.iter().find(|&&(_, e)| e >= p.len()) {
            return Err(FoError::UnknownEvent(v.into()));
        }
        Ok(program.eval(p, slots))
    }
}

/// Prints in the concrete syntax accepted by [`parse`], fully bracketed
/// around binary connectives.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Label(a, x) => write!(f, "{a}({x})"),
            Formula::Source(x) => write!(f, "S({x})"),
            Formula::Target(x) => write!(f, "T({x})"),
            Formula::Prec(x, y) => write!(f, "{x} < {y}"),
            Formula::EventOrder(x, y) => write!(f, "{x} ~> {y}"),
            Formula::Eq(x, y) => write!(f, "{x} = {y}"),
            Formula::Concurrent(x, y) => write!(f, "{x} || {y}"),
            Formula::Not(a) => write!(f, "!{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Exists(v, a) => write!(f, "(exists {v}. {a})"),
            Formula::ExistsUnique(v, a) => write!(f, "(exists! {v}. {a})"),
            Formula::Forall(v, a) => write!(f, "(forall {v}. {a})"),
        }
    }
}

/// Models of a closed formula among pomsets over `alphabet` with at most
/// `max_events` events and dimension at most `max_dim`.
#[derive(Clone, Debug)]
pub struct FoLanguage {
    enumerator: PomsetEnumerator,
}

impl FoLanguage {
    pub fn new(alphabet: &[Label], max_events: usize, max_dim: usize) -> Self {
        FoLanguage {
            enumerator: PomsetEnumerator::new(alphabet).max_events(max_events).max_dim(max_dim),
        }
    }

    pub fn source(mut self, s: Conclist) -> Self {
        self.enumerator = self.enumerator.source(s);
        self
    }

    pub fn bound(mut self, b: usize) -> Self {
        self.enumerator = self.enumerator.bound(b);
        self
    }

    pub fn execution(mut self, exec: Execution) -> Self {
        self.enumerator = self.enumerator.execution(exec);
        self
    }

    pub fn models(&self, phi: &Formula) -> Result<Vec<Ipomset>, FoError> {
        let program = eval::compile(phi, std::iter::empty())?;
        Ok(self.enumerator.filter(|p| program.eval(p, Vec::new()))?)
    }
}

/// Shorthand for [`FoLanguage::models`] with the default bound.
pub fn fo_language(
    phi: &Formula,
    alphabet: &[Label],
    max_events: usize,
    max_dim: usize,
) -> Result<Vec<Ipomset>, FoError> {
    FoLanguage::new(alphabet, max_events, max_dim).models(phi)
}
