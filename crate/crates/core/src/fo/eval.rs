use super::{FoError, Formula};
use crate::ipomset::{Ipomset, Label};

/// A formula with variables resolved to slots of an assignment stack.
#[derive(Clone, Debug)]
pub(super) enum Program {
    Const(bool),
    Label(Label, usize),
    Source(usize),
    Target(usize),
    Prec(usize, usize),
    EventOrder(usize, usize),
    Eq(usize, usize),
    Concurrent(usize, usize),
    Not(Box<Program>),
    And(Box<Program>, Box<Program>),
    Or(Box<Program>, Box<Program>),
    Implies(Box<Program>, Box<Program>),
    Exists(Box<Program>),
    Unique(Box<Program>),
    Forall(Box<Program>),
}

pub(super) fn compile<'a>(
    f: &Formula,
    free: impl Iterator<Item = &'a str>,
) -> Result<Program, FoError> {
    let mut scope: Vec<String> = free.map(String::from).collect();
    go(f, &mut scope)
}

fn slot(scope: &[String], v: &str) -> Result<usize, FoError> {
    scope.iter().rposition(|s| s == v).ok_or_else(|| FoError::UnboundVariable(v.into()))
}

fn go(f: &Formula, scope: &mut Vec<String>) -> Result<Program, FoError> {
    let two = |x: &str, y: &str| Ok::<_, FoError>((slot(scope, x)?, slot(scope, y)?));
    Ok(match f {
        Formula::True => Program::Const(true),
        Formula::False => Program::Const(false),
        Formula::Label(a, x) => Program::Label(a.clone(), slot(scope, x)?),
        Formula::Source(x) => Program::Source(slot(scope, x)?),
        Formula::Target(x) => Program::Target(slot(scope, x)?),
        Formula::Prec(x, y) => {
            let (x, y) = two(x, y)?;
            Program::Prec(x, y)
        }
        Formula::EventOrder(x, y) => {
            let (x, y) = two(x, y)?;
            Program::EventOrder(x, y)
        }
        Formula::Eq(x, y) => {
            let (x, y) = two(x, y)?;
            Program::Eq(x, y)
        }
        Formula::Concurrent(x, y) => {
            let (x, y) = two(x, y)?;
            Program::Concurrent(x, y)
        }
        Formula::Not(a) => Program::Not(Box::new(go(a, scope)?)),
        Formula::And(a, b) => Program::And(Box::new(go(a, scope)?), Box::new(go(b, scope)?)),
        Formula::Or(a, b) => Program::Or(Box::new(go(a, scope)?), Box::new(go(b, scope)?)),
        Formula::Implies(a, b) => {
            Program::Implies(Box::new(go(a, scope)?), Box::new(go(b, scope)?))
        }
        Formula::Exists(v, a) | Formula::ExistsUnique(v, a) | Formula::Forall(v, a) => {
            scope.push(v.clone());
            let body = Box::new(go(a, scope)?);
            scope.pop();
            match f {
                Formula::Exists(..) => Program::Exists(body),
                Formula::ExistsUnique(..) => Program::Unique(body),
                _ => Program::Forall(body),
            }
        }
    })
}

impl Program {
    pub(super) fn eval(&self, p: &Ipomset, mut env: Vec<usize>) -> bool {
        self.run(p, &mut env)
    }

    fn run(&self, p: &Ipomset, env: &mut Vec<usize>) -> bool {
        let ev = |i: &usize| env[*i];
        match self {
            Program::Const(b) => *b,
            Program::Label(a, x) => p.label(ev(x)) == a,
            Program::Source(x) => p.is_source(ev(x)),
            Program::Target(x) => p.is_target(ev(x)),
            Program::Prec(x, y) => p.precedes(ev(x), ev(y)),
            Program::EventOrder(x, y) => p.event_ordered(ev(x), ev(y)),
            Program::Eq(x, y) => ev(x) == ev(y),
            Program::Concurrent(x, y) => {
                let (x, y) = (ev(x), ev(y));
                !(p.precedes(x, y) || p.precedes(y, x) || x == y)
            }
            Program::Not(a) => !a.run(p, env),
            Program::And(a, b) => a.run(p, env) && b.run(p, env),
            Program::Or(a, b) => a.run(p, env) || b.run(p, env),
            Program::Implies(a, b) => !a.run(p, env) || b.run(p, env),
            Program::Exists(a) => (0..p.len()).any(|e| a.with(p, env, e)),
            Program::Forall(a) => (0..p.len()).all(|e| a.with(p, env, e)),
            // ∃v₁. φ(v₁) ∧ ¬∃v₂. (φ(v₂) ∧ ¬ v₂ = v₁)
            Program::Unique(a) => (0..p.len()).filter(|&e| a.with(p, env, e)).take(2).count() == 1,
        }
    }

    fn with(&self, p: &Ipomset, env: &mut Vec<usize>, e: usize) -> bool {
        env.push(e);
        let r = self.run(p, env);
        env.pop();
        r
    }
}
