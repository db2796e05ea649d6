//! Concrete syntax, loosest first: `->` (right associative), `|`, `&`,
//! then prefix `!` and quantifiers, which extend as far right as possible.
//!
//! ```text
//! forall x. a(x) & exists! y. x || y
//! exists x y. x < y & !S(x) -> x ~> y
//! ```
//!
//! `S(x)` and `T(x)` test interface membership, any other `name(x)` tests
//! the label. Unicode `∀ ∃ ¬ ∧ ∨ → ⇢ ∥` are accepted as well.

use thiserror::Error;

use super::Formula;
use crate::ipomset::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Par,
    Implies,
    Less,
    Dashed,
    Equal,
    Forall,
    Exists,
    Unique,
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_alphanumeric() || c == '_' || c == '\'' {
                    word.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" if it.peek().map(|p| p.1) == Some('!') => {
                    it.next();
                    Tok::Unique
                }
                "exists" => Tok::Exists,
                _ => Tok::Ident(word),
            };
            out.push((i, tok));
            continue;
        }
        it.next();
        let next = it.peek().map(|p| p.1);
        let tok = match (c, next) {
            ('|', Some('|')) => {
                it.next();
                Tok::Par
            }
            ('-', Some('>')) => {
                it.next();
                Tok::Implies
            }
            ('~', Some('>')) => {
                it.next();
                Tok::Dashed
            }
            ('∃', Some('!')) => {
                it.next();
                Tok::Unique
            }
            ('(', _) => Tok::LParen,
            (')', _) => Tok::RParen,
            (',', _) => Tok::Comma,
            ('.', _) => Tok::Dot,
            ('!' | '¬', _) => Tok::Not,
            ('&' | '∧', _) => Tok::And,
            ('|' | '∨', _) => Tok::Or,
            ('∥', _) => Tok::Par,
            ('→', _) => Tok::Implies,
            ('<', _) => Tok::Less,
            ('⇢', _) => Tok::Dashed,
            ('=', _) => Tok::Equal,
            ('∀', _) => Tok::Forall,
            ('∃', _) => Tok::Exists,
            _ => return Err(SyntaxError { offset: i, message: format!("unexpected character `{c}`") }),
        };
        out.push((i, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

pub fn parse(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let f = p.implication()?;
    p.expect(Tok::End, "end of input")?;
    Ok(f)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), SyntaxError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.error("expected a variable"),
        }
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(lhs.implies(self.implication()?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = f.or(self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Forall | Tok::Exists | Tok::Unique => {
                let q = self.bump();
                let mut vars = vec![self.ident()?];
                loop {
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                            vars.push(self.ident()?);
                        }
                        Tok::Ident(_) => vars.push(self.ident()?),
                        _ => break,
                    }
                }
                self.expect(Tok::Dot, "`.` after quantified variables")?;
                let mut body = self.implication()?;
                for v in vars.into_iter().rev() {
                    body = match q {
                        Tok::Forall => Formula::Forall(v, Box::new(body)),
                        Tok::Exists => Formula::Exists(v, Box::new(body)),
                        _ => Formula::ExistsUnique(v, Box::new(body)),
                    };
                }
                Ok(body)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) if name == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(name) if name == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(match name.as_str() {
                        "S" => Formula::Source(x),
                        "T" => Formula::Target(x),
                        _ => Formula::Label(Label::new(&name), x),
                    });
                }
                let make: fn(String, String) -> Formula = match self.peek() {
                    Tok::Less => Formula::Prec,
                    Tok::Dashed => Formula::EventOrder,
                    Tok::Equal => Formula::Eq,
                    Tok::Par => Formula::Concurrent,
                    _ => return self.error("expected `<`, `~>`, `=`, `||` or `(`"),
                };
                self.bump();
                Ok(make(name, self.ident()?))
            }
            _ => self.error("expected a formula"),
        }
    }
}
