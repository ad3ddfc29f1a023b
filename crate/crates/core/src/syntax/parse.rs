//! Recursive-descent parser for the term grammar:
//!
//! ```text
//! term := lam | app
//! lam  := ("λ" | "\") ident+ "." term
//! app  := atom atom*
//! atom := ident | "(" term ")"
//! ```
//!
//! Identifiers match `[a-zA-Z_][a-zA-Z0-9_']*`. With `allow_constants`,
//! identifiers naming standard-library combinators are expanded to their
//! defining terms at parse time.

use super::Term;
use crate::combinatory;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Lambda,
    Dot,
    LParen,
    RParen,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            'λ' | '\\' => {
                chars.next();
                tokens.push((pos, Token::Lambda));
            }
            '.' => {
                chars.next();
                tokens.push((pos, Token::Dot));
            }
            '(' => {
                chars.next();
                tokens.push((pos, Token::LParen));
            }
            ')' => {
                chars.next();
                tokens.push((pos, Token::RParen));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((pos, Token::Ident(ident)));
            }
            _ => {
                return Err(ParseError {
                    pos,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
    allow_constants: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.bump();
            Ok(())
        } else {
            Err(ParseError {
                pos: self.pos(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(&Token::Lambda) {
            self.lam()
        } else {
            self.app()
        }
    }

    fn lam(&mut self) -> Result<Term, ParseError> {
        self.bump(); // the lambda sign
        let mut binders = Vec::new();
        while let Some(Token::Ident(_)) = self.peek() {
            if let Some(Token::Ident(name)) = self.bump() {
                binders.push(name);
            }
        }
        if binders.is_empty() {
            return Err(ParseError {
                pos: self.pos(),
                msg: "expected binder after λ".to_string(),
            });
        }
        self.expect(Token::Dot, "'.' after binders")?;
        if self.peek().is_none() {
            return Err(ParseError {
                pos: self.pos(),
                msg: "missing abstraction body".to_string(),
            });
        }
        let body = self.term()?;
        Ok(binders
            .into_iter()
            .rev()
            .fold(body, |acc, binder| Term::lam(binder, acc)))
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut term = self.atom()?.ok_or_else(|| ParseError {
            pos: self.pos(),
            msg: "expected a term".to_string(),
        })?;
        loop {
            // An abstraction after the atoms extends maximally right:
            // x λy.y is not grammatical, but inside parens it is the
            // caller's job; here only atoms continue an application.
            match self.atom()? {
                Some(arg) => term = Term::app(term, arg),
                None => return Ok(term),
            }
        }
    }

    fn atom(&mut self) -> Result<Option<Term>, ParseError> {
        match self.peek() {
            Some(Token::Ident(_)) => {
                let pos = self.pos();
                let Some(Token::Ident(name)) = self.bump() else {
                    unreachable!()
                };
                if self.allow_constants {
                    if let Ok(def) = combinatory::lib_lookup(&name) {
                        return Ok(Some(def));
                    }
                }
                let _ = pos;
                Ok(Some(Term::Var(name)))
            }
            Some(Token::LParen) => {
                let open_pos = self.pos();
                self.bump();
                let inner = self.term()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(ParseError {
                        pos: open_pos,
                        msg: "unbalanced '('".to_string(),
                    });
                }
                self.bump();
                Ok(Some(inner))
            }
            _ => Ok(None),
        }
    }
}

/// Parses a term. With `allow_constants`, identifiers that name standard
/// combinators (S, K, I, Theta, ...) are replaced by their definitions.
pub fn parse(text: &str, allow_constants: bool) -> Result<Term, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError {
            pos: 0,
            msg: "empty input".to_string(),
        });
    }
    let end = text.chars().count();
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end,
        allow_constants,
    };
    let term = parser.term()?;
    if parser.peek().is_some() {
        return Err(ParseError {
            pos: parser.pos(),
            msg: "unexpected trailing input".to_string(),
        });
    }
    Ok(term)
}
