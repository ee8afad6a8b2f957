//! Recursive-descent parser for formulas and sequents.
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "(" formula ")" | "bot" | "top" | atom
//! atom    := [a-z][a-z0-9_]*
//! sequent := list? ("|-" | "|-m") list?
//! list    := formula ("," formula)*
//! ```
//!
//! `|-m` is the minimal turnstile only when it is not followed by an
//! identifier character, so `a |-mb` reads as `a |- mb`.

use std::str::FromStr;

use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::sequent::{Sequent, SequentKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Comma,
    Turnstile(SequentKind),
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("'{s}'"),
            Token::Not => "'~'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Implies => "'->'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Comma => "','".into(),
            Token::Turnstile(k) => format!("'{}'", k.turnstile()),
            Token::End => "end of input".into(),
        }
    }
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_'
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => {
                i += 1;
                Token::Not
            }
            b'&' => {
                i += 1;
                Token::And
            }
            b'(' => {
                i += 1;
                Token::LParen
            }
            b')' => {
                i += 1;
                Token::RParen
            }
            b',' => {
                i += 1;
                Token::Comma
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Token::Implies
            }
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 2;
                if bytes.get(i) == Some(&b'm') && !bytes.get(i + 1).is_some_and(|&c| is_ident_char(c)) {
                    i += 1;
                    Token::Turnstile(SequentKind::Minimal)
                } else {
                    Token::Turnstile(SequentKind::Classical)
                }
            }
            b'|' => {
                i += 1;
                Token::Or
            }
            c if c.is_ascii_lowercase() => {
                while i < bytes.len() && is_ident_char(bytes[i]) {
                    i += 1;
                }
                Token::Ident(text[start..i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError { position: start, message: format!("unexpected character '{ch}'") });
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            position: self.offset(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Token::Implies {
            self.bump();
            let right = self.formula()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Token::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::LParen => {
                self.bump();
                let f = self.formula()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(f)
            }
            Token::Ident(name) => {
                self.bump();
                Ok(match name.as_str() {
                    "bot" => Formula::Bottom,
                    "top" => Formula::Top,
                    _ => Formula::Atom(Atom::new(&name)),
                })
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn list(&mut self) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Token::Turnstile(_) | Token::End) {
            return Ok(out);
        }
        out.push(self.formula()?);
        while *self.peek() == Token::Comma {
            self.bump();
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Token::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let antecedent = p.list()?;
    let kind = match p.peek() {
        Token::Turnstile(k) => *k,
        _ => return Err(p.error("',' or a turnstile")),
    };
    p.bump();
    let succedent = p.list()?;
    p.expect_end()?;
    Ok(Sequent::new(antecedent, succedent, kind))
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_formula("a & ~b").unwrap(), Formula::and(a(), Formula::not(b())));
        assert_eq!(
            parse_formula("a -> (b | bot)").unwrap(),
            Formula::implies(a(), Formula::or(b(), Formula::Bottom))
        );
        let err = parse_formula("a & | b").unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn associativity() {
        assert_eq!(
            parse_formula("a -> b -> a").unwrap(),
            Formula::implies(a(), Formula::implies(b(), a()))
        );
        assert_eq!(parse_formula("a | b | a").unwrap(), Formula::or(Formula::or(a(), b()), a()));
        assert_eq!(
            parse_formula("a | b & a").unwrap(),
            Formula::or(a(), Formula::and(b(), a()))
        );
        assert_eq!(parse_formula("~~a").unwrap(), Formula::not(Formula::not(a())));
    }

    #[test]
    fn sequent_examples() {
        let s = parse_sequent("a | b |-m ~a | ~b").unwrap();
        assert_eq!(
            s,
            Sequent::minimal(
                [Formula::or(a(), b())],
                [Formula::or(Formula::not(a()), Formula::not(b()))]
            )
        );
        let s = parse_sequent("|-m ~a, ~b").unwrap();
        assert_eq!(s, Sequent::minimal([], [Formula::not(a()), Formula::not(b())]));
        let s = parse_sequent("a, a |- a").unwrap();
        assert_eq!(s.antecedent.len(), 1);
        assert_eq!(s.kind, SequentKind::Classical);
        assert_eq!(parse_sequent("|-").unwrap(), Sequent::classical([], []));
    }

    #[test]
    fn turnstile_versus_atom_named_m() {
        let s = parse_sequent("a |- m").unwrap();
        assert_eq!(s, Sequent::classical([a()], [Formula::atom("m")]));
        let s = parse_sequent("a |-mb").unwrap();
        assert_eq!(s, Sequent::classical([a()], [Formula::atom("mb")]));
        let s = parse_sequent("a |-m b").unwrap();
        assert!(s.is_minimal());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "a &", "(a", "a b", "A", "a ->", "a |- b |- c", "a,", "a $ b"] {
            assert!(parse_sequent(bad).is_err(), "{bad}");
            assert!(parse_formula(bad).is_err(), "{bad}");
        }
        assert!(parse_sequent("a, b").is_err());
    }

    #[test]
    fn sequent_printing_round_trips() {
        for text in ["a | b |-m ~a | ~b", "|-m ~a, ~b", "a, b -> a |-", "|-"] {
            let s = parse_sequent(text).unwrap();
            assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
        }
    }
}
