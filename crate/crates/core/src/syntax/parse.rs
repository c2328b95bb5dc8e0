//! Recursive-descent parser shared by the modal and first-order grammars.
//!
//! Precedence, tightest first: prefix operators (`~`, `[]`, `<>`), `&`, `|`,
//! `->` (right associative), `<->`. A quantifier body extends as far to the
//! right as possible.

use thiserror::Error;

use super::{ArityError, FolFormula, ModalFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Arity(#[from] ArityError),
}

fn syntax<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Dot,
    Box,
    Dia,
    Caret,
    Nat(usize),
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    Eq,
    Neq,
    Bang,
    Question,
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let rest = &text[i..];
        let (tok, len) = if c.is_ascii_whitespace() {
            i += 1;
            continue;
        } else if rest.starts_with("[]") {
            (Tok::Box, 2)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("<>") {
            (Tok::Dia, 2)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("!=") {
            (Tok::Neq, 2)
        } else {
            match c {
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b',' => (Tok::Comma, 1),
                b'.' => (Tok::Dot, 1),
                b'^' => (Tok::Caret, 1),
                b'~' => (Tok::Tilde, 1),
                b'&' => (Tok::Amp, 1),
                b'|' => (Tok::Bar, 1),
                b'=' => (Tok::Eq, 1),
                b'!' => (Tok::Bang, 1),
                b'?' => (Tok::Question, 1),
                b'0'..=b'9' => {
                    let len = rest.bytes().take_while(u8::is_ascii_digit).count();
                    match rest[..len].parse() {
                        Ok(n) => (Tok::Nat(n), len),
                        Err(_) => return syntax(start, "number out of range"),
                    }
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let len = rest
                        .bytes()
                        .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_' || *b == b'\'')
                        .count();
                    (Tok::Ident(rest[..len].to_string()), len)
                }
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return syntax(start, format!("unexpected character `{ch}`"));
                }
            }
        };
        out.push((tok, start));
        i += len;
    }
    Ok(out)
}

/// The operations the parser needs from a target AST.
trait Target: Sized + Clone {
    const MODAL: bool;
    fn atom(letter: String, args: Vec<String>) -> Self;
    fn equality(a: String, b: String) -> Self;
    fn bot() -> Self;
    fn not(f: Self) -> Self;
    fn and(a: Self, b: Self) -> Self;
    fn forall(v: String, f: Self) -> Self;
    fn nec(f: Self) -> Self;

    fn or(a: Self, b: Self) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }
    fn implies(a: Self, b: Self) -> Self {
        Self::not(Self::and(a, Self::not(b)))
    }
    fn exists(v: String, f: Self) -> Self {
        Self::not(Self::forall(v, Self::not(f)))
    }
}

impl Target for ModalFormula {
    const MODAL: bool = true;
    fn atom(letter: String, args: Vec<String>) -> Self {
        ModalFormula::Atom { letter, args }
    }
    fn equality(_: String, _: String) -> Self {
        unreachable!("equality is rejected before construction in modal mode")
    }
    fn bot() -> Self {
        ModalFormula::Falsum
    }
    fn not(f: Self) -> Self {
        ModalFormula::not(f)
    }
    fn and(a: Self, b: Self) -> Self {
        ModalFormula::and(a, b)
    }
    fn forall(v: String, f: Self) -> Self {
        ModalFormula::forall(v, f)
    }
    fn nec(f: Self) -> Self {
        ModalFormula::nec(f)
    }
}

impl Target for FolFormula {
    const MODAL: bool = false;
    fn atom(letter: String, args: Vec<String>) -> Self {
        FolFormula::Rel { letter, args }
    }
    fn equality(a: String, b: String) -> Self {
        FolFormula::Eq(a, b)
    }
    fn bot() -> Self {
        FolFormula::Falsum
    }
    fn not(f: Self) -> Self {
        FolFormula::not(f)
    }
    fn and(a: Self, b: Self) -> Self {
        FolFormula::and(a, b)
    }
    fn forall(v: String, f: Self) -> Self {
        FolFormula::forall(v, f)
    }
    fn nec(_: Self) -> Self {
        unreachable!("modalities are rejected before construction in first-order mode")
    }
}

const KEYWORDS: [&str; 4] = ["forall", "exists", "false", "true"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    modal: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            syntax(self.offset(), format!("expected {what}"))
        }
    }

    fn check_ident(&self, name: &str, at: usize) -> Result<(), ParseError> {
        if KEYWORDS.contains(&name) {
            return syntax(at, format!("keyword `{name}` used as identifier"));
        }
        if self.modal && (name.starts_with('_') || name.contains('\'')) {
            return syntax(
                at,
                format!("identifier `{name}` uses a reserved character (`_` prefix or `'`)"),
            );
        }
        Ok(())
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Ident(name)) => {
                self.check_ident(&name, at)?;
                Ok(name)
            }
            _ => syntax(at, "expected a variable"),
        }
    }

    fn formula<T: Target>(&mut self) -> Result<T, ParseError> {
        let lhs = self.implication::<T>()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula::<T>()?;
            return Ok(iff_build::<T>(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication<T: Target>(&mut self) -> Result<T, ParseError> {
        let lhs = self.disjunction::<T>()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication::<T>()?;
            return Ok(T::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction<T: Target>(&mut self) -> Result<T, ParseError> {
        let mut acc = self.conjunction::<T>()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.conjunction::<T>()?;
            acc = T::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction<T: Target>(&mut self) -> Result<T, ParseError> {
        let mut acc = self.unary::<T>()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary::<T>()?;
            acc = T::and(acc, rhs);
        }
        Ok(acc)
    }

    fn repetitions(&mut self) -> Result<usize, ParseError> {
        if !self.eat(&Tok::Caret) {
            return Ok(1);
        }
        let at = self.offset();
        match self.bump() {
            Some(Tok::Nat(n)) => Ok(n),
            _ => syntax(at, "expected a repetition count after `^`"),
        }
    }

    fn unary<T: Target>(&mut self) -> Result<T, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Tilde) => Ok(T::not(self.unary::<T>()?)),
            Some(Tok::Box) | Some(Tok::Dia) if !self.modal => syntax(
                at,
                "modal operators are not allowed in first-order formulas",
            ),
            Some(Tok::Box) => {
                let n = self.repetitions()?;
                let body = self.unary::<T>()?;
                Ok((0..n).fold(body, |f, _| T::nec(f)))
            }
            Some(Tok::Dia) => {
                let n = self.repetitions()?;
                let body = self.unary::<T>()?;
                Ok((0..n).fold(body, |f, _| T::not(T::nec(T::not(f)))))
            }
            Some(Tok::LParen) => {
                let f = self.formula::<T>()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Bang) | Some(Tok::Question) if self.modal => {
                syntax(at, "`!`/`?` quantifier aliases are first-order only")
            }
            Some(Tok::Bang) => self.quantified::<T>(true),
            Some(Tok::Question) => self.quantified::<T>(false),
            Some(Tok::Ident(word)) => match word.as_str() {
                "forall" => self.quantified::<T>(true),
                "exists" => self.quantified::<T>(false),
                "false" => Ok(T::bot()),
                "true" => Ok(T::not(T::bot())),
                _ => self.atom::<T>(word, at),
            },
            Some(_) => syntax(at, "expected a formula"),
            None => syntax(at, "unexpected end of input"),
        }
    }

    fn quantified<T: Target>(&mut self, universal: bool) -> Result<T, ParseError> {
        let var = self.variable()?;
        self.expect(&Tok::Dot, "`.` after quantified variable")?;
        let body = self.formula::<T>()?;
        Ok(if universal {
            T::forall(var, body)
        } else {
            T::exists(var, body)
        })
    }

    fn atom<T: Target>(&mut self, word: String, at: usize) -> Result<T, ParseError> {
        self.check_ident(&word, at)?;
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let mut args = Vec::new();
                if !self.eat(&Tok::RParen) {
                    loop {
                        args.push(self.variable()?);
                        if self.eat(&Tok::RParen) {
                            break;
                        }
                        self.expect(&Tok::Comma, "`,` or `)`")?;
                    }
                }
                Ok(T::atom(word, args))
            }
            Some(Tok::Eq) | Some(Tok::Neq) => {
                if self.modal {
                    return syntax(self.offset(), "equality is not part of the modal language");
                }
                let negated = self.bump() == Some(Tok::Neq);
                let rhs = self.variable()?;
                let eq = T::equality(word, rhs);
                Ok(if negated { T::not(eq) } else { eq })
            }
            _ => Ok(T::atom(word, Vec::new())),
        }
    }
}

fn iff_build<T: Target>(a: T, b: T) -> T {
    T::and(T::implies(a.clone(), b.clone()), T::implies(b, a))
}

fn run<T: Target>(text: &str) -> Result<T, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        modal: T::MODAL,
    };
    let f = p.formula::<T>()?;
    if p.pos < p.toks.len() {
        return syntax(p.offset(), "trailing input");
    }
    Ok(f)
}

/// Parses a predicate modal formula.
pub fn parse_modal(text: &str) -> Result<ModalFormula, ParseError> {
    let f = run::<ModalFormula>(text)?;
    f.letters()?;
    Ok(f)
}

/// Parses a first-order formula; `!` and `?` are accepted for `forall` and
/// `exists`, `x != y` abbreviates `~x = y`.
pub fn parse_fol(text: &str) -> Result<FolFormula, ParseError> {
    let f = run::<FolFormula>(text)?;
    f.letters()?;
    Ok(f)
}
