use std::collections::HashMap;

use super::lexer::{tokenize, Pos, Spanned, Tok};
use super::ParseError;
use crate::logic::{Formula, Term};

const KEYWORDS: [&str; 2] = ["forall", "exists"];

/// Symbol arities seen so far; shared by every formula of one file.
#[derive(Debug, Default, Clone)]
pub(crate) struct Signature {
    predicates: HashMap<String, usize>,
    functions: HashMap<String, usize>,
}

impl Signature {
    fn check(
        table: &mut HashMap<String, usize>,
        name: &str,
        arity: usize,
        pos: Pos,
    ) -> Result<(), ParseError> {
        match table.get(name) {
            Some(&expected) if expected != arity => Err(ParseError::Arity {
                line: pos.line,
                col: pos.col,
                symbol: name.to_string(),
                expected,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                table.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }
}

pub(crate) struct Parser<'s> {
    toks: Vec<Spanned>,
    at: usize,
    end: Pos,
    pub sig: &'s mut Signature,
}

impl<'s> Parser<'s> {
    pub fn new(src: &str, first_line: usize, sig: &'s mut Signature) -> Result<Self, ParseError> {
        let toks = tokenize(src, first_line)?;
        let lines = src.lines().count().max(1);
        let end = Pos {
            line: first_line + lines - 1,
            col: src.lines().last().map_or(1, |l| l.chars().count() + 1),
        };
        Ok(Parser {
            toks,
            at: 0,
            end,
            sig,
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|s| &s.tok)
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |s| s.pos)
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|s| s.tok.clone());
        self.at += 1;
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.pos(), msg)
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    pub fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        self.imp()
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.quantified()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.quantified()?);
        }
        Ok(f)
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::LParen) {
            let f = self.formula()?;
            self.expect(&Tok::RParen)?;
            return Ok(f);
        }
        for kw in KEYWORDS {
            if self.peek_keyword(kw) {
                self.at += 1;
                let x = self.ident()?;
                self.expect(&Tok::Dot)?;
                let body = self.imp()?;
                return Ok(if kw == "forall" {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                });
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        let name = self.ident().map_err(|_| self.unexpected("formula"))?;
        let args = if self.peek() == Some(&Tok::LParen) {
            self.args()?
        } else {
            Vec::new()
        };
        Signature::check(&mut self.sig.predicates, &name, args.len(), pos)?;
        Ok(Formula::Atom(name, args))
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(&Tok::LParen)?;
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(&Tok::RParen) {
                return Ok(args);
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.unexpected("`,` or `)`"));
            }
        }
    }

    /// A bare identifier is a variable; `c()` is a constant.
    pub fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        let name = self.ident().map_err(|_| self.unexpected("term"))?;
        if self.peek() != Some(&Tok::LParen) {
            return Ok(Term::Var(name));
        }
        let args = self.args()?;
        Signature::check(&mut self.sig.functions, &name, args.len(), pos)?;
        Ok(Term::App(name, args))
    }
}
