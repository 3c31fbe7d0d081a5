//! Concrete syntax: formulas, theorem files, tactic scripts and derivation files.
//!
//! ```text
//! formula := imp ; imp := or ("->" imp)? ; or := and ("\/" and)* ;
//! and := qf ("/\" qf)* ;
//! qf := atom | "(" formula ")" | ("forall"|"exists") ident "." imp
//! atom := ident ("(" term ("," term)* ")")?
//! term := ident ("(" term ("," term)* ")")?
//! ```
//!
//! A bare identifier in term position is a variable; write `c()` for a
//! constant symbol.

mod files;
mod lexer;
mod parser;
mod render;

use thiserror::Error;

pub use files::{
    parse_derivation, parse_judgment, parse_script, parse_tactic, parse_theorem,
    render_derivation, render_derivation_json, render_script, render_tactic, render_theorem,
    Script, TheoremFile, CONTEXT_ALIAS,
};
pub use render::{
    render_formula, render_hypothesis, render_judgment, render_sequent, render_sequent_labeled,
    render_term, ContextAlias,
};

use crate::logic::{Formula, Term};
use lexer::Pos;
use parser::{Parser, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("arity error at {line}:{col}: `{symbol}` has {found} argument(s) here but {expected} elsewhere")]
    Arity {
        line: usize,
        col: usize,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown tactic `{name}` at {line}:{col}")]
    UnknownTactic { line: usize, col: usize, name: String },
    #[error("line {line}: duplicate label `{label}`")]
    DuplicateLabel { line: usize, label: String },
    #[error("line {line}: premise {premise} of derivation line {index} must name an earlier line")]
    BadIndex {
        line: usize,
        index: usize,
        premise: usize,
    },
}

impl ParseError {
    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: pos.line,
            col: pos.col,
            msg: msg.into(),
        }
    }

    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::Arity { .. } => "ArityError",
            ParseError::UnknownTactic { .. } => "UnknownTactic",
            ParseError::DuplicateLabel { .. } => "DuplicateLabel",
            ParseError::BadIndex { .. } => "BadIndex",
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut sig = Signature::default();
    let mut p = Parser::new(text, 1, &mut sig)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut sig = Signature::default();
    let mut p = Parser::new(text, 1, &mut sig)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::alpha_eq;

    #[test]
    fn paper_style_formulas() {
        let f = parse_formula("p -> q \\/ r").unwrap();
        assert_eq!(render_formula(&f), "p -> q \\/ r");
        let g = parse_formula("a /\\ b \\/ c -> d").unwrap();
        let want = Formula::imp(
            Formula::or(
                Formula::and(Formula::prop("a"), Formula::prop("b")),
                Formula::prop("c"),
            ),
            Formula::prop("d"),
        );
        assert_eq!(g, want);
    }

    #[test]
    fn render_then_parse_is_identity_on_samples() {
        for s in [
            "(forall v. P(v) -> Q(v)) -> forall x. (exists y. P(y) /\\ R(x,y)) -> exists z. Q(z) /\\ R(x,z)",
            "(x \\/ p) /\\ q -> l",
            "s /\\ t /\\ l -> x",
            "(a -> b) -> (b -> c) -> a -> c",
            "forall x. exists y. R(x,y) \\/ (forall z. P(z)) /\\ q",
        ] {
            let f = parse_formula(s).unwrap();
            let back = parse_formula(&render_formula(&f)).unwrap();
            assert!(alpha_eq(&f, &back), "{s}");
            assert_eq!(f, back);
        }
    }
}
