//! Goal-sequence states and the tactic transitions between them.
//!
//! A state is an ordered list of goals; tactics rewrite the head goal only
//! and prepend whatever subgoals they produce. The empty list is the only
//! terminal state.

mod state;
mod step;

use std::fmt;

use thiserror::Error;

use crate::logic::{Formula, Term};

pub use state::{replay, GoalState, Replay, ReplayOutcome};
pub use step::{expand, Expansion, StepKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tactic {
    Intro,
    Split,
    Left,
    Right,
    Exists(Term),
    Apply { label: String, with: Option<Term> },
    Destruct(String),
    Assert { lemma: Formula, label: Option<String> },
    Cut(Formula),
    Trivial,
}

impl Tactic {
    pub fn apply(label: impl Into<String>) -> Tactic {
        Tactic::Apply {
            label: label.into(),
            with: None,
        }
    }

    pub fn apply_with(label: impl Into<String>, t: Term) -> Tactic {
        Tactic::Apply {
            label: label.into(),
            with: Some(t),
        }
    }

    pub fn destruct(label: impl Into<String>) -> Tactic {
        Tactic::Destruct(label.into())
    }

    pub fn assert(lemma: Formula) -> Tactic {
        Tactic::Assert { lemma, label: None }
    }

    pub fn assert_as(lemma: Formula, label: impl Into<String>) -> Tactic {
        Tactic::Assert {
            lemma,
            label: Some(label.into()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Tactic::Intro => "intro",
            Tactic::Split => "split",
            Tactic::Left => "left",
            Tactic::Right => "right",
            Tactic::Exists(_) => "exists",
            Tactic::Apply { .. } => "apply",
            Tactic::Destruct(_) => "destruct",
            Tactic::Assert { .. } => "assert",
            Tactic::Cut(_) => "cut",
            Tactic::Trivial => "trivial",
        }
    }
}

impl fmt::Display for Tactic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render_tactic(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TacticError {
    #[error("no goals left")]
    TerminalState,
    #[error("no hypothesis labeled `{0}`")]
    UnknownLabel(String),
    #[error("`{tactic}` does not apply to `{target}`")]
    TacticMismatch { tactic: String, target: String },
    #[error("`{label}` has no instance equal to the goal")]
    NoMatch { label: String },
    #[error("`{label}` matches the goal ambiguously: {detail}")]
    AmbiguousMatch { label: String, detail: String },
    #[error("the goal is not among the hypotheses")]
    NotTrivial,
    #[error("label `{0}` is already in use")]
    DuplicateLabel(String),
    #[error("nothing to undo")]
    EmptyHistory,
}

impl TacticError {
    pub fn code(&self) -> &'static str {
        match self {
            TacticError::TerminalState => "TerminalState",
            TacticError::UnknownLabel(_) => "UnknownLabel",
            TacticError::TacticMismatch { .. } => "TacticMismatch",
            TacticError::NoMatch { .. } => "NoMatch",
            TacticError::AmbiguousMatch { .. } => "AmbiguousMatch",
            TacticError::NotTrivial => "NotTrivial",
            TacticError::DuplicateLabel(_) => "DuplicateLabel",
            TacticError::EmptyHistory => "EmptyHistory",
        }
    }
}
