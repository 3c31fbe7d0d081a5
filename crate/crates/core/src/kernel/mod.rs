//! Linear natural-deduction derivations and their checker.
//!
//! A derivation is a sequence of judgments, each justified by a rule whose
//! premises are earlier lines (1-based indices), by `Hyp`, or by membership
//! in the set of assumed judgments. Contexts are lists but are compared as
//! sets of formulas up to alpha-equivalence.

mod check;
mod transform;
mod tree;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::logic::{Judgment, Term};

pub use check::{check_derivation, check_judgment_equal, RejectReason, Rejection};
pub use transform::{graft, graft_tree, weaken, weaken_tree, TransformError};
pub use tree::ProofTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    Hyp,
    ImpI,
    ImpE,
    AndI,
    AndEL,
    AndER,
    OrIL,
    OrIR,
    OrE,
    ForallI,
    ForallE,
    ExistsI,
    ExistsE,
    Assumed,
}

/// What kind of witness a rule carries, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    None,
    Term,
    Eigenvariable,
}

impl Rule {
    pub const ALL: [Rule; 14] = [
        Rule::Hyp,
        Rule::ImpI,
        Rule::ImpE,
        Rule::AndI,
        Rule::AndEL,
        Rule::AndER,
        Rule::OrIL,
        Rule::OrIR,
        Rule::OrE,
        Rule::ForallI,
        Rule::ForallE,
        Rule::ExistsI,
        Rule::ExistsE,
        Rule::Assumed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Hyp => "Hyp",
            Rule::ImpI => "ImpI",
            Rule::ImpE => "ImpE",
            Rule::AndI => "AndI",
            Rule::AndEL => "AndEL",
            Rule::AndER => "AndER",
            Rule::OrIL => "OrIL",
            Rule::OrIR => "OrIR",
            Rule::OrE => "OrE",
            Rule::ForallI => "ForallI",
            Rule::ForallE => "ForallE",
            Rule::ExistsI => "ExistsI",
            Rule::ExistsE => "ExistsE",
            Rule::Assumed => "Assumed",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    /// Number of premise lines the rule cites.
    pub fn arity(self) -> usize {
        match self {
            Rule::Hyp | Rule::Assumed => 0,
            Rule::ImpI
            | Rule::AndEL
            | Rule::AndER
            | Rule::OrIL
            | Rule::OrIR
            | Rule::ForallI
            | Rule::ForallE
            | Rule::ExistsI => 1,
            Rule::ImpE | Rule::AndI | Rule::ExistsE => 2,
            Rule::OrE => 3,
        }
    }

    pub fn witness_kind(self) -> WitnessKind {
        match self {
            Rule::ForallE | Rule::ExistsI => WitnessKind::Term,
            Rule::ForallI | Rule::ExistsE => WitnessKind::Eigenvariable,
            _ => WitnessKind::None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Instantiating term (`ForallE`, `ExistsI`) or eigenvariable (`ForallI`,
/// `ExistsE`). An absent eigenvariable defaults to the bound variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    Term(Term),
    Eigen(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Justification {
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub witness: Option<Witness>,
}

impl Justification {
    pub fn new(rule: Rule, premises: Vec<usize>, witness: Option<Witness>) -> Justification {
        Justification {
            rule,
            premises,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub judgment: Judgment,
    pub justification: Justification,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Derivation {
    pub lines: Vec<Line>,
    /// Judgments admitted without proof. Empty for a proof proper.
    pub assumed: Vec<Judgment>,
}

impl Derivation {
    /// The derived judgment: the last line.
    pub fn conclusion(&self) -> Option<&Judgment> {
        self.lines.last().map(|l| &l.judgment)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn push(&mut self, judgment: Judgment, justification: Justification) -> usize {
        self.lines.push(Line {
            judgment,
            justification,
        });
        self.lines.len()
    }
}
