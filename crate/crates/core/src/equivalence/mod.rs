//! Translations between tactic proofs and kernel derivations.
//!
//! [`tactics_to_derivation`] turns a finished tactic trace into a derivation
//! the kernel accepts; [`derivation_to_tactics`] turns an accepted derivation
//! into a script that replays to the empty goal list.

mod completeness;
mod soundness;

use thiserror::Error;

use crate::kernel::{Rejection, TransformError};
use crate::logic::Sequent;
use crate::tactics::{replay, GoalState, Tactic, TacticError};
use crate::textio::Script;

pub use completeness::{derivation_to_tactics, derivation_to_tactics_for};
pub use soundness::{tactics_to_derivation, trace_to_tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("trace does not replay: {0}")]
    MalformedTrace(String),
    #[error("derivation rejected: {0}")]
    Rejected(#[from] Rejection),
    #[error("derivation uses assumed judgments")]
    UsesAssumed,
    #[error("goal `{goal}` does not cover the derived judgment")]
    GoalMismatch { goal: String },
    #[error(transparent)]
    Tactic(#[from] TacticError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// A completed tactic proof: the tactics and the state each one produced.
#[derive(Debug, Clone)]
pub struct TacticTrace {
    pub initial: Sequent,
    pub steps: Vec<(Tactic, GoalState)>,
}

impl TacticTrace {
    /// Replays `script` and keeps the trace if it ends with no goals.
    pub fn record(initial: &Sequent, script: &Script) -> Result<TacticTrace, EquivalenceError> {
        let r = replay(initial, script);
        if !r.is_proved() {
            return Err(EquivalenceError::MalformedTrace(format!("{:?}", r.outcome)));
        }
        let steps = script
            .tactics
            .iter()
            .cloned()
            .zip(r.states.into_iter().skip(1))
            .collect();
        Ok(TacticTrace {
            initial: initial.clone(),
            steps,
        })
    }

    pub fn script(&self) -> Script {
        Script::new(self.steps.iter().map(|(t, _)| t.clone()).collect())
    }

    /// Replays the tactics and compares every recorded goal list.
    pub fn validate(&self) -> Result<(), EquivalenceError> {
        let r = replay(&self.initial, &self.script());
        if !r.is_proved() {
            return Err(EquivalenceError::MalformedTrace(format!("{:?}", r.outcome)));
        }
        for (i, ((_, recorded), replayed)) in self.steps.iter().zip(r.states.iter().skip(1)).enumerate() {
            if recorded.goals() != replayed.goals() {
                return Err(EquivalenceError::MalformedTrace(format!(
                    "state after step {} differs from replay",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}
