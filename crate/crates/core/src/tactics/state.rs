use std::sync::Arc;

use super::{expand, Tactic, TacticError};
use crate::logic::Sequent;
use crate::textio::Script;

/// An immutable goal sequence plus the path that led to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalState {
    goals: Vec<Sequent>,
    history: Option<Arc<Step>>,
}

#[derive(Debug, PartialEq, Eq)]
struct Step {
    tactic: Tactic,
    prior: GoalState,
}

impl GoalState {
    pub fn new(goal: Sequent) -> GoalState {
        GoalState::from_goals(vec![goal])
    }

    pub fn from_goals(goals: Vec<Sequent>) -> GoalState {
        GoalState { goals, history: None }
    }

    pub fn goals(&self) -> &[Sequent] {
        &self.goals
    }

    pub fn current(&self) -> Option<&Sequent> {
        self.goals.first()
    }

    pub fn is_terminal(&self) -> bool {
        self.goals.is_empty()
    }

    pub fn apply(&self, tactic: &Tactic) -> Result<GoalState, TacticError> {
        let head = self.current().ok_or(TacticError::TerminalState)?;
        let e = expand(head, tactic)?;
        let mut goals = e.subgoals;
        goals.extend(self.goals[1..].iter().cloned());
        Ok(GoalState {
            goals,
            history: Some(Arc::new(Step {
                tactic: tactic.clone(),
                prior: self.clone(),
            })),
        })
    }

    pub fn undo(&self) -> Result<GoalState, TacticError> {
        self.history
            .as_ref()
            .map(|s| s.prior.clone())
            .ok_or(TacticError::EmptyHistory)
    }

    /// Tactics applied so far, oldest first.
    pub fn script(&self) -> Script {
        let mut tactics = Vec::new();
        let mut cur = &self.history;
        while let Some(step) = cur {
            tactics.push(step.tactic.clone());
            cur = &step.prior.history;
        }
        tactics.reverse();
        Script::new(tactics)
    }

    /// The state before any tactic was applied.
    pub fn initial(&self) -> &GoalState {
        let mut s = self;
        while let Some(step) = &s.history {
            s = &step.prior;
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayOutcome {
    Proved,
    /// The script ran out with goals left.
    Exhausted { remaining: usize },
    /// Tactic number `step` (1-based) failed.
    Failed { step: usize, error: TacticError },
}

#[derive(Debug, Clone)]
pub struct Replay {
    /// Every state reached, starting with the initial one.
    pub states: Vec<GoalState>,
    pub outcome: ReplayOutcome,
}

impl Replay {
    pub fn is_proved(&self) -> bool {
        self.outcome == ReplayOutcome::Proved
    }

    pub fn last(&self) -> &GoalState {
        self.states.last().expect("replay keeps the initial state")
    }
}

/// Runs `script` from the single goal `initial`, stopping at the first error.
pub fn replay(initial: &Sequent, script: &Script) -> Replay {
    let mut states = vec![GoalState::new(initial.clone())];
    for (i, t) in script.tactics.iter().enumerate() {
        match states[i].apply(t) {
            Ok(s) => states.push(s),
            Err(error) => {
                return Replay {
                    states,
                    outcome: ReplayOutcome::Failed { step: i + 1, error },
                }
            }
        }
    }
    let remaining = states.last().map_or(0, |s| s.goals.len());
    let outcome = if remaining == 0 {
        ReplayOutcome::Proved
    } else {
        ReplayOutcome::Exhausted { remaining }
    };
    Replay { states, outcome }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::{parse_script, parse_theorem};

    const EX3: &str = "\
hyp H1 : p -> q \\/ r
hyp H2 : q -> r
hyp H3 : r -> s
theorem Example3 : p -> s.
";

    fn initial() -> Sequent {
        parse_theorem(EX3).unwrap().sequent()
    }

    #[test]
    fn undo_restores_exactly() {
        let s0 = GoalState::new(initial());
        let s1 = s0.apply(&Tactic::Intro).unwrap();
        let s2 = s1.apply(&Tactic::apply("H3")).unwrap();
        assert_eq!(s2.undo().unwrap(), s1);
        assert_eq!(s2.undo().unwrap().undo().unwrap(), s0);
        assert_eq!(s0.undo(), Err(TacticError::EmptyHistory));
        assert_eq!(s2.script().tactics, vec![Tactic::Intro, Tactic::apply("H3")]);
        assert_eq!(s2.initial(), &s0);
    }

    #[test]
    fn terminal_state_has_no_moves() {
        let s = GoalState::from_goals(Vec::new());
        assert_eq!(s.apply(&Tactic::Trivial), Err(TacticError::TerminalState));
    }

    #[test]
    fn replay_reports_missing_trivial() {
        let script = parse_script("intro. apply H3. assert (q \\/ r) as H4. apply H1. trivial. destruct H4. apply H2. trivial.").unwrap();
        let r = replay(&initial(), &script);
        assert_eq!(r.outcome, ReplayOutcome::Exhausted { remaining: 1 });
        assert_eq!(r.states.len(), 9);
    }

    #[test]
    fn replay_reports_failing_step() {
        let script = parse_script("intro. split.").unwrap();
        let r = replay(&initial(), &script);
        assert!(matches!(r.outcome, ReplayOutcome::Failed { step: 2, error: TacticError::TacticMismatch { .. } }));
    }
}
