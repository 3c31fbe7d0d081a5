use std::collections::BTreeSet;

use super::EquivalenceError;
use crate::kernel::{check_derivation, Derivation, ProofTree, Rule, Witness};
use crate::logic::{contains, fresh_var, Formula, Sequent};
use crate::tactics::{expand, StepKind, Tactic};
use crate::textio::Script;

/// A script proving the last judgment of `d`, its context labeled `H`, `H1`, ...
pub fn derivation_to_tactics(d: &Derivation) -> Result<Script, EquivalenceError> {
    let root = d.conclusion().ok_or(EquivalenceError::MalformedTrace("empty derivation".into()))?;
    derivation_to_tactics_for(&Sequent::from_judgment(root), d)
}

/// A script proving `goal`, whose hypotheses must include the context of the
/// last judgment of `d` and whose conclusion must match it.
pub fn derivation_to_tactics_for(goal: &Sequent, d: &Derivation) -> Result<Script, EquivalenceError> {
    check_derivation(d)?;
    let tree = ProofTree::from_derivation(d).expect("checked derivations are non-empty");
    if !tree.assumed_leaves().is_empty() {
        return Err(EquivalenceError::UsesAssumed);
    }
    let covers = goal.conclusion.alpha_eq(tree.conclusion())
        && tree.context().iter().all(|f| contains(&goal.formulas(), f));
    if !covers {
        return Err(EquivalenceError::GoalMismatch { goal: goal.to_string() });
    }
    let mut out = Vec::new();
    emit(goal, &tree, &mut out)?;
    Ok(Script::new(out))
}

struct Step {
    subgoals: Vec<Sequent>,
    kind: StepKind,
}

fn step(g: &Sequent, t: Tactic, out: &mut Vec<Tactic>) -> Result<Step, EquivalenceError> {
    let e = expand(g, &t)?;
    out.push(t);
    Ok(Step {
        subgoals: e.subgoals,
        kind: e.kind,
    })
}

// The goal's context always includes the node's, so the node's subproofs
// stay valid for the goal after renaming eigenvariables.
fn emit(g: &Sequent, t: &ProofTree, out: &mut Vec<Tactic>) -> Result<(), EquivalenceError> {
    let p = &t.premises;
    match t.rule {
        Rule::Hyp => {
            step(g, Tactic::Trivial, out)?;
        }
        Rule::ImpI => {
            let s = step(g, Tactic::Intro, out)?;
            emit(&s.subgoals[0], &p[0], out)?;
        }
        Rule::AndI => {
            let s = step(g, Tactic::Split, out)?;
            emit(&s.subgoals[0], &p[0], out)?;
            emit(&s.subgoals[1], &p[1], out)?;
        }
        Rule::OrIL | Rule::OrIR => {
            let tac = if t.rule == Rule::OrIL { Tactic::Left } else { Tactic::Right };
            let s = step(g, tac, out)?;
            emit(&s.subgoals[0], &p[0], out)?;
        }
        Rule::ExistsI => {
            let Some(Witness::Term(w)) = &t.witness else {
                unreachable!("checked ExistsI carries a term")
            };
            let s = step(g, Tactic::Exists(w.clone()), out)?;
            emit(&s.subgoals[0], &p[0], out)?;
        }
        Rule::ForallI => {
            let s = step(g, Tactic::Intro, out)?;
            let StepKind::IntroForall { eigen } = &s.kind else {
                unreachable!("intro on a universal goal")
            };
            let premise = align_eigen(&p[0], t.eigenvariable().expect("explicit eigenvariable"), eigen, g);
            emit(&s.subgoals[0], &premise, out)?;
        }
        Rule::ImpE => {
            let label = lemma(g, p[0].conclusion(), &p[0], out, |s, out| {
                step(s, Tactic::apply(s.hypotheses.last().unwrap().label.clone()), out)
                    .map(|st| st.subgoals)
            })?;
            emit(&label[0], &p[1], out)?;
        }
        Rule::AndEL | Rule::AndER => {
            lemma(g, p[0].conclusion(), &p[0], out, |s, out| {
                let h = s.hypotheses.last().unwrap().label.clone();
                let d = step(s, Tactic::Destruct(h), out)?;
                step(&d.subgoals[0], Tactic::Trivial, out).map(|st| st.subgoals)
            })?;
        }
        Rule::OrE => {
            let cases = lemma(g, p[0].conclusion(), &p[0], out, |s, out| {
                let h = s.hypotheses.last().unwrap().label.clone();
                step(s, Tactic::Destruct(h), out).map(|st| st.subgoals)
            })?;
            emit(&cases[0], &p[1], out)?;
            emit(&cases[1], &p[2], out)?;
        }
        Rule::ForallE => {
            let Some(Witness::Term(w)) = &t.witness else {
                unreachable!("checked ForallE carries a term")
            };
            lemma(g, p[0].conclusion(), &p[0], out, |s, out| {
                let h = s.hypotheses.last().unwrap().label.clone();
                step(s, Tactic::apply_with(h, w.clone()), out).map(|st| st.subgoals)
            })?;
        }
        Rule::ExistsE => {
            let mut chosen = String::new();
            let body = lemma(g, p[0].conclusion(), &p[0], out, |s, out| {
                let h = s.hypotheses.last().unwrap().label.clone();
                let d = step(s, Tactic::Destruct(h), out)?;
                if let StepKind::DestructExists { eigen, .. } = &d.kind {
                    chosen = eigen.clone();
                }
                Ok(d.subgoals)
            })?;
            let minor = align_eigen(&p[1], t.eigenvariable().expect("explicit eigenvariable"), &chosen, &body[0]);
            emit(&body[0], &minor, out)?;
        }
        Rule::Assumed => return Err(EquivalenceError::UsesAssumed),
    }
    Ok(())
}

/// `assert (A)`, prove `A` with `proof`, then run `then` on the goal that
/// has `A` as its newest hypothesis. Returns the goals `then` leaves.
fn lemma(
    g: &Sequent,
    a: &Formula,
    proof: &ProofTree,
    out: &mut Vec<Tactic>,
    then: impl FnOnce(&Sequent, &mut Vec<Tactic>) -> Result<Vec<Sequent>, EquivalenceError>,
) -> Result<Vec<Sequent>, EquivalenceError> {
    let s = step(g, Tactic::assert(a.clone()), out)?;
    emit(&s.subgoals[0], proof, out)?;
    then(&s.subgoals[1], out)
}

/// Renames eigenvariable `from` of `t` to the `to` chosen by the tactic,
/// first moving any unrelated free `to` out of the way.
fn align_eigen(t: &ProofTree, from: &str, to: &str, g: &Sequent) -> ProofTree {
    if from == to {
        return t.clone();
    }
    let mut t = t.clone();
    let names = t.free_names();
    if names.contains(to) {
        let mut avoid: BTreeSet<String> = t.vars();
        avoid.extend(g.judgment().all_vars());
        avoid.insert(to.to_string());
        let spare = fresh_var(to, &avoid);
        t = t.rename_var(to, &spare);
    }
    t.rename_var(from, to)
}
