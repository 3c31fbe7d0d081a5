use super::{EquivalenceError, TacticTrace};
use crate::kernel::{graft_tree, weaken_tree, Derivation, ProofTree, Rule, Witness};
use crate::logic::{Formula, Judgment, Sequent, Term};
use crate::tactics::{expand, StepKind, Tactic};

/// Builds a derivation of the trace's initial judgment with no assumptions.
pub fn tactics_to_derivation(tr: &TacticTrace) -> Result<Derivation, EquivalenceError> {
    tr.validate()?;
    Ok(trace_to_tree(&tr.initial, &tr.script().tactics)?.to_derivation(&[]))
}

/// The proof tree behind a script that closes `goal`. Goals are solved
/// depth first, so each subgoal consumes a contiguous run of tactics.
pub fn trace_to_tree(goal: &Sequent, tactics: &[Tactic]) -> Result<ProofTree, EquivalenceError> {
    let mut rest = tactics.iter();
    let tree = build(goal, &mut rest)?;
    if rest.next().is_some() {
        return Err(EquivalenceError::MalformedTrace("tactics left after the proof closed".into()));
    }
    Ok(tree)
}

fn build<'a>(g: &Sequent, rest: &mut impl Iterator<Item = &'a Tactic>) -> Result<ProofTree, EquivalenceError> {
    let t = rest
        .next()
        .ok_or_else(|| EquivalenceError::MalformedTrace(format!("goal `{g}` left open")))?;
    let e = expand(g, t)?;
    let mut subs = Vec::with_capacity(e.subgoals.len());
    for s in &e.subgoals {
        subs.push(build(s, rest)?);
    }
    combine(g, e.kind, subs)
}

fn node(ctx: &[Formula], concl: Formula, rule: Rule, witness: Option<Witness>, premises: Vec<ProofTree>) -> ProofTree {
    ProofTree::new(Judgment::new(ctx.to_vec(), concl), rule, witness, premises)
}

fn hyp(ctx: &[Formula], f: &Formula) -> ProofTree {
    node(ctx, f.clone(), Rule::Hyp, None, Vec::new())
}

fn combine(g: &Sequent, kind: StepKind, mut subs: Vec<ProofTree>) -> Result<ProofTree, EquivalenceError> {
    let ctx = g.formulas();
    let c = g.conclusion.clone();
    let mut take = || subs.remove(0);
    Ok(match kind {
        StepKind::Trivial { .. } => hyp(&ctx, &c),
        StepKind::ApplyForall { universal, instance, .. } => {
            let Formula::Forall(x, _) = &universal else {
                unreachable!("apply on a universal hypothesis")
            };
            let t = instance.unwrap_or_else(|| Term::var(x.as_str()));
            node(&ctx, c, Rule::ForallE, Some(Witness::Term(t)), vec![hyp(&ctx, &universal)])
        }
        StepKind::IntroImp { .. } => node(&ctx, c, Rule::ImpI, None, vec![take()]),
        StepKind::IntroForall { eigen } => node(&ctx, c, Rule::ForallI, Some(Witness::Eigen(eigen)), vec![take()]),
        StepKind::Split => {
            let a = take();
            let b = take();
            node(&ctx, c, Rule::AndI, None, vec![a, b])
        }
        StepKind::Left => node(&ctx, c, Rule::OrIL, None, vec![take()]),
        StepKind::Right => node(&ctx, c, Rule::OrIR, None, vec![take()]),
        StepKind::Exists(t) => node(&ctx, c, Rule::ExistsI, Some(Witness::Term(t)), vec![take()]),
        StepKind::ApplyImp { implication, .. } => {
            node(&ctx, c, Rule::ImpE, None, vec![hyp(&ctx, &implication), take()])
        }
        StepKind::DestructAnd { conjunction, .. } => {
            let Formula::And(a, b) = &conjunction else {
                unreachable!("destruct on a conjunction")
            };
            let major = weaken_tree(&take(), std::slice::from_ref(&conjunction));
            let with_a = union(&ctx, &[(**a).clone()]);
            let right = node(&with_a, (**b).clone(), Rule::AndER, None, vec![hyp(&with_a, &conjunction)]);
            let major = graft_tree(&major, &right)?;
            let left = node(&ctx, (**a).clone(), Rule::AndEL, None, vec![hyp(&ctx, &conjunction)]);
            graft_tree(&major, &left)?
        }
        StepKind::DestructOr { disjunction, .. } => {
            let extra = std::slice::from_ref(&disjunction);
            let l = weaken_tree(&take(), extra);
            let r = weaken_tree(&take(), extra);
            node(&ctx, c, Rule::OrE, None, vec![hyp(&ctx, &disjunction), l, r])
        }
        StepKind::DestructExists { existential, eigen, .. } => {
            let minor = weaken_tree(&take(), std::slice::from_ref(&existential));
            node(
                &ctx,
                c,
                Rule::ExistsE,
                Some(Witness::Eigen(eigen)),
                vec![hyp(&ctx, &existential), minor],
            )
        }
        StepKind::Assert { .. } => {
            let lemma = take();
            let main = take();
            graft_tree(&main, &lemma)?
        }
        StepKind::Cut(_) => {
            let imp = take();
            let arg = take();
            node(&ctx, c, Rule::ImpE, None, vec![imp, arg])
        }
    })
}

fn union(ctx: &[Formula], extra: &[Formula]) -> Vec<Formula> {
    let mut out = ctx.to_vec();
    out.extend(extra.iter().cloned());
    out
}
