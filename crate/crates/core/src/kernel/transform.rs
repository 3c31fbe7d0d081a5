use std::collections::BTreeSet;

use thiserror::Error;

use super::{Derivation, ProofTree, Rule, Witness};
use crate::logic::{contains, context_set_eq, fresh_var, free_vars_of_context, Formula, Judgment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("empty derivation")]
    Empty,
    #[error("major premise context `{major}` is not the minor context extended by `{lemma}`")]
    ContextMismatch { major: String, lemma: String },
}

impl TransformError {
    pub fn code(&self) -> &'static str {
        match self {
            TransformError::Empty => "Empty",
            TransformError::ContextMismatch { .. } => "ContextMismatch",
        }
    }
}

fn union(ctx: &[Formula], extra: &[Formula]) -> Vec<Formula> {
    let mut out = ctx.to_vec();
    for f in extra {
        if !contains(&out, f) {
            out.push(f.clone());
        }
    }
    out
}

/// Adds `extra` to every context, renaming eigenvariables free in `extra`.
pub fn weaken_tree(t: &ProofTree, extra: &[Formula]) -> ProofTree {
    let fv = free_vars_of_context(extra);
    weaken_rec(t, extra, &fv)
}

fn weaken_rec(t: &ProofTree, extra: &[Formula], fv: &BTreeSet<String>) -> ProofTree {
    let judgment = Judgment::new(union(&t.judgment.context, extra), t.judgment.conclusion.clone());
    let mut witness = t.witness.clone();
    let mut premises: Vec<ProofTree> = t.premises.clone();
    // Which premise the eigenvariable lives in.
    let scoped = match t.rule {
        Rule::ForallI => Some(0),
        Rule::ExistsE => Some(1),
        _ => None,
    };
    if let (Some(i), Some(Witness::Eigen(y))) = (scoped, &t.witness) {
        if fv.contains(y) {
            let mut avoid = premises[i].vars();
            avoid.extend(t.judgment.all_vars());
            avoid.extend(fv.iter().cloned());
            for p in &premises {
                avoid.extend(p.vars());
            }
            let z = fresh_var(y, &avoid);
            premises[i] = premises[i].rename_var(y, &z);
            witness = Some(Witness::Eigen(z));
        }
    }
    ProofTree::new(
        judgment,
        t.rule,
        witness,
        premises.iter().map(|p| weaken_rec(p, extra, fv)).collect(),
    )
}

/// Derives `Γ ∪ extra ⊢ A` from a derivation of `Γ ⊢ A`. Weakened
/// `Assumed` lines are added to the assumed set.
pub fn weaken(d: &Derivation, extra: &[Formula]) -> Result<Derivation, TransformError> {
    let t = ProofTree::from_derivation(d).ok_or(TransformError::Empty)?;
    Ok(weaken_tree(&t, extra).to_derivation(&d.assumed))
}

/// From `Γ, A ⊢ C` (major) and `Γ ⊢ A` (minor) builds `Γ ⊢ C` by replacing
/// `Hyp` uses of `A` with weakened copies of the minor tree.
pub fn graft_tree(major: &ProofTree, minor: &ProofTree) -> Result<ProofTree, TransformError> {
    let gamma = minor.context();
    let lemma = minor.conclusion();
    if contains(gamma, lemma) && context_set_eq(major.context(), gamma) {
        return Ok(major.clone());
    }
    let mut want = gamma.to_vec();
    want.push(lemma.clone());
    if !context_set_eq(major.context(), &want) {
        return Err(TransformError::ContextMismatch {
            major: crate::textio::render_judgment(&major.judgment, None),
            lemma: lemma.to_string(),
        });
    }
    Ok(graft_rec(major, minor, lemma))
}

fn without(ctx: &[Formula], a: &Formula) -> Vec<Formula> {
    ctx.iter().filter(|f| !f.alpha_eq(a)).cloned().collect()
}

fn graft_rec(t: &ProofTree, minor: &ProofTree, lemma: &Formula) -> ProofTree {
    let ctx = without(t.context(), lemma);
    match t.rule {
        Rule::Hyp if t.conclusion().alpha_eq(lemma) => {
            weaken_tree(minor, &ctx)
        }
        Rule::Assumed => {
            // Cut through an implication so the assumed judgment stays as is.
            let local = weaken_tree(minor, &ctx);
            let imp = Formula::imp(lemma.clone(), t.conclusion().clone());
            let intro = ProofTree::new(Judgment::new(ctx.clone(), imp), Rule::ImpI, None, vec![t.clone()]);
            ProofTree::new(
                Judgment::new(ctx, t.conclusion().clone()),
                Rule::ImpE,
                None,
                vec![intro, local],
            )
        }
        _ => {
            let premises = t
                .premises
                .iter()
                .enumerate()
                .map(|(i, p)| match t.discharged(i) {
                    Some(d) if d.alpha_eq(lemma) => p.clone(),
                    _ => graft_rec(p, minor, lemma),
                })
                .collect();
            ProofTree::new(
                Judgment::new(ctx, t.conclusion().clone()),
                t.rule,
                t.witness.clone(),
                premises,
            )
        }
    }
}

/// Derivation-level [`graft_tree`]; assumed sets are merged.
pub fn graft(major: &Derivation, minor: &Derivation) -> Result<Derivation, TransformError> {
    let a = ProofTree::from_derivation(major).ok_or(TransformError::Empty)?;
    let b = ProofTree::from_derivation(minor).ok_or(TransformError::Empty)?;
    let mut assumed = major.assumed.clone();
    for j in &minor.assumed {
        if !assumed.iter().any(|k| k.equiv(j)) {
            assumed.push(j.clone());
        }
    }
    Ok(graft_tree(&a, &b)?.to_derivation(&assumed))
}
