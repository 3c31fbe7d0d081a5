use std::collections::BTreeSet;

use super::{Tactic, TacticError};
use crate::logic::{alpha_eq, fresh_var, match_against, Formula, Hypothesis, MatchError, MatchOutcome, Sequent, Term};

/// What a tactic did to a goal, with the names it chose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    IntroImp { label: String },
    IntroForall { eigen: String },
    Split,
    Left,
    Right,
    Exists(Term),
    ApplyImp { label: String, implication: Formula },
    /// `instance` is `None` when the bound variable does not occur.
    ApplyForall { label: String, universal: Formula, instance: Option<Term> },
    DestructAnd { label: String, conjunction: Formula, right: String },
    DestructOr { label: String, disjunction: Formula },
    DestructExists { label: String, existential: Formula, eigen: String },
    Assert { lemma: Formula, label: String },
    Cut(Formula),
    Trivial { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    /// Replacement for the goal, in order; empty for discarding tactics.
    pub subgoals: Vec<Sequent>,
    pub kind: StepKind,
}

fn mismatch(t: &Tactic, target: impl ToString) -> TacticError {
    TacticError::TacticMismatch {
        tactic: t.name().to_string(),
        target: target.to_string(),
    }
}

fn with_goal(g: &Sequent, conclusion: Formula) -> Sequent {
    Sequent::new(g.hypotheses.clone(), conclusion)
}

fn lookup<'a>(g: &'a Sequent, label: &str) -> Result<(usize, &'a Hypothesis), TacticError> {
    g.hypotheses
        .iter()
        .enumerate()
        .find(|(_, h)| h.label == label)
        .ok_or_else(|| TacticError::UnknownLabel(label.to_string()))
}

/// Applies `tactic` to a single goal.
pub fn expand(g: &Sequent, tactic: &Tactic) -> Result<Expansion, TacticError> {
    let done = |subgoals, kind| Ok(Expansion { subgoals, kind });
    match tactic {
        Tactic::Intro => match &g.conclusion {
            Formula::Imp(a, b) => {
                let label = g.fresh_label();
                let mut s = with_goal(g, (**b).clone());
                s.hypotheses.push(Hypothesis::new(label.clone(), (**a).clone()));
                done(vec![s], StepKind::IntroImp { label })
            }
            Formula::Forall(x, a) => {
                let ctx_fv = g.context_free_vars();
                let eigen = if ctx_fv.contains(x) {
                    let mut avoid = ctx_fv;
                    avoid.extend(a.free_vars());
                    fresh_var(x, &avoid)
                } else {
                    x.clone()
                };
                let body = a.substitute(x, &Term::var(eigen.as_str()));
                done(vec![with_goal(g, body)], StepKind::IntroForall { eigen })
            }
            other => Err(mismatch(tactic, other)),
        },
        Tactic::Split => match &g.conclusion {
            Formula::And(a, b) => done(
                vec![with_goal(g, (**a).clone()), with_goal(g, (**b).clone())],
                StepKind::Split,
            ),
            other => Err(mismatch(tactic, other)),
        },
        Tactic::Left | Tactic::Right => match &g.conclusion {
            Formula::Or(a, b) => {
                if *tactic == Tactic::Left {
                    done(vec![with_goal(g, (**a).clone())], StepKind::Left)
                } else {
                    done(vec![with_goal(g, (**b).clone())], StepKind::Right)
                }
            }
            other => Err(mismatch(tactic, other)),
        },
        Tactic::Exists(t) => match &g.conclusion {
            Formula::Exists(x, a) => done(vec![with_goal(g, a.substitute(x, t))], StepKind::Exists(t.clone())),
            other => Err(mismatch(tactic, other)),
        },
        Tactic::Apply { label, with } => {
            let (_, h) = lookup(g, label)?;
            match &h.formula {
                Formula::Imp(a, b) => {
                    if with.is_some() || !alpha_eq(b, &g.conclusion) {
                        return Err(mismatch(tactic, &g.conclusion));
                    }
                    done(
                        vec![with_goal(g, (**a).clone())],
                        StepKind::ApplyImp {
                            label: label.clone(),
                            implication: h.formula.clone(),
                        },
                    )
                }
                Formula::Forall(x, a) => {
                    let instance = match with {
                        Some(t) => {
                            if !alpha_eq(&a.substitute(x, t), &g.conclusion) {
                                return Err(TacticError::NoMatch { label: label.clone() });
                            }
                            Some(t.clone())
                        }
                        None => match match_against(a, x, &g.conclusion) {
                            Ok(MatchOutcome::Instance(t)) => Some(t),
                            Ok(MatchOutcome::AnyTerm) => None,
                            Ok(MatchOutcome::NoMatch) => {
                                return Err(TacticError::NoMatch { label: label.clone() })
                            }
                            Err(e @ MatchError::Ambiguous { .. }) => {
                                return Err(TacticError::AmbiguousMatch {
                                    label: label.clone(),
                                    detail: e.to_string(),
                                })
                            }
                        },
                    };
                    done(
                        Vec::new(),
                        StepKind::ApplyForall {
                            label: label.clone(),
                            universal: h.formula.clone(),
                            instance,
                        },
                    )
                }
                other => Err(mismatch(tactic, other)),
            }
        }
        Tactic::Destruct(label) => {
            let (i, h) = lookup(g, label)?;
            match &h.formula {
                Formula::And(a, b) => {
                    let right = g.fresh_label();
                    let mut s = g.clone();
                    s.hypotheses[i].formula = (**a).clone();
                    s.hypotheses.insert(i + 1, Hypothesis::new(right.clone(), (**b).clone()));
                    done(
                        vec![s],
                        StepKind::DestructAnd {
                            label: label.clone(),
                            conjunction: h.formula.clone(),
                            right,
                        },
                    )
                }
                Formula::Or(a, b) => {
                    let mut left = g.clone();
                    left.hypotheses[i].formula = (**a).clone();
                    let mut right = g.clone();
                    right.hypotheses[i].formula = (**b).clone();
                    done(
                        vec![left, right],
                        StepKind::DestructOr {
                            label: label.clone(),
                            disjunction: h.formula.clone(),
                        },
                    )
                }
                Formula::Exists(x, a) => {
                    let mut avoid: BTreeSet<String> = g
                        .hypotheses
                        .iter()
                        .filter(|k| k.label != *label)
                        .flat_map(|k| k.formula.free_vars())
                        .collect();
                    avoid.extend(g.conclusion.free_vars());
                    avoid.extend(h.formula.free_vars());
                    let eigen = if avoid.contains(x) {
                        avoid.extend(a.free_vars());
                        fresh_var(x, &avoid)
                    } else {
                        x.clone()
                    };
                    let mut s = g.clone();
                    s.hypotheses[i].formula = a.substitute(x, &Term::var(eigen.as_str()));
                    done(
                        vec![s],
                        StepKind::DestructExists {
                            label: label.clone(),
                            existential: h.formula.clone(),
                            eigen,
                        },
                    )
                }
                other => Err(mismatch(tactic, other)),
            }
        }
        Tactic::Assert { lemma, label } => {
            let label = match label {
                Some(l) if g.get(l).is_some() => return Err(TacticError::DuplicateLabel(l.clone())),
                Some(l) => l.clone(),
                None => g.fresh_label(),
            };
            let mut second = g.clone();
            second.hypotheses.push(Hypothesis::new(label.clone(), lemma.clone()));
            done(
                vec![with_goal(g, lemma.clone()), second],
                StepKind::Assert {
                    lemma: lemma.clone(),
                    label,
                },
            )
        }
        Tactic::Cut(a) => done(
            vec![
                with_goal(g, Formula::imp(a.clone(), g.conclusion.clone())),
                with_goal(g, a.clone()),
            ],
            StepKind::Cut(a.clone()),
        ),
        Tactic::Trivial => match g.hypotheses.iter().find(|h| alpha_eq(&h.formula, &g.conclusion)) {
            Some(h) => done(Vec::new(), StepKind::Trivial { label: h.label.clone() }),
            None => Err(TacticError::NotTrivial),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::{parse_formula, parse_theorem, render_sequent_labeled};

    fn goal(text: &str) -> Sequent {
        parse_theorem(text).unwrap().sequent()
    }

    #[test]
    fn intro_labels_follow_existing() {
        let g = goal("hyp H1 : p\ntheorem T : q -> r -> q");
        let s = &expand(&g, &Tactic::Intro).unwrap().subgoals[0];
        let s = &expand(s, &Tactic::Intro).unwrap().subgoals[0];
        assert_eq!(render_sequent_labeled(s), "H1: p, H: q, H2: r |- q");
    }

    #[test]
    fn intro_forall_renames_when_captured() {
        let g = goal("hyp H : P(x)\ntheorem T : forall x. Q(x)");
        let e = expand(&g, &Tactic::Intro).unwrap();
        assert_eq!(e.kind, StepKind::IntroForall { eigen: "x1".into() });
        assert_eq!(e.subgoals[0].conclusion, parse_formula("Q(x1)").unwrap());
        let g = goal("theorem T : forall x. Q(x)");
        assert_eq!(expand(&g, &Tactic::Intro).unwrap().kind, StepKind::IntroForall { eigen: "x".into() });
    }

    #[test]
    fn apply_implication_requires_matching_consequent() {
        let g = goal("hyp H : p -> q\ntheorem T : r");
        assert!(matches!(expand(&g, &Tactic::apply("H")), Err(TacticError::TacticMismatch { .. })));
        assert!(matches!(expand(&g, &Tactic::apply("K")), Err(TacticError::UnknownLabel(_))));
    }

    #[test]
    fn apply_forall_discards() {
        let g = goal("hyp H : forall x. P(x) -> Q(x)\ntheorem T : P(f(y)) -> Q(f(y))");
        let e = expand(&g, &Tactic::apply("H")).unwrap();
        assert!(e.subgoals.is_empty());
        let g = goal("hyp H : forall x. R(x,x)\ntheorem T : R(a,b)");
        assert!(matches!(expand(&g, &Tactic::apply("H")), Err(TacticError::AmbiguousMatch { .. })));
        let g = goal("hyp H : forall x. P(x)\ntheorem T : Q(a)");
        assert!(matches!(expand(&g, &Tactic::apply("H")), Err(TacticError::NoMatch { .. })));
    }

    #[test]
    fn destruct_shapes() {
        let g = goal("hyp A : p /\\ q\nhyp B : r\ntheorem T : q");
        let e = expand(&g, &Tactic::destruct("A")).unwrap();
        assert_eq!(render_sequent_labeled(&e.subgoals[0]), "A: p, H: q, B: r |- q");
        let g = goal("hyp A : p \\/ q\ntheorem T : q");
        let e = expand(&g, &Tactic::destruct("A")).unwrap();
        assert_eq!(e.subgoals.len(), 2);
        assert_eq!(render_sequent_labeled(&e.subgoals[1]), "A: q |- q");
        let g = goal("hyp A : exists x. P(x)\nhyp B : Q(x)\ntheorem T : q");
        let e = expand(&g, &Tactic::destruct("A")).unwrap();
        assert_eq!(render_sequent_labeled(&e.subgoals[0]), "A: P(x1), B: Q(x) |- q");
    }

    #[test]
    fn assert_and_cut_order() {
        let g = goal("hyp H : p\ntheorem T : r");
        let e = expand(&g, &Tactic::assert(parse_formula("q").unwrap())).unwrap();
        let rows: Vec<_> = e.subgoals.iter().map(render_sequent_labeled).collect();
        assert_eq!(rows, ["H: p |- q", "H: p, H1: q |- r"]);
        assert_eq!(
            expand(&g, &Tactic::assert_as(parse_formula("q").unwrap(), "H")),
            Err(TacticError::DuplicateLabel("H".into()))
        );
        let e = expand(&g, &Tactic::Cut(parse_formula("q").unwrap())).unwrap();
        let rows: Vec<_> = e.subgoals.iter().map(render_sequent_labeled).collect();
        assert_eq!(rows, ["H: p |- q -> r", "H: p |- q"]);
    }

    #[test]
    fn trivial_up_to_alpha() {
        let g = goal("hyp H : forall x. P(x)\ntheorem T : forall y. P(y)");
        assert_eq!(expand(&g, &Tactic::Trivial).unwrap().kind, StepKind::Trivial { label: "H".into() });
        let g = goal("hyp H : p\ntheorem T : q");
        assert_eq!(expand(&g, &Tactic::Trivial), Err(TacticError::NotTrivial));
    }
}
