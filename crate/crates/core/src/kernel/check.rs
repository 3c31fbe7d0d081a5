use std::fmt;

use thiserror::Error;

use super::{Derivation, Rule, Witness, WitnessKind};
use crate::logic::{alpha_eq, contains, context_set_eq, free_vars_of_context, Formula, Judgment, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectReason {
    /// `Hyp` line whose conclusion is not in its context.
    BadHyp,
    /// `Assumed` line that is not among the assumed judgments.
    NotAssumed,
    /// Premise or conclusion formulas do not fit the rule schema.
    BadPremiseShape,
    /// The eigenvariable of `ForallI`/`ExistsE` occurs free where it may not.
    EigenvariableCaptured,
    /// Missing, superfluous or wrong instantiating term.
    WitnessMismatch,
    /// Premise contexts are not the ones the rule requires.
    ContextMismatch,
    /// Wrong number of cited premises.
    PremiseCount,
    /// A premise index that does not name an earlier line.
    BadIndex,
    /// No lines at all.
    Empty,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::BadHyp => "BadHyp",
            RejectReason::NotAssumed => "NotAssumed",
            RejectReason::BadPremiseShape => "BadPremiseShape",
            RejectReason::EigenvariableCaptured => "EigenvariableCaptured",
            RejectReason::WitnessMismatch => "WitnessMismatch",
            RejectReason::ContextMismatch => "ContextMismatch",
            RejectReason::PremiseCount => "PremiseCount",
            RejectReason::BadIndex => "BadIndex",
            RejectReason::Empty => "Empty",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// The first failing line (1-based) and why it fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}: {detail}")]
pub struct Rejection {
    pub line: usize,
    pub reason: RejectReason,
    pub detail: String,
}

/// Equal contexts as formula sets and alpha-equal conclusions.
pub fn check_judgment_equal(a: &Judgment, b: &Judgment) -> bool {
    a.equiv(b)
}

/// Accepts iff every line is a `Hyp` instance, an assumed judgment, or the
/// conclusion of its rule applied to its cited premises.
pub fn check_derivation(d: &Derivation) -> Result<(), Rejection> {
    if d.lines.is_empty() {
        return Err(Rejection {
            line: 0,
            reason: RejectReason::Empty,
            detail: "derivation has no lines".into(),
        });
    }
    for (i, line) in d.lines.iter().enumerate() {
        check_line(d, i).map_err(|(reason, detail)| Rejection {
            line: i + 1,
            reason,
            detail: format!("{} ({} line)", detail, line.justification.rule),
        })?;
    }
    Ok(())
}

type LineResult = Result<(), (RejectReason, String)>;

fn fail(reason: RejectReason, detail: impl Into<String>) -> LineResult {
    Err((reason, detail.into()))
}

fn shape(detail: impl Into<String>) -> LineResult {
    fail(RejectReason::BadPremiseShape, detail)
}

fn same_context(premise: &Judgment, ctx: &[Formula]) -> LineResult {
    if context_set_eq(&premise.context, ctx) {
        Ok(())
    } else {
        fail(RejectReason::ContextMismatch, format!("premise `{premise}` must have the conclusion's context"))
    }
}

fn extended_context(premise: &Judgment, ctx: &[Formula], extra: &Formula) -> LineResult {
    let mut want = ctx.to_vec();
    want.push(extra.clone());
    if context_set_eq(&premise.context, &want) {
        Ok(())
    } else {
        fail(
            RejectReason::ContextMismatch,
            format!("premise `{premise}` must have the conclusion's context extended by `{extra}`"),
        )
    }
}

fn term_witness(w: &Option<Witness>) -> Result<&Term, (RejectReason, String)> {
    match w {
        Some(Witness::Term(t)) => Ok(t),
        _ => Err((RejectReason::WitnessMismatch, "an instantiating term is required".into())),
    }
}

fn eigen_witness(w: &Option<Witness>, bound: &str) -> Result<String, (RejectReason, String)> {
    match w {
        None => Ok(bound.to_string()),
        Some(Witness::Eigen(y)) => Ok(y.clone()),
        Some(Witness::Term(_)) => Err((RejectReason::WitnessMismatch, "expected an eigenvariable".into())),
    }
}

fn check_line(d: &Derivation, i: usize) -> LineResult {
    let line = &d.lines[i];
    let just = &line.justification;
    let j = &line.judgment;
    let ctx = &j.context;
    let concl = &j.conclusion;

    if just.premises.len() != just.rule.arity() {
        return fail(
            RejectReason::PremiseCount,
            format!("expects {} premise(s), cites {}", just.rule.arity(), just.premises.len()),
        );
    }
    let mut ps: Vec<&Judgment> = Vec::with_capacity(just.premises.len());
    for &k in &just.premises {
        if k == 0 || k > i {
            return fail(RejectReason::BadIndex, format!("premise {k} is not an earlier line"));
        }
        ps.push(&d.lines[k - 1].judgment);
    }
    if just.witness.is_some() && just.rule.witness_kind() == WitnessKind::None {
        return fail(RejectReason::WitnessMismatch, "rule takes no witness");
    }

    match just.rule {
        Rule::Hyp => {
            if contains(ctx, concl) {
                Ok(())
            } else {
                fail(RejectReason::BadHyp, format!("`{concl}` is not in the context"))
            }
        }
        Rule::Assumed => {
            if d.assumed.iter().any(|a| a.equiv(j)) {
                Ok(())
            } else {
                fail(RejectReason::NotAssumed, "judgment is not assumed")
            }
        }
        Rule::ImpI => {
            let Formula::Imp(a, b) = concl else {
                return shape("conclusion must be an implication");
            };
            if !alpha_eq(&ps[0].conclusion, b) {
                return shape(format!("premise must conclude `{b}`"));
            }
            extended_context(ps[0], ctx, a)
        }
        Rule::ImpE => {
            let fits = |major: &Judgment, minor: &Judgment| {
                matches!(&major.conclusion, Formula::Imp(a, b)
                    if alpha_eq(a, &minor.conclusion) && alpha_eq(b, concl))
            };
            if !fits(ps[0], ps[1]) && !fits(ps[1], ps[0]) {
                return shape(format!("premises must conclude `A -> {concl}` and `A`"));
            }
            same_context(ps[0], ctx)?;
            same_context(ps[1], ctx)
        }
        Rule::AndI => {
            let Formula::And(a, b) = concl else {
                return shape("conclusion must be a conjunction");
            };
            if !alpha_eq(&ps[0].conclusion, a) || !alpha_eq(&ps[1].conclusion, b) {
                return shape(format!("premises must conclude `{a}` and `{b}`"));
            }
            same_context(ps[0], ctx)?;
            same_context(ps[1], ctx)
        }
        Rule::AndEL | Rule::AndER => {
            let Formula::And(a, b) = &ps[0].conclusion else {
                return shape("premise must be a conjunction");
            };
            let side = if just.rule == Rule::AndEL { a } else { b };
            if !alpha_eq(side, concl) {
                return shape(format!("premise `{}` does not yield `{concl}`", ps[0].conclusion));
            }
            same_context(ps[0], ctx)
        }
        Rule::OrIL | Rule::OrIR => {
            let Formula::Or(a, b) = concl else {
                return shape("conclusion must be a disjunction");
            };
            let side = if just.rule == Rule::OrIL { a } else { b };
            if !alpha_eq(&ps[0].conclusion, side) {
                return shape(format!("premise must conclude `{side}`"));
            }
            same_context(ps[0], ctx)
        }
        Rule::OrE => {
            let Formula::Or(a, b) = &ps[0].conclusion else {
                return shape("first premise must be a disjunction");
            };
            if !alpha_eq(&ps[1].conclusion, concl) || !alpha_eq(&ps[2].conclusion, concl) {
                return shape(format!("case premises must conclude `{concl}`"));
            }
            same_context(ps[0], ctx)?;
            extended_context(ps[1], ctx, a)?;
            extended_context(ps[2], ctx, b)
        }
        Rule::ForallI => {
            let Formula::Forall(x, a) = concl else {
                return shape("conclusion must be universal");
            };
            let y = eigen_witness(&just.witness, x)?;
            if free_vars_of_context(ctx).contains(&y) {
                return fail(RejectReason::EigenvariableCaptured, format!("`{y}` is free in the context"));
            }
            if y != *x && a.is_free(&y) {
                return fail(RejectReason::EigenvariableCaptured, format!("`{y}` is free in `{concl}`"));
            }
            same_context(ps[0], ctx)?;
            let want = a.substitute(x, &Term::Var(y));
            if !alpha_eq(&ps[0].conclusion, &want) {
                return shape(format!("premise must conclude `{want}`"));
            }
            Ok(())
        }
        Rule::ForallE => {
            let Formula::Forall(x, a) = &ps[0].conclusion else {
                return shape("premise must be universal");
            };
            let t = term_witness(&just.witness)?;
            if !alpha_eq(&a.substitute(x, t), concl) {
                return fail(RejectReason::WitnessMismatch, format!("instantiating with `{t}` does not give `{concl}`"));
            }
            same_context(ps[0], ctx)
        }
        Rule::ExistsI => {
            let Formula::Exists(x, a) = concl else {
                return shape("conclusion must be existential");
            };
            let t = term_witness(&just.witness)?;
            if !alpha_eq(&a.substitute(x, t), &ps[0].conclusion) {
                return fail(
                    RejectReason::WitnessMismatch,
                    format!("premise is not the instance of `{concl}` at `{t}`"),
                );
            }
            same_context(ps[0], ctx)
        }
        Rule::ExistsE => {
            let Formula::Exists(x, a) = &ps[0].conclusion else {
                return shape("first premise must be existential");
            };
            if !alpha_eq(&ps[1].conclusion, concl) {
                return shape(format!("second premise must conclude `{concl}`"));
            }
            let y = eigen_witness(&just.witness, x)?;
            if free_vars_of_context(ctx).contains(&y) || concl.is_free(&y) {
                return fail(
                    RejectReason::EigenvariableCaptured,
                    format!("`{y}` is free in the context or the conclusion"),
                );
            }
            if y != *x && a.is_free(&y) {
                return fail(
                    RejectReason::EigenvariableCaptured,
                    format!("`{y}` is free in `{}`", ps[0].conclusion),
                );
            }
            same_context(ps[0], ctx)?;
            extended_context(ps[1], ctx, &a.substitute(x, &Term::Var(y)))
        }
    }
}
