use thiserror::Error;

use super::{Formula, Term};

/// Result of matching the body of `∀x A` against a candidate instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    /// The unique `t` with `A[x:=t]` alpha-equal to the target.
    Instance(Term),
    /// `x` does not occur free in `A` and `A` already equals the target,
    /// so every term is a valid instance.
    AnyTerm,
    NoMatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("occurrences of `{var}` demand both `{first}` and `{second}`")]
    Ambiguous {
        var: String,
        first: Term,
        second: Term,
    },
}

/// Finds `t` such that `pattern[bound := t]` is alpha-equal to `target`.
pub fn match_against(
    pattern: &Formula,
    bound: &str,
    target: &Formula,
) -> Result<MatchOutcome, MatchError> {
    let mut m = Matcher {
        hole: bound,
        found: None,
    };
    if !m.formula(pattern, target, &mut Vec::new())? {
        return Ok(MatchOutcome::NoMatch);
    }
    Ok(match m.found {
        Some(t) => {
            debug_assert!(super::alpha_eq(&pattern.substitute(bound, &t), target));
            MatchOutcome::Instance(t)
        }
        None => MatchOutcome::AnyTerm,
    })
}

struct Matcher<'a> {
    hole: &'a str,
    found: Option<Term>,
}

impl Matcher<'_> {
    fn formula(
        &mut self,
        p: &Formula,
        t: &Formula,
        env: &mut Vec<(String, String)>,
    ) -> Result<bool, MatchError> {
        Ok(match (p, t) {
            (Formula::Atom(a, xs), Formula::Atom(b, ys)) => {
                if a != b || xs.len() != ys.len() {
                    return Ok(false);
                }
                for (x, y) in xs.iter().zip(ys) {
                    if !self.term(x, y, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            (Formula::Imp(a, b), Formula::Imp(c, d))
            | (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d)) => {
                self.formula(a, c, env)? && self.formula(b, d, env)?
            }
            (Formula::Forall(x, a), Formula::Forall(y, b))
            | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                env.push((x.clone(), y.clone()));
                let r = self.formula(a, b, env);
                env.pop();
                r?
            }
            _ => false,
        })
    }

    fn term(&mut self, p: &Term, t: &Term, env: &[(String, String)]) -> Result<bool, MatchError> {
        match p {
            Term::Var(x) => {
                if let Some(i) = env.iter().rposition(|(l, _)| l == x) {
                    let j = match t {
                        Term::Var(y) => env.iter().rposition(|(_, r)| r == y),
                        _ => None,
                    };
                    return Ok(j == Some(i));
                }
                if x == self.hole {
                    // a binder of the target would capture a variable of t
                    if env.iter().any(|(_, r)| t.occurs(r)) {
                        return Ok(false);
                    }
                    return match &self.found {
                        Some(prev) if prev != t => Err(MatchError::Ambiguous {
                            var: self.hole.to_string(),
                            first: prev.clone(),
                            second: t.clone(),
                        }),
                        Some(_) => Ok(true),
                        None => {
                            self.found = Some(t.clone());
                            Ok(true)
                        }
                    };
                }
                Ok(match t {
                    Term::Var(y) => x == y && !env.iter().any(|(_, r)| r == y),
                    _ => false,
                })
            }
            Term::App(f, xs) => match t {
                Term::App(g, ys) if f == g && xs.len() == ys.len() => {
                    for (x, y) in xs.iter().zip(ys) {
                        if !self.term(x, y, env)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                _ => Ok(false),
            },
        }
    }
}
