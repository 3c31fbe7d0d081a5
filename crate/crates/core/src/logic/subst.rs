use std::collections::BTreeSet;

use super::{Formula, Term};

pub(super) fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(_, args) => {
            let mut vars = BTreeSet::new();
            args.iter().for_each(|a| a.collect_vars(&mut vars));
            out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
        }
        Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x.clone());
            collect_free(a, bound, out);
            bound.pop();
        }
    }
}

pub(super) fn occurs_free(f: &Formula, x: &str) -> bool {
    match f {
        Formula::Atom(_, args) => args.iter().any(|a| a.occurs(x)),
        Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
            occurs_free(a, x) || occurs_free(b, x)
        }
        Formula::Forall(y, a) | Formula::Exists(y, a) => y != x && occurs_free(a, x),
    }
}

/// FV(Γ): the union of the free variables of every formula.
pub fn free_vars_of_context(ctx: &[Formula]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in ctx {
        collect_free(f, &mut Vec::new(), &mut out);
    }
    out
}

/// `base` itself when unused, otherwise `base` followed by the smallest
/// positive integer that gives a name outside `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}{k}"))
        .find(|name| !avoid.contains(name))
        .expect("unbounded suffix search")
}

pub(super) fn substitute(f: &Formula, x: &str, t: &Term) -> Formula {
    match f {
        Formula::Atom(p, args) => {
            Formula::Atom(p.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
        }
        Formula::Imp(a, b) => Formula::imp(substitute(a, x, t), substitute(b, x, t)),
        Formula::And(a, b) => Formula::and(substitute(a, x, t), substitute(b, x, t)),
        Formula::Or(a, b) => Formula::or(substitute(a, x, t), substitute(b, x, t)),
        Formula::Forall(y, body) | Formula::Exists(y, body) => {
            if y == x || !occurs_free(body, x) {
                return f.clone();
            }
            let (y, body) = if t.occurs(y) {
                let mut avoid = t.free_vars();
                avoid.extend(body.free_vars());
                avoid.insert(x.to_string());
                let renamed = fresh_var(y, &avoid);
                let body = substitute(body, y, &Term::Var(renamed.clone()));
                (renamed, body)
            } else {
                (y.clone(), (**body).clone())
            };
            let body = substitute(&body, x, t);
            match f {
                Formula::Forall(..) => Formula::forall(y, body),
                _ => Formula::exists(y, body),
            }
        }
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    alpha(f, g, &mut Vec::new())
}

fn alpha(f: &Formula, g: &Formula, env: &mut Vec<(String, String)>) -> bool {
    match (f, g) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(s, t)| alpha_term(s, t, env))
        }
        (Formula::Imp(a, b), Formula::Imp(c, d))
        | (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d)) => alpha(a, c, env) && alpha(b, d, env),
        (Formula::Forall(x, a), Formula::Forall(y, b))
        | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha(a, b, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn alpha_term(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => {
            let left = env.iter().rposition(|(l, _)| l == x);
            let right = env.iter().rposition(|(_, r)| r == y);
            match (left, right) {
                (None, None) => x == y,
                (Some(i), Some(j)) => i == j,
                _ => false,
            }
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| alpha_term(a, b, env))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fresh_names() {
        assert_eq!(fresh_var("x", &set(&["y"])), "x");
        assert_eq!(fresh_var("x", &set(&["x"])), "x1");
        assert_eq!(fresh_var("x", &set(&["x", "x1"])), "x2");
    }

    #[test]
    fn substitution_without_capture() {
        let f = Formula::and(
            Formula::atom("Q", vec![v("z")]),
            Formula::atom("R", vec![v("x"), v("z")]),
        );
        let g = f.substitute("z", &v("y"));
        let want = Formula::and(
            Formula::atom("Q", vec![v("y")]),
            Formula::atom("R", vec![v("x"), v("y")]),
        );
        assert_eq!(g, want);
    }

    #[test]
    fn substitution_ignores_bound_occurrences() {
        let f = Formula::forall("x", Formula::atom("P", vec![v("x")]));
        assert_eq!(f.substitute("x", &Term::constant("c")), f);
    }

    #[test]
    fn substitution_renames_capturing_binder() {
        let f = Formula::exists("y", Formula::atom("R", vec![v("x"), v("y")]));
        let g = f.substitute("x", &v("y"));
        assert_eq!(g.free_vars(), set(&["y"]));
        let want = Formula::exists("y1", Formula::atom("R", vec![v("y"), v("y1")]));
        assert_eq!(g, want);
    }

    #[test]
    fn alpha_equivalence_basics() {
        let px = Formula::forall("x", Formula::atom("P", vec![v("x")]));
        let py = Formula::forall("y", Formula::atom("P", vec![v("y")]));
        let ex = Formula::exists("x", Formula::atom("P", vec![v("x")]));
        assert!(alpha_eq(&px, &py));
        assert!(!alpha_eq(&px, &ex));
        let pq = Formula::imp(Formula::prop("p"), Formula::prop("q"));
        assert!(alpha_eq(&pq, &pq.clone()));
    }

    #[test]
    fn alpha_distinguishes_free_from_bound() {
        // ∀x R(x,y) vs ∀y R(y,y)
        let a = Formula::forall("x", Formula::atom("R", vec![v("x"), v("y")]));
        let b = Formula::forall("y", Formula::atom("R", vec![v("y"), v("y")]));
        assert!(!alpha_eq(&a, &b));
        // shadowing: ∀x ∀x P(x) vs ∀y ∀z P(z)
        let c = Formula::forall("x", Formula::forall("x", Formula::atom("P", vec![v("x")])));
        let d = Formula::forall("y", Formula::forall("z", Formula::atom("P", vec![v("z")])));
        let e = Formula::forall("y", Formula::forall("z", Formula::atom("P", vec![v("y")])));
        assert!(alpha_eq(&c, &d));
        assert!(!alpha_eq(&c, &e));
    }
}
