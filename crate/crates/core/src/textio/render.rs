use crate::logic::{Formula, Hypothesis, Judgment, Sequent, Term};

pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::App(f, args) => {
            out.push_str(f);
            write_args(args, out);
        }
    }
}

fn write_args(args: &[Term], out: &mut String) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_term(a, out);
    }
    out.push(')');
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PRIMARY: u8 = 4;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => PRIMARY,
    }
}

/// Prints `f` with the fewest parentheses that still reparse to `f`.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, IMP, true, &mut out);
    out
}

// A quantifier body runs as far right as possible, so an unparenthesized
// quantifier is only safe when nothing follows it.
fn write_formula(f: &Formula, min: u8, rightmost: bool, out: &mut String) {
    let quantifier = matches!(f, Formula::Forall(..) | Formula::Exists(..));
    if precedence(f) < min || (quantifier && !rightmost) {
        out.push('(');
        write_formula(f, IMP, true, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Atom(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                write_args(args, out);
            }
        }
        Formula::Imp(a, b) => {
            write_formula(a, OR, false, out);
            out.push_str(" -> ");
            write_formula(b, IMP, rightmost, out);
        }
        Formula::Or(a, b) => {
            write_formula(a, OR, false, out);
            out.push_str(" \\/ ");
            write_formula(b, AND, rightmost, out);
        }
        Formula::And(a, b) => {
            write_formula(a, AND, false, out);
            out.push_str(" /\\ ");
            write_formula(b, PRIMARY, rightmost, out);
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            out.push_str(if matches!(f, Formula::Forall(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(x);
            out.push_str(". ");
            write_formula(body, IMP, true, out);
        }
    }
}

/// A named abbreviation for a leading block of context formulas.
pub type ContextAlias<'a> = (&'a str, &'a [Formula]);

fn context_items(ctx: &[Formula], alias: Option<ContextAlias<'_>>) -> Vec<String> {
    let mut items = Vec::new();
    let mut rest = ctx;
    if let Some((name, prefix)) = alias {
        if !prefix.is_empty() && ctx.starts_with(prefix) {
            items.push(name.to_string());
            rest = &ctx[prefix.len()..];
        }
    }
    items.extend(rest.iter().map(render_formula));
    items
}

fn join_turnstile(items: Vec<String>, conclusion: &Formula) -> String {
    if items.is_empty() {
        format!("|- {}", render_formula(conclusion))
    } else {
        format!("{} |- {}", items.join(", "), render_formula(conclusion))
    }
}

pub fn render_judgment(j: &Judgment, alias: Option<ContextAlias<'_>>) -> String {
    join_turnstile(context_items(&j.context, alias), &j.conclusion)
}

/// Renders a goal without its labels, abbreviating `alias` when it is a prefix.
pub fn render_sequent(s: &Sequent, alias: Option<ContextAlias<'_>>) -> String {
    render_judgment(&s.judgment(), alias)
}

/// Renders a goal as `H1: A, H2: B |- C`.
pub fn render_sequent_labeled(s: &Sequent) -> String {
    let items = s.hypotheses.iter().map(render_hypothesis).collect();
    join_turnstile(items, &s.conclusion)
}

pub fn render_hypothesis(h: &Hypothesis) -> String {
    format!("{}: {}", h.label, render_formula(&h.formula))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(render_formula(&Formula::imp(pr("p"), Formula::or(pr("q"), pr("r")))), "p -> q \\/ r");
        assert_eq!(render_formula(&pr("p")), "p");
        assert_eq!(
            render_formula(&Formula::or(Formula::and(pr("a"), pr("b")), pr("c"))),
            "a /\\ b \\/ c"
        );
        assert_eq!(
            render_formula(&Formula::imp(Formula::imp(pr("a"), pr("b")), pr("c"))),
            "(a -> b) -> c"
        );
        assert_eq!(
            render_formula(&Formula::and(pr("a"), Formula::or(pr("b"), pr("c")))),
            "a /\\ (b \\/ c)"
        );
    }

    #[test]
    fn quantifiers_bracketed_unless_last() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let all = Formula::forall("x", px.clone());
        assert_eq!(render_formula(&Formula::imp(all.clone(), pr("q"))), "(forall x. P(x)) -> q");
        assert_eq!(render_formula(&Formula::imp(pr("q"), all.clone())), "q -> forall x. P(x)");
        let nested = Formula::or(Formula::and(pr("q"), all), pr("r"));
        assert_eq!(render_formula(&nested), "q /\\ (forall x. P(x)) \\/ r");
    }

    #[test]
    fn sequents_with_alias() {
        let gamma = vec![pr("a"), pr("b")];
        let j = Judgment::new(vec![pr("a"), pr("b"), pr("p")], pr("s"));
        assert_eq!(render_judgment(&j, Some(("Γ", &gamma))), "Γ, p |- s");
        assert_eq!(render_judgment(&j, None), "a, b, p |- s");
        let empty = Judgment::new(vec![], pr("p"));
        assert_eq!(render_judgment(&empty, Some(("Γ", &gamma))), "|- p");
    }
}
