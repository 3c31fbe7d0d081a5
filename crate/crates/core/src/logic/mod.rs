//! Terms, formulas and sequents of minimal first-order logic.
//!
//! There is no falsum and no negation: the connectives are `->`, `/\`, `\/`
//! and the two quantifiers. Propositional variables are zero-arity atoms.

mod matching;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

pub use matching::{match_against, MatchError, MatchOutcome};
pub use subst::{alpha_eq, fresh_var, free_vars_of_context};

/// A first-order term. Constants are zero-arity applications.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn occurs(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::App(_, args) => args.iter().any(|a| a.occurs(x)),
        }
    }

    /// Replaces every occurrence of the variable `x` by `t`.
    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
        }
    }
}

/// A formula of minimal first-order logic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Imp(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    /// A zero-arity atom, i.e. a propositional variable.
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into(), Vec::new())
    }

    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(name.into(), args)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    /// Number of connectives and quantifiers.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) => 1,
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        subst::collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_free(&self, x: &str) -> bool {
        subst::occurs_free(self, x)
    }

    /// Every variable name in the formula, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    pub(crate) fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.collect_all_vars(out);
            }
        }
    }

    /// Capture-avoiding substitution `self[x := t]`.
    pub fn substitute(&self, x: &str, t: &Term) -> Formula {
        subst::substitute(self, x, t)
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_eq(self, other)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render_term(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render_formula(self))
    }
}

/// `true` when some member of `ctx` is alpha-equivalent to `f`.
pub fn contains(ctx: &[Formula], f: &Formula) -> bool {
    ctx.iter().any(|g| alpha_eq(g, f))
}

/// Compares two contexts as sets of formulas up to alpha-equivalence.
pub fn context_set_eq(a: &[Formula], b: &[Formula]) -> bool {
    a.iter().all(|f| contains(b, f)) && b.iter().all(|f| contains(a, f))
}

/// A judgment `Γ ⊢ A` with an unlabeled context, as used by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Judgment {
    pub context: Vec<Formula>,
    pub conclusion: Formula,
}

impl Judgment {
    pub fn new(context: Vec<Formula>, conclusion: Formula) -> Judgment {
        Judgment {
            context,
            conclusion,
        }
    }

    /// Context and conclusion compared with set semantics and alpha-equivalence.
    pub fn equiv(&self, other: &Judgment) -> bool {
        alpha_eq(&self.conclusion, &other.conclusion)
            && context_set_eq(&self.context, &other.context)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut fv = free_vars_of_context(&self.context);
        fv.extend(self.conclusion.free_vars());
        fv
    }

    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in &self.context {
            f.collect_all_vars(&mut out);
        }
        self.conclusion.collect_all_vars(&mut out);
        out
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render_judgment(self, None))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    pub label: String,
    pub formula: Formula,
}

impl Hypothesis {
    pub fn new(label: impl Into<String>, formula: Formula) -> Hypothesis {
        Hypothesis {
            label: label.into(),
            formula,
        }
    }
}

/// A goal: labeled hypotheses and a conclusion. Labels are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Formula,
}

pub(crate) const AUTO_LABEL: &str = "H";

impl Sequent {
    pub fn new(hypotheses: Vec<Hypothesis>, conclusion: Formula) -> Sequent {
        Sequent {
            hypotheses,
            conclusion,
        }
    }

    /// Labels the context `H`, `H1`, `H2`, ... in order.
    pub fn from_judgment(j: &Judgment) -> Sequent {
        let mut s = Sequent::new(Vec::new(), j.conclusion.clone());
        for f in &j.context {
            let label = s.fresh_label();
            s.hypotheses.push(Hypothesis::new(label, f.clone()));
        }
        s
    }

    pub fn judgment(&self) -> Judgment {
        Judgment::new(self.formulas(), self.conclusion.clone())
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.hypotheses.iter().map(|h| h.formula.clone()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.label == label)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.hypotheses.iter().position(|h| h.label == label)
    }

    pub fn labels(&self) -> BTreeSet<String> {
        self.hypotheses.iter().map(|h| h.label.clone()).collect()
    }

    /// Next automatic hypothesis label not already in use.
    pub fn fresh_label(&self) -> String {
        fresh_var(AUTO_LABEL, &self.labels())
    }

    pub fn context_free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for h in &self.hypotheses {
            out.extend(h.formula.free_vars());
        }
        out
    }

    /// Same hypotheses (as a set of formulas) and alpha-equal conclusion.
    pub fn equiv(&self, other: &Sequent) -> bool {
        self.judgment().equiv(&other.judgment())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render_sequent(self, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Formula {
        Formula::prop(n)
    }

    #[test]
    fn fv_of_quantified_atom() {
        let f = Formula::forall("x", Formula::atom("P", vec![Term::var("x"), Term::var("y")]));
        assert_eq!(f.free_vars(), BTreeSet::from(["y".to_string()]));
    }

    #[test]
    fn fv_of_propositional_is_empty() {
        assert!(Formula::imp(p("p"), p("q")).free_vars().is_empty());
    }

    #[test]
    fn fv_example5_consequent() {
        let body = Formula::and(
            Formula::atom("Q", vec![Term::var("z")]),
            Formula::atom("R", vec![Term::var("x"), Term::var("z")]),
        );
        let f = Formula::exists("z", body);
        assert_eq!(f.free_vars(), BTreeSet::from(["x".to_string()]));
    }

    #[test]
    fn judgment_set_semantics() {
        let a = Judgment::new(vec![p("p"), p("q")], p("r"));
        let b = Judgment::new(vec![p("q"), p("p")], p("r"));
        let c = Judgment::new(vec![p("p"), p("p")], p("r"));
        let d = Judgment::new(vec![p("p")], p("r"));
        let e = Judgment::new(vec![p("p")], p("s"));
        assert!(a.equiv(&b));
        assert!(c.equiv(&d));
        assert!(!d.equiv(&e));
    }

    #[test]
    fn auto_labels_skip_used_names() {
        let s = Sequent::new(
            vec![Hypothesis::new("H", p("a")), Hypothesis::new("H1", p("b"))],
            p("c"),
        );
        assert_eq!(s.fresh_label(), "H2");
        let j = Judgment::new(vec![p("a"), p("b"), p("c")], p("d"));
        let labels: Vec<_> = Sequent::from_judgment(&j)
            .hypotheses
            .into_iter()
            .map(|h| h.label)
            .collect();
        assert_eq!(labels, ["H", "H1", "H2"]);
    }
}
