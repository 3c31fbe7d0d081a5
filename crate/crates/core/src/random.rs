//! Random formulas, accepted derivations and finished tactic traces, for
//! property tests and benchmarks.
//!
//! Derivations are grown from the rules: each node picks a rule, builds
//! premises under the contexts that rule needs, and inserts small detours
//! (an introduction followed by the matching elimination) when a premise
//! of the required shape is not at hand.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::autoprove::{auto_search, SearchConfig, SearchOutcome};
use crate::equivalence::{derivation_to_tactics, EquivalenceError, TacticTrace};
use crate::kernel::{Derivation, ProofTree, Rule, Witness};
use crate::logic::{alpha_eq, fresh_var, free_vars_of_context, Formula, Judgment, Sequent, Term};
use crate::tactics::{expand, Tactic};
use crate::textio::Script;

/// Vocabulary and size bounds for generated objects.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub props: Vec<String>,
    /// Predicate symbols with arities. Empty for propositional generation.
    pub preds: Vec<(String, usize)>,
    pub funcs: Vec<(String, usize)>,
    pub vars: Vec<String>,
    /// Nesting bound for generated formulas.
    pub formula_depth: usize,
    /// Height bound for generated proof trees.
    pub height: usize,
}

impl GenConfig {
    pub fn propositional(atoms: usize, height: usize) -> GenConfig {
        GenConfig {
            props: ["p", "q", "r", "s", "t", "u"][..atoms.clamp(1, 6)]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            preds: Vec::new(),
            funcs: Vec::new(),
            vars: Vec::new(),
            formula_depth: 2,
            height,
        }
    }

    pub fn first_order(height: usize) -> GenConfig {
        GenConfig {
            props: vec!["p".into(), "q".into()],
            preds: vec![("P".into(), 1), ("Q".into(), 1), ("R".into(), 2)],
            funcs: vec![("f".into(), 1), ("g".into(), 2), ("c".into(), 0)],
            vars: vec!["x".into(), "y".into(), "z".into()],
            formula_depth: 2,
            height,
        }
    }

    fn is_first_order(&self) -> bool {
        !self.preds.is_empty()
    }
}

pub fn random_term(rng: &mut impl Rng, cfg: &GenConfig, depth: usize) -> Term {
    let leaf = depth == 0 || cfg.funcs.is_empty() || rng.random_bool(0.6);
    if leaf && !cfg.vars.is_empty() {
        return Term::var(cfg.vars.choose(rng).unwrap().as_str());
    }
    let (f, n) = cfg.funcs.choose(rng).expect("function symbols");
    Term::app(f.as_str(), (0..*n).map(|_| random_term(rng, cfg, depth.saturating_sub(1))).collect())
}

fn random_atom(rng: &mut impl Rng, cfg: &GenConfig) -> Formula {
    if cfg.preds.is_empty() || rng.random_bool(0.3) {
        return Formula::prop(cfg.props.choose(rng).unwrap().as_str());
    }
    let (p, n) = cfg.preds.choose(rng).unwrap();
    Formula::atom(p.as_str(), (0..*n).map(|_| random_term(rng, cfg, 1)).collect())
}

pub fn random_formula(rng: &mut impl Rng, cfg: &GenConfig, depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.3) {
        return random_atom(rng, cfg);
    }
    let kinds = if cfg.is_first_order() { 5 } else { 3 };
    let sub = |rng: &mut _| random_formula(rng, cfg, depth - 1);
    match rng.random_range(0..kinds) {
        0 => Formula::imp(sub(rng), sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::forall(cfg.vars.choose(rng).unwrap().as_str(), sub(rng)),
        _ => Formula::exists(cfg.vars.choose(rng).unwrap().as_str(), sub(rng)),
    }
}

fn node(ctx: &[Formula], c: Formula, rule: Rule, w: Option<Witness>, ps: Vec<ProofTree>) -> ProofTree {
    ProofTree::new(Judgment::new(ctx.to_vec(), c), rule, w, ps)
}

fn extend(ctx: &[Formula], f: &Formula) -> Vec<Formula> {
    let mut out = ctx.to_vec();
    out.push(f.clone());
    out
}

fn all_vars(ctx: &[Formula], extra: &[&Formula]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in ctx.iter().chain(extra.iter().copied()) {
        out.extend(f.all_vars());
    }
    out
}

struct Gen<'a, R> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
}

impl<R: Rng> Gen<'_, R> {
    fn formula(&mut self) -> Formula {
        random_formula(self.rng, self.cfg, self.cfg.formula_depth)
    }

    fn hyp(&mut self, ctx: &[Formula]) -> ProofTree {
        let f = ctx.choose(self.rng).expect("non-empty context").clone();
        node(ctx, f, Rule::Hyp, None, Vec::new())
    }

    /// A tree of height at most `h` under exactly `ctx`.
    fn tree(&mut self, ctx: &[Formula], h: usize) -> ProofTree {
        if h <= 1 || self.rng.random_bool(0.15) {
            return self.hyp(ctx);
        }
        let rules: &[Rule] = if self.cfg.is_first_order() {
            &Rule::ALL[1..13]
        } else {
            &Rule::ALL[1..9]
        };
        match *rules.choose(self.rng).unwrap() {
            Rule::ImpI => {
                let a = self.formula();
                let p = self.tree(&extend(ctx, &a), h - 1);
                node(ctx, Formula::imp(a, p.conclusion().clone()), Rule::ImpI, None, vec![p])
            }
            Rule::ImpE => self.imp_elim(ctx, h),
            Rule::AndI => {
                let a = self.tree(ctx, h - 1);
                let b = self.tree(ctx, h - 1);
                let c = Formula::and(a.conclusion().clone(), b.conclusion().clone());
                node(ctx, c, Rule::AndI, None, vec![a, b])
            }
            rule @ (Rule::AndEL | Rule::AndER) => {
                let has = ctx.iter().any(|f| matches!(f, Formula::And(..)));
                if h < 3 && !has {
                    return self.hyp(ctx);
                }
                let p = self.conjunction(ctx, h - 1);
                let Formula::And(a, b) = p.conclusion().clone() else { unreachable!() };
                let c = if rule == Rule::AndEL { *a } else { *b };
                node(ctx, c, rule, None, vec![p])
            }
            rule @ (Rule::OrIL | Rule::OrIR) => {
                let p = self.tree(ctx, h - 1);
                let other = self.formula();
                let c = if rule == Rule::OrIL {
                    Formula::or(p.conclusion().clone(), other)
                } else {
                    Formula::or(other, p.conclusion().clone())
                };
                node(ctx, c, rule, None, vec![p])
            }
            Rule::OrE => self.or_elim(ctx, h),
            Rule::ForallI => self.forall_intro(ctx, h),
            Rule::ForallE => {
                let has = ctx.iter().any(|f| matches!(f, Formula::Forall(..)));
                if h < 3 && !has {
                    return self.hyp(ctx);
                }
                let p = self.universal(ctx, h - 1);
                let Formula::Forall(x, a) = p.conclusion().clone() else { unreachable!() };
                let t = random_term(self.rng, self.cfg, 1);
                node(ctx, a.substitute(&x, &t), Rule::ForallE, Some(Witness::Term(t)), vec![p])
            }
            Rule::ExistsI => {
                let p = self.tree(ctx, h - 1);
                self.exists_intro(ctx, p)
            }
            Rule::ExistsE => self.exists_elim(ctx, h),
            Rule::Hyp | Rule::Assumed => self.hyp(ctx),
        }
    }

    fn imp_elim(&mut self, ctx: &[Formula], h: usize) -> ProofTree {
        let minor = self.tree(ctx, h - 1);
        let a = minor.conclusion().clone();
        let from_ctx = ctx.iter().find(|f| matches!(f, Formula::Imp(x, _) if alpha_eq(x, &a))).cloned();
        let major = match from_ctx {
            Some(imp) => node(ctx, imp, Rule::Hyp, None, Vec::new()),
            None if h >= 3 => {
                let body = self.tree(&extend(ctx, &a), h - 2);
                let imp = Formula::imp(a.clone(), body.conclusion().clone());
                node(ctx, imp, Rule::ImpI, None, vec![body])
            }
            None => return minor,
        };
        let Formula::Imp(_, b) = major.conclusion().clone() else { unreachable!() };
        node(ctx, *b, Rule::ImpE, None, vec![major, minor])
    }

    fn conjunction(&mut self, ctx: &[Formula], h: usize) -> ProofTree {
        if let Some(f) = ctx.iter().find(|f| matches!(f, Formula::And(..))) {
            if self.rng.random_bool(0.5) || h < 2 {
                return node(ctx, f.clone(), Rule::Hyp, None, Vec::new());
            }
        }
        let p = self.tree(ctx, h);
        if matches!(p.conclusion(), Formula::And(..)) {
            return p;
        }
        let a = self.tree(ctx, h - 1);
        let b = self.tree(ctx, h - 1);
        let c = Formula::and(a.conclusion().clone(), b.conclusion().clone());
        node(ctx, c, Rule::AndI, None, vec![a, b])
    }

    fn or_elim(&mut self, ctx: &[Formula], h: usize) -> ProofTree {
        if h < 3 {
            return self.hyp(ctx);
        }
        let major = match ctx.iter().find(|f| matches!(f, Formula::Or(..))) {
            Some(f) if self.rng.random_bool(0.6) => node(ctx, f.clone(), Rule::Hyp, None, Vec::new()),
            _ => {
                let p = self.tree(ctx, h - 2);
                let other = self.formula();
                node(ctx, Formula::or(p.conclusion().clone(), other), Rule::OrIL, None, vec![p])
            }
        };
        let Formula::Or(a, b) = major.conclusion().clone() else { unreachable!() };
        let l = self.tree(&extend(ctx, &a), h - 2);
        let r = self.tree(&extend(ctx, &b), h - 2);
        let (cl, cr) = (l.conclusion().clone(), r.conclusion().clone());
        let (l, r, c) = if alpha_eq(&cl, &cr) {
            (l, r, cl)
        } else {
            let c = Formula::or(cl, cr);
            let l = node(&extend(ctx, &a), c.clone(), Rule::OrIL, None, vec![l]);
            let r = node(&extend(ctx, &b), c.clone(), Rule::OrIR, None, vec![r]);
            (l, r, c)
        };
        node(ctx, c, Rule::OrE, None, vec![major, l, r])
    }

    fn forall_intro(&mut self, ctx: &[Formula], h: usize) -> ProofTree {
        let p = self.tree(ctx, h - 1);
        let fv_ctx = free_vars_of_context(ctx);
        let c = p.conclusion().clone();
        let candidates: Vec<String> = c.free_vars().into_iter().filter(|v| !fv_ctx.contains(v)).collect();
        let y = match candidates.choose(self.rng) {
            Some(y) => y.clone(),
            None => fresh_var("w", &all_vars(ctx, &[&c])),
        };
        node(ctx, Formula::forall(y.as_str(), c), Rule::ForallI, Some(Witness::Eigen(y)), vec![p])
    }

    fn universal(&mut self, ctx: &[Formula], h: usize) -> ProofTree {
        if let Some(f) = ctx.iter().find(|f| matches!(f, Formula::Forall(..))) {
            if self.rng.random_bool(0.6) || h < 2 {
                return node(ctx, f.clone(), Rule::Hyp, None, Vec::new());
            }
        }
        self.forall_intro(ctx, h)
    }

    fn exists_intro(&mut self, ctx: &[Formula], p: ProofTree) -> ProofTree {
        let c = p.conclusion().clone();
        let z = fresh_var("z", &all_vars(ctx, &[&c]));
        let free: Vec<String> = c.free_vars().into_iter().collect();
        let (body, t) = match free.choose(self.rng) {
            Some(v) => (c.substitute(v, &Term::var(z.as_str())), Term::var(v.as_str())),
            None => (c.clone(), random_term(self.rng, self.cfg, 1)),
        };
        node(ctx, Formula::exists(z.as_str(), body), Rule::ExistsI, Some(Witness::Term(t)), vec![p])
    }

    fn exists_elim(&mut self, ctx: &[Formula], h: usize) -> ProofTree {
        if h < 3 {
            return self.hyp(ctx);
        }
        let major = match ctx.iter().find(|f| matches!(f, Formula::Exists(..))) {
            Some(f) if self.rng.random_bool(0.6) => node(ctx, f.clone(), Rule::Hyp, None, Vec::new()),
            _ => {
                let p = self.tree(ctx, h - 2);
                self.exists_intro(ctx, p)
            }
        };
        let Formula::Exists(x, a) = major.conclusion().clone() else { unreachable!() };
        let y = fresh_var(&x, &all_vars(ctx, &[major.conclusion()]));
        let inst = a.substitute(&x, &Term::var(y.as_str()));
        let inner = extend(ctx, &inst);
        let mut minor = self.tree(&inner, h - 2);
        if minor.conclusion().is_free(&y) {
            minor = self.abstract_var(&inner, minor, &y);
        }
        let c = minor.conclusion().clone();
        node(ctx, c, Rule::ExistsE, Some(Witness::Eigen(y)), vec![major, minor])
    }

    fn abstract_var(&mut self, ctx: &[Formula], p: ProofTree, y: &str) -> ProofTree {
        let c = p.conclusion().clone();
        let z = fresh_var("z", &all_vars(ctx, &[&c]));
        let body = c.substitute(y, &Term::var(z.as_str()));
        node(ctx, Formula::exists(z.as_str(), body), Rule::ExistsI, Some(Witness::Term(Term::var(y))), vec![p])
    }
}

/// A kernel-accepted derivation with no assumptions and height at most
/// `cfg.height`, under a random non-empty context.
pub fn random_derivation(rng: &mut impl Rng, cfg: &GenConfig) -> Derivation {
    random_tree(rng, cfg).to_derivation(&[])
}

pub fn random_tree(rng: &mut impl Rng, cfg: &GenConfig) -> ProofTree {
    let n = rng.random_range(1..=3);
    let mut g = Gen { rng, cfg };
    let ctx: Vec<Formula> = (0..n).map(|_| g.formula()).collect();
    g.tree(&ctx, cfg.height.max(1))
}

/// A finished trace for the judgment of a random derivation: the backward
/// prover's script when it finds one quickly, otherwise the script read off
/// the derivation. Some `assert` steps are then rewritten into `cut`.
pub fn random_trace(rng: &mut impl Rng, cfg: &GenConfig) -> Result<TacticTrace, EquivalenceError> {
    let d = random_derivation(rng, cfg);
    let goal = Sequent::from_judgment(d.conclusion().expect("non-empty"));
    let quick = SearchConfig {
        max_depth: 6,
        max_nodes: 2_000,
        ..SearchConfig::default()
    };
    let script = match auto_search(&goal, &quick) {
        SearchOutcome::Found(s) if rng.random_bool(0.5) => s,
        _ => derivation_to_tactics(&d)?,
    };
    let script = asserts_to_cuts(rng, &goal, &script, 0.5)?;
    TacticTrace::record(&goal, &script)
}

struct TacNode {
    tactic: Tactic,
    children: Vec<TacNode>,
}

fn tac_tree(g: &Sequent, rest: &mut std::slice::Iter<'_, Tactic>) -> Result<TacNode, EquivalenceError> {
    let t = rest
        .next()
        .ok_or_else(|| EquivalenceError::MalformedTrace("script ended early".into()))?;
    let e = expand(g, t)?;
    let children = e
        .subgoals
        .iter()
        .map(|s| tac_tree(s, rest))
        .collect::<Result<_, _>>()?;
    Ok(TacNode {
        tactic: t.clone(),
        children,
    })
}

/// Replaces `assert (A). P. Q.` by `cut (A). intro. Q. P.` with probability
/// `p` per occurrence; `intro` picks the label `assert` would have used.
pub fn asserts_to_cuts(rng: &mut impl Rng, goal: &Sequent, script: &Script, p: f64) -> Result<Script, EquivalenceError> {
    let tree = tac_tree(goal, &mut script.tactics.iter())?;
    let mut out = Vec::new();
    rewrite(rng, goal, &tree, p, &mut out)?;
    Ok(Script::new(out))
}

fn rewrite(rng: &mut impl Rng, g: &Sequent, n: &TacNode, p: f64, out: &mut Vec<Tactic>) -> Result<(), EquivalenceError> {
    if let Tactic::Assert { lemma, label: None } = &n.tactic {
        if rng.random_bool(p) {
            let e = expand(g, &Tactic::Cut(lemma.clone()))?;
            out.push(Tactic::Cut(lemma.clone()));
            let intro = expand(&e.subgoals[0], &Tactic::Intro)?;
            out.push(Tactic::Intro);
            rewrite(rng, &intro.subgoals[0], &n.children[1], p, out)?;
            rewrite(rng, &e.subgoals[1], &n.children[0], p, out)?;
            return Ok(());
        }
    }
    let e = expand(g, &n.tactic)?;
    out.push(n.tactic.clone());
    for (s, c) in e.subgoals.iter().zip(&n.children) {
        rewrite(rng, s, c, p, out)?;
    }
    Ok(())
}
