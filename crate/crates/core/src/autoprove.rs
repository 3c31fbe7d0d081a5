//! Bounded backward proof search over the tactic transition system.
//!
//! Each goal is attacked with, in order: discarding tactics (`trivial`,
//! `apply` on a matching universal), introduction tactics chosen by the
//! goal's shape, hypothesis tactics (`apply` on an implication whose
//! consequent is the goal, `destruct`), then `assert` of lemmas allowed by
//! the [`LemmaPolicy`]. Sibling subgoals are independent, so each is solved
//! on its own with the depth bound counted along the branch. The bound is
//! raised one step at a time up to [`SearchConfig::max_depth`].

use std::collections::{BTreeSet, HashSet};

use crate::logic::{alpha_eq, contains, Formula, Judgment, Sequent, Term};
use crate::tactics::{expand, replay, Tactic};
use crate::textio::{render_formula, Script};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaPolicy {
    None,
    /// Consequents `B` of hypotheses `A -> B` with `B` not yet a hypothesis.
    ImplicationConsequents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermPool {
    /// Subterms of the goal whose variables are all free in it.
    GroundSubterms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_depth: usize,
    pub max_nodes: usize,
    pub lemma_policy: LemmaPolicy,
    pub term_pool: TermPool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: 12,
            max_nodes: 100_000,
            lemma_policy: LemmaPolicy::ImplicationConsequents,
            term_pool: TermPool::GroundSubterms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotFoundReason {
    DepthExhausted,
    NodesExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Script),
    NotFound(NotFoundReason),
}

impl SearchOutcome {
    pub fn script(&self) -> Option<&Script> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            SearchOutcome::NotFound(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Tactic applications attempted.
    pub nodes: usize,
    /// Depth bound of the last completed or successful round.
    pub depth: usize,
}

pub fn auto_search(goal: &Sequent, cfg: &SearchConfig) -> SearchOutcome {
    auto_search_stats(goal, cfg).0
}

pub fn auto_search_stats(goal: &Sequent, cfg: &SearchConfig) -> (SearchOutcome, SearchStats) {
    let mut s = Searcher {
        cfg,
        nodes: 0,
        failed: HashSet::new(),
    };
    let mut stats = SearchStats::default();
    for depth in 1..=cfg.max_depth {
        stats.depth = depth;
        let mut path = Vec::new();
        match s.prove(goal, depth, &mut path) {
            Ok(Some(tactics)) => {
                stats.nodes = s.nodes;
                let script = Script::new(tactics);
                assert!(replay(goal, &script).is_proved(), "search produced a failing script");
                return (SearchOutcome::Found(script), stats);
            }
            Ok(None) => {}
            Err(OutOfNodes) => {
                stats.nodes = s.nodes;
                return (SearchOutcome::NotFound(NotFoundReason::NodesExhausted), stats);
            }
        }
    }
    stats.nodes = s.nodes;
    (SearchOutcome::NotFound(NotFoundReason::DepthExhausted), stats)
}

struct OutOfNodes;

struct Searcher<'a> {
    cfg: &'a SearchConfig,
    nodes: usize,
    /// (goal key, depth) pairs already known to fail.
    failed: HashSet<(String, usize)>,
}

impl Searcher<'_> {
    fn prove(&mut self, g: &Sequent, depth: usize, path: &mut Vec<Judgment>) -> Result<Option<Vec<Tactic>>, OutOfNodes> {
        if depth == 0 {
            return Ok(None);
        }
        let j = g.judgment();
        if path.iter().any(|a| a.equiv(&j)) {
            return Ok(None);
        }
        let key = goal_key(&j);
        if self.failed.contains(&(key.clone(), depth)) {
            return Ok(None);
        }
        path.push(j);
        let found = self.try_candidates(g, depth, path);
        path.pop();
        let found = found?;
        if found.is_none() {
            self.failed.insert((key, depth));
        }
        Ok(found)
    }

    fn try_candidates(&mut self, g: &Sequent, depth: usize, path: &mut Vec<Judgment>) -> Result<Option<Vec<Tactic>>, OutOfNodes> {
        'next: for t in candidates(g, self.cfg) {
            self.nodes += 1;
            if self.nodes > self.cfg.max_nodes {
                return Err(OutOfNodes);
            }
            let Ok(e) = expand(g, &t) else { continue };
            let mut script = vec![t];
            for sub in &e.subgoals {
                match self.prove(sub, depth - 1, path)? {
                    Some(s) => script.extend(s),
                    None => continue 'next,
                }
            }
            return Ok(Some(script));
        }
        Ok(None)
    }
}

// Context as a sorted set of rendered formulas, so labels and order are ignored.
fn goal_key(j: &Judgment) -> String {
    let ctx: BTreeSet<String> = j.context.iter().map(render_formula).collect();
    let mut key = ctx.into_iter().collect::<Vec<_>>().join(", ");
    key.push_str(" |- ");
    key.push_str(&render_formula(&j.conclusion));
    key
}

fn candidates(g: &Sequent, cfg: &SearchConfig) -> Vec<Tactic> {
    let mut out = Vec::new();
    let hyps = &g.hypotheses;
    let goal = &g.conclusion;

    if hyps.iter().any(|h| alpha_eq(&h.formula, goal)) {
        return vec![Tactic::Trivial];
    }
    for h in hyps {
        if matches!(h.formula, Formula::Forall(..)) {
            let t = Tactic::apply(h.label.clone());
            if expand(g, &t).is_ok() {
                return vec![t];
            }
        }
    }

    match goal {
        Formula::Imp(..) | Formula::Forall(..) => out.push(Tactic::Intro),
        Formula::And(..) => out.push(Tactic::Split),
        Formula::Or(..) => {
            out.push(Tactic::Left);
            out.push(Tactic::Right);
        }
        Formula::Exists(..) => {
            out.extend(term_pool(g, cfg.term_pool).into_iter().map(Tactic::Exists));
        }
        Formula::Atom(..) => {}
    }

    for h in hyps {
        match &h.formula {
            Formula::Imp(_, b) if alpha_eq(b, goal) => out.push(Tactic::apply(h.label.clone())),
            Formula::And(..) | Formula::Or(..) | Formula::Exists(..) => {
                out.push(Tactic::destruct(h.label.clone()))
            }
            _ => {}
        }
    }

    if cfg.lemma_policy == LemmaPolicy::ImplicationConsequents {
        let ctx = g.formulas();
        let mut lemmas: Vec<&Formula> = Vec::new();
        for h in hyps {
            if let Formula::Imp(_, b) = &h.formula {
                if !contains(&ctx, b) && !alpha_eq(b, goal) && !lemmas.iter().any(|l| alpha_eq(l, b)) {
                    lemmas.push(b);
                }
            }
        }
        out.extend(lemmas.into_iter().map(|b| Tactic::assert(b.clone())));
    }
    out
}

/// Candidate witnesses for `exists`, in a fixed order.
pub fn term_pool(g: &Sequent, _policy: TermPool) -> Vec<Term> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in g.formulas().iter().chain(std::iter::once(&g.conclusion)) {
        collect_terms(f, &mut Vec::new(), &mut |t| {
            if seen.insert(t.to_string()) {
                out.push(t.clone());
            }
        });
    }
    out
}

fn collect_terms(f: &Formula, bound: &mut Vec<String>, emit: &mut impl FnMut(&Term)) {
    match f {
        Formula::Atom(_, args) => {
            for a in args {
                subterms(a, bound, emit);
            }
        }
        Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
            collect_terms(a, bound, emit);
            collect_terms(b, bound, emit);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x.clone());
            collect_terms(a, bound, emit);
            bound.pop();
        }
    }
}

fn subterms(t: &Term, bound: &[String], emit: &mut impl FnMut(&Term)) {
    if let Term::App(_, args) = t {
        for a in args {
            subterms(a, bound, emit);
        }
    }
    if t.free_vars().iter().all(|v| !bound.contains(v)) {
        emit(t);
    }
}
