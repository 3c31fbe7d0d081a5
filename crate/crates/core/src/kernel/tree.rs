use std::collections::{BTreeSet, HashMap};

use super::{Derivation, Justification, Rule, Witness};
use crate::logic::{alpha_eq, Formula, Judgment, Term};

/// A derivation unfolded into a tree, each node owning copies of its premises.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofTree {
    pub judgment: Judgment,
    pub rule: Rule,
    pub witness: Option<Witness>,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn new(judgment: Judgment, rule: Rule, witness: Option<Witness>, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree {
            judgment,
            rule,
            witness,
            premises,
        }
    }

    pub fn leaf(judgment: Judgment, rule: Rule) -> ProofTree {
        ProofTree::new(judgment, rule, None, Vec::new())
    }

    pub fn conclusion(&self) -> &Formula {
        &self.judgment.conclusion
    }

    pub fn context(&self) -> &[Formula] {
        &self.judgment.context
    }

    /// The tree rooted at the last line. `ImpE` premises are put major first
    /// and implicit eigenvariables are made explicit.
    pub fn from_derivation(d: &Derivation) -> Option<ProofTree> {
        let mut built: Vec<ProofTree> = Vec::with_capacity(d.lines.len());
        for line in &d.lines {
            let just = &line.justification;
            let mut premises: Vec<ProofTree> = just
                .premises
                .iter()
                .map(|&k| built[k - 1].clone())
                .collect();
            if just.rule == Rule::ImpE && premises.len() == 2 {
                let major_first = matches!(premises[0].conclusion(), Formula::Imp(a, _)
                    if alpha_eq(a, premises[1].conclusion()));
                if !major_first {
                    premises.swap(0, 1);
                }
            }
            let witness = match (just.rule, &just.witness) {
                (Rule::ForallI, None) => match &line.judgment.conclusion {
                    Formula::Forall(x, _) => Some(Witness::Eigen(x.clone())),
                    _ => None,
                },
                (Rule::ExistsE, None) => match premises.first().map(|p| p.conclusion()) {
                    Some(Formula::Exists(x, _)) => Some(Witness::Eigen(x.clone())),
                    _ => None,
                },
                (_, w) => w.clone(),
            };
            built.push(ProofTree::new(line.judgment.clone(), just.rule, witness, premises));
        }
        built.pop()
    }

    /// Linearizes in post-order, sharing identical subtrees. `Assumed`
    /// leaves are added to `assumed` when not already present.
    pub fn to_derivation(&self, assumed: &[Judgment]) -> Derivation {
        let mut d = Derivation {
            lines: Vec::new(),
            assumed: assumed.to_vec(),
        };
        let mut seen: HashMap<&ProofTree, usize> = HashMap::new();
        self.emit(&mut d, &mut seen);
        d
    }

    fn emit<'a>(&'a self, d: &mut Derivation, seen: &mut HashMap<&'a ProofTree, usize>) -> usize {
        if let Some(&i) = seen.get(self) {
            return i;
        }
        let premises = self.premises.iter().map(|p| p.emit(d, seen)).collect();
        if self.rule == Rule::Assumed && !d.assumed.iter().any(|a| a.equiv(&self.judgment)) {
            d.assumed.push(self.judgment.clone());
        }
        let i = d.push(
            self.judgment.clone(),
            Justification::new(self.rule, premises, self.witness.clone()),
        );
        seen.insert(self, i);
        i
    }

    /// Every variable name occurring anywhere, free, bound or as a witness.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        out.extend(self.judgment.all_vars());
        match &self.witness {
            Some(Witness::Term(t)) => out.extend(t.free_vars()),
            Some(Witness::Eigen(y)) => {
                out.insert(y.clone());
            }
            None => {}
        }
        for p in &self.premises {
            p.collect_vars(out);
        }
    }

    /// Variables free in some judgment or witness, eigenvariables included.
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        out.extend(self.judgment.free_vars());
        match &self.witness {
            Some(Witness::Term(t)) => out.extend(t.free_vars()),
            Some(Witness::Eigen(y)) => {
                out.insert(y.clone());
            }
            None => {}
        }
        for p in &self.premises {
            p.collect_free(out);
        }
    }

    /// Replaces free `from` by `to` throughout, eigenvariables included.
    /// `to` must not be free anywhere in the tree.
    pub fn rename_var(&self, from: &str, to: &str) -> ProofTree {
        debug_assert!(!self.free_names().contains(to));
        let t = Term::var(to);
        self.rename_with(from, &t)
    }

    fn rename_with(&self, from: &str, to: &Term) -> ProofTree {
        let judgment = Judgment::new(
            self.judgment.context.iter().map(|f| f.substitute(from, to)).collect(),
            self.judgment.conclusion.substitute(from, to),
        );
        let witness = match &self.witness {
            Some(Witness::Term(w)) => Some(Witness::Term(w.substitute(from, to))),
            Some(Witness::Eigen(y)) if y == from => match to {
                Term::Var(z) => Some(Witness::Eigen(z.clone())),
                _ => unreachable!("renaming to a variable"),
            },
            w => w.clone(),
        };
        ProofTree::new(
            judgment,
            self.rule,
            witness,
            self.premises.iter().map(|p| p.rename_with(from, to)).collect(),
        )
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn assumed_leaves(&self) -> Vec<&Judgment> {
        let mut out = Vec::new();
        self.collect_assumed(&mut out);
        out
    }

    fn collect_assumed<'a>(&'a self, out: &mut Vec<&'a Judgment>) {
        if self.rule == Rule::Assumed {
            out.push(&self.judgment);
        }
        for p in &self.premises {
            p.collect_assumed(out);
        }
    }

    /// The formula premise `i` adds to this node's context, if any.
    pub fn discharged(&self, i: usize) -> Option<Formula> {
        match (self.rule, i) {
            (Rule::ImpI, 0) => match self.conclusion() {
                Formula::Imp(a, _) => Some((**a).clone()),
                _ => None,
            },
            (Rule::OrE, 1 | 2) => match self.premises[0].conclusion() {
                Formula::Or(a, b) => Some(if i == 1 { (**a).clone() } else { (**b).clone() }),
                _ => None,
            },
            (Rule::ExistsE, 1) => match (self.premises[0].conclusion(), &self.witness) {
                (Formula::Exists(x, a), Some(Witness::Eigen(y))) => Some(a.substitute(x, &Term::var(y.as_str()))),
                (Formula::Exists(_, a), _) => Some((**a).clone()),
                _ => None,
            },
            _ => None,
        }
    }

    /// The eigenvariable of a `ForallI` or `ExistsE` node.
    pub fn eigenvariable(&self) -> Option<&str> {
        match &self.witness {
            Some(Witness::Eigen(y)) => Some(y),
            _ => None,
        }
    }
}
