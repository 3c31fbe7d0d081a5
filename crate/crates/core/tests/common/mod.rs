#![allow(dead_code)]

use minilog_core::logic::{Formula, Judgment, Sequent};
use minilog_core::tactics::GoalState;
use minilog_core::textio::{parse_formula, parse_judgment, parse_script, parse_theorem, Script};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub struct Worked {
    pub name: &'static str,
    pub goal: Sequent,
    pub script: Script,
    /// Context abbreviation used in `rows`.
    pub alias: (&'static str, Vec<Formula>),
    /// Expected goal list after each step, starting with the initial state.
    pub rows: Vec<Vec<&'static str>>,
}

pub fn worked(name: &'static str) -> Worked {
    let thm = parse_theorem(&fixture(&format!("{name}.thm"))).unwrap();
    let script = parse_script(&fixture(&format!("{name}.v"))).unwrap();
    let (alias, rows) = match name {
        "disjunction_chain" => (("Γ", thm.context()), chain_rows()),
        "conjunction_split" => (("Γ", thm.context()), split_rows()),
        "witness_transfer" => (
            ("A", vec![parse_formula("forall v. P(v) -> Q(v)").unwrap()]),
            transfer_rows(),
        ),
        _ => panic!("no worked example {name}"),
    };
    Worked {
        name,
        goal: thm.sequent(),
        script,
        alias,
        rows,
    }
}

pub const WORKED: [&str; 3] = ["disjunction_chain", "conjunction_split", "witness_transfer"];

fn chain_rows() -> Vec<Vec<&'static str>> {
    vec![
        vec!["Γ |- p -> s"],
        vec!["Γ, p |- s"],
        vec!["Γ, p |- r"],
        vec!["Γ, p |- q \\/ r", "Γ, p, q \\/ r |- r"],
        vec!["Γ, p |- p", "Γ, p, q \\/ r |- r"],
        vec!["Γ, p, q \\/ r |- r"],
        vec!["Γ, p, q |- r", "Γ, p, r |- r"],
        vec!["Γ, p, q |- q", "Γ, p, r |- r"],
        vec!["Γ, p, r |- r"],
        vec![],
    ]
}

fn split_rows() -> Vec<Vec<&'static str>> {
    vec![
        vec!["Γ |- m /\\ p -> x"],
        vec!["Γ, m /\\ p |- x"],
        vec!["Γ, m /\\ p |- (s /\\ t) /\\ l"],
        vec!["Γ, m, p |- (s /\\ t) /\\ l"],
        vec!["Γ, m, p |- s /\\ t", "Γ, m, p |- l"],
        vec!["Γ, m, p |- m \\/ q", "Γ, m, p |- l"],
        vec!["Γ, m, p |- m", "Γ, m, p |- l"],
        vec!["Γ, m, p |- l"],
        vec!["Γ, m, p |- (x \\/ p) /\\ q"],
        vec!["Γ, m, p |- x \\/ p", "Γ, m, p |- q"],
        vec!["Γ, m, p |- p", "Γ, m, p |- q"],
        vec!["Γ, m, p |- q"],
        vec!["Γ, m, p |- p"],
        vec![],
    ]
}

fn transfer_rows() -> Vec<Vec<&'static str>> {
    vec![
        vec!["|- (forall v. P(v) -> Q(v)) -> forall x. (exists y. P(y) /\\ R(x,y)) -> exists z. Q(z) /\\ R(x,z)"],
        vec!["A |- forall x. (exists y. P(y) /\\ R(x,y)) -> exists z. Q(z) /\\ R(x,z)"],
        vec!["A |- (exists y. P(y) /\\ R(x,y)) -> exists z. Q(z) /\\ R(x,z)"],
        vec!["A, exists y. P(y) /\\ R(x,y) |- exists z. Q(z) /\\ R(x,z)"],
        vec!["A, P(y) /\\ R(x,y) |- exists z. Q(z) /\\ R(x,z)"],
        vec!["A, P(y), R(x,y) |- exists z. Q(z) /\\ R(x,z)"],
        vec!["A, P(y), R(x,y) |- Q(y) /\\ R(x,y)"],
        vec!["A, P(y), R(x,y) |- Q(y)", "A, P(y), R(x,y) |- R(x,y)"],
        vec![
            "A, P(y), R(x,y) |- P(y) -> Q(y)",
            "A, P(y), R(x,y), P(y) -> Q(y) |- Q(y)",
            "A, P(y), R(x,y) |- R(x,y)",
        ],
        vec!["A, P(y), R(x,y), P(y) -> Q(y) |- Q(y)", "A, P(y), R(x,y) |- R(x,y)"],
        vec!["A, P(y), R(x,y), P(y) -> Q(y) |- P(y)", "A, P(y), R(x,y) |- R(x,y)"],
        vec!["A, P(y), R(x,y) |- R(x,y)"],
        vec![],
    ]
}

/// Compares a replayed state with an expected row: same number of goals, and
/// each goal equal to the expected judgment up to context order and renaming
/// of bound variables.
pub fn row_matches(w: &Worked, state: &GoalState, row: &[&str]) -> Result<(), String> {
    let aliases = [(w.alias.0.to_string(), w.alias.1.clone())];
    if state.goals().len() != row.len() {
        return Err(format!("{} goals, expected {}", state.goals().len(), row.len()));
    }
    for (g, text) in state.goals().iter().zip(row) {
        let want: Judgment = parse_judgment(text, &aliases).map_err(|e| format!("{text}: {e}"))?;
        if !g.judgment().equiv(&want) {
            return Err(format!("goal `{g}`, expected `{text}`"));
        }
    }
    Ok(())
}
