mod common;

use minilog_core::equivalence::{derivation_to_tactics, tactics_to_derivation, trace_to_tree, TacticTrace};
use minilog_core::kernel::{check_derivation, graft, weaken, RejectReason};
use minilog_core::logic::Sequent;
use minilog_core::tactics::{replay, ReplayOutcome, Tactic};
use minilog_core::textio::{parse_derivation, parse_formula, parse_judgment, render_derivation, Script};

use common::{fixture, row_matches, worked, WORKED};

fn chain() -> minilog_core::kernel::Derivation {
    parse_derivation(&fixture("disjunction_chain.deriv")).unwrap()
}

#[test]
fn chain_derivation_accepted() {
    let d = chain();
    assert_eq!(d.len(), 11);
    check_derivation(&d).unwrap();
    let want = parse_judgment("p -> q \\/ r, q -> r, r -> s |- p -> s", &[]).unwrap();
    assert!(d.conclusion().unwrap().equiv(&want));
}

#[test]
fn final_line_as_forall_intro_is_bad_shape() {
    let text = fixture("disjunction_chain.deriv").replace("11 | Γ |- p -> s | ImpI 10", "11 | Γ |- p -> s | ForallI 10");
    let r = check_derivation(&parse_derivation(&text).unwrap()).unwrap_err();
    assert_eq!((r.line, r.reason), (11, RejectReason::BadPremiseShape));
}

#[test]
fn forward_premise_is_bad_index() {
    let text = "1 | p |- p | Hyp\n2 | p |- p | Hyp\n3 | p |- p /\\ p | AndI 1,5";
    assert_eq!(parse_derivation(text).unwrap_err().code(), "BadIndex");
    let mut d = parse_derivation("1 | p |- p | Hyp\n2 | p |- p /\\ p | AndI 1,1").unwrap();
    d.lines[1].justification.premises[1] = 5;
    let r = check_derivation(&d).unwrap_err();
    assert_eq!((r.line, r.reason), (2, RejectReason::BadIndex));
}

#[test]
fn derivation_text_round_trips() {
    let d = chain();
    let again = parse_derivation(&render_derivation(&d)).unwrap();
    assert_eq!(again, d);
}

#[test]
fn worked_rows_match() {
    for name in WORKED {
        let w = worked(name);
        let r = replay(&w.goal, &w.script);
        assert!(r.is_proved(), "{name}: {:?}", r.outcome);
        assert_eq!(r.states.len(), w.rows.len(), "{name}");
        for (i, (s, row)) in r.states.iter().zip(&w.rows).enumerate() {
            row_matches(&w, s, row).unwrap_or_else(|e| panic!("{name} row {}: {e}", i + 1));
        }
    }
}

#[test]
fn missing_final_trivial_leaves_one_goal() {
    let w = worked("disjunction_chain");
    let mut tactics = w.script.tactics.clone();
    assert_eq!(tactics.pop(), Some(Tactic::Trivial));
    let r = replay(&w.goal, &Script::new(tactics));
    assert_eq!(r.outcome, ReplayOutcome::Exhausted { remaining: 1 });
}

#[test]
fn split_on_atom_fails_at_its_step() {
    let w = worked("disjunction_chain");
    let mut tactics = w.script.tactics.clone();
    tactics.insert(2, Tactic::Split);
    let r = replay(&w.goal, &Script::new(tactics));
    let ReplayOutcome::Failed { step, error } = r.outcome else {
        panic!("{:?}", r.outcome)
    };
    assert_eq!((step, error.code()), (3, "TacticMismatch"));
}

#[test]
fn worked_traces_translate_to_accepted_derivations() {
    for name in WORKED {
        let w = worked(name);
        let tr = TacticTrace::record(&w.goal, &w.script).unwrap();
        let d = tactics_to_derivation(&tr).unwrap();
        check_derivation(&d).unwrap_or_else(|r| panic!("{name}: {r}\n{}", render_derivation(&d)));
        assert!(d.conclusion().unwrap().equiv(&w.goal.judgment()), "{name}");
        assert!(d.assumed.is_empty());
    }
}

#[test]
fn assert_step_rebuilds_the_case_split() {
    // Rows 3 to 10 of the chain: the goal Γ, p |- r closed via the lemma q \/ r.
    let w = worked("disjunction_chain");
    let r = replay(&w.goal, &w.script);
    let goal = r.states[2].current().unwrap().clone();
    let tree = trace_to_tree(&goal, &w.script.tactics[2..]).unwrap();
    let d = tree.to_derivation(&[]);
    check_derivation(&d).unwrap();
    let want = parse_judgment("p -> q \\/ r, q -> r, r -> s, p |- r", &[]).unwrap();
    assert!(d.conclusion().unwrap().equiv(&want));
}

#[test]
fn chain_derivation_to_script_and_back() {
    let d = chain();
    let script = derivation_to_tactics(&d).unwrap();
    let goal = Sequent::from_judgment(d.conclusion().unwrap());
    let tr = TacticTrace::record(&goal, &script).unwrap();
    let back = tactics_to_derivation(&tr).unwrap();
    check_derivation(&back).unwrap();
    assert!(back.conclusion().unwrap().equiv(d.conclusion().unwrap()));
}

#[test]
fn one_line_cases() {
    let d = parse_derivation("1 | p |- p | Hyp").unwrap();
    check_derivation(&d).unwrap();
    assert_eq!(derivation_to_tactics(&d).unwrap().tactics, vec![Tactic::Trivial]);
    let goal = Sequent::from_judgment(d.conclusion().unwrap());
    let tr = TacticTrace::record(&goal, &Script::new(vec![Tactic::Trivial])).unwrap();
    assert_eq!(tactics_to_derivation(&tr).unwrap(), d);
}

#[test]
fn weaken_chain_by_fresh_atom() {
    let t = parse_formula("t").unwrap();
    let d = weaken(&chain(), &[t]).unwrap();
    check_derivation(&d).unwrap();
    let want = parse_judgment("p -> q \\/ r, q -> r, r -> s, t |- p -> s", &[]).unwrap();
    assert!(d.conclusion().unwrap().equiv(&want));
}

#[test]
fn weaken_renames_clashing_eigenvariable() {
    let d = parse_derivation(
        "1 | P(x) |- P(x) | Hyp\n2 | |- P(x) -> P(x) | ImpI 1\n3 | |- forall x. P(x) -> P(x) | ForallI 2",
    )
    .unwrap();
    let w = weaken(&d, &[parse_formula("Q(x)").unwrap()]).unwrap();
    check_derivation(&w).unwrap();
    let want = parse_judgment("Q(x) |- forall x. P(x) -> P(x)", &[]).unwrap();
    assert!(w.conclusion().unwrap().equiv(&want));
}

#[test]
fn graft_through_assumed_minor() {
    let major = parse_derivation("1 | p, q |- q | Hyp").unwrap();
    let minor = parse_derivation("1 | p |- q | Assumed").unwrap();
    let d = graft(&major, &minor).unwrap();
    check_derivation(&d).unwrap();
    assert!(d.conclusion().unwrap().equiv(&parse_judgment("p |- q", &[]).unwrap()));
}

#[test]
fn graft_with_wrong_lemma_is_context_mismatch() {
    let major = parse_derivation("1 | p, q |- q | Hyp").unwrap();
    let minor = parse_derivation("1 | p |- p | Hyp").unwrap();
    assert_eq!(graft(&major, &minor).unwrap_err().code(), "ContextMismatch");
}
