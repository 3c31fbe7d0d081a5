//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use minilog_core::autoprove::{auto_search, NotFoundReason, SearchConfig, SearchOutcome};
use minilog_core::batch;
use minilog_core::equivalence::{tactics_to_derivation, TacticTrace};
use minilog_core::kernel::{check_derivation, RejectReason};
use minilog_core::random::{random_derivation, random_formula, random_trace, GenConfig};
use minilog_core::tactics::replay;
use minilog_core::textio::{parse_derivation, parse_formula, parse_judgment, parse_script, parse_theorem, render_formula};
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{fixture, row_matches, worked, WORKED};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

const MUTATIONS: [(usize, &str); 11] = [
    (1, "1 | Γ |- p | Hyp"),
    (2, "2 | q -> r, r -> s, p |- p -> q \\/ r | Hyp"),
    (3, "3 | Γ, p |- q \\/ r | ImpE 1,1"),
    (4, "4 | Γ, p |- q | Hyp"),
    (5, "5 | p -> q \\/ r, r -> s, p, q |- q -> r | Hyp"),
    (6, "6 | Γ, p, q |- r | ImpE 4,4"),
    (7, "7 | Γ, p |- r | Hyp"),
    (8, "8 | Γ, p |- r | OrE 3,6,6"),
    (9, "9 | Γ, p |- r -> s | ImpI 8"),
    (10, "10 | Γ, p |- s | ImpE 8,8"),
    (11, "11 | Γ |- p -> s | ForallI 10"),
];

fn mutate(text: &str, line: usize, replacement: &str) -> String {
    let prefix = format!("{line} |");
    text.lines()
        .map(|l| if l.starts_with(&prefix) { replacement } else { l })
        .collect::<Vec<_>>()
        .join("\n")
}

fn kernel_golden() -> Outcome {
    let start = Instant::now();
    let text = fixture("disjunction_chain.deriv");
    let d = parse_derivation(&text).map_err(|e| e.to_string())?;
    ensure(d.len() == 11, || format!("{} lines", d.len()))?;
    check_derivation(&d).map_err(|r| format!("original rejected: {r}"))?;
    for (line, replacement) in MUTATIONS {
        let m = mutate(&text, line, replacement);
        ensure(m != text, || format!("mutation of line {line} changed nothing"))?;
        let d = parse_derivation(&m).map_err(|e| e.to_string())?;
        match check_derivation(&d) {
            Ok(()) => return Err(format!("mutation of line {line} accepted")),
            Err(r) => ensure(r.line == line, || format!("mutation of line {line} rejected at line {}", r.line))?,
        }
    }
    let t = within(start, Duration::from_secs(1), "kernel golden")?;
    Ok(format!("accepted, 11/11 mutations rejected at their line, {t:?}"))
}

fn replay_golden() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for name in WORKED {
        let w = worked(name);
        let r = replay(&w.goal, &w.script);
        ensure(r.is_proved(), || format!("{name}: {:?}", r.outcome))?;
        ensure(r.states.len() == w.rows.len(), || {
            format!("{name}: {} states, expected {}", r.states.len(), w.rows.len())
        })?;
        for (i, (state, row)) in r.states.iter().zip(&w.rows).enumerate() {
            row_matches(&w, state, row).map_err(|e| format!("{name} row {}: {e}", i + 1))?;
        }
        counts.push(format!("{}/{}", w.script.len(), r.states.len()));
    }
    let t = within(start, Duration::from_secs(1), "replay golden")?;
    Ok(format!("tactics/states {}, {t:?}", counts.join(" ")))
}

fn soundness() -> Outcome {
    let start = Instant::now();
    for name in WORKED {
        let w = worked(name);
        let tr = TacticTrace::record(&w.goal, &w.script).map_err(|e| format!("{name}: {e}"))?;
        let d = tactics_to_derivation(&tr).map_err(|e| format!("{name}: {e}"))?;
        check_derivation(&d).map_err(|r| format!("{name}: {r}"))?;
        ensure(d.conclusion().unwrap().equiv(&w.goal.judgment()), || format!("{name}: wrong conclusion"))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let cfg = GenConfig::propositional(4, 6);
    let traces: Vec<TacticTrace> = (0..500)
        .map(|i| random_trace(&mut rng, &cfg).map_err(|e| format!("generator, trace {i}: {e}")))
        .collect::<Result<_, _>>()?;
    let outs = batch::soundness_all(&traces);
    for (i, (tr, out)) in traces.iter().zip(outs).enumerate() {
        let d = out.map_err(|e| format!("trace {i}: {e}\n{}", tr.script()))?;
        check_derivation(&d).map_err(|r| format!("trace {i}: {r}"))?;
        ensure(d.conclusion().unwrap().equiv(&tr.initial.judgment()), || format!("trace {i}: wrong conclusion"))?;
    }
    let tactics: usize = traces.iter().map(|t| t.steps.len()).sum();
    let t = within(start, Duration::from_secs(60), "soundness suite")?;
    Ok(format!("3 worked + 500 random traces ({tactics} tactics), {t:?}"))
}

fn completeness() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xc0de);
    let mut ds = Vec::new();
    let prop = GenConfig::propositional(4, 6);
    let fo = GenConfig::first_order(6);
    for i in 0..600 {
        ds.push(random_derivation(&mut rng, if i % 2 == 0 { &prop } else { &fo }));
    }
    for (i, r) in batch::check_all(&ds).into_iter().enumerate() {
        r.map_err(|r| format!("generator produced a rejected derivation {i}: {r}"))?;
    }
    let scripts = batch::completeness_all(&ds);
    for (i, (d, s)) in ds.iter().zip(scripts).enumerate() {
        let s = s.map_err(|e| format!("derivation {i}: {e}"))?;
        let goal = minilog_core::logic::Sequent::from_judgment(d.conclusion().unwrap());
        let r = replay(&goal, &s);
        ensure(r.is_proved(), || format!("derivation {i}: {:?}", r.outcome))?;
    }
    let lines: usize = ds.iter().map(|d| d.len()).sum();
    let t = within(start, Duration::from_secs(60), "completeness suite")?;
    Ok(format!("600 derivations ({lines} lines, half first-order) replay to the empty state, {t:?}"))
}

fn autoprover() -> Outcome {
    let cfg = SearchConfig::default();
    let mut notes = Vec::new();
    for name in ["disjunction_chain", "conjunction_split"] {
        let w = worked(name);
        let start = Instant::now();
        let out = auto_search(&w.goal, &cfg);
        let t = within(start, Duration::from_secs(1), name)?;
        let SearchOutcome::Found(script) = out else {
            return Err(format!("{name}: {out:?}"));
        };
        ensure(replay(&w.goal, &script).is_proved(), || format!("{name}: script does not replay"))?;
        notes.push(format!("{name} {} tactics {t:?}", script.len()));
    }
    let peirce = parse_theorem("theorem Peirce : ((p -> q) -> p) -> p.").unwrap().sequent();
    let out = auto_search(&peirce, &cfg);
    ensure(out == SearchOutcome::NotFound(NotFoundReason::DepthExhausted), || format!("peirce: {out:?}"))?;
    notes.push("peirce DepthExhausted".into());
    Ok(notes.join(", "))
}

fn grammar() -> Outcome {
    let mut n = 0;
    for name in WORKED {
        let thm = parse_theorem(&fixture(&format!("{name}.thm"))).map_err(|e| format!("{name}.thm: {e}"))?;
        n += thm.hypotheses.len() + 1;
        let s = parse_script(&fixture(&format!("{name}.v"))).map_err(|e| format!("{name}.v: {e}"))?;
        n += s.tactics.iter().filter(|t| t.to_string().contains('(')).count();
        for row in worked(name).rows {
            n += row.len();
        }
    }
    let d = parse_derivation(&fixture("disjunction_chain.deriv")).map_err(|e| e.to_string())?;
    n += d.len();
    for name in WORKED {
        let w = worked(name);
        for state in replay(&w.goal, &w.script).states {
            for g in state.goals() {
                let text = g.to_string();
                let back = parse_judgment(&text, &[]).map_err(|e| format!("`{text}`: {e}"))?;
                ensure(back == g.judgment(), || format!("`{text}` does not parse back"))?;
                n += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let cfgs = [GenConfig::propositional(4, 0), GenConfig::first_order(0)];
    for i in 0..1000 {
        let f = random_formula(&mut rng, &cfgs[i % 2], 4);
        let text = render_formula(&f);
        let back = parse_formula(&text).map_err(|e| format!("`{text}`: {e}"))?;
        ensure(back == f, || format!("`{text}` parsed to a different formula"))?;
        ensure(render_formula(&back) == text, || format!("`{text}` is not a fixpoint"))?;
    }
    Ok(format!("{n} worked-example formulas and judgments parse, 1000 random formulas round-trip"))
}

fn side_conditions() -> Outcome {
    let cases = [
        ("forall-intro", "1 | P(x) |- P(x) | Hyp\n2 | P(x) |- forall x. P(x) | ForallI 1"),
        (
            "exists-elim, eigenvariable free in conclusion",
            "1 | exists x. P(x) |- exists x. P(x) | Hyp\n\
             2 | exists x. P(x), P(x) |- P(x) | Hyp\n\
             3 | exists x. P(x) |- P(x) | ExistsE 1,2",
        ),
        (
            "exists-elim, eigenvariable free in context",
            "1 | exists x. P(x), Q(x) |- exists x. P(x) | Hyp\n\
             2 | exists x. P(x), Q(x), P(x) |- Q(x) | Hyp\n\
             3 | exists x. P(x), Q(x) |- Q(x) | ExistsE 1,2",
        ),
    ];
    for (what, text) in cases {
        let d = parse_derivation(text).map_err(|e| format!("{what}: {e}"))?;
        match check_derivation(&d) {
            Err(r) if r.reason == RejectReason::EigenvariableCaptured && r.line == d.len() => {}
            other => return Err(format!("{what}: {other:?}")),
        }
    }
    Ok("forall-intro and exists-elim violations rejected with EigenvariableCaptured".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("kernel golden", kernel_golden),
        ("replay golden", replay_golden),
        ("soundness translation", soundness),
        ("completeness translation", completeness),
        ("autoprover", autoprover),
        ("grammar", grammar),
        ("first-order side conditions", side_conditions),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match out {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
