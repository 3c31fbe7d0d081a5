//! Batch commands. Each returns the process exit code and writes its report
//! to the given sinks so tests can run them in-process.

use std::io::Write;
use std::path::Path;

use minilog_core::autoprove::{auto_search, NotFoundReason, SearchConfig, SearchOutcome};
use minilog_core::equivalence::{tactics_to_derivation, TacticTrace};
use minilog_core::kernel::check_derivation;
use minilog_core::tactics::{replay as run_replay, GoalState, ReplayOutcome};
use minilog_core::textio::{
    parse_derivation, parse_script, parse_theorem, render_derivation, render_script, render_sequent, TheoremFile,
    CONTEXT_ALIAS,
};

pub const OK: i32 = 0;
pub const FAILED: i32 = 1;
pub const BAD_INPUT: i32 = 2;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Checks each derivation file. Exit 2 if any file is unreadable or
/// malformed, else 1 if any is rejected.
pub fn check(paths: &[impl AsRef<Path>], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let mut code = OK;
    for p in paths {
        let p = p.as_ref();
        let d = match read(p).and_then(|t| parse_derivation(&t).map_err(|e| format!("{}: {e}", p.display()))) {
            Ok(d) => d,
            Err(e) => {
                let _ = writeln!(err, "{e}");
                code = BAD_INPUT;
                continue;
            }
        };
        match check_derivation(&d) {
            Ok(()) if d.assumed.is_empty() => {
                let _ = writeln!(out, "{}: accepted ({} lines)", p.display(), d.len());
            }
            Ok(()) => {
                let _ = writeln!(
                    out,
                    "{}: accepted ({} lines) from {} assumed judgment(s)",
                    p.display(),
                    d.len(),
                    d.assumed.len()
                );
            }
            Err(r) => {
                let _ = writeln!(out, "{}: rejected at line {}: {}: {}", p.display(), r.line, r.reason.code(), r.detail);
                if code == OK {
                    code = FAILED;
                }
            }
        }
    }
    code
}

fn load_theorem(path: &Path) -> Result<TheoremFile, String> {
    parse_theorem(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// One row per state: index, goals separated by ` ; ` (`□` when none), and
/// the tactic that produced it.
pub fn trace_table(theorem: &TheoremFile, states: &[GoalState]) -> String {
    let ctx = theorem.context();
    let alias = (!ctx.is_empty()).then_some((CONTEXT_ALIAS, ctx.as_slice()));
    let mut rows = Vec::new();
    if alias.is_some() {
        let items: Vec<String> = ctx.iter().map(minilog_core::textio::render_formula).collect();
        rows.push(format!("{CONTEXT_ALIAS} = {{{}}}", items.join(", ")));
    }
    let script = states.last().map(|s| s.script()).unwrap_or_default();
    for (i, s) in states.iter().enumerate() {
        let goals = if s.is_terminal() {
            "□".to_string()
        } else {
            s.goals().iter().map(|g| render_sequent(g, alias)).collect::<Vec<_>>().join(" ; ")
        };
        let tactic = match i {
            0 => String::new(),
            _ => script.tactics[i - 1].to_string(),
        };
        rows.push(format!("{:>3}  {goals:<60}  {tactic}", i + 1).trim_end().to_string());
    }
    rows.join("\n") + "\n"
}

pub fn replay(
    theorem: &Path,
    script: &Path,
    emit: Option<&Path>,
    trace: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32 {
    let loaded = load_theorem(theorem)
        .and_then(|t| Ok((t, parse_script(&read(script)?).map_err(|e| format!("{}: {e}", script.display()))?)));
    let (thm, script) = match loaded {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return BAD_INPUT;
        }
    };
    let goal = thm.sequent();
    let r = run_replay(&goal, &script);
    if trace {
        let _ = write!(out, "{}", trace_table(&thm, &r.states));
    }
    match &r.outcome {
        ReplayOutcome::Proved => {}
        ReplayOutcome::Exhausted { remaining } => {
            let s = if *remaining == 1 { "" } else { "s" };
            let _ = writeln!(err, "script ended with {remaining} goal{s} remaining");
            return FAILED;
        }
        ReplayOutcome::Failed { step, error } => {
            let _ = writeln!(
                err,
                "step {step} (`{}`) failed: {}: {error}",
                script.tactics[step - 1],
                error.code()
            );
            return FAILED;
        }
    }
    let _ = writeln!(out, "{}: proved in {} tactics", thm.name, script.len());
    if let Some(path) = emit {
        let d = TacticTrace::record(&goal, &script).and_then(|tr| tactics_to_derivation(&tr));
        let d = match d {
            Ok(d) => d,
            Err(e) => {
                let _ = writeln!(err, "translation failed: {e}");
                return FAILED;
            }
        };
        if let Err(e) = std::fs::write(path, render_derivation(&d)) {
            let _ = writeln!(err, "{}: {e}", path.display());
            return BAD_INPUT;
        }
        let _ = writeln!(out, "derivation ({} lines) written to {}", d.len(), path.display());
    }
    OK
}

pub fn auto(theorem: &Path, cfg: &SearchConfig, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let thm = match load_theorem(theorem) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return BAD_INPUT;
        }
    };
    match auto_search(&thm.sequent(), cfg) {
        SearchOutcome::Found(s) => {
            let _ = write!(out, "{}", render_script(&s));
            OK
        }
        SearchOutcome::NotFound(reason) => {
            let why = match reason {
                NotFoundReason::DepthExhausted => "depth exhausted",
                NotFoundReason::NodesExhausted => "node budget exhausted",
            };
            let _ = writeln!(err, "{}: no proof found ({why}, depth {})", thm.name, cfg.max_depth);
            FAILED
        }
    }
}
