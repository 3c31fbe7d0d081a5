//! Whole-corpus entry points. With the `parallel` feature (on by default)
//! items are spread over the rayon thread pool; [`seq`] always runs on the
//! calling thread and returns identical results in the same order.

use crate::autoprove::{auto_search, SearchConfig, SearchOutcome};
use crate::equivalence::{derivation_to_tactics, tactics_to_derivation, EquivalenceError, TacticTrace};
use crate::kernel::{check_derivation, Derivation, Rejection};
use crate::logic::Sequent;
use crate::textio::Script;

#[cfg(feature = "parallel")]
fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

pub fn check_all(ds: &[Derivation]) -> Vec<Result<(), Rejection>> {
    map(ds, check_derivation)
}

pub fn soundness_all(traces: &[TacticTrace]) -> Vec<Result<Derivation, EquivalenceError>> {
    map(traces, tactics_to_derivation)
}

pub fn completeness_all(ds: &[Derivation]) -> Vec<Result<Script, EquivalenceError>> {
    map(ds, derivation_to_tactics)
}

pub fn auto_all(goals: &[Sequent], cfg: &SearchConfig) -> Vec<SearchOutcome> {
    map(goals, |g| auto_search(g, cfg))
}

/// Single-threaded versions, available with or without `parallel`.
pub mod seq {
    use super::*;

    pub fn check_all(ds: &[Derivation]) -> Vec<Result<(), Rejection>> {
        ds.iter().map(check_derivation).collect()
    }

    pub fn soundness_all(traces: &[TacticTrace]) -> Vec<Result<Derivation, EquivalenceError>> {
        traces.iter().map(tactics_to_derivation).collect()
    }

    pub fn completeness_all(ds: &[Derivation]) -> Vec<Result<Script, EquivalenceError>> {
        ds.iter().map(derivation_to_tactics).collect()
    }

    pub fn auto_all(goals: &[Sequent], cfg: &SearchConfig) -> Vec<SearchOutcome> {
        goals.iter().map(|g| auto_search(g, cfg)).collect()
    }
}
