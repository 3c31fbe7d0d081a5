//! Minimal first-order logic: natural-deduction derivations, a kernel that
//! checks them, a tactic engine over goal sequences, translations between
//! the two, and a bounded backward prover.

pub mod kernel;
pub mod logic;
pub mod tactics;
pub mod textio;
pub mod equivalence;
pub mod autoprove;
pub mod random;
pub mod batch;
