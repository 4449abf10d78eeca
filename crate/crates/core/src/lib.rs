//! Exact reasoning over ground epistemic logic programs.
//!
//! The crate is organised bottom-up:
//!
//! * [`syntax`] - programs, the text grammar, printing, union and alignment.
//! * [`asp`] - models, GL-reduct, answer sets, SE- and UE-models for
//!   programs without epistemic negation.
//! * [`epistemic`] - guesses, compatibility, the epistemic reduct and
//!   candidate world views / world views.
//! * [`equivalence`] - ordinary and uniform equivalence with witnesses and
//!   the UE-function table.
//! * [`qbf`] - restricted 3-QBF input, a brute-force evaluator and the
//!   reduction to a pair of programs.
//! * [`report`] - machine-readable output shared by the CLI and the C ABI.
//! * [`cli`] - the `elp` command line tool.
//!
//! Everything is exhaustive enumeration over bit-vector interpretations, so
//! every entry point that scans a search space is gated by [`Limits`].

pub mod asp;
pub mod cli;
pub mod epistemic;
pub mod equivalence;
mod error;
mod limits;
pub mod qbf;
pub mod report;
pub mod syntax;

pub use error::{Error, Result};
pub use limits::{Limits, HARD_MAX_ATOMS};
