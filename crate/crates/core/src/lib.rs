//! Factorization length sets of numerical semigroups.
//!
//! The crate computes length sets `L(n)` both by exhaustive enumeration
//! (the oracle) and in closed form via the refined structure theorem: for
//! large `n`, `L(n)` is an arithmetic progression with step `d` minus bounded
//! omission sets near each end, all read off from the Apéry tables of the two
//! derived semigroups `S_M` and `S_m`.

pub mod error;
pub mod experiments;
pub mod oracle;
pub mod semigroup;
pub mod structure;

pub use error::{Error, Result};
pub use oracle::{Factorization, LengthSet, LengthTable, DEFAULT_WORK_LIMIT};
pub use semigroup::{AperyTable, NumericalSemigroup};
pub use structure::{derive, shape_equal, DerivedSemigroups, Outcome, StructureProfile, VerificationRecord};
