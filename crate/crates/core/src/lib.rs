//! Information atoms for systems of discrete random variables.
//!
//! Distributions are loaded or generated in [`dist`], inclusion-exclusion
//! terms are labelled by antichains in [`lattice`] and sized in [`terms`],
//! and [`decomp`] solves and validates atom decompositions.

pub mod decomp;
pub mod dist;
pub mod error;
pub mod lattice;
pub mod terms;
pub mod tolerance;
pub mod varset;

pub use decomp::{AtomLabel, Decomposition, ValidationReport};
pub use dist::{EntropyTable, Gate, ProbTable};
pub use error::{Error, Result};
pub use lattice::{Antichain, LatticeView};
pub use terms::{eval_term, TermSize, TermValue};
pub use tolerance::Tolerance;
pub use varset::VarSet;

/// Formats a size in bits with nine decimals, without a negative zero.
pub fn fmt_bits(x: f64) -> String {
    let s = format!("{x:.9}");
    if s == "-0.000000000" {
        "0.000000000".to_string()
    } else {
        s
    }
}
