//! Information-atom decompositions: atoms with sizes and covering numbers,
//! and the parthood table saying which atoms make up which term.

mod json;
mod lift;
mod parity;
mod scan;
mod set_theoretic;
mod trivariate;
mod validate;
mod xor_unique;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{Antichain, LatticeView};
use crate::tolerance::Tolerance;

pub use json::{from_json, to_json};
pub use lift::lift_decomposition;
pub use parity::solve_n_parity;
pub use scan::{sample_seed, scan_random, SampleRecord, ScanSummary};
pub use set_theoretic::{solve_set_theoretic, MAX_SET_THEORETIC_N};
pub use trivariate::{feasible_interval, pid_view, solve_trivariate, PidView};
pub use validate::{validate, CheckResult, ValidationReport};
pub use xor_unique::{verify_xor_uniqueness, XorUniqueness};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AtomLabel {
    /// `Π_ι` for an antichain of singleton brackets.
    SetTheoretic(Antichain),
    /// `Π_s`.
    Synergistic,
    /// `Π_{g_k}`, `k ≥ 1`.
    Ghost(usize),
    Named(String),
}

impl AtomLabel {
    pub fn set_theoretic(a: Antichain) -> Result<Self> {
        if a.is_empty() || !a.is_singletons() {
            return Err(Error::InvalidDecomposition(format!(
                "set-theoretic atom label {a} must use singleton brackets"
            )));
        }
        Ok(AtomLabel::SetTheoretic(a))
    }
}

impl fmt::Display for AtomLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomLabel::SetTheoretic(a) => write!(f, "{a}"),
            AtomLabel::Synergistic => f.write_str("Pi_s"),
            AtomLabel::Ghost(1) => f.write_str("Pi_g"),
            AtomLabel::Ghost(k) => write!(f, "Pi_g_{k}"),
            AtomLabel::Named(s) => f.write_str(s),
        }
    }
}

impl FromStr for AtomLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return AtomLabel::set_theoretic(s.parse()?);
        }
        if s == "Pi_s" {
            return Ok(AtomLabel::Synergistic);
        }
        if s == "Pi_g" {
            return Ok(AtomLabel::Ghost(1));
        }
        if let Some(rest) = s.strip_prefix("Pi_g") {
            let digits = rest.strip_prefix('_').unwrap_or(rest);
            if let Ok(k) = digits.parse::<usize>() {
                if k == 0 {
                    return Err(Error::InvalidDecomposition(format!(
                        "ghost index must be at least 1 in {s}"
                    )));
                }
                return Ok(AtomLabel::Ghost(k));
            }
        }
        if s.is_empty() {
            return Err(Error::InvalidDecomposition("empty atom label".into()));
        }
        Ok(AtomLabel::Named(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub label: AtomLabel,
    pub size: f64,
    pub covering: usize,
}

/// Rows are terms, columns are atoms; `entries[row][col]` is `f_{α i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParthoodTable {
    pub rows: Vec<Antichain>,
    pub cols: Vec<AtomLabel>,
    pub entries: Vec<Vec<bool>>,
}

impl ParthoodTable {
    /// Builds the table over every antichain of `lattice` from a membership rule.
    pub fn from_rule<F>(lattice: &LatticeView, cols: Vec<AtomLabel>, mut rule: F) -> Self
    where
        F: FnMut(&Antichain, usize) -> bool,
    {
        let rows = lattice.elements().to_vec();
        let entries = rows
            .iter()
            .map(|a| (0..cols.len()).map(|i| rule(a, i)).collect())
            .collect();
        ParthoodTable {
            rows,
            cols,
            entries,
        }
    }

    pub fn row_index(&self, a: &Antichain) -> Option<usize> {
        self.rows.iter().position(|r| r == a)
    }

    /// Largest covering number among rows containing column `col`.
    pub fn max_covering(&self, col: usize) -> Option<usize> {
        self.rows
            .iter()
            .zip(&self.entries)
            .filter(|(_, e)| e[col])
            .map(|(a, _)| a.covering())
            .max()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub n: usize,
    pub redundancy_param: Option<f64>,
    /// In the same order as `table.cols`.
    pub atoms: Vec<Atom>,
    pub table: ParthoodTable,
}

impl Decomposition {
    /// Assembles a decomposition, deriving each covering from the table.
    pub(crate) fn from_table(
        n: usize,
        redundancy_param: Option<f64>,
        table: ParthoodTable,
        sizes: Vec<f64>,
        tol: Tolerance,
    ) -> Result<Self> {
        let atoms = table
            .cols
            .iter()
            .zip(sizes)
            .enumerate()
            .map(|(i, (label, size))| {
                Ok(Atom {
                    label: label.clone(),
                    size: clip(label, size, tol)?,
                    covering: table.max_covering(i).unwrap_or(1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Decomposition {
            n,
            redundancy_param,
            atoms,
            table,
        };
        d.check_shape()?;
        Ok(d)
    }

    pub fn atom(&self, label: &AtomLabel) -> Option<&Atom> {
        self.atoms.iter().find(|a| &a.label == label)
    }

    /// Size of the atom with this label, or `None` when absent.
    pub fn size(&self, label: &str) -> Option<f64> {
        let label: AtomLabel = label.parse().ok()?;
        self.atom(&label).map(|a| a.size)
    }

    /// Sum of the atom sizes making up term `a`.
    pub fn term_size(&self, a: &Antichain) -> Option<f64> {
        let i = self.table.row_index(a)?;
        Some(self.row_sum(i))
    }

    pub(crate) fn row_sum(&self, row: usize) -> f64 {
        self.table.entries[row]
            .iter()
            .zip(&self.atoms)
            .filter(|(e, _)| **e)
            .map(|(_, a)| a.size)
            .sum()
    }

    pub fn total_size(&self) -> f64 {
        self.atoms.iter().map(|a| a.size).sum()
    }

    /// `Σ c_i Π_i`.
    pub fn weighted_size(&self) -> f64 {
        self.atoms.iter().map(|a| a.covering as f64 * a.size).sum()
    }

    /// Structural consistency: labels, dimensions, row supports.
    pub fn check_shape(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.n == 0 {
            return bad("decomposition over zero variables".into());
        }
        if self.atoms.len() != self.table.cols.len() {
            return bad(format!(
                "{} atoms but {} table columns",
                self.atoms.len(),
                self.table.cols.len()
            ));
        }
        for (atom, col) in self.atoms.iter().zip(&self.table.cols) {
            if &atom.label != col {
                return bad(format!("atom {} does not match column {col}", atom.label));
            }
            if atom.covering == 0 {
                return bad(format!("atom {} has covering 0", atom.label));
            }
            if !atom.size.is_finite() {
                return bad(format!("atom {} has non-finite size", atom.label));
            }
        }
        let mut seen = HashMap::new();
        for label in &self.table.cols {
            if seen.insert(label.to_string(), ()).is_some() {
                return bad(format!("duplicate atom {label}"));
            }
        }
        if self.table.entries.len() != self.table.rows.len() {
            return bad("row count does not match the entry matrix".into());
        }
        let mut rows = HashMap::new();
        for (a, e) in self.table.rows.iter().zip(&self.table.entries) {
            if a.is_empty() {
                return bad("empty antichain as table row".into());
            }
            if let Some(m) = a.support().last() {
                if m >= self.n {
                    return bad(format!("row {a} refers to a variable beyond {}", self.n));
                }
            }
            if e.len() != self.atoms.len() {
                return bad(format!("row {a} has {} entries", e.len()));
            }
            if rows.insert(a.clone(), ()).is_some() {
                return bad(format!("duplicate row {a}"));
            }
        }
        Ok(())
    }
}

/// Maps sizes within `eps` below zero to exactly zero.
fn clip(label: &AtomLabel, size: f64, tol: Tolerance) -> Result<f64> {
    if size < -tol.eps || !size.is_finite() {
        return Err(Error::NegativeAtom {
            label: label.to_string(),
            size,
        });
    }
    Ok(if size < 0.0 { 0.0 } else { size })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for s in ["{1}{3}", "Pi_s", "Pi_g", "Pi_g_3", "U_a"] {
            assert_eq!(s.parse::<AtomLabel>().unwrap().to_string(), s);
        }
        assert_eq!("Pi_g1".parse::<AtomLabel>().unwrap(), AtomLabel::Ghost(1));
        assert_eq!("Pi_g_1".parse::<AtomLabel>().unwrap(), AtomLabel::Ghost(1));
        assert_eq!("Pi_g2".parse::<AtomLabel>().unwrap(), AtomLabel::Ghost(2));
        assert!("Pi_g_0".parse::<AtomLabel>().is_err());
        assert!("{1,2}".parse::<AtomLabel>().is_err());
    }

    #[test]
    fn clipping() {
        let tol = Tolerance::default();
        let l = AtomLabel::Synergistic;
        assert_eq!(clip(&l, -1e-12, tol).unwrap(), 0.0);
        assert_eq!(clip(&l, 0.25, tol).unwrap(), 0.25);
        assert!(matches!(
            clip(&l, -1e-6, tol),
            Err(Error::NegativeAtom { .. })
        ));
    }
}
