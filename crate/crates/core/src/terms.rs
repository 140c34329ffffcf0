//! Sizes of inclusion-exclusion terms `Ξ_α` on a concrete distribution.
//!
//! One bracket is a joint entropy and two brackets a mutual information.
//! Longer antichains are reduced with two rules until they either resolve or
//! stop changing:
//!
//! * R1: if two bracket joints are independent their intersection is empty,
//!   so the whole term has size 0;
//! * R2: if bracket `A` is a deterministic function of bracket `B` then
//!   `A ∩ B = A` and `B` is dropped.
//!
//! What remains undetermined is reported as an interval.

use std::fmt;

use crate::decomp::feasible_interval;
use crate::dist::EntropyTable;
use crate::error::{Error, Result};
use crate::lattice::Antichain;
use crate::tolerance::Tolerance;
use crate::varset::VarSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TermSize {
    Exact(f64),
    Interval { lo: f64, hi: f64 },
}

/// Size of a term together with the reductions that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct TermValue {
    pub size: TermSize,
    pub trace: Vec<String>,
}

impl TermValue {
    pub fn exact(&self) -> Option<f64> {
        match self.size {
            TermSize::Exact(v) => Some(v),
            TermSize::Interval { .. } => None,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match self.size {
            TermSize::Exact(v) => (v, v),
            TermSize::Interval { lo, hi } => (lo, hi),
        }
    }

    /// Distance of `x` outside the value (0 when equal or contained).
    pub fn excess(&self, x: f64) -> f64 {
        let (lo, hi) = self.bounds();
        (lo - x).max(x - hi).max(0.0)
    }
}

impl fmt::Display for TermValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.size {
            TermSize::Exact(v) => write!(f, "{}", crate::fmt_bits(v)),
            TermSize::Interval { lo, hi } => {
                write!(f, "[{},{}]", crate::fmt_bits(lo), crate::fmt_bits(hi))
            }
        }
    }
}

fn bracket_text(b: VarSet) -> String {
    format!("{{{b}}}")
}

/// Evaluates `Ĥ(Ξ_α)`.
pub fn eval_term(h: &EntropyTable, a: &Antichain, tol: Tolerance) -> Result<TermValue> {
    if a.is_empty() {
        return Err(Error::InvalidAntichain("empty antichain".into()));
    }
    a.support().check(h.num_vars())?;

    let mut brackets = a.brackets().to_vec();
    let mut trace = Vec::new();
    loop {
        match brackets.as_slice() {
            [b] => {
                trace.push("joint entropy".to_string());
                return Ok(TermValue {
                    size: TermSize::Exact(h.entropy(*b)),
                    trace,
                });
            }
            [x, y] => {
                trace.push("mutual information".to_string());
                return Ok(TermValue {
                    size: TermSize::Exact(h.mi(*x, *y)),
                    trace,
                });
            }
            _ => {}
        }

        let k = brackets.len();
        let pairs = || (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
        if let Some((i, j)) = pairs().find(|&(i, j)| h.independent(brackets[i], brackets[j], tol)) {
            trace.push(format!(
                "R1: {} and {} independent",
                bracket_text(brackets[i]),
                bracket_text(brackets[j])
            ));
            return Ok(TermValue {
                size: TermSize::Exact(0.0),
                trace,
            });
        }

        let ordered = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)));
        let absorbed = ordered
            .into_iter()
            .find(|&(i, j)| h.is_function_of(brackets[i], brackets[j], tol));
        if let Some((i, j)) = absorbed {
            trace.push(format!(
                "R2: {} determined by {}; dropped {}",
                bracket_text(brackets[i]),
                bracket_text(brackets[j]),
                bracket_text(brackets[j])
            ));
            brackets.remove(j);
            continue;
        }

        let lo = if k == 3 {
            h.interaction(&brackets).max(0.0)
        } else {
            0.0
        };
        let hi = pairs()
            .map(|(i, j)| h.mi(brackets[i], brackets[j]))
            .fold(f64::INFINITY, f64::min);
        trace.push("interval bounds".to_string());
        return Ok(TermValue {
            size: TermSize::Interval { lo, hi },
            trace,
        });
    }
}

fn check_three(h: &EntropyTable) -> Result<()> {
    if h.num_vars() != 3 {
        return Err(Error::WrongVariableCount {
            expected: 3,
            got: h.num_vars(),
        });
    }
    Ok(())
}

/// Distributivity-breaking difference `ΔĤ = r - I_3(X1;X2;X3)` for a triple
/// intersection of assigned size `r`.
pub fn delta_h(h: &EntropyTable, r: f64, tol: Tolerance) -> Result<f64> {
    check_three(h)?;
    let (lo, hi) = feasible_interval(h)?;
    if r < lo - tol.eps || r > hi + tol.eps {
        return Err(Error::Infeasible { r, lo, hi });
    }
    let i3 = h.interaction(&singletons3());
    Ok(r - i3)
}

/// `H(X1 ∪ X2 ∪ X3) - [Σ H(Xi) - Σ I(Xi;Xj) + r - ΔĤ(r)]`.
pub fn check_inclusion_exclusion3(h: &EntropyTable, r: f64, tol: Tolerance) -> Result<f64> {
    let delta = delta_h(h, r, tol)?;
    let [a, b, c] = singletons3();
    let singles = h.entropy(a) + h.entropy(b) + h.entropy(c);
    let pairs = h.mi(a, b) + h.mi(a, c) + h.mi(b, c);
    Ok(h.total() - (singles - pairs + r - delta))
}

fn singletons3() -> [VarSet; 3] {
    [0, 1, 2].map(VarSet::singleton)
}
