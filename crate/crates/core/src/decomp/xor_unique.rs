//! Uniqueness of the symmetric XOR decomposition.
//!
//! With `x = Π_s` and `y = Π_{i,k}`, the term equations for `H(O_i)` and
//! `H(O_1,O_2,O_3)` fix the per-variable atoms and the ghost as affine
//! functions of `(x, y)`. The conservation law removes one unknown and
//! non-negativity pins down the other.

use serde::Serialize;

use crate::dist::{gen_gate, EntropyTable, Gate};
use crate::error::{Error, Result};
use crate::lattice::{Antichain, LatticeView};
use crate::varset::VarSet;

/// `c + a·x + b·y`.
#[derive(Debug, Clone, Copy)]
struct Affine {
    c: f64,
    x: f64,
    y: f64,
}

impl Affine {
    const fn new(c: f64, x: f64, y: f64) -> Self {
        Affine { c, x, y }
    }

    fn scale(self, k: f64) -> Self {
        Affine::new(self.c * k, self.x * k, self.y * k)
    }

    fn add(self, o: Affine) -> Self {
        Affine::new(self.c + o.c, self.x + o.x, self.y + o.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XorUniqueness {
    pub x: f64,
    pub y: f64,
    /// Conservation law as `a·x + b·y = rhs`.
    pub conservation: (f64, f64, f64),
    /// `Π_i` after eliminating `x`, as `(constant, coefficient of y)`.
    pub per_variable: (f64, f64),
}

#[derive(Clone, Copy)]
enum Kind {
    Synergy,
    Ghost,
    Own(usize),
    Shared(usize, usize),
}

/// Membership in the symmetric XOR parthood table. Terms are identified with
/// their reduced forms: `{ij}{k}` with `{k}`, `{ij}` with `{123}`, and
/// independent pairs with the empty term.
fn member(kind: Kind, a: &Antichain) -> bool {
    let single = match a.brackets() {
        [b] if b.len() >= 2 => return true,
        [b] => b.first(),
        [x, y] if x.len() + y.len() == 3 => {
            if x.len() == 1 {
                x.first()
            } else {
                y.first()
            }
        }
        _ => return false,
    };
    let Some(i) = single else { return false };
    match kind {
        Kind::Synergy => true,
        Kind::Ghost => false,
        Kind::Own(k) => k == i,
        Kind::Shared(j, k) => j == i || k == i,
    }
}

pub fn verify_xor_uniqueness() -> Result<XorUniqueness> {
    let h = EntropyTable::new(&gen_gate(&Gate::Xor)?)?;
    let lattice = LatticeView::enumerate(3)?;
    let h_single = h.entropy(VarSet::singleton(0));
    let h_total = h.total();

    let x = Affine::new(0.0, 1.0, 0.0);
    let y = Affine::new(0.0, 0.0, 1.0);
    // H(O_i) = Π_i + 2y + x
    let own = Affine::new(h_single, 0.0, 0.0)
        .add(y.scale(-2.0))
        .add(x.scale(-1.0));
    // H(O_1,O_2,O_3) = 3Π_i + 3y + x + Π_g
    let ghost = Affine::new(h_total, 0.0, 0.0)
        .add(own.scale(-3.0))
        .add(y.scale(-3.0))
        .add(x.scale(-1.0));

    let mut atoms = vec![(Kind::Synergy, x), (Kind::Ghost, ghost)];
    atoms.extend((0..3).map(|i| (Kind::Own(i), own)));
    atoms.extend([(0, 1), (0, 2), (1, 2)].map(|(i, j)| (Kind::Shared(i, j), y)));

    let lhs = atoms
        .iter()
        .fold(Affine::new(0.0, 0.0, 0.0), |acc, &(kind, form)| {
            let covering = lattice
                .elements()
                .iter()
                .filter(|a| member(kind, a))
                .map(Antichain::covering)
                .max()
                .unwrap_or(0);
            acc.add(form.scale(covering as f64))
        });
    let sum_h: f64 = (0..3).map(|i| h.entropy(VarSet::singleton(i))).sum();
    // lhs.c + lhs.x·x + lhs.y·y = ΣH  ⇔  a·x + b·y = rhs
    let (a, b, rhs) = (-lhs.x, -lhs.y, lhs.c - sum_h);
    if a == 0.0 {
        return Err(Error::Format("conservation law does not involve x".into()));
    }
    // x = (rhs - b·y) / a
    let x_of_y = Affine::new(rhs / a, 0.0, -b / a);
    let substitute = |f: Affine| Affine::new(f.c + f.x * x_of_y.c, 0.0, f.y + f.x * x_of_y.y);

    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for &(_, form) in &atoms {
        let g = substitute(form);
        if g.y > 0.0 {
            lo = lo.max(-g.c / g.y);
        } else if g.y < 0.0 {
            hi = hi.min(-g.c / g.y);
        } else if g.c < 0.0 {
            return Err(Error::Format("symmetric XOR system is infeasible".into()));
        }
    }
    if lo > hi + 1e-12 || (hi - lo).abs() > 1e-12 {
        return Err(Error::Format(format!(
            "symmetric XOR solution is not unique: y in [{lo}, {hi}]"
        )));
    }
    let y_val = lo;
    let x_val = x_of_y.c + x_of_y.y * y_val;
    let per = substitute(own);
    Ok(XorUniqueness {
        x: x_val,
        y: y_val,
        conservation: (a, b, rhs),
        per_variable: (per.c, per.y),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_solution() {
        let s = verify_xor_uniqueness().unwrap();
        assert!((s.x - 1.0).abs() < 1e-12);
        assert!(s.y.abs() < 1e-12);
    }

    #[test]
    fn intermediate_steps() {
        let s = verify_xor_uniqueness().unwrap();
        let (a, b, rhs) = s.conservation;
        assert!((a - 2.0).abs() < 1e-12 && (b - 3.0).abs() < 1e-12 && (rhs - 2.0).abs() < 1e-12);
        assert!(s.per_variable.0.abs() < 1e-12);
        assert!((s.per_variable.1 + 0.5).abs() < 1e-12);
    }

    #[test]
    fn table_coverings() {
        let lattice = LatticeView::enumerate(3).unwrap();
        let cov = |k| {
            lattice
                .elements()
                .iter()
                .filter(|a| member(k, a))
                .map(Antichain::covering)
                .max()
        };
        assert_eq!(cov(Kind::Synergy), Some(2));
        assert_eq!(cov(Kind::Ghost), Some(1));
        assert_eq!(cov(Kind::Own(0)), Some(2));
        assert_eq!(cov(Kind::Shared(0, 2)), Some(2));
    }
}
