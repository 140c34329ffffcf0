use serde::Serialize;

use super::{AtomLabel, Decomposition, ParthoodTable};
use crate::dist::EntropyTable;
use crate::error::{Error, Result};
use crate::lattice::{Antichain, LatticeView};
use crate::tolerance::Tolerance;
use crate::varset::VarSet;

fn check_three(h: &EntropyTable) -> Result<()> {
    if h.num_vars() != 3 {
        return Err(Error::WrongVariableCount {
            expected: 3,
            got: h.num_vars(),
        });
    }
    Ok(())
}

fn single(i: usize) -> VarSet {
    VarSet::singleton(i)
}

/// Range `[max(0, I_3), min pairwise MI]` of the triple-redundancy atom.
pub fn feasible_interval(h: &EntropyTable) -> Result<(f64, f64)> {
    check_three(h)?;
    let i3 = h.interaction(&[single(0), single(1), single(2)]);
    let hi = h
        .mi(single(0), single(1))
        .min(h.mi(single(0), single(2)))
        .min(h.mi(single(1), single(2)));
    Ok((i3.max(0.0), hi))
}

fn singletons(indices: &[usize]) -> Antichain {
    Antichain::singletons(VarSet::from_indices(indices.iter().copied()))
}

/// Columns of the general trivariate table, in display order.
pub(crate) fn trivariate_columns() -> Vec<AtomLabel> {
    vec![
        AtomLabel::SetTheoretic(singletons(&[0, 1, 2])),
        AtomLabel::Synergistic,
        AtomLabel::SetTheoretic(singletons(&[0, 1])),
        AtomLabel::SetTheoretic(singletons(&[0, 2])),
        AtomLabel::SetTheoretic(singletons(&[1, 2])),
        AtomLabel::SetTheoretic(singletons(&[0])),
        AtomLabel::SetTheoretic(singletons(&[1])),
        AtomLabel::SetTheoretic(singletons(&[2])),
        AtomLabel::Ghost(1),
    ]
}

/// Whether an atom is part of term `a`: set-theoretic atoms sit in the up-set
/// of their own antichain, `Π_s` in the up-set of the bipartitions, and
/// `Π_{g_k}` in every single bracket of at least `k + 1` variables.
pub(crate) fn member(label: &AtomLabel, a: &Antichain, n: usize) -> bool {
    match label {
        AtomLabel::SetTheoretic(iota) => iota.leq(a),
        AtomLabel::Synergistic => match a.brackets() {
            [_] => true,
            [x, y] => x.union(*y) == VarSet::full(n),
            _ => false,
        },
        AtomLabel::Ghost(k) => matches!(a.brackets(), [b] if b.len() > *k),
        AtomLabel::Named(_) => false,
    }
}

/// Atom sizes before clipping, in the order of [`trivariate_columns`].
pub(crate) fn raw_sizes(h: &EntropyTable, r: f64) -> [f64; 9] {
    let i3 = h.interaction(&[single(0), single(1), single(2)]);
    let total = h.total();
    let pair = |i, j| VarSet::from_indices([i, j]);
    [
        r,
        r - i3,
        h.mi(single(0), single(1)) - r,
        h.mi(single(0), single(2)) - r,
        h.mi(single(1), single(2)) - r,
        total - h.entropy(pair(1, 2)),
        total - h.entropy(pair(0, 2)),
        total - h.entropy(pair(0, 1)),
        r - i3,
    ]
}

/// Solves the trivariate system with triple redundancy `r` (default: the
/// lower end of the feasible interval).
pub fn solve_trivariate(h: &EntropyTable, r: Option<f64>, tol: Tolerance) -> Result<Decomposition> {
    let (lo, hi) = feasible_interval(h)?;
    let r = r.unwrap_or(lo);
    if !r.is_finite() || r < lo - tol.eps || r > hi + tol.eps {
        return Err(Error::Infeasible { r, lo, hi });
    }
    let sizes = raw_sizes(h, r).to_vec();
    let lattice = LatticeView::enumerate(3)?;
    let cols = trivariate_columns();
    let table = ParthoodTable::from_rule(&lattice, cols.clone(), |a, i| member(&cols[i], a, 3));
    Decomposition::from_table(3, Some(r), table, sizes, tol)
}

/// Williams–Beer style view of a trivariate decomposition for one target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PidView {
    pub target: usize,
    pub sources: [usize; 2],
    pub redundancy: f64,
    pub unique_a: f64,
    pub unique_b: f64,
    pub synergy: f64,
}

/// `target` is 1-based.
pub fn pid_view(d: &Decomposition, target: usize) -> Result<PidView> {
    if d.n != 3 {
        return Err(Error::WrongVariableCount {
            expected: 3,
            got: d.n,
        });
    }
    if !(1..=3).contains(&target) {
        return Err(Error::InvalidTarget(target));
    }
    let t = target - 1;
    let others: Vec<usize> = (0..3).filter(|&i| i != t).collect();
    let (a, b) = (others[0], others[1]);
    let size = |label: AtomLabel| {
        d.atom(&label)
            .map(|x| x.size)
            .ok_or_else(|| Error::InvalidDecomposition(format!("missing atom {label}")))
    };
    let pair = |i: usize, j: usize| AtomLabel::SetTheoretic(singletons(&[i.min(j), i.max(j)]));
    Ok(PidView {
        target,
        sources: [a + 1, b + 1],
        redundancy: size(AtomLabel::SetTheoretic(singletons(&[0, 1, 2])))?,
        unique_a: size(pair(a, t))?,
        unique_b: size(pair(b, t))?,
        synergy: size(AtomLabel::Synergistic)?,
    })
}
