use super::trivariate::member;
use super::{AtomLabel, Decomposition, ParthoodTable};
use crate::error::{Error, Result};
use crate::lattice::{LatticeView, MAX_LATTICE_N};
use crate::tolerance::Tolerance;

/// Closed-form decomposition of the `n`-variable parity system: one
/// synergistic atom and `n - 2` ghosts, each of one bit.
pub fn solve_n_parity(n: usize, tol: Tolerance) -> Result<Decomposition> {
    if !(3..=MAX_LATTICE_N).contains(&n) {
        return Err(Error::LatticeSize {
            n,
            max: MAX_LATTICE_N,
        });
    }
    let lattice = LatticeView::enumerate(n)?;
    let cols: Vec<AtomLabel> = std::iter::once(AtomLabel::Synergistic)
        .chain((1..=n - 2).map(AtomLabel::Ghost))
        .collect();
    let sizes = vec![1.0; cols.len()];
    let table = ParthoodTable::from_rule(&lattice, cols.clone(), |a, i| member(&cols[i], a, n));
    Decomposition::from_table(n, None, table, sizes, tol)
}
