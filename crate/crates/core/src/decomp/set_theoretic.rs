use super::{AtomLabel, Decomposition, ParthoodTable};
use crate::dist::EntropyTable;
use crate::error::{Error, Result};
use crate::lattice::{Antichain, LatticeView};
use crate::tolerance::Tolerance;
use crate::varset::VarSet;

pub const MAX_SET_THEORETIC_N: usize = 5;

/// Co-information `I_m(T)` for every subset mask `T`.
fn co_information(h: &EntropyTable) -> Vec<f64> {
    let n = h.num_vars();
    let mut out = vec![0.0; 1 << n];
    for (t, slot) in out.iter_mut().enumerate().skip(1) {
        let t = t as u32;
        let mut u = t;
        let mut acc = 0.0;
        while u != 0 {
            let sign = if u.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * h.entropy(VarSet::from_bits(u));
            u = (u - 1) & t;
        }
        *slot = acc;
    }
    out
}

/// Möbius inversion assuming a distributive (set-theoretic) structure:
/// `Π_ι = Σ_{T ⊇ ι} (-1)^{|T|-|ι|} I_{|T|}(T)`.
///
/// Fails with [`Error::NotSetTheoretic`] when any atom is negative.
pub fn solve_set_theoretic(h: &EntropyTable, tol: Tolerance) -> Result<Decomposition> {
    let n = h.num_vars();
    if n == 0 {
        return Err(Error::EmptySelection);
    }
    if n > MAX_SET_THEORETIC_N {
        return Err(Error::TooManyVariables {
            got: n,
            limit: MAX_SET_THEORETIC_N,
        });
    }
    let co = co_information(h);
    let full = (1u32 << n) - 1;
    let lattice = LatticeView::enumerate(n)?;
    let cols: Vec<Antichain> = lattice
        .elements()
        .iter()
        .filter(|a| a.is_singletons())
        .cloned()
        .collect();

    let mut sizes = Vec::with_capacity(cols.len());
    let mut negative = Vec::new();
    for iota in &cols {
        let s = iota.support().bits();
        let rest = full & !s;
        let mut extra = rest;
        let mut size = 0.0;
        loop {
            let sign = if extra.count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            size += sign * co[(s | extra) as usize];
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & rest;
        }
        if size < -tol.eps {
            negative.push((iota.to_string(), size));
        }
        sizes.push(size);
    }
    if !negative.is_empty() {
        return Err(Error::NotSetTheoretic(negative));
    }

    let labels: Vec<AtomLabel> = cols.iter().cloned().map(AtomLabel::SetTheoretic).collect();
    let table = ParthoodTable::from_rule(&lattice, labels, |a, i| cols[i].leq(a));
    Decomposition::from_table(n, None, table, sizes, tol)
}
