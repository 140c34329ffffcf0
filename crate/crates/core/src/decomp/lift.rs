use std::collections::HashMap;

use super::{validate, Atom, AtomLabel, Decomposition, ParthoodTable};
use crate::dist::EntropyTable;
use crate::error::{Error, Result};
use crate::lattice::{Antichain, LatticeView, MAX_LATTICE_N};
use crate::tolerance::Tolerance;

/// Extends a decomposition of `X_1..X_n` to the system with `X_{n+1}` equal
/// to the joint of all variables. Row `α` of the new table copies row `F(α)`
/// of the old one, where `F` drops every bracket containing `X_{n+1}`; when
/// nothing is left the whole-system row is used. Sizes are kept and every
/// covering grows by one.
pub fn lift_decomposition(
    d: &Decomposition,
    h: &EntropyTable,
    tol: Tolerance,
) -> Result<Decomposition> {
    let report = validate(d, h, tol)?;
    if !report.passed() {
        return Err(Error::NotValid(
            report.failures().into_iter().map(String::from).collect(),
        ));
    }
    let n = d.n;
    if n + 1 > MAX_LATTICE_N {
        return Err(Error::LatticeSize {
            n: n + 1,
            max: MAX_LATTICE_N,
        });
    }
    let index: HashMap<&Antichain, usize> = d
        .table
        .rows
        .iter()
        .enumerate()
        .map(|(i, a)| (a, i))
        .collect();
    let top = Antichain::top(n);
    let lattice = LatticeView::enumerate(n + 1)?;
    let mut entries = Vec::with_capacity(lattice.len());
    for a in lattice.elements() {
        let mut image = a.lift_map(n);
        if image.is_empty() {
            image = top.clone();
        }
        let &i = index.get(&image).ok_or_else(|| {
            Error::InvalidDecomposition(format!("lift needs row {image}, which is missing"))
        })?;
        entries.push(d.table.entries[i].clone());
    }

    let relabel = |label: &AtomLabel| match label {
        AtomLabel::SetTheoretic(iota) => {
            AtomLabel::SetTheoretic(Antichain::singletons(iota.support().with(n)))
        }
        other => other.clone(),
    };
    let atoms: Vec<Atom> = d
        .atoms
        .iter()
        .map(|a| Atom {
            label: relabel(&a.label),
            size: a.size,
            covering: a.covering + 1,
        })
        .collect();
    let table = ParthoodTable {
        rows: lattice.elements().to_vec(),
        cols: atoms.iter().map(|a| a.label.clone()).collect(),
        entries,
    };
    let lifted = Decomposition {
        n: n + 1,
        redundancy_param: d.redundancy_param,
        atoms,
        table,
    };
    lifted.check_shape()?;
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{solve_n_parity, solve_trivariate};
    use crate::dist::{gen_gate, Gate};

    const TOL: Tolerance = Tolerance {
        eps: 1e-9,
        eps_det: 1e-9,
    };

    fn table(g: Gate) -> EntropyTable {
        EntropyTable::new(&gen_gate(&g).unwrap()).unwrap()
    }

    fn ac(s: &str) -> Antichain {
        s.parse().unwrap()
    }

    #[test]
    fn xor_lift() {
        let h = table(Gate::Xor);
        let d = solve_trivariate(&h, None, TOL).unwrap();
        let l = lift_decomposition(&d, &h, TOL).unwrap();
        assert_eq!(l.n, 4);
        assert_eq!(l.atom(&AtomLabel::Synergistic).unwrap().covering, 3);
        assert_eq!(l.atom(&AtomLabel::Ghost(1)).unwrap().covering, 2);
        for i in 1..=3 {
            assert_eq!(l.term_size(&ac(&format!("{{{i}}}{{4}}"))), Some(1.0));
        }
        assert_eq!(l.term_size(&ac("{1,2}{4}")), Some(2.0));
        assert_eq!(l.term_size(&ac("{1,2,3}{4}")), Some(2.0));
        assert_eq!(l.total_size(), 2.0);
        let extended = h.with_joint().unwrap();
        assert!(validate(&l, &extended, TOL).unwrap().passed());
    }

    #[test]
    fn set_theoretic_labels_gain_the_new_variable() {
        let h = table(Gate::Copy);
        let d = solve_trivariate(&h, None, TOL).unwrap();
        let l = lift_decomposition(&d, &h, TOL).unwrap();
        let red = l
            .atom(&AtomLabel::SetTheoretic(ac("{1}{2}{3}{4}")))
            .unwrap();
        assert_eq!((red.size, red.covering), (1.0, 4));
    }

    #[test]
    fn two_coins_copy_lift() {
        let h = table(Gate::TwoCoinsCopy);
        let d = solve_trivariate(&h, None, TOL).unwrap();
        let l = lift_decomposition(&d, &h, TOL).unwrap();
        for label in ["{1}{3}{4}", "{2}{3}{4}"] {
            let a = l.atom(&label.parse().unwrap()).unwrap();
            assert_eq!((a.size, a.covering), (1.0, 3));
        }
        assert!(validate(&l, &h.with_joint().unwrap(), TOL)
            .unwrap()
            .passed());
    }

    #[test]
    fn rejects_invalid_input() {
        let h = table(Gate::Xor);
        let mut d = solve_trivariate(&h, None, TOL).unwrap();
        d.atoms[1].size = 0.5;
        assert!(matches!(
            lift_decomposition(&d, &h, TOL),
            Err(Error::NotValid(_))
        ));
    }

    #[test]
    fn parity_lift_stays_within_the_lattice_cap() {
        let h = table(Gate::Parity(8));
        let d = solve_n_parity(8, TOL).unwrap();
        assert!(matches!(
            lift_decomposition(&d, &h, TOL),
            Err(Error::LatticeSize { .. })
        ));
    }
}
