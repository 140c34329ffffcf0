//! Library quantities checked against direct summation written here.

use std::collections::HashMap;

use infatom_core::decomp::solve_trivariate;
use infatom_core::dist::{gen_gate, Gate};
use infatom_core::{EntropyTable, ProbTable, Tolerance, VarSet};

/// Entropy of the marginal on `idx`, summing probabilities by hand.
fn oracle_entropy(rows: &[(Vec<u32>, f64)], idx: &[usize]) -> f64 {
    let mut m: HashMap<Vec<u32>, f64> = HashMap::new();
    for (o, p) in rows {
        *m.entry(idx.iter().map(|&i| o[i]).collect()).or_default() += p;
    }
    m.values()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

fn idx(s: VarSet) -> Vec<usize> {
    s.iter().collect()
}

#[test]
fn entropies_match_direct_summation() {
    let mut gates = vec![
        Gate::Xor,
        Gate::And,
        Gate::Copy,
        Gate::TwoCoinsCopy,
        Gate::Parity(5),
    ];
    gates.extend((0..10).map(|seed| Gate::Random {
        seed,
        cards: vec![2, 3, 4],
    }));
    for g in gates {
        let p = gen_gate(&g).unwrap();
        let h = EntropyTable::new(&p).unwrap();
        for mask in 1u32..1 << p.num_vars() {
            let s = VarSet::from_bits(mask);
            let want = oracle_entropy(p.rows(), &idx(s));
            assert!((h.entropy(s) - want).abs() < 1e-12, "{g} {s}");
        }
    }
}

#[test]
fn xor_golden_values() {
    let p = gen_gate(&Gate::Xor).unwrap();
    let x = VarSet::singleton;
    for i in 0..3 {
        assert!((p.entropy(x(i)).unwrap() - 1.0).abs() < 1e-12);
        for j in i + 1..3 {
            assert!((p.entropy(x(i).union(x(j))).unwrap() - 2.0).abs() < 1e-12);
            assert!(p.mutual_information(x(i), x(j)).unwrap().abs() < 1e-12);
        }
    }
    assert!((p.entropy(p.all()).unwrap() - 2.0).abs() < 1e-12);
    assert!((p.mutual_information(x(0).union(x(1)), x(2)).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn and_gate_atoms_match_hand_computation() {
    // P(0,0,0) = P(0,1,0) = P(1,0,0) = P(1,1,1) = 1/4.
    let rows = vec![
        (vec![0, 0, 0], 0.25),
        (vec![0, 1, 0], 0.25),
        (vec![1, 0, 0], 0.25),
        (vec![1, 1, 1], 0.25),
    ];
    let h3 = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
    let h13 = 1.5;
    let i13 = 1.0 + h3 - h13;
    // I_3 = I(X1;X2) - I(X1;X2|X3) = 0 - (2 H13 - H3 - H123)
    let i3 = -(2.0 * h13 - h3 - 2.0);
    let p = ProbTable::from_rows(3, rows).unwrap();
    let d = solve_trivariate(
        &EntropyTable::new(&p).unwrap(),
        Some(0.0),
        Tolerance::default(),
    )
    .unwrap();
    assert!((d.size("{1}{3}").unwrap() - i13).abs() < 1e-12);
    assert!((d.size("{2}{3}").unwrap() - i13).abs() < 1e-12);
    assert!((d.size("Pi_s").unwrap() + i3).abs() < 1e-12);
}
