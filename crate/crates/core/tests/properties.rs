use proptest::prelude::*;

use infatom_core::decomp::{
    feasible_interval, lift_decomposition, solve_set_theoretic, solve_trivariate, validate,
};
use infatom_core::dist::{gen_gate, Gate};
use infatom_core::lattice::LatticeView;
use infatom_core::terms::{check_inclusion_exclusion3, delta_h};
use infatom_core::{eval_term, Antichain, EntropyTable, ProbTable, TermSize, Tolerance, VarSet};

const EPS: f64 = 1e-9;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn x(i: usize) -> VarSet {
    VarSet::singleton(i)
}

fn random(seed: u64, cards: Vec<u32>) -> ProbTable {
    gen_gate(&Gate::Random { seed, cards }).unwrap()
}

fn system() -> impl Strategy<Value = ProbTable> {
    (any::<u64>(), prop::collection::vec(2u32..=3, 3)).prop_map(|(s, c)| random(s, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn entropy_axioms(p in system()) {
        let h = EntropyTable::new(&p).unwrap();
        for s in 0u32..8 {
            let s = VarSet::from_bits(s);
            prop_assert!(h.entropy(s) >= -EPS);
            for t in 0u32..8 {
                let t = VarSet::from_bits(t);
                if s.is_subset(t) {
                    prop_assert!(h.entropy(s) <= h.entropy(t) + EPS);
                }
                prop_assert!(h.entropy(s.union(t)) <= h.entropy(s) + h.entropy(t) + EPS);
                prop_assert!(h.mi(s, t) >= -EPS);
                let ie = h.entropy(s) + h.entropy(t) - h.mi(s, t);
                prop_assert!((h.entropy(s.union(t)) - ie).abs() < 1e-12);
                if s.is_disjoint(t) && !s.is_empty() && !t.is_empty() {
                    let i2 = p.interaction_information(&[s, t]).unwrap();
                    prop_assert!((i2 - p.mutual_information(s, t).unwrap()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn trivariate_reconstruction(p in system(), frac in 0.0f64..=1.0) {
        let h = EntropyTable::new(&p).unwrap();
        let (lo, hi) = feasible_interval(&h).unwrap();
        prop_assert!(hi - lo >= -EPS);
        let r = lo + frac * (hi - lo).max(0.0);
        let d = solve_trivariate(&h, Some(r), tol()).unwrap();
        for mask in 1u32..8 {
            let s = VarSet::from_bits(mask);
            let got = d.term_size(&Antichain::new(vec![s]).unwrap()).unwrap();
            prop_assert!((got - h.entropy(s)).abs() < EPS);
        }
        let synergy = h.mi(x(0).union(x(1)), x(2)) - h.mi(x(0), x(2)) - h.mi(x(1), x(2));
        let s = d.size("Pi_s").unwrap() - d.size("{1}{2}{3}").unwrap();
        prop_assert!((synergy - s).abs() < EPS);
        prop_assert_eq!(d.size("Pi_s"), d.size("Pi_g"));
        prop_assert!(validate(&d, &h, tol()).unwrap().passed());
        prop_assert!(check_inclusion_exclusion3(&h, r, tol()).unwrap().abs() < EPS);
    }

    #[test]
    fn observables_do_not_depend_on_r(p in system()) {
        let h = EntropyTable::new(&p).unwrap();
        let (lo, hi) = feasible_interval(&h).unwrap();
        let a = solve_trivariate(&h, Some(lo), tol()).unwrap();
        let b = solve_trivariate(&h, Some(hi.max(lo)), tol()).unwrap();
        for row in a.table.rows.iter().filter(|r| r.covering() <= 2) {
            prop_assert!((a.term_size(row).unwrap() - b.term_size(row).unwrap()).abs() < EPS);
        }
        let diff = |d: &infatom_core::Decomposition| {
            d.size("Pi_s").unwrap() - d.size("{1}{2}{3}").unwrap()
        };
        prop_assert!((diff(&a) - diff(&b)).abs() < EPS);
        let delta_lo = delta_h(&h, lo, tol()).unwrap();
        prop_assert!(delta_lo >= -EPS);
    }

    #[test]
    fn subdistributivity(p in system()) {
        let h = EntropyTable::new(&p).unwrap();
        let i3 = h.interaction(&[x(0), x(1), x(2)]);
        let v = eval_term(&h, &Antichain::bottom(3), tol()).unwrap();
        if i3 > 0.0 {
            let lower = match v.size {
                TermSize::Exact(e) => e,
                TermSize::Interval { lo, .. } => lo,
            };
            prop_assert!(lower >= i3 - EPS);
        }
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let a = Antichain::new(vec![x(i).union(x(j)), x(k)]).unwrap();
            let v = eval_term(&h, &a, tol()).unwrap().exact().unwrap();
            prop_assert!(v >= h.mi(x(i), x(k)).max(h.mi(x(j), x(k))) - EPS);
        }
    }

    #[test]
    fn lift_round_trip(p in system()) {
        let h = EntropyTable::new(&p).unwrap();
        let d = solve_trivariate(&h, None, tol()).unwrap();
        prop_assert!(validate(&d, &h, tol()).unwrap().passed());
        let l = lift_decomposition(&d, &h, tol()).unwrap();
        let extended = EntropyTable::new(&p.with_joint_variable("J").unwrap()).unwrap();
        let report = validate(&l, &extended, tol()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures());
        for (a, b) in d.atoms.iter().zip(&l.atoms) {
            prop_assert_eq!(a.covering + 1, b.covering);
            prop_assert_eq!(a.size, b.size);
        }
    }

    #[test]
    fn set_theoretic_agreement(p in system()) {
        let h = EntropyTable::new(&p).unwrap();
        if let Ok(st) = solve_set_theoretic(&h, tol()) {
            let r = st.size("{1}{2}{3}").unwrap();
            let d = solve_trivariate(&h, Some(r), tol()).unwrap();
            for a in &st.atoms {
                prop_assert!((d.atom(&a.label).unwrap().size - a.size).abs() < EPS);
            }
            prop_assert!(d.size("Pi_s").unwrap() <= EPS);
            let excess = h.mi(x(0).union(x(1)), x(2)) - h.mi(x(0), x(2)) - h.mi(x(1), x(2));
            prop_assert!(excess <= EPS);
            for (i, a) in st.table.rows.iter().enumerate() {
                let v = eval_term(&h, a, tol()).unwrap();
                let sum: f64 = st.table.entries[i].iter().zip(&st.atoms)
                    .filter(|(e, _)| **e).map(|(_, a)| a.size).sum();
                prop_assert!(v.excess(sum) < EPS, "{}", a);
            }
        }
    }

    #[test]
    fn term_values_are_consistent(p in system()) {
        let h = EntropyTable::new(&p).unwrap();
        for a in LatticeView::enumerate(3).unwrap().elements() {
            let v = eval_term(&h, a, tol()).unwrap();
            let (lo, hi) = v.bounds();
            prop_assert!(lo >= -EPS);
            prop_assert!(lo <= hi + EPS, "{} {:?}", a, v);
        }
    }
}

#[test]
fn pairwise_information_bounds_co_information() {
    for seed in 0..10_000u64 {
        let cards = if seed % 2 == 0 {
            vec![2, 2, 2]
        } else {
            vec![3, 3, 3]
        };
        let h = EntropyTable::new(&random(seed, cards)).unwrap();
        let i3 = h.interaction(&[x(0), x(1), x(2)]);
        let m = h.mi(x(0), x(1)).min(h.mi(x(0), x(2))).min(h.mi(x(1), x(2)));
        assert!(m - i3 >= -EPS, "seed {seed}");
    }
}

#[test]
fn delta_h_on_permuted_random_systems() {
    for seed in 0..50u64 {
        let p = random(seed, vec![2, 3, 4]);
        let h = EntropyTable::new(&p).unwrap();
        let (lo, hi) = feasible_interval(&h).unwrap();
        let r = 0.5 * (lo + hi);
        let base = delta_h(&h, r, tol()).unwrap();
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            let rows = p
                .rows()
                .iter()
                .map(|(o, q)| (perm.iter().map(|&i| o[i]).collect(), *q))
                .collect();
            let hp = EntropyTable::new(&ProbTable::from_rows(3, rows).unwrap()).unwrap();
            assert!((delta_h(&hp, r, tol()).unwrap() - base).abs() < 1e-12);
        }
    }
}
