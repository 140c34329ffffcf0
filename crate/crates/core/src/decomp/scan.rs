use rayon::prelude::*;
use serde::Serialize;

use super::trivariate::raw_sizes;
use super::{feasible_interval, solve_set_theoretic};
use crate::dist::{gen_gate, EntropyTable, Gate};
use crate::error::{Error, Result};
use crate::tolerance::Tolerance;
use crate::varset::VarSet;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: u64,
    pub seed: u64,
    pub lo: f64,
    pub hi: f64,
    /// `Π_s` at the two ends of the interval.
    pub synergy_range: (f64, f64),
    /// Smallest atom of the solution at `r = lo`.
    pub min_atom_at_lo: f64,
    pub set_theoretic: bool,
    /// `I((X1,X2);X3) - I(X1;X3) - I(X2;X3)`, recorded for set-theoretic samples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subadditivity_excess: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub samples: u64,
    pub seed: u64,
    pub cards: Vec<u32>,
    pub min_width: f64,
    pub min_atom_at_lo: f64,
    pub set_theoretic_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_subadditivity_excess: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<SampleRecord>,
}

/// Seed of sample `index`, independent of how samples are scheduled.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_sample(index: u64, seed: u64, cards: &[u32], tol: Tolerance) -> Result<SampleRecord> {
    let sub = sample_seed(seed, index);
    let p = gen_gate(&Gate::Random {
        seed: sub,
        cards: cards.to_vec(),
    })?;
    let h = EntropyTable::new(&p)?;
    let (lo, hi) = feasible_interval(&h)?;
    let at_lo = raw_sizes(&h, lo);
    let at_hi = raw_sizes(&h, hi);
    let set_theoretic = match solve_set_theoretic(&h, tol) {
        Ok(_) => true,
        Err(Error::NotSetTheoretic(_)) => false,
        Err(e) => return Err(e),
    };
    let x = VarSet::singleton;
    let excess = h.mi(x(0).union(x(1)), x(2)) - h.mi(x(0), x(2)) - h.mi(x(1), x(2));
    Ok(SampleRecord {
        index,
        seed: sub,
        lo,
        hi,
        synergy_range: (at_lo[1], at_hi[1]),
        min_atom_at_lo: at_lo.iter().copied().fold(f64::INFINITY, f64::min),
        set_theoretic,
        subadditivity_excess: set_theoretic.then_some(excess),
    })
}

/// Solves `n_samples` random three-variable systems and summarizes the
/// feasible intervals, atom signs and set-theoretic solvability.
pub fn scan_random(
    n_samples: u64,
    seed: u64,
    cards: &[u32],
    keep_records: bool,
    tol: Tolerance,
) -> Result<ScanSummary> {
    if cards.len() != 3 {
        return Err(Error::WrongVariableCount {
            expected: 3,
            got: cards.len(),
        });
    }
    if let Some(&c) = cards.iter().find(|&&c| c < 2) {
        return Err(Error::InvalidGate(format!(
            "cardinalities must be at least 2, got {c}"
        )));
    }
    let records = (0..n_samples)
        .into_par_iter()
        .map(|i| run_sample(i, seed, cards, tol))
        .collect::<Result<Vec<_>>>()?;

    let mut summary = ScanSummary {
        samples: n_samples,
        seed,
        cards: cards.to_vec(),
        min_width: f64::INFINITY,
        min_atom_at_lo: f64::INFINITY,
        set_theoretic_count: 0,
        max_subadditivity_excess: None,
        records: Vec::new(),
    };
    for r in &records {
        summary.min_width = summary.min_width.min(r.hi - r.lo);
        summary.min_atom_at_lo = summary.min_atom_at_lo.min(r.min_atom_at_lo);
        if let Some(e) = r.subadditivity_excess {
            summary.set_theoretic_count += 1;
            summary.max_subadditivity_excess = Some(
                summary
                    .max_subadditivity_excess
                    .map_or(e, |m: f64| m.max(e)),
            );
        }
    }
    if keep_records {
        summary.records = records;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance {
        eps: 1e-9,
        eps_det: 1e-9,
    };

    #[test]
    fn binary_scan() {
        let s = scan_random(1000, 42, &[2, 2, 2], false, TOL).unwrap();
        assert!(s.min_width >= -1e-9);
        assert!(s.min_atom_at_lo >= -1e-9);
        if let Some(e) = s.max_subadditivity_excess {
            assert!(e <= 1e-9);
        }
        assert!(s.records.is_empty());
    }

    #[test]
    fn deterministic() {
        let a = scan_random(200, 7, &[2, 3, 2], true, TOL).unwrap();
        let b = scan_random(200, 7, &[2, 3, 2], true, TOL).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 200);
        let c = scan_random(200, 8, &[2, 3, 2], true, TOL).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sample_records_match_direct_solves() {
        let s = scan_random(5, 3, &[2, 2, 2], true, TOL).unwrap();
        for r in &s.records {
            let p = gen_gate(&Gate::Random {
                seed: r.seed,
                cards: vec![2, 2, 2],
            })
            .unwrap();
            let h = EntropyTable::new(&p).unwrap();
            assert_eq!(feasible_interval(&h).unwrap(), (r.lo, r.hi));
        }
    }

    #[test]
    fn invalid_cardinalities() {
        assert!(scan_random(1, 0, &[2, 2], false, TOL).is_err());
        assert!(scan_random(1, 0, &[2, 1, 2], false, TOL).is_err());
    }

    #[test]
    fn sub_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| sample_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
