//! Checks a decomposition against the parthood axioms on a distribution.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::Decomposition;
use crate::dist::EntropyTable;
use crate::error::{Error, Result};
use crate::lattice::Antichain;
use crate::terms::eval_term;
use crate::tolerance::Tolerance;
use crate::varset::VarSet;

const MAX_DETAILS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects up to [`MAX_DETAILS`] messages plus a count of the rest.
#[derive(Default)]
struct Findings {
    count: usize,
    messages: Vec<String>,
}

impl Findings {
    fn push(&mut self, msg: impl FnOnce() -> String) {
        self.count += 1;
        if self.messages.len() < MAX_DETAILS {
            self.messages.push(msg());
        }
    }

    fn detail(&self) -> Option<String> {
        if self.count == 0 {
            return None;
        }
        let mut s = self.messages.join("; ");
        if self.count > self.messages.len() {
            s.push_str(&format!("; and {} more", self.count - self.messages.len()));
        }
        Some(s)
    }
}

fn result(name: &str, pass: bool, residual: f64, detail: Option<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass,
        residual,
        detail,
    }
}

/// Reduced form of a term: brackets replaced by their closures, `None` when
/// two brackets are independent (empty term), and brackets that contain
/// another bracket dropped.
fn normal_form(h: &EntropyTable, a: &Antichain, tol: Tolerance) -> Option<Vec<VarSet>> {
    let closures: Vec<VarSet> = a.brackets().iter().map(|&b| h.closure(b, tol)).collect();
    for (i, &x) in closures.iter().enumerate() {
        for &y in &closures[i + 1..] {
            if h.independent(x, y, tol) {
                return None;
            }
        }
    }
    let mut kept: Vec<VarSet> = closures
        .iter()
        .enumerate()
        .filter(|&(j, &c)| {
            !closures
                .iter()
                .enumerate()
                .any(|(i, &o)| i != j && o.is_subset(c) && (o != c || i < j))
        })
        .map(|(_, &c)| c)
        .collect();
    kept.sort_by_key(|c| c.bits());
    Some(kept)
}

fn lattice_size(n: usize) -> usize {
    // Bell(n + 1) - 1 via the Bell triangle.
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row.last().unwrap() - 1
}

/// Runs every check; failures are reported, not returned as errors.
pub fn validate(d: &Decomposition, h: &EntropyTable, tol: Tolerance) -> Result<ValidationReport> {
    d.check_shape()?;
    if d.n != h.num_vars() {
        return Err(Error::WrongVariableCount {
            expected: d.n,
            got: h.num_vars(),
        });
    }
    let t = &d.table;
    let positive: Vec<bool> = d.atoms.iter().map(|a| a.size > tol.eps).collect();
    let mut checks = Vec::new();

    let mut neg = Findings::default();
    let mut worst = 0.0f64;
    for a in &d.atoms {
        if a.size < -tol.eps {
            neg.push(|| format!("{} = {}", a.label, a.size));
        }
        worst = worst.max(-a.size);
    }
    checks.push(result(
        "non_negativity",
        neg.count == 0,
        worst,
        neg.detail(),
    ));

    let forms: Vec<Option<Vec<VarSet>>> = t.rows.iter().map(|a| normal_form(h, a, tol)).collect();

    let mut mono = Findings::default();
    let compare = |i: usize, j: usize, mono: &mut Findings| {
        for (k, atom) in d.atoms.iter().enumerate() {
            if t.entries[i][k] && !t.entries[j][k] {
                mono.push(|| {
                    format!(
                        "{} is in {} but not in {}",
                        atom.label, t.rows[i], t.rows[j]
                    )
                });
            }
        }
    };
    if t.rows.len() == lattice_size(d.n) {
        let index: HashMap<&Antichain, usize> =
            t.rows.iter().enumerate().map(|(i, a)| (a, i)).collect();
        for (i, a) in t.rows.iter().enumerate() {
            for s in a.successors(d.n) {
                compare(i, index[&s], &mut mono);
            }
        }
    } else {
        for (i, a) in t.rows.iter().enumerate() {
            for (j, b) in t.rows.iter().enumerate() {
                if i != j && a.leq(b) {
                    compare(i, j, &mut mono);
                }
            }
        }
    }
    for (i, f) in forms.iter().enumerate() {
        if f.is_none() {
            for (k, atom) in d.atoms.iter().enumerate() {
                if t.entries[i][k] && positive[k] {
                    mono.push(|| format!("{} is in the empty term {}", atom.label, t.rows[i]));
                }
            }
        }
    }
    checks.push(result(
        "monotonicity",
        mono.count == 0,
        mono.count as f64,
        mono.detail(),
    ));

    let mut cover = Findings::default();
    let mut cover_residual = 0.0f64;
    for (k, atom) in d.atoms.iter().enumerate() {
        let expected = t.max_covering(k);
        if expected != Some(atom.covering) {
            let diff = atom.covering as f64 - expected.unwrap_or(0) as f64;
            cover_residual = cover_residual.max(diff.abs());
            cover.push(|| match expected {
                Some(c) => format!(
                    "{} has covering {} but its largest term has {c}",
                    atom.label, atom.covering
                ),
                None => format!("{} is in no term", atom.label),
            });
        }
    }
    checks.push(result(
        "covering_rule",
        cover.count == 0,
        cover_residual,
        cover.detail(),
    ));

    let sum_h: f64 = (0..d.n).map(|i| h.entropy(VarSet::singleton(i))).sum();
    let conservation = (sum_h - d.weighted_size()).abs();
    checks.push(result(
        "conservation_law",
        conservation <= tol.eps,
        conservation,
        (conservation > tol.eps).then(|| {
            format!(
                "sum of entropies {sum_h} vs weighted atom sum {}",
                d.weighted_size()
            )
        }),
    ));

    let total = (h.total() - d.total_size()).abs();
    checks.push(result(
        "total_law",
        total <= tol.eps,
        total,
        (total > tol.eps)
            .then(|| format!("joint entropy {} vs atom sum {}", h.total(), d.total_size())),
    ));

    let mut terms = Findings::default();
    let mut term_residual = 0.0f64;
    for (i, a) in t.rows.iter().enumerate() {
        let value = eval_term(h, a, tol)?;
        let sum = d.row_sum(i);
        let excess = value.excess(sum);
        term_residual = term_residual.max(excess);
        if excess > tol.eps {
            terms.push(|| format!("{a}: term size {value} but atoms sum to {sum}"));
        }
    }
    checks.push(result(
        "term_sizes",
        terms.count == 0,
        term_residual,
        terms.detail(),
    ));

    let mut classes: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (i, f) in forms.iter().enumerate() {
        if let Some(f) = f {
            classes
                .entry(f.iter().map(|c| c.bits()).collect())
                .or_default()
                .push(i);
        }
    }
    let mut equal = Findings::default();
    for members in classes.values() {
        let first = members[0];
        for &other in &members[1..] {
            let differs = (0..d.atoms.len())
                .any(|k| positive[k] && t.entries[first][k] != t.entries[other][k]);
            if differs {
                equal.push(|| {
                    format!(
                        "{} and {} are equal terms with different rows",
                        t.rows[first], t.rows[other]
                    )
                });
            }
        }
    }
    checks.push(result(
        "equal_terms",
        equal.count == 0,
        equal.count as f64,
        equal.detail(),
    ));

    let notes = vec![
        "monotonicity and equal_terms use the antichain order and equalities proven by \
         the independence and determinism reductions; other inclusions are not checked"
            .to_string(),
        "term_sizes checks interval containment for terms that do not reduce to an exact value"
            .to_string(),
    ];
    Ok(ValidationReport { checks, notes })
}
