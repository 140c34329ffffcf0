//! Antichains of pairwise-disjoint index sets and their partial order.
//!
//! An antichain `{1,2}{3}` labels the inclusion-exclusion term
//! `(X1 ∪ X2) ∩ X3`; its covering number is the number of brackets.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::varset::{VarSet, MAX_VARS};

/// Largest variable count for which the full lattice is enumerated.
pub const MAX_LATTICE_N: usize = 8;

/// A collection of pairwise-disjoint, non-empty brackets in canonical order
/// (brackets sorted by their smallest index).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Antichain {
    brackets: Vec<VarSet>,
}

impl Antichain {
    pub fn new(mut brackets: Vec<VarSet>) -> Result<Self> {
        if brackets.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidAntichain("empty bracket".into()));
        }
        let mut seen = VarSet::EMPTY;
        for b in &brackets {
            if !seen.is_disjoint(*b) {
                return Err(Error::InvalidAntichain(format!(
                    "index {} appears in two brackets",
                    seen.intersection(*b).first().unwrap() + 1
                )));
            }
            seen = seen.union(*b);
        }
        brackets.sort_by_key(|b| b.first());
        Ok(Antichain { brackets })
    }

    /// The antichain with no brackets (only produced by [`Antichain::lift_map`]).
    pub fn empty() -> Self {
        Antichain {
            brackets: Vec::new(),
        }
    }

    /// `{i1}{i2}...` over the members of `s`.
    pub fn singletons(s: VarSet) -> Self {
        Antichain {
            brackets: s.iter().map(VarSet::singleton).collect(),
        }
    }

    /// `{1}{2}...{n}`, the least element.
    pub fn bottom(n: usize) -> Self {
        Antichain::singletons(VarSet::full(n))
    }

    /// `{1,2,...,n}`, the greatest element.
    pub fn top(n: usize) -> Self {
        Antichain {
            brackets: vec![VarSet::full(n)],
        }
    }

    pub fn brackets(&self) -> &[VarSet] {
        &self.brackets
    }

    pub fn is_empty(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Covering number `|α|`.
    pub fn covering(&self) -> usize {
        self.brackets.len()
    }

    /// Union of all brackets.
    pub fn support(&self) -> VarSet {
        self.brackets
            .iter()
            .fold(VarSet::EMPTY, |acc, b| acc.union(*b))
    }

    /// True when every bracket is a single index.
    pub fn is_singletons(&self) -> bool {
        self.brackets.iter().all(|b| b.len() == 1)
    }

    /// `self ⪯ other`: every bracket of `other` contains some bracket of `self`.
    pub fn leq(&self, other: &Antichain) -> bool {
        other
            .brackets
            .iter()
            .all(|b| self.brackets.iter().any(|a| a.is_subset(*b)))
    }

    /// Drops every bracket containing the 0-based index `last`.
    ///
    /// With `last = n` this is the projection from antichains over `n + 1`
    /// variables to antichains over `n`; the result may be empty.
    pub fn lift_map(&self, last: usize) -> Antichain {
        Antichain {
            brackets: self
                .brackets
                .iter()
                .copied()
                .filter(|b| !b.contains(last))
                .collect(),
        }
    }

    /// Ordering used for enumeration: covering descending, then the number of
    /// indices used, then lexicographic on the bracket index lists.
    pub fn sort_key(&self) -> (Reverse<usize>, usize, Vec<Vec<usize>>) {
        (
            Reverse(self.covering()),
            self.support().len(),
            self.brackets.iter().map(|b| b.iter().collect()).collect(),
        )
    }

    /// Single-step successors that generate `⪯` over variables `0..n`:
    /// dropping a bracket, merging two brackets, or adding an unused index.
    pub fn successors(&self, n: usize) -> Vec<Antichain> {
        let k = self.brackets.len();
        let mut out = Vec::new();
        if k > 1 {
            for i in 0..k {
                let mut b = self.brackets.clone();
                b.remove(i);
                out.push(Antichain { brackets: b });
            }
            for i in 0..k {
                for j in i + 1..k {
                    let mut b = self.brackets.clone();
                    b[i] = b[i].union(b[j]);
                    b.remove(j);
                    out.push(Antichain { brackets: b });
                }
            }
        }
        let free = VarSet::full(n).difference(self.support());
        for x in free.iter() {
            for i in 0..k {
                let mut b = self.brackets.clone();
                b[i] = b[i].with(x);
                b.sort_by_key(|b| b.first());
                out.push(Antichain { brackets: b });
            }
        }
        out
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.brackets.is_empty() {
            return f.write_str("<empty>");
        }
        for b in &self.brackets {
            write!(f, "{{{b}}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Antichain({self})")
    }
}

/// Parses `{1,2}{3}` (1-based, comma-separated indices).
impl FromStr for Antichain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidAntichain(format!("'{s}': {msg}"));
        let mut rest = s.trim();
        let mut brackets = Vec::new();
        if rest.is_empty() {
            return Err(bad("no brackets"));
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(|| bad("expected '{'"))?;
            let end = body.find('}').ok_or_else(|| bad("unclosed bracket"))?;
            let mut b = VarSet::EMPTY;
            for tok in body[..end].split(',').map(str::trim) {
                let i: usize = tok.parse().map_err(|_| bad("bad index"))?;
                if i == 0 || i > MAX_VARS {
                    return Err(bad("index out of range"));
                }
                if b.contains(i - 1) {
                    return Err(bad("repeated index"));
                }
                b = b.with(i - 1);
            }
            brackets.push(b);
            rest = body[end + 1..].trim_start();
        }
        Antichain::new(brackets)
    }
}

/// All antichains over `n` variables with the order `⪯`.
#[derive(Debug, Clone)]
pub struct LatticeView {
    n: usize,
    elements: Vec<Antichain>,
    index: HashMap<Antichain, usize>,
}

impl LatticeView {
    pub fn enumerate(n: usize) -> Result<Self> {
        if !(1..=MAX_LATTICE_N).contains(&n) {
            return Err(Error::LatticeSize {
                n,
                max: MAX_LATTICE_N,
            });
        }
        let mut elements = Vec::new();
        let mut current = Vec::new();
        partial_partitions(0, n, &mut current, &mut elements);
        elements.sort_by_cached_key(Antichain::sort_key);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Ok(LatticeView { n, elements, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Antichain] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, a: &Antichain) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// `a ⪯ b`, rejecting antichains that are not over this lattice's variables.
    pub fn leq(&self, a: &Antichain, b: &Antichain) -> Result<bool> {
        for x in [a, b] {
            if x.is_empty() || !x.support().is_subset(VarSet::full(self.n)) {
                return Err(Error::InvalidAntichain(format!(
                    "{x} is not an antichain over {} variables",
                    self.n
                )));
            }
        }
        Ok(a.leq(b))
    }

    /// Edges `(lower, upper)` of the Hasse diagram, as element positions.
    ///
    /// Every cover is a single generator step, and a step `c` is a cover
    /// exactly when no other step from the same element lies below `c`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (i, a) in self.elements.iter().enumerate() {
            let mut steps = a.successors(self.n);
            steps.sort_by_cached_key(Antichain::sort_key);
            steps.dedup();
            for c in &steps {
                let bypassed = steps.iter().any(|d| d != c && d.leq(c));
                if !bypassed {
                    edges.push((i, self.index[c]));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Graphviz rendering of the Hasse diagram; `label` supplies node text.
    pub fn to_dot<F: Fn(&Antichain) -> String>(&self, label: F) -> String {
        let mut out = format!("digraph lattice_{} {{\n  rankdir=BT;\n", self.n);
        for (i, a) in self.elements.iter().enumerate() {
            let text = label(a).replace('\\', "\\\\").replace('"', "\\\"");
            out.push_str(&format!("  n{i} [label=\"{text}\"];\n"));
        }
        for (lo, hi) in self.hasse_edges() {
            out.push_str(&format!("  n{lo} -> n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Every assignment of indices `i..n` to "unused", an existing bracket or a
/// new bracket; the all-unused assignment is skipped.
fn partial_partitions(i: usize, n: usize, current: &mut Vec<VarSet>, out: &mut Vec<Antichain>) {
    if i == n {
        if !current.is_empty() {
            out.push(Antichain {
                brackets: current.clone(),
            });
        }
        return;
    }
    partial_partitions(i + 1, n, current, out);
    for k in 0..current.len() {
        current[k] = current[k].with(i);
        partial_partitions(i + 1, n, current, out);
        current[k] = current[k].without(i);
    }
    current.push(VarSet::singleton(i));
    partial_partitions(i + 1, n, current, out);
    current.pop();
}
