//! Plain-text rendering of results. Every number goes through `fmt_bits`.

use std::fmt::Write;

use infatom_core::decomp::{PidView, ScanSummary};
use infatom_core::{fmt_bits, Decomposition};

pub fn decomposition(d: &Decomposition, interval: Option<(f64, f64)>, with_table: bool) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}", d.n).unwrap();
    if let Some((lo, hi)) = interval {
        writeln!(out, "interval = [{}, {}]", fmt_bits(lo), fmt_bits(hi)).unwrap();
    }
    if let Some(r) = d.redundancy_param {
        writeln!(out, "r = {}", fmt_bits(r)).unwrap();
    }
    for a in &d.atoms {
        writeln!(out, "{} = {} [{}]", a.label, fmt_bits(a.size), a.covering).unwrap();
    }
    writeln!(out, "total = {}", fmt_bits(d.total_size())).unwrap();
    writeln!(out, "weighted total = {}", fmt_bits(d.weighted_size())).unwrap();
    if with_table {
        out.push_str(&table(d));
    }
    out
}

/// Parthood table with one line per term and one column per atom.
fn table(d: &Decomposition) -> String {
    let rows: Vec<String> = d.table.rows.iter().map(|a| a.to_string()).collect();
    let width = rows.iter().map(String::len).max().unwrap_or(0).max(1);
    let cols: Vec<String> = d.table.cols.iter().map(|c| c.to_string()).collect();
    let mut out = format!("{:width$}", "f");
    for c in &cols {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
    for (row, entries) in rows.iter().zip(&d.table.entries) {
        write!(out, "{row:width$}").unwrap();
        for (c, &e) in cols.iter().zip(entries) {
            write!(out, " {:>w$}", e as u8, w = c.len()).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn pid(v: &PidView) -> String {
    let [a, b] = v.sources;
    format!(
        "target = {}\nredundancy = {}\nunique_{a} = {}\nunique_{b} = {}\nsynergy = {}\n",
        v.target,
        fmt_bits(v.redundancy),
        fmt_bits(v.unique_a),
        fmt_bits(v.unique_b),
        fmt_bits(v.synergy)
    )
}

pub fn scan(s: &ScanSummary, per_sample: bool) -> String {
    let mut out = String::new();
    let cards: Vec<String> = s.cards.iter().map(u32::to_string).collect();
    writeln!(out, "samples = {}", s.samples).unwrap();
    writeln!(out, "seed = {}", s.seed).unwrap();
    writeln!(out, "cards = {}", cards.join(",")).unwrap();
    let opt = |x: f64| {
        if x.is_finite() {
            fmt_bits(x)
        } else {
            "n/a".to_string()
        }
    };
    writeln!(out, "min interval width = {}", opt(s.min_width)).unwrap();
    writeln!(out, "min atom at r = lo = {}", opt(s.min_atom_at_lo)).unwrap();
    writeln!(out, "set-theoretic samples = {}", s.set_theoretic_count).unwrap();
    writeln!(
        out,
        "max subadditivity excess = {}",
        s.max_subadditivity_excess
            .map_or("n/a".to_string(), fmt_bits)
    )
    .unwrap();
    if per_sample {
        writeln!(
            out,
            "index seed lo hi synergy_lo synergy_hi min_atom set_theoretic"
        )
        .unwrap();
        for r in &s.records {
            writeln!(
                out,
                "{} {} {} {} {} {} {} {}",
                r.index,
                r.seed,
                fmt_bits(r.lo),
                fmt_bits(r.hi),
                fmt_bits(r.synergy_range.0),
                fmt_bits(r.synergy_range.1),
                fmt_bits(r.min_atom_at_lo),
                r.set_theoretic
            )
            .unwrap();
        }
    }
    out
}
