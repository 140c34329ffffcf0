use serde::{Deserialize, Serialize};

use super::{Atom, AtomLabel, Decomposition, ParthoodTable};
use crate::error::{Error, Result};
use crate::lattice::Antichain;

#[derive(Serialize, Deserialize)]
struct AtomJson {
    label: String,
    size: f64,
    covering: usize,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    n: usize,
    redundancy_param: Option<f64>,
    atoms: Vec<AtomJson>,
    table: TableJson,
}

pub fn to_json(d: &Decomposition) -> String {
    let doc = DecompositionJson {
        n: d.n,
        redundancy_param: d.redundancy_param,
        atoms: d
            .atoms
            .iter()
            .map(|a| AtomJson {
                label: a.label.to_string(),
                size: a.size,
                covering: a.covering,
            })
            .collect(),
        table: TableJson {
            rows: d.table.rows.iter().map(Antichain::to_string).collect(),
            cols: d.table.cols.iter().map(AtomLabel::to_string).collect(),
            entries: d
                .table
                .entries
                .iter()
                .map(|r| r.iter().map(|&e| e as u8).collect())
                .collect(),
        },
    };
    serde_json::to_string(&doc).expect("decomposition serializes")
}

pub fn from_json(text: &str) -> Result<Decomposition> {
    let doc: DecompositionJson = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("decomposition JSON: {e}")))?;
    let atoms = doc
        .atoms
        .into_iter()
        .map(|a| {
            Ok(Atom {
                label: a.label.parse()?,
                size: a.size,
                covering: a.covering,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = doc
        .table
        .rows
        .iter()
        .map(|r| r.parse::<Antichain>())
        .collect::<Result<Vec<_>>>()?;
    let cols = doc
        .table
        .cols
        .iter()
        .map(|c| c.parse::<AtomLabel>())
        .collect::<Result<Vec<_>>>()?;
    let entries = doc
        .table
        .entries
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Error::InvalidDecomposition(format!(
                        "parthood entry {other} is not 0 or 1"
                    ))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let d = Decomposition {
        n: doc.n,
        redundancy_param: doc.redundancy_param,
        atoms,
        table: ParthoodTable {
            rows,
            cols,
            entries,
        },
    };
    d.check_shape()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{solve_n_parity, solve_trivariate};
    use crate::dist::{gen_gate, EntropyTable, Gate};
    use crate::tolerance::Tolerance;

    #[test]
    fn round_trip() {
        let tol = Tolerance::default();
        let h = EntropyTable::new(
            &gen_gate(&Gate::Random {
                seed: 4,
                cards: vec![2, 2, 3],
            })
            .unwrap(),
        )
        .unwrap();
        let d = solve_trivariate(&h, None, tol).unwrap();
        let text = to_json(&d);
        assert_eq!(from_json(&text).unwrap(), d);
        let p = solve_n_parity(4, tol).unwrap();
        assert_eq!(from_json(&to_json(&p)).unwrap(), p);
    }

    #[test]
    fn layout() {
        let h = EntropyTable::new(&gen_gate(&Gate::Xor).unwrap()).unwrap();
        let d = solve_trivariate(&h, None, Tolerance::default()).unwrap();
        let text = to_json(&d);
        assert!(text.starts_with(r#"{"n":3,"redundancy_param":0.0,"atoms":[{"label":"{1}{2}{3}","size":0.0,"covering":3},{"label":"Pi_s","size":1.0,"covering":2}"#));
        assert!(text.contains(r#""entries":[[1,0,0,0,0,0,0,0,0],[1,0,1,"#));
    }

    #[test]
    fn rejects_malformed_documents() {
        let h = EntropyTable::new(&gen_gate(&Gate::Xor).unwrap()).unwrap();
        let d = solve_trivariate(&h, None, Tolerance::default()).unwrap();
        let text = to_json(&d);
        assert!(from_json("{").is_err());
        assert!(from_json(&text.replace("[1,0,0,0,0,0,0,0,0]", "[2,0,0,0,0,0,0,0,0]")).is_err());
        assert!(from_json(&text.replacen("\"Pi_s\"", "\"Pi_x\"", 1)).is_err());
        assert!(from_json(&text.replace("\"covering\":3", "\"covering\":0")).is_err());
        assert!(from_json(
            &text.replace("\"{1}{2}{3}\",\"{1}{2}\"", "\"{1}{2}{3}\",\"{1}{2}{3}\"")
        )
        .is_err());
    }
}
