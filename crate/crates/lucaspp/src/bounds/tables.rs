//! Regenerates the bound tables as TSV or JSON.

use serde::{Deserialize, Serialize};

use super::{
    chain_rule, default_d_scan, exact_qk1, prime_count_exact, prime_lower_bound, q_lemma10, q_lemma8,
    q_theorem16, security_bits, ykts_bound, QRow, SetSizes,
};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Empty,
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => f.write_str(&fmt_upper(*v)),
            Cell::Empty => Ok(()),
        }
    }
}

/// Six decimals, rounded up: every float cell is an upper bound.
pub fn fmt_upper(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    format!("{:.6}", (v * 1e6).ceil() / 1e6)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub id: u8,
    pub sizing: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_string).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.to_tsv(),
            Format::Json => self.to_json() + "\n",
        }
    }

    /// Row whose first cell is `key`.
    pub fn row(&self, key: u64) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|r| matches!(r.first(), Some(Cell::Int(v)) if *v == key))
            .map(|r| r.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableOptions {
    pub l: usize,
    /// Table 6 only: one window constant, or all of 1, 5, 10.
    pub c: Option<u32>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { l: 8, c: None }
    }
}

pub const TABLE6_K: [u32; 7] = [100, 200, 400, 512, 1024, 2048, 4096];
pub const TABLE6_C: [u32; 3] = [1, 5, 10];

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn q_cells(row: &QRow) -> [Cell; 2] {
    [Cell::Int(row.m_opt as u64), Cell::Float(row.value)]
}

fn two_round_table(id: u8, ks: std::ops::RangeInclusive<u32>, r2_until: u32, l: usize, exact: bool) -> Result<Table> {
    let mut rows = Vec::new();
    for k in ks {
        let sizes = if exact { SetSizes::exact(k, l)? } else { SetSizes::lemma7(k, l) };
        let mut row = vec![Cell::Int(k as u64)];
        row.extend(q_cells(&q_theorem16(k, l, 1, &sizes)?));
        if k <= r2_until {
            row.extend(q_cells(&q_theorem16(k, l, 2, &sizes)?));
        } else {
            row.extend([Cell::Empty, Cell::Empty]);
        }
        rows.push(row);
    }
    Ok(Table {
        id,
        sizing: if exact { "exact" } else { "lemma7" }.into(),
        columns: cols(&["k", "M_opt_1", "v_k1", "M_opt_2", "v_k2"]),
        rows,
    })
}

pub fn emit_table(which: u8, opts: &TableOptions) -> Result<Table> {
    let l = opts.l;
    match which {
        1 => {
            let mut rows = Vec::new();
            for k in 8..=20u32 {
                rows.push(vec![
                    Cell::Int(k as u64),
                    Cell::Int(prime_count_exact(k)?),
                    Cell::Int(prime_lower_bound(k).floor() as u64),
                ]);
            }
            Ok(Table {
                id: 1,
                sizing: "exact".into(),
                columns: cols(&["k", "primes", "lower_bound"]),
                rows,
            })
        }
        2 => {
            let mut rows = Vec::new();
            for k in 60..=100u32 {
                let q = q_lemma8(k, l)?;
                let mut row = vec![Cell::Int(k as u64)];
                row.extend(q_cells(&q));
                rows.push(row);
            }
            Ok(Table {
                id: 2,
                sizing: "lemma7".into(),
                columns: cols(&["k", "M_opt", "u_k"]),
                rows,
            })
        }
        3 => {
            let mut rows = Vec::new();
            for k in 42..=59u32 {
                let q = q_lemma10(k, l, &SetSizes::lemma7(k, l))?;
                let mut row = vec![Cell::Int(k as u64)];
                row.extend(q_cells(&q));
                rows.push(row);
            }
            Ok(Table {
                id: 3,
                sizing: "lemma7".into(),
                columns: cols(&["k", "M_opt", "u_k"]),
                rows,
            })
        }
        4 => two_round_table(4, 30..=41, 33, l, false),
        5 => two_round_table(5, 17..=29, 26, l, true),
        6 => {
            let cs: Vec<u32> = match opts.c {
                Some(c) => vec![c],
                None => TABLE6_C.to_vec(),
            };
            let mut columns = cols(&["c", "k"]);
            columns.extend((1..=10).map(|t| format!("t{t}")));
            let mut rows = Vec::new();
            for c in cs {
                for k in TABLE6_K {
                    let mut row = vec![Cell::Int(c as u64), Cell::Int(k as u64)];
                    for t in 1..=10 {
                        let y = ykts_bound(k, t, c as f64, None)?.value;
                        row.push(Cell::Int(security_bits(y) as u64));
                    }
                    rows.push(row);
                }
            }
            Ok(Table {
                id: 6,
                sizing: "none".into(),
                columns,
                rows,
            })
        }
        _ => invalid(format!("no table {which}; expected 1..6")),
    }
}

/// Bound on `q_{k,t}` from whichever result covers `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleBound {
    pub k: u32,
    pub t: u32,
    /// Rounds evaluated directly before chaining up to `t`.
    pub r: u32,
    pub m_opt: Option<u32>,
    pub value: f64,
    pub source: String,
}

pub fn single_bound(k: u32, t: u32, l: usize) -> Result<SingleBound> {
    if t == 0 {
        return invalid("need t >= 1");
    }
    let (r, m_opt, q, source) = match k {
        60.. => {
            let q = q_lemma8(k, l)?;
            (1, Some(q.m_opt), q.value, q.source)
        }
        42..=59 => {
            let q = q_lemma10(k, l, &SetSizes::lemma7(k, l))?;
            (1, Some(q.m_opt), q.value, q.source)
        }
        17..=41 => {
            let sizes = if k >= 30 { SetSizes::lemma7(k, l) } else { SetSizes::exact(k, l)? };
            let r = t.min(2);
            let q = q_theorem16(k, l, r, &sizes)?;
            (r, Some(q.m_opt), q.value, q.source)
        }
        2..=16 => {
            let ex = exact_qk1(k, 1, &default_d_scan(), true)?;
            (1, None, ex.max, "exact enumeration".to_string())
        }
        _ => return invalid(format!("no bound for k = {k}")),
    };
    let value = if t > r { chain_rule(q, r, t)? } else { q };
    Ok(SingleBound {
        k,
        t,
        r,
        m_opt,
        value,
        source,
    })
}
