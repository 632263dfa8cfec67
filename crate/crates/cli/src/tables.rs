//! Regeneration of Tables 1-8 from library calls.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::json;
use toriclat::code::{codewords, generator_candidates, generator_set, CodewordSet};
use toriclat::params::{format_decimal, interleaved_params, rate_gain};
use toriclat::{LatticeVector, TorusLattice};

use crate::commands::to_json;
use crate::{CliError, CliResult, Format, GlobalArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    One(u8),
    All,
}

impl TableId {
    pub fn parse(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(TableId::All);
        }
        let digits = s.strip_prefix(['T', 't']).unwrap_or(s);
        match digits.parse::<u8>() {
            Ok(n @ 1..=8) => Ok(TableId::One(n)),
            _ => Err(format!("unknown table {s:?}; expected T1..T8 or all")),
        }
    }

    fn ids(self) -> Vec<u8> {
        match self {
            TableId::One(n) => vec![n],
            TableId::All => (1..=8).collect(),
        }
    }
}

/// Lattice sizes of the codeword grids (Tables 1, 4, 5, 6, 7).
pub const GRID_TABLES: [(u8, u32); 5] = [(1, 5), (4, 7), (5, 9), (6, 11), (7, 13)];
/// Lattice sizes of the generator-set table (Table 3).
pub const GENERATOR_TABLE_QS: [u32; 3] = [5, 7, 9];
/// Rows of Table 8.
pub const GAIN_TABLE_QS: [u32; 7] = [5, 7, 9, 11, 13, 15, 17];

fn lattice(q: u32) -> TorusLattice {
    TorusLattice::new(q).expect("table lattice sizes are valid")
}

/// `X` at each codeword, `.` elsewhere; rows are `y`, columns are `x`.
pub fn render_grid(code: &CodewordSet) -> String {
    let grid = code.grid();
    let q = grid.len();
    let mut s = String::from("   ");
    for x in 0..q {
        let _ = write!(s, "{x:>3}");
    }
    s.push('\n');
    for (y, row) in grid.iter().enumerate() {
        let _ = write!(s, "{y:>3}");
        for &mark in row {
            s.push_str(if mark { "  X" } else { "  ." });
        }
        s.push('\n');
    }
    s
}

pub fn vector_list(vectors: &BTreeSet<LatticeVector>) -> String {
    let items: Vec<String> = vectors.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn text_table(id: u8, places: usize) -> String {
    match id {
        2 => {
            let code = codewords(lattice(5));
            let mut by_col: Vec<_> = code.cells().to_vec();
            by_col.sort_by_key(|c| (c.x, c.y));
            let mut by_row: Vec<_> = code.cells().to_vec();
            by_row.sort_by_key(|c| (c.y, c.x));
            let mut s = String::from("Table 2: codewords of the 5x5 lattice\nColumn  Row\n");
            for (c, r) in by_col.iter().zip(&by_row) {
                let _ = writeln!(s, "  {}{}    {}{}", c.x, c.y, r.y, r.x);
            }
            s
        }
        3 => {
            let mut s = String::from("Table 3: generator sets S\n");
            for q in GENERATOR_TABLE_QS {
                let set = generator_set(lattice(q));
                let _ = writeln!(s, "q = {q} ({} vectors): {}", set.len(), vector_list(set.vectors()));
            }
            s.push_str(&format!("erratum: {}\n", erratum_note()));
            s
        }
        8 => {
            let mut s = String::from("Table 8: interleaved codes [[2q^2, 2q, t_i = q]] and coding gain G\n");
            let _ = writeln!(s, "{:>4}  {:<22} {:>10} {:>10}", "q", "code", "G", "G (dB)");
            for q in GAIN_TABLE_QS {
                let p = interleaved_params(lattice(q));
                let rg = rate_gain(&p);
                let _ = writeln!(
                    s,
                    "{q:>4}  {:<22} {:>10} {:>10.places$}",
                    format!("[[{},{},t_i={}]]", p.length, p.dimension, p.capability),
                    format_decimal(rg.gain, places),
                    rg.gain_db,
                );
            }
            s.push_str(&format!("note: {}\n", gain_note()));
            s
        }
        _ => {
            let &(_, q) = GRID_TABLES.iter().find(|(t, _)| *t == id).expect("grid table id");
            format!(
                "Table {id}: codewords (X) in the {q}x{q} lattice\n{}",
                render_grid(&codewords(lattice(q)))
            )
        }
    }
}

fn erratum_note() -> String {
    let q7 = generator_set(lattice(7));
    let q5 = generator_candidates(lattice(5));
    format!(
        "a q = 5 row listing the {} q = 7 vectors (components up to +-6) cannot belong to q = 5; \
         the q = 5 row above is regenerated and has {} vectors",
        q7.len(),
        q5.len()
    )
}

fn gain_note() -> &'static str {
    "the G column is the ratio (k/n)(t+1) = 1 + 1/q, not a decibel value; G (dB) is 10*log10(G)"
}

fn json_table(id: u8) -> serde_json::Value {
    match id {
        2 => {
            let code = codewords(lattice(5));
            json!({
                "table": 2,
                "q": 5,
                "codewords": code.cells().iter().map(|c| [c.x, c.y]).collect::<Vec<_>>(),
            })
        }
        3 => json!({
            "table": 3,
            "sets": GENERATOR_TABLE_QS.iter().map(|&q| {
                let set = generator_set(lattice(q));
                json!({ "q": q, "vectors": set.vectors().iter().map(|v| [v.dx, v.dy]).collect::<Vec<_>>() })
            }).collect::<Vec<_>>(),
            "erratum": erratum_note(),
        }),
        8 => json!({
            "table": 8,
            "rows": GAIN_TABLE_QS.iter().map(|&q| {
                let p = interleaved_params(lattice(q));
                let rg = rate_gain(&p);
                json!({
                    "q": q, "n": p.length, "k": p.dimension, "t": p.capability,
                    "gain": rg.gain.to_string(), "gain_decimal": rg.gain_f64(), "gain_db": rg.gain_db,
                })
            }).collect::<Vec<_>>(),
            "note": gain_note(),
        }),
        _ => {
            let &(_, q) = GRID_TABLES.iter().find(|(t, _)| *t == id).expect("grid table id");
            let code = codewords(lattice(q));
            json!({
                "table": id,
                "q": q,
                "marks": code.cells().iter().map(|c| json!({"row": c.y, "col": c.x})).collect::<Vec<_>>(),
            })
        }
    }
}

pub fn cmd_tables(g: &GlobalArgs, which: TableId) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Json, Format::Csv])?;
    let ids = which.ids();
    let out = match fmt {
        Format::Json => to_json(&json!(ids.iter().map(|&id| json_table(id)).collect::<Vec<_>>())),
        Format::Csv => {
            if ids != [8] {
                return Err(CliError::Usage("--format csv is only available for T8".into()));
            }
            let mut s = String::from("q,n,k,t,gain,gain_db\n");
            for q in GAIN_TABLE_QS {
                let p = interleaved_params(lattice(q));
                let rg = rate_gain(&p);
                let places = g.precision;
                let _ = writeln!(
                    s,
                    "{q},{},{},{},{},{:.places$}",
                    p.length,
                    p.dimension,
                    p.capability,
                    format_decimal(rg.gain, places),
                    rg.gain_db
                );
            }
            s
        }
        _ => ids
            .iter()
            .map(|&id| text_table(id, g.precision))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    g.emit(&out)
}
