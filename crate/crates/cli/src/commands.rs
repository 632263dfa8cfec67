use std::fmt::Write as _;
use std::fs;

use serde_json::json;
use toriclat::code::{self, is_sum_of_two_squares, verify_determinant};
use toriclat::interleaver::{self, ErrorModel};
use toriclat::metric::{min_distance_bruteforce, min_distance_closed_form};
use toriclat::params::{self, format_decimal, CodeParams, RateGain};
use toriclat::tessellation::{self, Polyomino, RenderFormat};
use toriclat::{QRange, TorusLattice};

use crate::{CliError, CliResult, Format, GlobalArgs, Method};

pub const PARAMS_CSV_HEADER: &str = "q,family,n,k,d,t,rate,gain,gain_db";

pub fn codewords(g: &GlobalArgs) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Csv, Format::Json])?;
    let l = g.lattice()?;
    let code = code::codewords(l);
    let witness = is_sum_of_two_squares(l.q() as u64);
    let out = match fmt {
        Format::Json => {
            let v = json!({
                "q": l.q(),
                "n": l.n(),
                "g": l.g(),
                "generator": [1, l.g()],
                "codewords": code.cells().iter().map(|c| [c.x, c.y]).collect::<Vec<_>>(),
                "perfect": code.is_perfect(),
                "sum_of_two_squares": witness.map(|(x, y)| [x, y]),
            });
            to_json(&v)
        }
        Format::Csv => {
            let mut s = String::from("k,x,y\n");
            for (k, c) in code.cells().iter().enumerate() {
                let _ = writeln!(s, "{k},{},{}", c.x, c.y);
            }
            s
        }
        _ => {
            let mut s = format!("q = {}, n = {}, generator (1,{})\n", l.q(), l.n(), l.g());
            for (k, c) in code.cells().iter().enumerate() {
                let _ = writeln!(s, "k={k:<3} x={:<3} y={}", c.x, c.y);
            }
            let _ = writeln!(s, "perfect (one codeword per row and column): {}", code.is_perfect());
            match witness {
                Some((x, y)) => {
                    let _ = writeln!(s, "q = {x}^2 + {y}^2");
                }
                None => s.push_str("q is not a sum of two squares\n"),
            }
            s.push('\n');
            s.push_str(&crate::tables::render_grid(&code));
            s
        }
    };
    g.emit(&out)
}

pub fn gens(g: &GlobalArgs) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Csv, Format::Json])?;
    let l = g.lattice()?;
    let set = code::generator_set(l);
    let out = match fmt {
        Format::Json => to_json(&json!({
            "q": l.q(),
            "count": set.len(),
            "vectors": set.vectors().iter().map(|v| [v.dx, v.dy]).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("c,d,determinant\n");
            for v in set.vectors() {
                let _ = writeln!(s, "{},{},{}", v.dx, v.dy, verify_determinant(l, *v));
            }
            s
        }
        _ => format!("q = {}: {} generators\n{}\n", l.q(), set.len(), crate::tables::vector_list(set.vectors())),
    };
    g.emit(&out)
}

pub fn distance(g: &GlobalArgs, method: Method) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Json])?;
    let l = g.lattice()?;
    let brute = matches!(method, Method::Brute | Method::Both).then(|| min_distance_bruteforce(&code::codewords(l)));
    let closed = matches!(method, Method::Closed | Method::Both).then(|| min_distance_closed_form(l));
    let agree = match (&brute, closed) {
        (Some(b), Some(c)) => Some(b.distance == c),
        _ => None,
    };
    let out = match fmt {
        Format::Json => to_json(&json!({
            "q": l.q(),
            "bruteforce": brute,
            "closed_form": closed,
            "agree": agree,
        })),
        _ => {
            let mut s = format!("q = {} (n = {}, g = {})\n", l.q(), l.n(), l.g());
            if let Some(b) = &brute {
                let _ = writeln!(s, "brute force   d_M = {}  via {}", b.distance, b.achieving_vector);
                for (v, w) in &b.candidate_weights {
                    let _ = writeln!(s, "  move vector {v:<10} weight {w}");
                }
            }
            if let Some(c) = closed {
                let _ = writeln!(s, "closed form   d_M = {c}");
            }
            s
        }
    };
    g.emit(&out)?;
    if agree == Some(false) {
        return Err(CliError::Violation(format!("brute force and closed form disagree for q = {}", l.q())));
    }
    Ok(())
}

fn load_shape(l: TorusLattice, spec: &str) -> CliResult<Polyomino> {
    match spec {
        "canonical" => Ok(tessellation::canonical_polyomino(l)?),
        "lee" => Ok(tessellation::lee_sphere(1)?),
        other => {
            let Some(path) = other.strip_prefix("file:") else {
                return Err(CliError::Usage(format!("unknown shape {other:?}; use canonical, lee or file:<path>")));
            };
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            Ok(Polyomino::parse(&text)?)
        }
    }
}

pub fn tessellate(g: &GlobalArgs, shape: &str) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Svg, Format::Json])?;
    let l = g.lattice()?;
    let shape = load_shape(l, shape)?;
    let code = code::codewords(l);
    let tiling = match tessellation::tessellate(&code, &shape) {
        Ok(t) => t,
        Err(e @ (toriclat::Error::SameCoset(..) | toriclat::Error::WrongArea { .. })) => {
            return Err(CliError::Violation(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let out = match fmt {
        Format::Svg => tiling.render(RenderFormat::Svg),
        Format::Json => {
            let q = l.q();
            let grid: Vec<Vec<usize>> = (0..q)
                .map(|y| (0..q).map(|x| tiling.anchor_of(toriclat::Cell::new(x, y))).collect())
                .collect();
            to_json(&json!({
                "q": q,
                "shape": shape.cells().iter().map(|v| [v.dx, v.dy]).collect::<Vec<_>>(),
                "anchors": code.cells().iter().map(|c| [c.x, c.y]).collect::<Vec<_>>(),
                "cell_to_anchor": grid,
            }))
        }
        _ => tiling.render(RenderFormat::Ascii),
    };
    g.emit(&out)
}

fn params_csv_row(q: u32, p: &CodeParams, rg: &RateGain, places: usize) -> String {
    format!(
        "{q},{},{},{},{},{},{},{},{:.places$}\n",
        p.family,
        p.length,
        p.dimension,
        p.distance.map(|d| d.to_string()).unwrap_or_default(),
        p.capability,
        format_decimal(rg.rate, places),
        format_decimal(rg.gain, places),
        rg.gain_db,
    )
}

fn params_json(p: &CodeParams, rg: &RateGain) -> serde_json::Value {
    json!({
        "family": p.family,
        "n": p.length,
        "k": p.dimension,
        "d": p.distance,
        "t": p.capability,
        "rate": rg.rate.to_string(),
        "gain": rg.gain.to_string(),
        "rate_decimal": rg.rate_f64(),
        "gain_decimal": rg.gain_f64(),
        "gain_db": rg.gain_db,
    })
}

fn params_text_row(p: &CodeParams, rg: &RateGain, places: usize) -> String {
    format!(
        "{:<22} {:<24} R = {:<10} G = {:<10} G_dB = {:.places$}\n",
        p.family.name(),
        p.to_string(),
        format_decimal(rg.rate, places),
        format_decimal(rg.gain, places),
        rg.gain_db,
    )
}

fn families(l: TorusLattice) -> [CodeParams; 4] {
    [
        params::toric_code_params(l),
        params::interleaved_params(l),
        params::kitaev_params(l),
        params::bmd_params(l.q() as u64),
    ]
}

pub fn params(g: &GlobalArgs) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Csv, Format::Json])?;
    let l = g.lattice()?;
    let rows = families(l);
    let places = g.precision;
    let out = match fmt {
        Format::Csv => {
            let mut s = format!("{PARAMS_CSV_HEADER}\n");
            for p in &rows {
                s.push_str(&params_csv_row(l.q(), p, &p.rate_gain(), places));
            }
            s
        }
        Format::Json => to_json(&json!({
            "q": l.q(),
            "codes": rows.iter().map(|p| params_json(p, &p.rate_gain())).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!("q = {}\n", l.q());
            for p in &rows {
                s.push_str(&params_text_row(p, &p.rate_gain(), places));
            }
            s
        }
    };
    g.emit(&out)
}

pub fn compare(g: &GlobalArgs) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Csv, Format::Json])?;
    let range = match (g.q_range, g.q) {
        (Some(r), _) => r,
        (None, Some(q)) => QRange::new(q, q, 2)?,
        (None, None) => QRange::new(5, 17, 2)?,
    };
    let rows: Vec<params::ComparisonRow> = range.lattices().map(params::compare).collect();
    let places = g.precision;
    let out = match fmt {
        Format::Csv => {
            let mut s = format!("{PARAMS_CSV_HEADER}\n");
            for r in &rows {
                s.push_str(&params_csv_row(r.q, &r.interleaved, &r.interleaved_rg, places));
                s.push_str(&params_csv_row(r.q, &r.kitaev, &r.kitaev_rg, places));
                s.push_str(&params_csv_row(r.q, &r.bmd, &r.bmd_rg, places));
            }
            s
        }
        Format::Json => to_json(&json!(rows
            .iter()
            .map(|r| json!({
                "q": r.q,
                "interleaved": params_json(&r.interleaved, &r.interleaved_rg),
                "kitaev": params_json(&r.kitaev, &r.kitaev_rg),
                "bombin_martin_delgado": params_json(&r.bmd, &r.bmd_rg),
                "beats_kitaev": r.beats_kitaev,
                "beats_bombin_martin_delgado": r.beats_bmd,
            }))
            .collect::<Vec<_>>())),
        _ => {
            let mut s = format!(
                "{:>5}  {:>10} {:>10}  {:>10} {:>10}  {:>10} {:>10}  dominates\n",
                "q", "R_i", "G_i", "R_k", "G_k", "R_bm", "G_bm"
            );
            for r in &rows {
                let f = |x| format_decimal(x, places);
                let _ = writeln!(
                    s,
                    "{:>5}  {:>10} {:>10}  {:>10} {:>10}  {:>10} {:>10}  {}",
                    r.q,
                    f(r.interleaved_rg.rate),
                    f(r.interleaved_rg.gain),
                    f(r.kitaev_rg.rate),
                    f(r.kitaev_rg.gain),
                    f(r.bmd_rg.rate),
                    f(r.bmd_rg.gain),
                    if r.beats_kitaev && r.beats_bmd { "yes" } else { "NO" },
                );
            }
            s
        }
    };
    g.emit(&out)?;
    if let Some(r) = rows.iter().find(|r| !(r.beats_kitaev && r.beats_bmd)) {
        return Err(CliError::Violation(format!("interleaved code does not dominate at q = {}", r.q)));
    }
    Ok(())
}

pub fn interleave(g: &GlobalArgs) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Json])?;
    let l = g.lattice()?;
    let map = interleaver::build_interleaver(l)?;
    let file = map.permutation_file();
    let out = match fmt {
        Format::Json => file.to_json() + "\n",
        _ => {
            let mut s = String::from("stream  block  x  y  slot\n");
            let q2 = 2 * l.q() as usize;
            for &[i, x, y, slot] in &file.map {
                let _ = writeln!(s, "{i:>6} {:>6} {x:>2} {y:>2} {slot:>5}", i as usize / q2);
            }
            s
        }
    };
    g.emit(&out)
}

pub fn simulate(g: &GlobalArgs, trials: u64, model: ErrorModel) -> CliResult<()> {
    let fmt = g.require_format(&[Format::Text, Format::Json, Format::Csv])?;
    let l = g.lattice()?;
    let stats = interleaver::simulate(l, trials, g.seed, model)?;
    let out = match fmt {
        Format::Csv => stats.to_csv(),
        Format::Json => stats.to_json() + "\n",
        _ => {
            let mut s = format!(
                "q = {}, model = {}, seed = {}\ntrials {}  correctable {}  failures {}\n",
                stats.q,
                stats.model.name(),
                stats.seed,
                stats.trials,
                stats.correctable_count,
                stats.failure_count
            );
            for ex in &stats.exemplars {
                let _ = writeln!(
                    s,
                    "  trial {} anchor {} blocks {:?} edges {:?}",
                    ex.trial, ex.anchor, ex.offending_blocks, ex.errored_edges
                );
            }
            s
        }
    };
    g.emit(&out)
}

pub fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json output") + "\n"
}

