use std::fmt::Write as _;

use clap::ValueEnum;
use toriclat::code::codewords;
use toriclat::interleaver::{self, build_interleaver, double_slot_control, EXHAUSTIVE_MAX_Q};
use toriclat::metric::{min_distance_bruteforce, min_distance_closed_form};
use toriclat::tessellation::{canonical_polyomino, check_fundamental_region, covers_exactly, lee_sphere};
use toriclat::TorusLattice;

use crate::{CliError, CliResult, GlobalArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Distance,
    Tiling,
    Interleaver,
    All,
}

struct Report {
    text: String,
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => {
                let _ = writeln!(self.text, "PASS {name}: {detail}");
            }
            Err(witness) => {
                self.failures += 1;
                let _ = writeln!(self.text, "FAIL {name}: {witness}");
            }
        }
    }
}

fn lattices(q_max: u32) -> impl Iterator<Item = TorusLattice> {
    (5..=q_max).step_by(2).map(|q| TorusLattice::new(q).expect("odd q >= 5"))
}

fn verify_distance(r: &mut Report, q_max: u32) {
    let result = lattices(q_max).try_for_each(|l| {
        let report = min_distance_bruteforce(&codewords(l));
        let closed = min_distance_closed_form(l);
        if report.distance != closed {
            return Err(format!("q = {}: brute force {} via {}, closed form {closed}", l.q(), report.distance, report.achieving_vector));
        }
        if l.n() >= 3 {
            let best = report.candidate_weights.iter().map(|&(_, w)| w).min().unwrap_or(u64::MAX);
            if best != report.distance {
                return Err(format!("q = {}: move vectors reach {best}, minimum is {}", l.q(), report.distance));
            }
        }
        Ok(())
    });
    r.check("distance", result.map(|()| format!("brute force = closed form for q = 5..={q_max}")));
}

fn verify_tiling(r: &mut Report, q_max: u32) {
    let result = lattices(q_max).try_for_each(|l| {
        let shape = canonical_polyomino(l).map_err(|e| format!("q = {}: {e}", l.q()))?;
        let code = codewords(l);
        if shape.area() != l.q() as usize || !covers_exactly(&code, &shape) {
            return Err(format!("q = {}: canonical shape does not cover the torus exactly", l.q()));
        }
        Ok(())
    });
    r.check("tiling", result.map(|()| format!("canonical shapes are fundamental regions for q = 5..={q_max}")));
    let l5 = TorusLattice::new(5).expect("q = 5");
    let lee = lee_sphere(1)
        .and_then(|s| check_fundamental_region(&codewords(l5), &s))
        .map(|()| "Lee sphere of radius 1 tiles the 5x5 lattice".to_string())
        .map_err(|e| e.to_string());
    r.check("tiling-lee", lee);
}

fn verify_interleaver(r: &mut Report, q_max: u32) {
    let result = lattices(q_max).try_for_each(|l| {
        let map = build_interleaver(l).map_err(|e| format!("q = {}: {e}", l.q()))?;
        map.permutation_file().check_blocks().map_err(|e| format!("q = {}: {e}", l.q()))?;
        map.cluster_transversal()
            .map_err(|anchor| format!("q = {}: cluster at {anchor} hits a block twice", l.q()))
    });
    r.check(
        "interleaver-permutation",
        result.map(|()| format!("bijective, block-structured and cluster-transversal for q = 5..={q_max}")),
    );

    for l in lattices(q_max.min(EXHAUSTIVE_MAX_Q)) {
        let result = interleaver::burst_correctability_exhaustive(l)
            .map_err(|e| e.to_string())
            .and_then(|rep| {
                if rep.all_correctable() {
                    Ok(format!("{} patterns, 0 failures", rep.patterns))
                } else {
                    Err(format!("{} of {} patterns fail, first {:?}", rep.failures, rep.patterns, rep.first_failure))
                }
            });
        r.check(&format!("burst-exhaustive q={}", l.q()), result);
    }

    let l5 = TorusLattice::new(5).expect("q = 5");
    let result = build_interleaver(l5).map_err(|e| e.to_string()).and_then(|map| {
        let (checked, wrong) = double_slot_control(&map);
        if wrong == 0 {
            Ok(format!("{checked} doubled-cell patterns all uncorrectable"))
        } else {
            Err(format!("{wrong} of {checked} doubled-cell patterns reported correctable"))
        }
    });
    r.check("negative-control q=5", result);
}

pub fn cmd_verify(g: &GlobalArgs, scope: Scope, q_max: u32) -> CliResult<()> {
    TorusLattice::new(q_max).map_err(|_| CliError::Usage(format!("--q-max must be odd and >= 5, got {q_max}")))?;
    let mut r = Report { text: String::new(), failures: 0 };
    if matches!(scope, Scope::Distance | Scope::All) {
        verify_distance(&mut r, q_max);
    }
    if matches!(scope, Scope::Tiling | Scope::All) {
        verify_tiling(&mut r, q_max);
    }
    if matches!(scope, Scope::Interleaver | Scope::All) {
        verify_interleaver(&mut r, q_max);
    }
    g.emit(&r.text)?;
    if r.failures > 0 {
        return Err(CliError::Violation(format!("{} check(s) failed", r.failures)));
    }
    Ok(())
}
