//! Mannheim weight and the minimum distance of the `(1, g)` code.
//!
//! Two independent routes are provided: [`min_distance_bruteforce`] weighs
//! every nonzero codeword in symmetric-residue form, and
//! [`min_distance_closed_form`] returns 3 for `n` in `{2, 3, 4}` and 4 beyond.
//! [`move_vectors`] gives the vertical `(1, -3)` and horizontal
//! `(q' + 1, r)` displacements (`g = 3q' + r`) whose weights realize the
//! minimum for `n >= 3`.

use serde::Serialize;

use crate::code::CodewordSet;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, TorusLattice};

/// `|dx| + |dy|` of the vector as given, without reduction.
pub fn mannheim_weight(v: LatticeVector) -> u64 {
    v.dx.unsigned_abs() + v.dy.unsigned_abs()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub q: u32,
    pub distance: u64,
    /// Lowest-`k` nonzero codeword `k · (1, g)` of minimum weight, in
    /// symmetric-residue form.
    pub achieving_vector: LatticeVector,
    /// The vertical and (for `n >= 3`) horizontal move vectors with their weights.
    pub candidate_weights: Vec<(LatticeVector, u64)>,
}

pub fn min_distance_bruteforce(code: &CodewordSet) -> DistanceReport {
    let lattice = code.lattice();
    let (achieving_vector, distance) = code
        .cells()
        .iter()
        .skip(1)
        .map(|&c| {
            let v = lattice.reduce(c.into());
            (v, mannheim_weight(v))
        })
        .min_by_key(|&(_, w)| w)
        .expect("a code over q >= 5 has nonzero codewords");
    DistanceReport {
        q: lattice.q(),
        distance,
        achieving_vector,
        candidate_weights: candidate_weights(lattice),
    }
}

pub fn min_distance_closed_form(lattice: TorusLattice) -> u64 {
    if lattice.n() <= 4 {
        3
    } else {
        4
    }
}

pub fn vertical_move() -> LatticeVector {
    LatticeVector::new(1, -3)
}

/// `(q' + 1, r)` with `g = 3q' + r`, `0 <= r <= 2`. Needs `n >= 3`.
pub fn horizontal_move(lattice: TorusLattice) -> Result<LatticeVector> {
    if lattice.n() < 3 {
        return Err(Error::HorizontalMoveUndefined(lattice.n()));
    }
    let g = lattice.g() as i64;
    Ok(LatticeVector::new(g / 3 + 1, g % 3))
}

/// `(vertical, horizontal)` move vectors.
pub fn move_vectors(lattice: TorusLattice) -> Result<(LatticeVector, LatticeVector)> {
    Ok((vertical_move(), horizontal_move(lattice)?))
}

fn candidate_weights(lattice: TorusLattice) -> Vec<(LatticeVector, u64)> {
    std::iter::once(vertical_move())
        .chain(horizontal_move(lattice).ok())
        .map(|v| (v, mannheim_weight(v)))
        .collect()
}
