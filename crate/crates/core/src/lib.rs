//! Toric quantum codes on `q x q` square lattices, `q = 2n + 1 >= 5`.
//!
//! The classical code is the cyclic subgroup of `Z_q x Z_q` generated by
//! `(1, g)` with `g = 2(n - 1)`. From it the crate derives:
//!
//! * the full set of generating vectors and the perfect-code classification
//!   ([`code`]),
//! * the Mannheim minimum distance, both by exhaustion and in closed form
//!   ([`metric`]),
//! * polyomino fundamental regions and the tilings they induce
//!   ([`tessellation`]),
//! * `[[n, k, d]]` parameters, code rate and coding gain together with the
//!   Kitaev and Bombin/Martin-Delgado baselines ([`params`]),
//! * the interleaver that spreads `2q²` stream qubits over the lattice edges
//!   so that a polyomino-shaped burst of `q` errors lands in `q` distinct
//!   blocks ([`interleaver`]).

pub mod code;
pub mod error;
pub mod interleaver;
pub mod lattice;
pub mod metric;
pub mod params;
pub mod qrange;
pub mod tessellation;

pub use code::{codewords, generator_set, generates_same_code, CodewordSet, GeneratorSet};
pub use error::{Error, Result};
pub use interleaver::{build_interleaver, InterleaverMap};
pub use lattice::{symmetric_residue, Cell, Edge, LatticeVector, Slot, TorusLattice};
pub use metric::{mannheim_weight, min_distance_bruteforce, min_distance_closed_form, DistanceReport};
pub use params::{CodeParams, Family, RateGain};
pub use qrange::QRange;
pub use tessellation::{canonical_polyomino, lee_sphere, Polyomino, Tiling};
