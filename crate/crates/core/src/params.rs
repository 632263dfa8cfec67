//! `[[n, k, d]]` parameters, code rate `R = k/n` and coding gain
//! `G = (k/n)(t + 1)` for the toric, interleaved and baseline code families.
//!
//! Rates and gains are exact rationals; decimals appear only when formatting.

use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::lattice::TorusLattice;
use crate::metric::min_distance_closed_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    ToricCombinatorial,
    InterleavedToric,
    Kitaev,
    BombinMartinDelgado,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ToricCombinatorial => "toric-combinatorial",
            Family::InterleavedToric => "interleaved-toric",
            Family::Kitaev => "kitaev",
            Family::BombinMartinDelgado => "bombin-martin-delgado",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    /// Physical qubits.
    pub length: u64,
    /// Logical qubits.
    pub dimension: u64,
    pub distance: Option<u64>,
    /// Correctable errors `t`.
    pub capability: u64,
    pub family: Family,
}

impl CodeParams {
    fn with_distance(family: Family, length: u64, dimension: u64, distance: u64) -> Self {
        Self {
            length,
            dimension,
            distance: Some(distance),
            capability: (distance - 1) / 2,
            family,
        }
    }

    pub fn rate_gain(&self) -> RateGain {
        rate_gain(self)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.distance {
            Some(d) => write!(f, "[[{}, {}, {}]]", self.length, self.dimension, d),
            None => write!(f, "[[{}, {}, t={}]]", self.length, self.dimension, self.capability),
        }
    }
}

/// `[[2q, 2, d_M]]` with `d_M` from the closed form.
pub fn toric_code_params(lattice: TorusLattice) -> CodeParams {
    let q = lattice.q() as u64;
    CodeParams::with_distance(Family::ToricCombinatorial, 2 * q, 2, min_distance_closed_form(lattice))
}

/// `[[2q², 2q, t = q]]`.
pub fn interleaved_params(lattice: TorusLattice) -> CodeParams {
    let q = lattice.q() as u64;
    CodeParams {
        length: 2 * q * q,
        dimension: 2 * q,
        distance: None,
        capability: q,
        family: Family::InterleavedToric,
    }
}

/// `[[2q², 2, q]]`.
pub fn kitaev_params(lattice: TorusLattice) -> CodeParams {
    let q = lattice.q() as u64;
    CodeParams::with_distance(Family::Kitaev, 2 * q * q, 2, q)
}

/// `[[2m, 2, 2r + 1]]` with `m = 2r² + 2r + 1`. `r` must be at least 1.
pub fn bmd_params(r: u64) -> CodeParams {
    assert!(r >= 1, "Bombin/Martin-Delgado codes need r >= 1");
    let m = 2 * r * r + 2 * r + 1;
    CodeParams::with_distance(Family::BombinMartinDelgado, 2 * m, 2, 2 * r + 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateGain {
    pub rate: Ratio<u64>,
    pub gain: Ratio<u64>,
    /// `10 log10(gain)`.
    pub gain_db: f64,
}

impl RateGain {
    pub fn rate_f64(&self) -> f64 {
        ratio_f64(self.rate)
    }

    pub fn gain_f64(&self) -> f64 {
        ratio_f64(self.gain)
    }
}

impl Serialize for RateGain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RateGain", 5)?;
        st.serialize_field("rate", &self.rate.to_string())?;
        st.serialize_field("rate_decimal", &self.rate_f64())?;
        st.serialize_field("gain", &self.gain.to_string())?;
        st.serialize_field("gain_decimal", &self.gain_f64())?;
        st.serialize_field("gain_db", &self.gain_db)?;
        st.end()
    }
}

pub fn rate_gain(p: &CodeParams) -> RateGain {
    let rate = Ratio::new(p.dimension, p.length);
    let gain = rate * (p.capability + 1);
    RateGain {
        rate,
        gain,
        gain_db: 10.0 * ratio_f64(gain).log10(),
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact decimal expansion of `r` rounded half-up to `places` digits.
pub fn format_decimal(r: Ratio<u64>, places: usize) -> String {
    let (num, den) = (*r.numer() as u128, *r.denom() as u128);
    let scale = 10u128.pow(places as u32);
    let scaled = (num * scale * 2 + den) / (den * 2);
    let int = scaled / scale;
    if places == 0 {
        return int.to_string();
    }
    format!("{int}.{:0places$}", scaled % scale)
}

/// Interleaved code against Kitaev's code and the Bombin/Martin-Delgado code
/// with `r = q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub q: u32,
    pub interleaved: CodeParams,
    pub interleaved_rg: RateGain,
    pub kitaev: CodeParams,
    pub kitaev_rg: RateGain,
    pub bmd: CodeParams,
    pub bmd_rg: RateGain,
    /// `R_i > R_k` and `G_i > G_k`.
    pub beats_kitaev: bool,
    /// `R_i > R_bm` and `G_i > G_bm`.
    pub beats_bmd: bool,
}

pub fn compare(lattice: TorusLattice) -> ComparisonRow {
    let interleaved = interleaved_params(lattice);
    let kitaev = kitaev_params(lattice);
    let bmd = bmd_params(lattice.q() as u64);
    let (i, k, b) = (rate_gain(&interleaved), rate_gain(&kitaev), rate_gain(&bmd));
    ComparisonRow {
        q: lattice.q(),
        interleaved,
        interleaved_rg: i,
        kitaev,
        kitaev_rg: k,
        bmd,
        bmd_rg: b,
        beats_kitaev: i.rate > k.rate && i.gain > k.gain,
        beats_bmd: i.rate > b.rate && i.gain > b.gain,
    }
}
