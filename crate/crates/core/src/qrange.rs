//! `start:stop:step` ranges of lattice sizes, as taken by `--q-range`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::TorusLattice;

/// Inclusive range of odd lattice sizes `start, start + step, ... <= stop`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QRange {
    start: u32,
    stop: u32,
    step: u32,
}

impl QRange {
    pub fn new(start: u32, stop: u32, step: u32) -> Result<Self> {
        let bad = |message: &str| Error::InvalidRange {
            input: format!("{start}:{stop}:{step}"),
            message: message.to_string(),
        };
        TorusLattice::new(start).map_err(|_| bad("start must be an odd integer >= 5"))?;
        if stop < start {
            return Err(bad("stop is smaller than start"));
        }
        if step == 0 || !step.is_multiple_of(2) {
            return Err(bad("step must be a positive even number"));
        }
        Ok(Self { start, stop, step })
    }

    /// Parse `start:stop:step`, `start:stop` (step 2) or a single `q`.
    pub fn parse(input: &str) -> Result<Self> {
        let bad = |message: String| Error::InvalidRange {
            input: input.to_string(),
            message,
        };
        let parts: Vec<&str> = input.trim().split(':').collect();
        let num = |s: &str| -> Result<u32> {
            s.trim()
                .parse::<u32>()
                .map_err(|_| bad(format!("{s:?} is not a non-negative integer")))
        };
        let (start, stop, step) = match parts.as_slice() {
            [q] => (num(q)?, num(q)?, 2),
            [a, b] => (num(a)?, num(b)?, 2),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(bad("expected start:stop[:step]".into())),
        };
        Self::new(start, stop, step).map_err(|e| match e {
            Error::InvalidRange { message, .. } => bad(message),
            other => other,
        })
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn stop(&self) -> u32 {
        self.stop
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step) as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lattices(&self) -> impl Iterator<Item = TorusLattice> {
        let (start, step) = (self.start as u64, self.step as u64);
        (0..self.len() as u64).map(move |i| {
            TorusLattice::new((start + i * step) as u32).expect("odd start with even step stays odd")
        })
    }
}

impl FromStr for QRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for QRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}
