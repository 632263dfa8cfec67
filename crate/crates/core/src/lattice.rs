//! Torus geometry: cells of `Z_q x Z_q`, signed lattice vectors and the
//! `2q²` edges that carry the physical qubits.
//!
//! Axis convention: `x` is the column and grows to the right, `y` is the row
//! and grows downwards. A vector `(c, d)` moves `c` cells right and `d` cells
//! down.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The `q x q` square lattice on the torus, `q = 2n + 1` with `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct TorusLattice {
    q: u32,
}

impl TorusLattice {
    pub fn new(q: u32) -> Result<Self> {
        if q < 5 || q.is_multiple_of(2) {
            return Err(Error::InvalidModulus(q as i64));
        }
        Ok(Self { q })
    }

    /// Lattice for `q = 2n + 1`.
    pub fn from_n(n: u32) -> Result<Self> {
        let q = n
            .checked_mul(2)
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::InvalidModulus(2 * n as i64 + 1))?;
        Self::new(q)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        (self.q - 1) / 2
    }

    /// Second coordinate of the defining generator `(1, g)`, `g = 2(n - 1) = q - 3`.
    pub fn g(&self) -> u32 {
        self.q - 3
    }

    pub fn generator(&self) -> LatticeVector {
        LatticeVector::new(1, self.g() as i64)
    }

    pub fn cell_count(&self) -> usize {
        (self.q as usize) * (self.q as usize)
    }

    pub fn edge_count(&self) -> usize {
        2 * self.cell_count()
    }

    /// Cell with coordinates reduced mod q.
    pub fn cell(&self, x: i64, y: i64) -> Cell {
        let q = self.q as i64;
        Cell {
            x: x.rem_euclid(q) as u32,
            y: y.rem_euclid(q) as u32,
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x < self.q && c.y < self.q
    }

    pub fn translate(&self, c: Cell, v: LatticeVector) -> Cell {
        self.cell(c.x as i64 + v.dx, c.y as i64 + v.dy)
    }

    /// `k · v` applied to the origin.
    pub fn multiple(&self, v: LatticeVector, k: i64) -> Cell {
        let q = self.q as i64;
        let k = k % q;
        self.cell((v.dx % q) * k, (v.dy % q) * k)
    }

    /// `a - b` as a vector in symmetric-residue form.
    pub fn difference(&self, a: Cell, b: Cell) -> LatticeVector {
        LatticeVector::new(
            symmetric_residue(a.x as i64 - b.x as i64, self.q),
            symmetric_residue(a.y as i64 - b.y as i64, self.q),
        )
    }

    /// Reduce both components of `v` to symmetric residues.
    pub fn reduce(&self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(symmetric_residue(v.dx, self.q), symmetric_residue(v.dy, self.q))
    }

    /// Row-major position of a cell, `y * q + x`.
    pub fn cell_index(&self, c: Cell) -> usize {
        c.y as usize * self.q as usize + c.x as usize
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        let q = self.q as usize;
        Cell {
            x: (index % q) as u32,
            y: (index / q) as u32,
        }
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count()).map(move |i| self.cell_at(i))
    }

    /// Position of `e` in the canonical edge order of [`TorusLattice::edges`].
    pub fn edge_index(&self, e: Edge) -> usize {
        2 * self.cell_index(e.cell) + e.slot.index()
    }

    pub fn edge_at(&self, index: usize) -> Edge {
        let slot = if index.is_multiple_of(2) { Slot::Top } else { Slot::Left };
        Edge {
            cell: self.cell_at(index / 2),
            slot,
        }
    }

    /// Every edge exactly once: cells row-major, top edge before left edge.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.edge_count()).map(|i| self.edge_at(i)).collect()
    }
}

impl TryFrom<u32> for TorusLattice {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        Self::new(q)
    }
}

impl From<TorusLattice> for u32 {
    fn from(l: TorusLattice) -> u32 {
        l.q
    }
}

/// Representative of `v mod q` in `[-(q-1)/2, (q-1)/2]`. `q` must be odd.
pub fn symmetric_residue(v: i64, q: u32) -> i64 {
    let q = q as i64;
    let r = v.rem_euclid(q);
    if r > q / 2 {
        r - q
    } else {
        r
    }
}

/// A cell of the torus; `x` is the column, `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: u32,
    pub y: u32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A signed displacement. Components are kept as given and only reduced
/// when applied to a cell, so `(1, -3)` and `(1, q - 3)` stay distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub dx: i64,
    pub dy: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { dx: 0, dy: 0 };

    pub const fn new(dx: i64, dy: i64) -> Self {
        Self { dx, dy }
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((dx, dy): (i64, i64)) -> Self {
        Self { dx, dy }
    }
}

impl From<Cell> for LatticeVector {
    fn from(c: Cell) -> Self {
        Self::new(c.x as i64, c.y as i64)
    }
}

impl Add for LatticeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.dx + o.dx, self.dy + o.dy)
    }
}

impl Sub for LatticeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.dx - o.dx, self.dy - o.dy)
    }
}

impl Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.dx, -self.dy)
    }
}

impl Mul<i64> for LatticeVector {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.dx * k, self.dy * k)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// Which of its two edges a cell owns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Slot {
    /// Top edge of the cell (slot 0).
    Top,
    /// Left edge of the cell (slot 1).
    Left,
}

impl Slot {
    pub fn index(self) -> usize {
        match self {
            Slot::Top => 0,
            Slot::Left => 1,
        }
    }

    pub fn from_index(i: u64) -> Option<Self> {
        match i {
            0 => Some(Slot::Top),
            1 => Some(Slot::Left),
            _ => None,
        }
    }
}

/// A physical edge (qubit). Each cell owns its top and left edge, which
/// gives every edge of the torus grid exactly one owner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub cell: Cell,
    pub slot: Slot,
}

impl Edge {
    pub fn new(cell: Cell, slot: Slot) -> Self {
        Self { cell, slot }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.cell, self.slot.index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn lat(q: u32) -> TorusLattice {
        TorusLattice::new(q).unwrap()
    }

    #[test]
    fn rejects_bad_modulus() {
        for q in [0, 1, 2, 3, 4, 6, 8, 10] {
            assert_eq!(TorusLattice::new(q), Err(Error::InvalidModulus(q as i64)));
        }
        let l = lat(5);
        assert_eq!((l.n(), l.g()), (2, 2));
        let l = TorusLattice::from_n(6).unwrap();
        assert_eq!((l.q(), l.g()), (13, 10));
    }

    #[test]
    fn symmetric_residue_examples() {
        assert_eq!(symmetric_residue(0, 5), 0);
        assert_eq!(symmetric_residue(4, 5), -1);
        assert_eq!(symmetric_residue(6, 9), -3);
        assert_eq!(symmetric_residue(-3, 5), 2);
        assert_eq!(symmetric_residue(2, 5), 2);
    }

    #[test]
    fn translate_examples() {
        let v = LatticeVector::new(1, 2);
        assert_eq!(lat(5).translate(Cell::new(0, 0), v), Cell::new(1, 2));
        assert_eq!(lat(5).translate(Cell::new(4, 3), v), Cell::new(0, 0));
        assert_eq!(lat(7).translate(Cell::new(3, 0), LatticeVector::new(-1, 3)), Cell::new(2, 3));
    }

    #[test]
    fn edge_enumeration() {
        for (q, len) in [(5, 50), (7, 98)] {
            let l = lat(q);
            let edges = l.edges();
            assert_eq!(edges.len(), len);
            assert_eq!(edges[0], Edge::new(Cell::ORIGIN, Slot::Top));
            assert_eq!(edges[1], Edge::new(Cell::ORIGIN, Slot::Left));
            assert_eq!(edges[2], Edge::new(Cell::new(1, 0), Slot::Top));
            let set: HashSet<_> = edges.iter().collect();
            assert_eq!(set.len(), len);
            for (i, e) in edges.iter().enumerate() {
                assert_eq!(l.edge_index(*e), i);
            }
        }
    }

    fn odd_q() -> impl Strategy<Value = u32> {
        prop_oneof![Just(5u32), Just(7), Just(9), Just(11)]
    }

    proptest! {
        #[test]
        fn translate_is_group_action(
            q in odd_q(),
            x in 0u32..11, y in 0u32..11,
            u in (-50i64..50, -50i64..50),
            v in (-50i64..50, -50i64..50),
        ) {
            let l = lat(q);
            let c = l.cell(x as i64, y as i64);
            let u = LatticeVector::from(u);
            let v = LatticeVector::from(v);
            prop_assert_eq!(l.translate(l.translate(c, u), v), l.translate(c, u + v));
        }

        #[test]
        fn symmetric_residue_is_unique_rep(v in any::<i32>(), n in 2u32..500) {
            let q = 2 * n + 1;
            let r = symmetric_residue(v as i64, q);
            prop_assert_eq!((v as i64 - r).rem_euclid(q as i64), 0);
            prop_assert!(r.abs() <= ((q - 1) / 2) as i64);
        }
    }
}
