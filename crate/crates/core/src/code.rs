//! The classical cyclic code `A = <(1, g)>` on `Z_q x Z_q`, its generating
//! vectors and its classification.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::lattice::{Cell, LatticeVector, TorusLattice};

/// The `q` codewords `k · (1, g)`, `k = 0..q`, in generation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodewordSet {
    lattice: TorusLattice,
    codewords: Vec<Cell>,
}

impl CodewordSet {
    pub fn new(lattice: TorusLattice) -> Self {
        let gen = lattice.generator();
        let codewords = (0..lattice.q() as i64)
            .map(|k| lattice.multiple(gen, k))
            .collect();
        Self { lattice, codewords }
    }

    pub fn lattice(&self) -> TorusLattice {
        self.lattice
    }

    pub fn cells(&self) -> &[Cell] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Coset of `c` modulo the code, as an index in `0..q`.
    ///
    /// Every codeword `(x, gx)` has first coordinate `x`, so subtracting the
    /// codeword in column `c.x` leaves `(0, c.y - g·c.x)`; the second
    /// coordinate labels the coset.
    pub fn coset_index(&self, c: Cell) -> u32 {
        let q = self.lattice.q() as i64;
        (c.y as i64 - self.lattice.g() as i64 * c.x as i64).rem_euclid(q) as u32
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.lattice.contains(c) && self.coset_index(c) == 0
    }

    /// `k` such that `c = k · (1, g)`, if `c` is a codeword.
    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.contains(c).then_some(c.x as usize)
    }

    /// Occupancy grid indexed `[row][column]`.
    pub fn grid(&self) -> Vec<Vec<bool>> {
        let q = self.lattice.q() as usize;
        let mut grid = vec![vec![false; q]; q];
        for c in &self.codewords {
            grid[c.y as usize][c.x as usize] = true;
        }
        grid
    }

    /// One codeword in every row and every column.
    pub fn is_perfect(&self) -> bool {
        let q = self.lattice.q() as usize;
        let mut rows = vec![0usize; q];
        let mut cols = vec![0usize; q];
        for c in &self.codewords {
            rows[c.y as usize] += 1;
            cols[c.x as usize] += 1;
        }
        rows.iter().chain(&cols).all(|&n| n == 1)
    }
}

pub fn codewords(lattice: TorusLattice) -> CodewordSet {
    CodewordSet::new(lattice)
}

/// All signed vectors with components in `±{1..q-1}` that generate the code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    lattice: TorusLattice,
    vectors: BTreeSet<LatticeVector>,
}

impl GeneratorSet {
    pub fn lattice(&self) -> TorusLattice {
        self.lattice
    }

    pub fn vectors(&self) -> &BTreeSet<LatticeVector> {
        &self.vectors
    }

    pub fn contains(&self, v: LatticeVector) -> bool {
        self.vectors.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Raw output of the pair enumeration: for every `c` in `±{1..q-1}`, with
/// `d = gc mod q`, both `(c, d)` and `(c, d - q)`. Unfiltered, so it can hold
/// pairs with a zero component or pairs of order smaller than `q`.
pub fn generator_candidates(lattice: TorusLattice) -> BTreeSet<LatticeVector> {
    let q = lattice.q() as i64;
    let g = lattice.g() as i64;
    let mut out = BTreeSet::new();
    for c in (-(q - 1)..=q - 1).filter(|&c| c != 0) {
        let d = (g * c).rem_euclid(q);
        out.insert(LatticeVector::new(c, d));
        out.insert(LatticeVector::new(c, d - q));
    }
    out
}

/// Candidates that actually generate the order-`q` code: the first component
/// must be a unit mod `q`. This drops the zero-component pairs and, for
/// composite `q` such as 15, pairs like `(3, 6)` that only span a subgroup.
pub fn generator_set(lattice: TorusLattice) -> GeneratorSet {
    let q = lattice.q() as i64;
    let vectors = generator_candidates(lattice)
        .into_iter()
        .filter(|v| gcd(v.dx.rem_euclid(q), q) == 1)
        .collect();
    GeneratorSet { lattice, vectors }
}

/// Whether the multiples of `v` are exactly the codewords. Enumerates the
/// `q` multiples directly; does not consult [`generator_set`].
pub fn generates_same_code(lattice: TorusLattice, v: LatticeVector) -> bool {
    let code = CodewordSet::new(lattice);
    let target: HashSet<Cell> = code.cells().iter().copied().collect();
    let spanned: HashSet<Cell> = (0..lattice.q() as i64)
        .map(|k| lattice.multiple(v, k))
        .collect();
    spanned == target
}

pub fn is_perfect(lattice: TorusLattice) -> bool {
    CodewordSet::new(lattice).is_perfect()
}

/// Determinant of the matrix with rows `v` and `(1, g)`: `v.dx·g - v.dy`.
pub fn verify_determinant(lattice: TorusLattice, v: LatticeVector) -> i64 {
    v.dx * lattice.g() as i64 - v.dy
}

/// A representation `q = x² + y²` with `x >= 1`, smallest `x` first;
/// `y = 0` is allowed.
pub fn is_sum_of_two_squares(q: u64) -> Option<(u64, u64)> {
    (1..=isqrt(q)).find_map(|x| {
        let rest = q - x * x;
        let y = isqrt(rest);
        (y * y == rest).then_some((x, y))
    })
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(q: u32) -> TorusLattice {
        TorusLattice::new(q).unwrap()
    }

    fn vecs(pairs: &[(i64, i64)]) -> BTreeSet<LatticeVector> {
        pairs.iter().map(|&p| LatticeVector::from(p)).collect()
    }

    #[test]
    fn codewords_q5_match_column_listing() {
        let code = codewords(lat(5));
        let expected: Vec<Cell> = [(0, 0), (1, 2), (2, 4), (3, 1), (4, 3)]
            .iter()
            .map(|&(x, y)| Cell::new(x, y))
            .collect();
        assert_eq!(code.cells(), expected.as_slice());
    }

    #[test]
    fn codewords_contain_table_marks() {
        let c9 = codewords(lat(9));
        assert!(c9.contains(Cell::new(2, 3)));
        assert!(c9.contains(Cell::new(1, 6)));
        assert!(codewords(lat(7)).contains(Cell::new(2, 1)));
        assert!(!c9.contains(Cell::new(1, 1)));
    }

    #[test]
    fn generator_set_q5() {
        let expected = vecs(&[
            (-4, -3), (-4, 2), (-3, 4), (-3, -1), (-2, 1), (-2, -4), (-1, 3), (-1, -2),
            (1, -3), (1, 2), (2, -1), (2, 4), (3, 1), (3, -4), (4, 3), (4, -2),
        ]);
        assert_eq!(generator_set(lat(5)).vectors(), &expected);
        assert_eq!(generator_candidates(lat(5)), expected);
    }

    #[test]
    fn generator_set_q7_and_q9() {
        let s7 = generator_set(lat(7));
        assert_eq!(s7.len(), 24);
        for p in [(1, 4), (1, -3), (2, 1), (2, -6)] {
            assert!(s7.contains(p.into()));
        }
        let s9 = generator_set(lat(9));
        assert_eq!(s9.len(), 24);
        assert!(s9.vectors().iter().all(|v| v.dx.rem_euclid(3) != 0));
        // the unfiltered enumeration emits (3,0) and (3,-9) for q = 9
        assert!(generator_candidates(lat(9)).contains(&LatticeVector::new(3, 0)));
    }

    #[test]
    fn composite_modulus_drops_subgroup_generators() {
        let l = lat(15);
        let v = LatticeVector::new(3, 6);
        assert!(generator_candidates(l).contains(&v));
        assert!(!generates_same_code(l, v));
        assert!(!generator_set(l).contains(v));
    }

    #[test]
    fn same_code_examples() {
        assert!(generates_same_code(lat(5), LatticeVector::new(2, -1)));
        assert!(!generates_same_code(lat(5), LatticeVector::new(1, 1)));
        for q in [5, 7, 9, 11, 13] {
            assert!(generates_same_code(lat(q), lat(q).generator()));
            assert!(generates_same_code(lat(q), LatticeVector::new(1, -3)));
        }
    }

    #[test]
    fn perfect_examples() {
        assert!(is_perfect(lat(5)));
        assert!(is_perfect(lat(7)));
        assert!(!is_perfect(lat(9)));
        assert_eq!(codewords(lat(9)).grid()[0].iter().filter(|&&b| b).count(), 3);
    }

    #[test]
    fn sum_of_two_squares_examples() {
        assert_eq!(is_sum_of_two_squares(5), Some((1, 2)));
        assert_eq!(is_sum_of_two_squares(7), None);
        assert_eq!(is_sum_of_two_squares(9), Some((3, 0)));
        assert_eq!(is_sum_of_two_squares(2), Some((1, 1)));
    }

    #[test]
    fn sum_of_two_squares_matches_prime_criterion() {
        let is_prime = |p: u64| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        for p in (2..2000).filter(|&p| is_prime(p)) {
            let brute = (0..=p).any(|x| (0..=p).any(|y| x * x + y * y == p));
            assert_eq!(is_sum_of_two_squares(p).is_some(), brute, "p={p}");
            assert_eq!(brute, p == 2 || p % 4 == 1, "p={p}");
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(verify_determinant(lat(5), LatticeVector::new(1, -3)), 5);
        assert_eq!(verify_determinant(lat(7), LatticeVector::new(1, 4)), 0);
        assert_eq!(verify_determinant(lat(9), LatticeVector::new(1, 1)), 5);
    }

    #[test]
    fn subgroup_closure() {
        for q in (5..=41).step_by(2) {
            let code = codewords(lat(q));
            let l = code.lattice();
            let set: HashSet<Cell> = code.cells().iter().copied().collect();
            assert_eq!(set.len(), q as usize);
            for &a in code.cells() {
                assert!(set.contains(&l.translate(Cell::ORIGIN, -LatticeVector::from(a))));
                for &b in code.cells() {
                    assert!(set.contains(&l.translate(a, b.into())));
                }
            }
            let mut cols: Vec<u32> = code.cells().iter().map(|c| c.x).collect();
            cols.sort_unstable();
            assert_eq!(cols, (0..q).collect::<Vec<_>>());
        }
    }

    #[test]
    fn generator_completeness_exhaustive() {
        for q in (5..=41).step_by(2) {
            let l = lat(q);
            let s = generator_set(l);
            let q = q as i64;
            let range: Vec<i64> = (-(q - 1)..q).filter(|&c| c != 0).collect();
            for &c in &range {
                for &d in &range {
                    let v = LatticeVector::new(c, d);
                    assert_eq!(generates_same_code(l, v), s.contains(v), "q={q} v={v}");
                }
            }
            for v in s.vectors() {
                assert_eq!(verify_determinant(l, *v).rem_euclid(q), 0);
                assert!(v.dx.rem_euclid(q) != 0 && v.dy.rem_euclid(q) != 0);
            }
        }
    }

    #[test]
    fn perfect_criterion_sweep() {
        for q in (5..=101).step_by(2) {
            let l = lat(q);
            assert_eq!(is_perfect(l), l.n() % 3 != 1, "q={q}");
        }
    }
}
