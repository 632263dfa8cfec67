//! Polyomino fundamental regions of the code and the tilings they induce.
//!
//! A set of `q` cells is a fundamental region exactly when its cells lie in
//! pairwise distinct cosets of the code, equivalently when the `q` codeword
//! translates of the shape cover the torus exactly once. Both checks are
//! implemented ([`check_fundamental_region`] and [`covers_exactly`]) and are
//! cross-checked in the tests.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::code::CodewordSet;
use crate::error::{Error, Result};
use crate::lattice::{Cell, LatticeVector, TorusLattice};

/// Largest coordinate magnitude accepted from shape files.
pub const MAX_SHAPE_COORD: i64 = 1 << 20;
/// Largest number of cells accepted from shape files.
pub const MAX_SHAPE_CELLS: usize = 1 << 16;

/// An edge-connected set of cells in the plane, normalized so that the
/// smallest `x` and the smallest `y` are both 0. Cells are kept in
/// row-major order (by `dy`, then `dx`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Polyomino {
    cells: Vec<LatticeVector>,
}

impl Polyomino {
    pub fn new<I>(cells: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<LatticeVector>,
    {
        let raw: Vec<LatticeVector> = cells.into_iter().map(Into::into).collect();
        if raw.is_empty() {
            return Err(Error::InvalidShape("no cells".into()));
        }
        let min_x = raw.iter().map(|v| v.dx).min().unwrap();
        let min_y = raw.iter().map(|v| v.dy).min().unwrap();
        let mut set = BTreeSet::new();
        for v in &raw {
            let dx = v.dx.checked_sub(min_x);
            let dy = v.dy.checked_sub(min_y);
            let (Some(dx), Some(dy)) = (dx, dy) else {
                return Err(Error::InvalidShape("coordinates out of range".into()));
            };
            if !set.insert((dy, dx)) {
                return Err(Error::InvalidShape(format!("duplicate cell ({},{})", v.dx, v.dy)));
            }
        }
        if !is_connected(&set) {
            return Err(Error::InvalidShape("cells are not edge-connected".into()));
        }
        let cells = set.into_iter().map(|(dy, dx)| LatticeVector::new(dx, dy)).collect();
        Ok(Self { cells })
    }

    /// Parse a shape file: one `x y` offset pair per line. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cells = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::ShapeParse { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let mut coord = |name: &str| -> Result<i64> {
                let tok = parts.next().ok_or_else(|| err(format!("missing {name} coordinate")))?;
                let v: i64 = tok.parse().map_err(|_| err(format!("bad {name} coordinate {tok:?}")))?;
                if v.abs() > MAX_SHAPE_COORD {
                    return Err(err(format!("{name} coordinate {v} out of range")));
                }
                Ok(v)
            };
            let x = coord("x")?;
            let y = coord("y")?;
            if parts.next().is_some() {
                return Err(err("expected exactly two numbers".into()));
            }
            if cells.len() == MAX_SHAPE_CELLS {
                return Err(err(format!("more than {MAX_SHAPE_CELLS} cells")));
            }
            cells.push(LatticeVector::new(x, y));
        }
        Self::new(cells)
    }

    /// Row-major cell offsets.
    pub fn cells(&self) -> &[LatticeVector] {
        &self.cells
    }

    pub fn area(&self) -> usize {
        self.cells.len()
    }

    /// Serialize back to the shape file format.
    pub fn to_shape_file(&self) -> String {
        self.cells.iter().map(|v| format!("{} {}\n", v.dx, v.dy)).collect()
    }
}

fn is_connected(set: &BTreeSet<(i64, i64)>) -> bool {
    let Some(&start) = set.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((y, x)) = queue.pop_front() {
        let neighbours = [
            (y.checked_sub(1), Some(x)),
            (y.checked_add(1), Some(x)),
            (Some(y), x.checked_sub(1)),
            (Some(y), x.checked_add(1)),
        ];
        for n in neighbours {
            if let (Some(ny), Some(nx)) = n {
                if set.contains(&(ny, nx)) && seen.insert((ny, nx)) {
                    queue.push_back((ny, nx));
                }
            }
        }
    }
    seen.len() == set.len()
}

/// The systematic area-`q` shape.
///
/// For `n >= 3`, with `g = 3q' + r`: a rectangle `q' + 1` cells wide and 3
/// tall, plus a column of `r` cells at `x = q' + 1` starting in row 0. For
/// `q = 5`: a 2x2 square with one cell attached at `(2, 1)`.
pub fn canonical_polyomino(lattice: TorusLattice) -> Result<Polyomino> {
    let cells: Vec<LatticeVector> = if lattice.n() == 2 {
        [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)].map(LatticeVector::from).to_vec()
    } else {
        let g = lattice.g() as i64;
        let (qp, r) = (g / 3, g % 3);
        let rect = (0..=qp).flat_map(|x| (0..3).map(move |y| LatticeVector::new(x, y)));
        let strip = (0..r).map(|y| LatticeVector::new(qp + 1, y));
        rect.chain(strip).collect()
    };
    let shape = Polyomino::new(cells)?;
    check_fundamental_region(&CodewordSet::new(lattice), &shape)?;
    Ok(shape)
}

/// The Lee sphere (plus shape) of radius 1.
pub fn lee_sphere(radius: u32) -> Result<Polyomino> {
    if radius != 1 {
        return Err(Error::UnsupportedRadius(radius));
    }
    Polyomino::new([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)].map(LatticeVector::from))
}

/// Coset-transversal check. On failure reports either the wrong area or two
/// shape cells (reduced onto the torus) that differ by a codeword.
pub fn check_fundamental_region(code: &CodewordSet, shape: &Polyomino) -> Result<()> {
    check_transversal(code, shape.cells())
}

/// [`check_fundamental_region`] for an arbitrary cell set, connected or not.
pub fn check_transversal(code: &CodewordSet, cells: &[LatticeVector]) -> Result<()> {
    let lattice = code.lattice();
    let q = lattice.q();
    if cells.len() != q as usize {
        return Err(Error::WrongArea { area: cells.len(), q });
    }
    let mut by_coset: Vec<Option<Cell>> = vec![None; q as usize];
    for &v in cells {
        let cell = lattice.translate(Cell::ORIGIN, v);
        let slot = &mut by_coset[code.coset_index(cell) as usize];
        if let Some(prev) = *slot {
            return Err(Error::SameCoset(prev, cell));
        }
        *slot = Some(cell);
    }
    Ok(())
}

pub fn is_fundamental_region(code: &CodewordSet, shape: &Polyomino) -> bool {
    check_fundamental_region(code, shape).is_ok()
}

/// Exact-cover route: place the shape at every codeword and count hits.
pub fn covers_exactly(code: &CodewordSet, shape: &Polyomino) -> bool {
    let lattice = code.lattice();
    let mut hits = vec![0u32; lattice.cell_count()];
    for &anchor in code.cells() {
        for &v in shape.cells() {
            hits[lattice.cell_index(lattice.translate(anchor, v))] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

/// A tiling of the torus by the codeword translates of a fundamental region.
#[derive(Debug, Clone, Serialize)]
pub struct Tiling {
    lattice: TorusLattice,
    shape: Polyomino,
    anchors: CodewordSet,
    /// Row-major: anchor index `k` of the tile containing each cell.
    cell_to_anchor: Vec<usize>,
}

pub fn tessellate(code: &CodewordSet, shape: &Polyomino) -> Result<Tiling> {
    check_fundamental_region(code, shape)?;
    let lattice = code.lattice();
    let offset_by_coset: HashMap<u32, Cell> = shape
        .cells()
        .iter()
        .map(|&v| {
            let c = lattice.translate(Cell::ORIGIN, v);
            (code.coset_index(c), c)
        })
        .collect();
    let cell_to_anchor = lattice
        .cells()
        .map(|c| {
            let p = offset_by_coset[&code.coset_index(c)];
            let anchor = lattice.translate(c, -LatticeVector::from(p));
            code.index_of(anchor).expect("cell minus its coset representative is a codeword")
        })
        .collect();
    Ok(Tiling {
        lattice,
        shape: shape.clone(),
        anchors: code.clone(),
        cell_to_anchor,
    })
}

impl Tiling {
    pub fn lattice(&self) -> TorusLattice {
        self.lattice
    }

    pub fn shape(&self) -> &Polyomino {
        &self.shape
    }

    pub fn anchors(&self) -> &CodewordSet {
        &self.anchors
    }

    pub fn anchor_of(&self, c: Cell) -> usize {
        self.cell_to_anchor[self.lattice.cell_index(c)]
    }

    /// Cells of tile `k`, row-major.
    pub fn region(&self, k: usize) -> Vec<Cell> {
        self.lattice.cells().filter(|&c| self.anchor_of(c) == k).collect()
    }

    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Ascii => self.render_ascii(),
            RenderFormat::Svg => self.render_svg(),
        }
    }

    /// One token per cell naming its tile. Tiles `0..62` use `0-9a-zA-Z`;
    /// larger lattices use zero-padded decimal tokens.
    pub fn render_ascii(&self) -> String {
        const ALPHABET: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
        let q = self.lattice.q() as usize;
        let width = (q - 1).to_string().len();
        let token = |k: usize| -> String {
            if q <= ALPHABET.len() {
                (ALPHABET[k] as char).to_string()
            } else {
                format!("{k:0width$}")
            }
        };
        let mut out = String::new();
        for y in 0..q {
            let row: Vec<String> = (0..q)
                .map(|x| token(self.anchor_of(Cell::new(x as u32, y as u32))))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// One unit square per cell coloured by tile, with an X on codeword cells.
    pub fn render_svg(&self) -> String {
        const UNIT: usize = 20;
        let q = self.lattice.q() as usize;
        let side = q * UNIT;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
        );
        for c in self.lattice.cells() {
            let k = self.anchor_of(c);
            let hue = k * 360 / q;
            let (px, py) = (c.x as usize * UNIT, c.y as usize * UNIT);
            let _ = writeln!(
                out,
                r#"<rect x="{px}" y="{py}" width="{UNIT}" height="{UNIT}" fill="hsl({hue},70%,75%)" stroke="black" stroke-width="0.5"/>"#
            );
        }
        for c in self.anchors.cells() {
            let (px, py) = (c.x as usize * UNIT, c.y as usize * UNIT);
            let (ex, ey) = (px + UNIT - 4, py + UNIT - 4);
            let _ = writeln!(
                out,
                r#"<path d="M{} {} L{ex} {ey} M{ex} {} L{} {ey}" stroke="black" stroke-width="1.5"/>"#,
                px + 4,
                py + 4,
                py + 4,
                px + 4,
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}
