//! Burst-error interleaving over the `2q²` edge qubits.
//!
//! The stream is cut into `q` blocks of `2q` consecutive qubits. Block `b`
//! is anchored at the `b`-th cell `c_b` of the fundamental region (row-major,
//! `c_0 = (0, 0)`): stream position `2qb + k` goes to the top edge of
//! `c_b + k·(1, g)` and position `2qb + q + k` to the left edge of the same
//! cell. A block therefore occupies exactly one coset of the code, and any
//! translate of the fundamental region meets each block in exactly one cell.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::CodewordSet;
use crate::error::{Error, Result};
use crate::lattice::{Cell, Edge, LatticeVector, Slot, TorusLattice};
use crate::tessellation::{canonical_polyomino, check_fundamental_region, Polyomino};

/// Largest `q` accepted by [`burst_correctability_exhaustive`].
pub const EXHAUSTIVE_MAX_Q: u32 = 9;
/// Largest `q` accepted when decoding a permutation file.
pub const PERMUTATION_MAX_Q: u32 = 1001;
/// Failure exemplars kept by [`simulate`].
pub const MAX_EXEMPLARS: usize = 5;

const BATCH: u64 = 1024;

#[derive(Debug, Clone)]
pub struct InterleaverMap {
    lattice: TorusLattice,
    code: CodewordSet,
    shape: Polyomino,
    block_anchors: Vec<Cell>,
    stream_to_edge: Vec<Edge>,
    /// Indexed by [`TorusLattice::edge_index`].
    edge_to_stream: Vec<usize>,
    edge_to_block: Vec<usize>,
}

/// Interleaver over the canonical fundamental region.
pub fn build_interleaver(lattice: TorusLattice) -> Result<InterleaverMap> {
    InterleaverMap::with_shape(lattice, canonical_polyomino(lattice)?)
}

impl InterleaverMap {
    pub fn with_shape(lattice: TorusLattice, shape: Polyomino) -> Result<Self> {
        let code = CodewordSet::new(lattice);
        check_fundamental_region(&code, &shape)?;
        let q = lattice.q() as usize;
        let block_anchors: Vec<Cell> = shape
            .cells()
            .iter()
            .map(|&v| lattice.translate(Cell::ORIGIN, v))
            .collect();

        let mut stream_to_edge = Vec::with_capacity(2 * q * q);
        for &anchor in &block_anchors {
            for slot in [Slot::Top, Slot::Left] {
                for &cw in code.cells() {
                    stream_to_edge.push(Edge::new(lattice.translate(anchor, cw.into()), slot));
                }
            }
        }

        let mut edge_to_stream = vec![usize::MAX; lattice.edge_count()];
        let mut edge_to_block = vec![usize::MAX; lattice.edge_count()];
        for (i, &e) in stream_to_edge.iter().enumerate() {
            let idx = lattice.edge_index(e);
            if edge_to_stream[idx] != usize::MAX {
                return Err(Error::InvalidPermutation(format!(
                    "edge {e} assigned to stream positions {} and {i}",
                    edge_to_stream[idx]
                )));
            }
            edge_to_stream[idx] = i;
            edge_to_block[idx] = i / (2 * q);
        }

        Ok(Self {
            lattice,
            code,
            shape,
            block_anchors,
            stream_to_edge,
            edge_to_stream,
            edge_to_block,
        })
    }

    pub fn lattice(&self) -> TorusLattice {
        self.lattice
    }

    pub fn shape(&self) -> &Polyomino {
        &self.shape
    }

    pub fn block_anchors(&self) -> &[Cell] {
        &self.block_anchors
    }

    pub fn stream_to_edge(&self) -> &[Edge] {
        &self.stream_to_edge
    }

    pub fn edge(&self, stream_index: usize) -> Edge {
        self.stream_to_edge[stream_index]
    }

    pub fn stream_index(&self, e: Edge) -> usize {
        self.edge_to_stream[self.lattice.edge_index(e)]
    }

    pub fn block_of(&self, e: Edge) -> usize {
        self.edge_to_block[self.lattice.edge_index(e)]
    }

    pub fn block_count(&self) -> usize {
        self.block_anchors.len()
    }

    /// The fundamental region translated to `anchor`.
    pub fn cluster(&self, anchor: Cell) -> BurstCluster {
        let cells = self
            .shape
            .cells()
            .iter()
            .map(|&v| self.lattice.translate(anchor, v))
            .collect();
        BurstCluster { anchor, cells }
    }

    /// Errors per block. Duplicate edges are counted once.
    pub fn deinterleave(&self, errors: &[Edge]) -> Vec<usize> {
        let mut idx: Vec<usize> = errors.iter().map(|&e| self.lattice.edge_index(e)).collect();
        idx.sort_unstable();
        idx.dedup();
        let mut counts = vec![0; self.block_count()];
        for i in idx {
            counts[self.edge_to_block[i]] += 1;
        }
        counts
    }

    /// Every block sees at most `t` errors.
    pub fn is_correctable(&self, errors: &[Edge], t: usize) -> Correctability {
        let block_counts = self.deinterleave(errors);
        let offending: Vec<usize> = block_counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > t)
            .map(|(b, _)| b)
            .collect();
        Correctability {
            correctable: offending.is_empty(),
            block_counts,
            offending,
        }
    }

    /// Whether every translate of the fundamental region meets `q` distinct
    /// blocks. Returns the first anchor that fails.
    pub fn cluster_transversal(&self) -> std::result::Result<(), Cell> {
        let q = self.block_count();
        for anchor in self.lattice.cells() {
            let mut seen = vec![false; q];
            for c in self.cluster(anchor).cells {
                let b = self.block_of(Edge::new(c, Slot::Top));
                if std::mem::replace(&mut seen[b], true) {
                    return Err(anchor);
                }
            }
        }
        Ok(())
    }

    pub fn permutation_file(&self) -> PermutationFile {
        PermutationFile {
            q: self.lattice.q(),
            map: self
                .stream_to_edge
                .iter()
                .enumerate()
                .map(|(i, e)| [i as u64, e.cell.x as u64, e.cell.y as u64, e.slot.index() as u64])
                .collect(),
        }
    }

    /// Whether `file` describes exactly this permutation.
    pub fn matches(&self, file: &PermutationFile) -> bool {
        file.q == self.lattice.q() && file.map == self.permutation_file().map
    }

    pub fn code(&self) -> &CodewordSet {
        &self.code
    }
}

/// A polyomino-shaped translate of the fundamental region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurstCluster {
    pub anchor: Cell,
    /// Cells in the order of the shape's cells.
    pub cells: Vec<Cell>,
}

impl BurstCluster {
    /// The `2q` edges owned by the cluster's cells: all top edges, then all left edges.
    pub fn edges(&self) -> Vec<Edge> {
        [Slot::Top, Slot::Left]
            .iter()
            .flat_map(|&s| self.cells.iter().map(move |&c| Edge::new(c, s)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correctability {
    pub correctable: bool,
    pub block_counts: Vec<usize>,
    /// Blocks with more than `t` errors.
    pub offending: Vec<usize>,
}

/// A cluster anchor and the errored edges drawn for it.
pub type ErrorPattern = (Cell, Vec<Edge>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub q: u32,
    pub patterns: u64,
    pub failures: u64,
    pub first_failure: Option<ErrorPattern>,
}

impl ExhaustiveReport {
    pub fn all_correctable(&self) -> bool {
        self.failures == 0
    }
}

/// For every anchor and every choice of none / top / left edge in each
/// cluster cell (`q² · 3^q` patterns), check correctability with `t = 1`.
pub fn burst_correctability_exhaustive(lattice: TorusLattice) -> Result<ExhaustiveReport> {
    if lattice.q() > EXHAUSTIVE_MAX_Q {
        return Err(Error::ExhaustiveTooLarge { q: lattice.q(), max: EXHAUSTIVE_MAX_Q });
    }
    let map = build_interleaver(lattice)?;
    let q = lattice.q();
    let per_anchor = 3u64.pow(q);
    let results: Vec<(u64, Option<ErrorPattern>)> = lattice
        .cells()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|anchor| {
            let cluster = map.cluster(anchor);
            let mut failures = 0;
            let mut first = None;
            let mut errors = Vec::with_capacity(q as usize);
            for pattern in 0..per_anchor {
                errors.clear();
                let mut p = pattern;
                for &c in &cluster.cells {
                    match p % 3 {
                        1 => errors.push(Edge::new(c, Slot::Top)),
                        2 => errors.push(Edge::new(c, Slot::Left)),
                        _ => {}
                    }
                    p /= 3;
                }
                if !map.is_correctable(&errors, 1).correctable {
                    failures += 1;
                    first.get_or_insert_with(|| (anchor, errors.clone()));
                }
            }
            (failures, first)
        })
        .collect();
    Ok(ExhaustiveReport {
        q,
        patterns: per_anchor * lattice.cell_count() as u64,
        failures: results.iter().map(|r| r.0).sum(),
        first_failure: results.into_iter().find_map(|r| r.1),
    })
}

/// Negative control: for every anchor and every cluster cell, erring both
/// edges of that cell must be reported uncorrectable. Returns
/// `(patterns checked, patterns wrongly reported correctable)`.
pub fn double_slot_control(map: &InterleaverMap) -> (u64, u64) {
    let mut checked = 0;
    let mut wrong = 0;
    for anchor in map.lattice.cells() {
        for c in map.cluster(anchor).cells {
            let errors = [Edge::new(c, Slot::Top), Edge::new(c, Slot::Left)];
            checked += 1;
            if map.is_correctable(&errors, 1).correctable {
                wrong += 1;
            }
        }
    }
    (checked, wrong)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorModel {
    /// Each cluster cell independently contributes no error, its top edge
    /// or its left edge, uniformly.
    #[serde(rename = "one-per-cell")]
    OnePerCell,
    /// `q` of the cluster's `2q` edges, uniformly without replacement.
    #[serde(rename = "uniform-cluster")]
    UniformWithinCluster,
}

impl ErrorModel {
    pub fn name(self) -> &'static str {
        match self {
            ErrorModel::OnePerCell => "one-per-cell",
            ErrorModel::UniformWithinCluster => "uniform-cluster",
        }
    }
}

impl std::str::FromStr for ErrorModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "one-per-cell" => Ok(ErrorModel::OnePerCell),
            "uniform-cluster" => Ok(ErrorModel::UniformWithinCluster),
            _ => Err(format!("unknown error model {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureExemplar {
    pub trial: u64,
    pub anchor: Cell,
    /// `[x, y, slot]`, sorted.
    pub errored_edges: Vec<[u32; 3]>,
    pub offending_blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationStats {
    pub q: u32,
    pub model: ErrorModel,
    pub seed: u64,
    pub trials: u64,
    pub correctable_count: u64,
    pub failure_count: u64,
    /// Lowest-numbered failing trials, at most [`MAX_EXEMPLARS`].
    pub exemplars: Vec<FailureExemplar>,
}

impl SimulationStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }

    pub fn to_csv(&self) -> String {
        format!(
            "q,model,seed,trials,correctable,failures\n{},{},{},{},{},{}\n",
            self.q,
            self.model.name(),
            self.seed,
            self.trials,
            self.correctable_count,
            self.failure_count
        )
    }
}

/// Seeded burst-channel simulation. Trial `i` draws from a ChaCha8 stream
/// seeded with `seed` on stream number `i`, so the outcome does not depend
/// on how trials are scheduled across threads.
pub fn simulate(
    lattice: TorusLattice,
    trials: u64,
    seed: u64,
    model: ErrorModel,
) -> Result<SimulationStats> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let map = build_interleaver(lattice)?;
    let batches = trials.div_ceil(BATCH);
    let per_batch: Vec<(u64, Vec<FailureExemplar>)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut failures = 0;
            let mut exemplars = Vec::new();
            for trial in b * BATCH..((b + 1) * BATCH).min(trials) {
                if let Some(ex) = run_trial(&map, seed, trial, model) {
                    failures += 1;
                    if exemplars.len() < MAX_EXEMPLARS {
                        exemplars.push(ex);
                    }
                }
            }
            (failures, exemplars)
        })
        .collect();
    let failure_count: u64 = per_batch.iter().map(|b| b.0).sum();
    let exemplars = per_batch
        .into_iter()
        .flat_map(|b| b.1)
        .take(MAX_EXEMPLARS)
        .collect();
    Ok(SimulationStats {
        q: lattice.q(),
        model,
        seed,
        trials,
        correctable_count: trials - failure_count,
        failure_count,
        exemplars,
    })
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Errors drawn for one trial: the cluster anchor and the errored edges.
pub fn sample_trial(map: &InterleaverMap, seed: u64, trial: u64, model: ErrorModel) -> (Cell, Vec<Edge>) {
    let mut rng = trial_rng(seed, trial);
    let lattice = map.lattice;
    let anchor = lattice.cell_at(rng.random_range(0..lattice.cell_count()));
    let cluster = map.cluster(anchor);
    let errors = match model {
        ErrorModel::OnePerCell => cluster
            .cells
            .iter()
            .filter_map(|&c| match rng.random_range(0..3u8) {
                1 => Some(Edge::new(c, Slot::Top)),
                2 => Some(Edge::new(c, Slot::Left)),
                _ => None,
            })
            .collect(),
        ErrorModel::UniformWithinCluster => {
            let edges = cluster.edges();
            let q = lattice.q() as usize;
            index::sample(&mut rng, edges.len(), q).into_iter().map(|i| edges[i]).collect()
        }
    };
    (anchor, errors)
}

fn run_trial(map: &InterleaverMap, seed: u64, trial: u64, model: ErrorModel) -> Option<FailureExemplar> {
    let (anchor, errors) = sample_trial(map, seed, trial, model);
    let verdict = map.is_correctable(&errors, 1);
    if verdict.correctable {
        return None;
    }
    let mut errored_edges: Vec<[u32; 3]> = errors
        .iter()
        .map(|e| [e.cell.x, e.cell.y, e.slot.index() as u32])
        .collect();
    errored_edges.sort_unstable();
    Some(FailureExemplar {
        trial,
        anchor,
        errored_edges,
        offending_blocks: verdict.offending,
    })
}

/// On-disk interleaver: `{"q": q, "map": [[stream_index, x, y, slot], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationFile {
    pub q: u32,
    pub map: Vec<[u64; 4]>,
}

impl PermutationFile {
    /// Decode and check that `map` is a bijection between stream positions
    /// `0..2q²` and the lattice edges.
    pub fn parse(text: &str) -> Result<Self> {
        let file: PermutationFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidPermutation(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("permutation serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPermutation(m));
        if self.q > PERMUTATION_MAX_Q {
            return bad(format!("q = {} exceeds {PERMUTATION_MAX_Q}", self.q));
        }
        let lattice = TorusLattice::new(self.q).map_err(|e| Error::InvalidPermutation(e.to_string()))?;
        let total = lattice.edge_count();
        if self.map.len() != total {
            return bad(format!("expected {total} entries, found {}", self.map.len()));
        }
        let q = self.q as u64;
        let mut stream_seen = vec![false; total];
        let mut edge_seen = vec![false; total];
        for &[i, x, y, slot] in &self.map {
            if i >= total as u64 {
                return bad(format!("stream index {i} out of range"));
            }
            if x >= q || y >= q {
                return bad(format!("cell ({x},{y}) outside the {q}x{q} lattice"));
            }
            let Some(slot) = Slot::from_index(slot) else {
                return bad(format!("slot {slot} is not 0 or 1"));
            };
            if std::mem::replace(&mut stream_seen[i as usize], true) {
                return bad(format!("stream index {i} appears twice"));
            }
            let e = Edge::new(Cell::new(x as u32, y as u32), slot);
            if std::mem::replace(&mut edge_seen[lattice.edge_index(e)], true) {
                return bad(format!("edge {e} appears twice"));
            }
        }
        Ok(())
    }

    /// Edges in stream order. Only meaningful after [`Self::validate`].
    pub fn stream_to_edge(&self) -> Vec<Edge> {
        let mut entries: Vec<&[u64; 4]> = self.map.iter().collect();
        entries.sort_unstable_by_key(|e| e[0]);
        entries
            .into_iter()
            .map(|&[_, x, y, s]| Edge::new(Cell::new(x as u32, y as u32), Slot::from_index(s).unwrap_or(Slot::Top)))
            .collect()
    }

    /// Checks the block structure independently of [`InterleaverMap`]: every
    /// run of `2q` stream positions must cover both edges of `q` cells that
    /// pairwise differ by codewords, with distinct runs on distinct cosets.
    pub fn check_blocks(&self) -> Result<()> {
        self.validate()?;
        let lattice = TorusLattice::new(self.q).map_err(|e| Error::InvalidPermutation(e.to_string()))?;
        let code = CodewordSet::new(lattice);
        let q = self.q as usize;
        let edges = self.stream_to_edge();
        let mut cosets_used = vec![false; q];
        for (b, block) in edges.chunks(2 * q).enumerate() {
            let mut cells: Vec<Cell> = block.iter().map(|e| e.cell).collect();
            cells.sort_unstable();
            cells.dedup();
            if cells.len() != q {
                return Err(Error::InvalidPermutation(format!("block {b} spans {} cells", cells.len())));
            }
            let base = cells[0];
            for &c in &cells {
                let diff = lattice.translate(c, -LatticeVector::from(base));
                if !code.contains(diff) {
                    return Err(Error::InvalidPermutation(format!(
                        "block {b}: cells {base} and {c} are in different cosets"
                    )));
                }
            }
            let coset = code.coset_index(base) as usize;
            if std::mem::replace(&mut cosets_used[coset], true) {
                return Err(Error::InvalidPermutation(format!("block {b} reuses coset {coset}")));
            }
        }
        Ok(())
    }
}
