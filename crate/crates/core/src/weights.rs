//! Vertex weights of the torus action attached to a block decomposition.
//!
//! Block `B_p` gets a weight function `wt_p` on the quiver vertices such that
//! every arrow of `B_p` lowers the weight by one, every other arrow except
//! `h_{k,n}` preserves it, `wt_p(k,n) = 0` and `wt_p(0,1) = wt_p(k,n+1)`.
//! The torus `(ℂ*)^l` then acts on the coordinate at vertex `v` by
//! `∏ w_p^{wt_p(v)}`, which makes `F_{B_p}` semi-invariant of weight `w_p⁻¹`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, Block, BlockDecomposition, BlockKind, Vertex};

/// Per-block weights on the vertices of the quiver, stored as dense grids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    n: usize,
    k: usize,
    /// `tables[p][i][j]` for `i ∈ [0, k]`, `j ∈ [0, n+1]`; unused cells stay 0.
    tables: Vec<Vec<Vec<i64>>>,
}

impl WeightTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks `l`.
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// `wt_p(v)` for a zero-based block index `p`.
    pub fn weight(&self, p: usize, v: Vertex) -> i64 {
        self.tables[p][v.i][v.j]
    }

    /// The exponents `(wt_1(v), …, wt_l(v))` of the torus character at `v`.
    pub fn character(&self, v: Vertex) -> Vec<i64> {
        (0..self.len()).map(|p| self.weight(p, v)).collect()
    }

    fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(Vertex::new(0, 1))
            .chain((1..=self.k).flat_map(move |i| (1..=self.n).map(move |j| Vertex::new(i, j))))
            .chain(std::iter::once(Vertex::new(self.k, self.n + 1)))
    }

    /// Rows `1..=k` of `wt_p` as a matrix, for display and serialization.
    pub fn grid(&self, p: usize) -> Vec<Vec<i64>> {
        (1..=self.k)
            .map(|i| (1..=self.n).map(|j| self.tables[p][i][j]).collect())
            .collect()
    }
}

/// One weight table per block, filled from the closed formulas of each block kind.
///
/// Fails only if the result breaks one of the defining properties, which
/// would mean the decomposition is inconsistent.
pub fn weight_table(dec: &BlockDecomposition) -> Result<WeightTable> {
    let (n, k) = (dec.spec().n(), dec.spec().k());
    let tables = dec
        .blocks()
        .iter()
        .map(|block| block_weights(block, n, k))
        .collect();
    let table = WeightTable { n, k, tables };
    match validate_weights(&table, dec) {
        WeightReport::Pass => Ok(table),
        fail => Err(Error::Internal(fail.to_string())),
    }
}

fn block_weights(block: &Block, n: usize, k: usize) -> Vec<Vec<i64>> {
    let (r, s) = (block.r() as i64, block.s() as i64);
    let k_i = k as i64;
    let mut grid = vec![vec![0i64; n + 2]; k + 1];
    // Row 0 only holds the boundary vertex (0,1); it follows the same formula
    // as the grid rows with i = 0, j = 1.
    let cells = std::iter::once((0usize, 1usize))
        .chain((1..=k).flat_map(|i| (1..=n).map(move |j| (i, j))));
    for (i, j) in cells {
        let (ii, jj) = (i as i64, j as i64);
        let w = match block.kind() {
            BlockKind::Horizontal => {
                if ii < r {
                    s - r
                } else if ii <= s {
                    s - ii
                } else {
                    0
                }
            }
            BlockKind::Mixed => {
                let row = if ii >= r { k_i - ii } else { k_i - r };
                let col = if jj <= s { s - jj } else { 0 };
                row + col
            }
            BlockKind::Vertical => {
                if ii == 0 || jj < r {
                    s - r
                } else if jj <= s {
                    s - jj
                } else {
                    0
                }
            }
        };
        grid[i][j] = w;
    }
    grid[k][n + 1] = grid[0][1];
    grid
}

/// Outcome of [`validate_weights`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightReport {
    Pass,
    /// The arrow delta rule fails for arrow `arrow` in block `block` (zero-based).
    ArrowDelta { block: usize, arrow: Arrow, delta: i64, expected: i64 },
    Negative { block: usize, vertex: Vertex, weight: i64 },
    CornerNotZero { block: usize, weight: i64 },
    BoundaryMismatch { block: usize, source: i64, sink: i64 },
    DegreeMismatch { block: usize, weight: i64, degree: usize },
}

impl WeightReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, WeightReport::Pass)
    }
}

impl fmt::Display for WeightReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightReport::Pass => write!(f, "pass"),
            WeightReport::ArrowDelta { block, arrow, delta, expected } => write!(
                f,
                "wt_{}: arrow {arrow} changes weight by {delta}, expected {expected}",
                block + 1
            ),
            WeightReport::Negative { block, vertex, weight } => {
                write!(f, "wt_{}{vertex} = {weight} is negative", block + 1)
            }
            WeightReport::CornerNotZero { block, weight } => {
                write!(f, "wt_{}(k,n) = {weight}, expected 0", block + 1)
            }
            WeightReport::BoundaryMismatch { block, source, sink } => write!(
                f,
                "wt_{}(0,1) = {source} differs from wt_{}(k,n+1) = {sink}",
                block + 1,
                block + 1
            ),
            WeightReport::DegreeMismatch { block, weight, degree } => write!(
                f,
                "wt_{}(0,1) = {weight} differs from the degree {degree}",
                block + 1
            ),
        }
    }
}

/// Checks every defining property of the weights and reports the first violation.
///
/// Per block, arrows are checked first in canonical order, then the vertex
/// conditions.
pub fn validate_weights(table: &WeightTable, dec: &BlockDecomposition) -> WeightReport {
    let quiver = dec.quiver();
    let last = quiver.last_arrow();
    for (p, block) in dec.blocks().iter().enumerate() {
        for arrow in quiver.arrows() {
            if *arrow == last {
                continue;
            }
            let delta = table.weight(p, arrow.head()) - table.weight(p, arrow.tail);
            let expected = if block.contains(arrow) { -1 } else { 0 };
            if delta != expected {
                return WeightReport::ArrowDelta { block: p, arrow: *arrow, delta, expected };
            }
        }
        for v in table.vertices() {
            let weight = table.weight(p, v);
            if weight < 0 {
                return WeightReport::Negative { block: p, vertex: v, weight };
            }
        }
        let corner = table.weight(p, Vertex::new(table.k, table.n));
        if corner != 0 {
            return WeightReport::CornerNotZero { block: p, weight: corner };
        }
        let source = table.weight(p, Vertex::new(0, 1));
        let sink = table.weight(p, Vertex::new(table.k, table.n + 1));
        if source != sink {
            return WeightReport::BoundaryMismatch { block: p, source, sink };
        }
        let degree = dec.spec().degrees()[p];
        if source != degree as i64 {
            return WeightReport::DegreeMismatch { block: p, weight: source, degree };
        }
    }
    WeightReport::Pass
}

/// The matrix of the torus action on the weight variables, and its inverse.
///
/// Row `i` holds the exponents of `w_1, …, w_l` by which the torus scales
/// the weight variable of block `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionMatrix {
    pub matrix: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
}

pub fn action_matrix(table: &WeightTable, dec: &BlockDecomposition) -> Result<ActionMatrix> {
    let l = table.len();
    let matrix: Vec<Vec<i64>> = dec
        .blocks()
        .iter()
        .map(|b| table.character(b.weight_vertex()))
        .collect();
    for (i, row) in matrix.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            let ok = match i.cmp(&j) {
                std::cmp::Ordering::Equal => entry == 1,
                std::cmp::Ordering::Greater => entry == 0,
                std::cmp::Ordering::Less => true,
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "action matrix is not unitriangular at ({}, {}): {entry}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let inverse = unitriangular_inverse(&matrix);
    debug_assert_eq!(inverse.len(), l);
    Ok(ActionMatrix { matrix, inverse })
}

/// Back substitution for an upper unitriangular integer matrix.
#[allow(clippy::needless_range_loop)]
fn unitriangular_inverse(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = m.len();
    let mut inv = vec![vec![0i64; l]; l];
    for col in 0..l {
        for row in (0..l).rev() {
            let mut value = if row == col { 1 } else { 0 };
            for t in row + 1..l {
                value -= m[row][t] * inv[t][col];
            }
            inv[row][col] = value;
        }
    }
    inv
}
