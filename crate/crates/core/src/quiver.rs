//! The ladder quiver of `G(n, n+k)` and its consecutive block decompositions.
//!
//! Vertices are the grid points `(i, j)` with `i ∈ [1, k]`, `j ∈ [1, n]`,
//! plus the two boundary vertices `(0, 1)` and `(k, n + 1)`. Vertical arrows
//! point down a column, horizontal arrows point right along a row; the two
//! extra arrows `v_{0,1}` and `h_{k,n}` connect the boundary vertices.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A complete intersection of hypersurfaces of the given degrees in `G(n, n+k)`.
///
/// The degree list is ordered; different orders give different (but
/// period-equivalent) superpotentials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModelSpec {
    n: usize,
    k: usize,
    degrees: Vec<usize>,
}

impl ModelSpec {
    /// Validates `n, k ≥ 2`, positive degrees and the Fano condition `Σ dᵢ < n + k`.
    ///
    /// An empty degree list (the Grassmannian itself) is accepted.
    pub fn new(n: usize, k: usize, degrees: Vec<usize>) -> Result<Self> {
        if n < 2 || k < 2 {
            return Err(Error::InvalidSpec(format!(
                "G({n},{}) needs n >= 2 and k >= 2",
                n + k
            )));
        }
        if let Some(pos) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::InvalidSpec(format!(
                "degree d{} must be at least 1",
                pos + 1
            )));
        }
        let total: usize = degrees.iter().sum();
        if total >= n + k {
            return Err(Error::InvalidSpec(format!(
                "not Fano: sum of degrees {total} must be less than n + k = {}",
                n + k
            )));
        }
        Ok(Self { n, k, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Number of hypersurfaces `l`.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `d₀ = n + k − Σ dᵢ`, always at least 1.
    pub fn fano_index(&self) -> usize {
        self.n + self.k - self.degrees.iter().sum::<usize>()
    }

    /// Dimension `nk − l` of the torus carrying the superpotential.
    pub fn torus_dimension(&self) -> usize {
        self.n * self.k - self.degrees.len()
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degrees: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "G({},{}) degrees ({})", self.n, self.n + self.k, degrees.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Vertical,
    Horizontal,
}

/// An arrow of the quiver, identified by its kind and tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub tail: Vertex,
}

impl Arrow {
    /// `v_{i,j}: (i,j) → (i+1,j)`.
    pub const fn vertical(i: usize, j: usize) -> Self {
        Self {
            kind: ArrowKind::Vertical,
            tail: Vertex::new(i, j),
        }
    }

    /// `h_{i,j}: (i,j) → (i,j+1)`.
    pub const fn horizontal(i: usize, j: usize) -> Self {
        Self {
            kind: ArrowKind::Horizontal,
            tail: Vertex::new(i, j),
        }
    }

    pub fn head(&self) -> Vertex {
        match self.kind {
            ArrowKind::Vertical => Vertex::new(self.tail.i + 1, self.tail.j),
            ArrowKind::Horizontal => Vertex::new(self.tail.i, self.tail.j + 1),
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            ArrowKind::Vertical => 'v',
            ArrowKind::Horizontal => 'h',
        };
        write!(f, "{c}_{{{},{}}}", self.tail.i, self.tail.j)
    }
}

impl Serialize for Arrow {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Arrow", 4)?;
        st.serialize_field("name", &self.to_string())?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("tail", &[self.tail.i, self.tail.j])?;
        let head = self.head();
        st.serialize_field("head", &[head.i, head.j])?;
        st.end()
    }
}

/// The quiver of `G(n, n+k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    k: usize,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < 2 {
            return Err(Error::InvalidSpec(format!(
                "G({n},{}) needs n >= 2 and k >= 2",
                n + k
            )));
        }
        let mut vertices = vec![Vertex::new(0, 1)];
        for i in 1..=k {
            for j in 1..=n {
                vertices.push(Vertex::new(i, j));
            }
        }
        vertices.push(Vertex::new(k, n + 1));

        let mut arrows = vec![Arrow::vertical(0, 1)];
        for i in 1..k {
            for j in 1..=n {
                arrows.push(Arrow::vertical(i, j));
            }
        }
        for i in 1..=k {
            for j in 1..n {
                arrows.push(Arrow::horizontal(i, j));
            }
        }
        arrows.push(Arrow::horizontal(k, n));
        arrows.sort();

        Ok(Self { n, k, vertices, arrows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// All arrows in canonical order (vertical before horizontal, then by tail).
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn contains_arrow(&self, arrow: &Arrow) -> bool {
        self.arrows.binary_search(arrow).is_ok()
    }

    /// The arrow `h_{k,n}` into the boundary vertex `(k, n+1)`.
    pub fn last_arrow(&self) -> Arrow {
        Arrow::horizontal(self.k, self.n)
    }

    /// Builds a block, checking the index ranges of its kind.
    pub fn block(&self, kind: BlockKind, r: usize, s: usize) -> Result<Block> {
        let (n, k) = (self.n, self.k);
        let out_of_range = || Error::BlockOutOfRange {
            kind: kind.name(),
            r,
            s,
            n,
            k,
        };
        let arrows: BTreeSet<Arrow> = match kind {
            BlockKind::Horizontal => {
                if r >= s || s > k {
                    return Err(out_of_range());
                }
                self.vertical_band(r, s)
            }
            BlockKind::Vertical => {
                if r < 1 || r >= s || s > n + 1 {
                    return Err(out_of_range());
                }
                self.horizontal_band(r, s)
            }
            BlockKind::Mixed => {
                if r > k || s < 1 || s > n + 1 {
                    return Err(out_of_range());
                }
                let mut arrows = self.vertical_band(r, k);
                arrows.extend(self.horizontal_band(1, s));
                arrows
            }
        };
        let size = match kind {
            BlockKind::Horizontal | BlockKind::Vertical => s - r,
            BlockKind::Mixed => (k - r) + (s - 1),
        };
        let weight_vertex = match kind {
            BlockKind::Horizontal => Vertex::new(s - 1, 1),
            BlockKind::Mixed | BlockKind::Vertical => Vertex::new(k, s - 1),
        };
        Ok(Block {
            kind,
            r,
            s,
            size,
            weight_vertex,
            arrows,
        })
    }

    /// Vertical arrows `v_{i,j}` with `i ∈ [r, s−1]`.
    fn vertical_band(&self, r: usize, s: usize) -> BTreeSet<Arrow> {
        self.arrows
            .iter()
            .filter(|a| a.kind == ArrowKind::Vertical && (r..s).contains(&a.tail.i))
            .copied()
            .collect()
    }

    /// Horizontal arrows `h_{i,j}` with `j ∈ [r, s−1]`.
    fn horizontal_band(&self, r: usize, s: usize) -> BTreeSet<Arrow> {
        self.arrows
            .iter()
            .filter(|a| a.kind == ArrowKind::Horizontal && (r..s).contains(&a.tail.j))
            .copied()
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlockKind {
    #[serde(rename = "HB")]
    Horizontal,
    #[serde(rename = "VB")]
    Vertical,
    #[serde(rename = "MB")]
    Mixed,
}

impl BlockKind {
    pub fn name(self) -> &'static str {
        match self {
            BlockKind::Horizontal => "HB",
            BlockKind::Vertical => "VB",
            BlockKind::Mixed => "MB",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    kind: BlockKind,
    r: usize,
    s: usize,
    size: usize,
    weight_vertex: Vertex,
    arrows: BTreeSet<Arrow>,
}

impl Block {
    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `s − r` for horizontal and vertical blocks, `(k − r) + (s − 1)` for mixed ones.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arrows(&self) -> &BTreeSet<Arrow> {
        &self.arrows
    }

    pub fn contains(&self, arrow: &Arrow) -> bool {
        self.arrows.contains(arrow)
    }

    /// `(s−1, 1)` for `HB(r,s)`, `(k, s−1)` for `MB(r,s)` and `VB(r,s)`.
    pub fn weight_vertex(&self) -> Vertex {
        self.weight_vertex
    }

    /// Name of the coordinate at the weight vertex: `a` for `(0,1)`, else `a_i_j`.
    pub fn weight_variable(&self) -> String {
        plain_variable_name(self.weight_vertex)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind.name(), self.r, self.s)
    }
}

impl Serialize for Block {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Block", 7)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("weight_vertex", &[self.weight_vertex.i, self.weight_vertex.j])?;
        st.serialize_field("weight_variable", &self.weight_variable())?;
        let names: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
        st.serialize_field("arrows", &names)?;
        st.end()
    }
}

/// Coordinate name in the plain frame: `(0,1)` is `a`, grid vertices are `a_i_j`.
pub fn plain_variable_name(v: Vertex) -> String {
    if v == Vertex::new(0, 1) {
        "a".to_string()
    } else {
        format!("a_{}_{}", v.i, v.j)
    }
}

/// Consecutive blocks `B₁..B_l` of sizes `d₁..d_l` and the complement `B₀`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    spec: ModelSpec,
    quiver: Quiver,
    blocks: Vec<Block>,
    complement: BTreeSet<Arrow>,
}

impl BlockDecomposition {
    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `B₀`: every arrow not covered by a block. Always contains `h_{k,n}`.
    pub fn complement(&self) -> &BTreeSet<Arrow> {
        &self.complement
    }

    /// `A = B₀ \ {h_{k,n}}`.
    pub fn invariant_arrows(&self) -> BTreeSet<Arrow> {
        let last = self.quiver.last_arrow();
        self.complement.iter().filter(|a| **a != last).copied().collect()
    }

    pub fn weight_vertices(&self) -> Vec<Vertex> {
        self.blocks.iter().map(Block::weight_vertex).collect()
    }
}

/// Tiles the quiver with consecutive blocks of sizes `d₁, …, d_l`, in order.
///
/// Writing `u_p = d₁ + … + d_p`, block `p` is `HB(u_{p−1}, u_p)` while
/// `u_p ≤ k`, the mixed block `MB(u_{p−1}, u_p − k + 1)` when the degree
/// straddles the corner, and `VB(u_{p−1} − k + 1, u_p − k + 1)` afterwards.
pub fn decompose(spec: &ModelSpec) -> BlockDecomposition {
    let quiver = Quiver::new(spec.n, spec.k).expect("validated spec");
    let k = spec.k;
    let mut blocks = Vec::with_capacity(spec.len());
    let mut covered = 0usize;
    for &d in &spec.degrees {
        let next = covered + d;
        let block = if next <= k {
            quiver.block(BlockKind::Horizontal, covered, next)
        } else if covered < k {
            quiver.block(BlockKind::Mixed, covered, next - k + 1)
        } else {
            quiver.block(BlockKind::Vertical, covered - k + 1, next - k + 1)
        };
        blocks.push(block.expect("Fano condition keeps blocks inside the quiver"));
        covered = next;
    }
    let complement = quiver
        .arrows()
        .iter()
        .filter(|a| !blocks.iter().any(|b| b.contains(a)))
        .copied()
        .collect();
    BlockDecomposition {
        spec: spec.clone(),
        quiver,
        blocks,
        complement,
    }
}

/// All Fano specs with `n ∈ [2, max_n]`, `k ∈ [2, max_k]` and `l ≤ max_l`,
/// including every ordering of each degree multiset.
pub fn fano_specs(max_n: usize, max_k: usize, max_l: usize) -> Vec<ModelSpec> {
    fn extend(prefix: &mut Vec<usize>, budget: usize, max_l: usize, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        if prefix.len() == max_l {
            return;
        }
        for d in 1..=budget {
            prefix.push(d);
            extend(prefix, budget - d, max_l, out);
            prefix.pop();
        }
    }
    let mut specs = Vec::new();
    for n in 2..=max_n {
        for k in 2..=max_k {
            let mut lists = Vec::new();
            extend(&mut Vec::new(), n + k - 1, max_l, &mut lists);
            for degrees in lists {
                specs.push(ModelSpec::new(n, k, degrees).expect("enumerated within Fano range"));
            }
        }
    }
    specs
}
