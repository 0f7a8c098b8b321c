//! The planar block grid.
//!
//! `r` blocks of `m × m` nodes are laid side by side in one horizontal strip of
//! width `m·r` and height `m`. Edges follow the triangular lattice: the square
//! grid edges plus the `(+1, +1)` diagonal, continuing across block borders.
//! Drawing every node at its `(col, row)` position is a straight-line planar
//! embedding.
//!
//! Each block has a boundary ring of width `T`; the remaining `m' × m'` nodes,
//! `m' = m - 2T`, are internal.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Triangular-lattice neighbour offsets as `(dcol, drow)`.
pub const LATTICE_OFFSETS: [(i64, i64); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];

/// Construction parameters. Built only through [`Params::new`], which enforces
/// `m >= 2T + 1` and `r >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    m: usize,
    r: usize,
    t: usize,
}

impl Params {
    pub fn new(m: usize, r: usize, t: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidParams(format!("r = {r} violates r >= 1")));
        }
        if m < 2 * t + 1 {
            return Err(Error::InvalidParams(format!(
                "m = {m} violates m >= 2T + 1 = {} (T = {t})",
                2 * t + 1
            )));
        }
        Ok(Params { m, r, t })
    }

    /// Nodes per block side.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of blocks.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Algorithm radius the boundary width is built for.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Side length of the internal square, `m - 2T`.
    pub fn m_prime(&self) -> usize {
        self.m - 2 * self.t
    }

    /// Side length of a region, `2T + 1`.
    pub fn k(&self) -> usize {
        2 * self.t + 1
    }

    /// Region size `k²`, which is also the coloring arity.
    pub fn region_size(&self) -> usize {
        self.k() * self.k()
    }

    /// Block size `m²`.
    pub fn block_size(&self) -> usize {
        self.m * self.m
    }

    /// Total node count `m²·r`.
    pub fn n(&self) -> usize {
        self.block_size() * self.r
    }

    /// Width of the strip in columns.
    pub fn width(&self) -> usize {
        self.m * self.r
    }

    pub fn internal_per_block(&self) -> usize {
        self.m_prime() * self.m_prime()
    }
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    m: usize,
    r: usize,
    #[serde(rename = "T")]
    t: usize,
    #[serde(default)]
    m_prime: usize,
    #[serde(default)]
    k: usize,
    #[serde(rename = "K", default)]
    region_size: usize,
    #[serde(rename = "M", default)]
    block_size: usize,
    #[serde(default)]
    n: usize,
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ParamsRepr {
            m: self.m,
            r: self.r,
            t: self.t,
            m_prime: self.m_prime(),
            k: self.k(),
            region_size: self.region_size(),
            block_size: self.block_size(),
            n: self.n(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ParamsRepr::deserialize(d)?;
        Params::new(repr.m, repr.r, repr.t).map_err(serde::de::Error::custom)
    }
}

/// Position of a node in the strip. Ordered row-major: by `row`, then `col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub col: usize,
    pub row: usize,
}

impl Coord {
    pub fn new(col: usize, row: usize) -> Self {
        Coord { col, row }
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.row, self.col).cmp(&(other.row, other.col))
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The `k × k` square of nodes around an internal node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub center: Coord,
    /// Row-major, bottom row first, left to right.
    pub cells: Vec<Coord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    params: Params,
    adjacency: Vec<Vec<usize>>,
    block: Vec<usize>,
    internal: Vec<bool>,
}

/// Build the strip for `params`. Nodes are indexed row-major, so node index
/// order and [`Coord`] order coincide.
pub fn build_grid(params: Params) -> Grid {
    let width = params.width();
    let height = params.m();
    let n = params.n();
    let t = params.t();
    let m = params.m();

    let mut adjacency = Vec::with_capacity(n);
    let mut block = Vec::with_capacity(n);
    let mut internal = Vec::with_capacity(n);
    for row in 0..height {
        for col in 0..width {
            let mut nbrs: Vec<usize> = LATTICE_OFFSETS
                .iter()
                .filter_map(|&(dc, dr)| {
                    let c = col as i64 + dc;
                    let r = row as i64 + dr;
                    (c >= 0 && r >= 0 && (c as usize) < width && (r as usize) < height)
                        .then(|| r as usize * width + c as usize)
                })
                .collect();
            nbrs.sort_unstable();
            adjacency.push(nbrs);
            block.push(col / m);
            let local_col = col % m;
            internal.push((t..m - t).contains(&local_col) && (t..m - t).contains(&row));
        }
    }
    Grid {
        params,
        adjacency,
        block,
        internal,
    }
}

impl Grid {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn index_of(&self, c: Coord) -> Option<usize> {
        (c.col < self.params.width() && c.row < self.params.m()).then(|| c.row * self.params.width() + c.col)
    }

    pub fn coord(&self, node: usize) -> Coord {
        let w = self.params.width();
        Coord::new(node % w, node / w)
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn block_of(&self, node: usize) -> usize {
        self.block[node]
    }

    pub fn is_internal(&self, node: usize) -> bool {
        self.internal[node]
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Nodes of block `b`, in global node order.
    pub fn block_nodes(&self, b: usize) -> Vec<usize> {
        let m = self.params.m();
        let w = self.params.width();
        (0..m)
            .flat_map(|row| (0..m).map(move |c| row * w + b * m + c))
            .collect()
    }

    pub fn internal_nodes(&self, b: usize) -> Vec<usize> {
        self.block_nodes(b).into_iter().filter(|&v| self.internal[v]).collect()
    }

    /// The center-most internal node of block `b`, ties broken toward smaller
    /// coordinates.
    pub fn canonical_center(&self, b: usize) -> Coord {
        let t = self.params.t();
        let mid = t + (self.params.m_prime() - 1) / 2;
        Coord::new(b * self.params.m() + mid, mid)
    }

    pub fn region_of(&self, v: Coord) -> Result<Region> {
        let node = self.index_of(v).ok_or(Error::NotInternal(v))?;
        if !self.internal[node] {
            return Err(Error::NotInternal(v));
        }
        let t = self.params.t();
        let cells = (v.row - t..=v.row + t)
            .flat_map(|row| (v.col - t..=v.col + t).map(move |col| Coord::new(col, row)))
            .collect();
        Ok(Region { center: v, cells })
    }

    /// Graph ball of radius `radius` around `node` by BFS, as `(node, distance)`
    /// pairs sorted by distance and then node order.
    pub fn ball(&self, node: usize, radius: usize) -> Vec<(usize, usize)> {
        let mut out = vec![(node, 0)];
        let mut frontier = vec![node];
        for d in 1..=radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adjacency[u] {
                    if !out.iter().any(|&(x, _)| x == w) && !next.contains(&w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            out.extend(next.iter().map(|&w| (w, d)));
            frontier = next;
        }
        out
    }

    /// Returns a pair of properly crossing edges in the straight-line
    /// embedding, if any. Quadratic in the edge count; meant for small grids.
    pub fn find_edge_crossing(&self) -> Option<((usize, usize), (usize, usize))> {
        let edges: Vec<_> = self.edges().collect();
        let pt = |v: usize| {
            let c = self.coord(v);
            (c.col as i64, c.row as i64)
        };
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if segments_cross(pt(a), pt(b), pt(c), pt(d)) {
                    return Some(((a, b), (c, d)));
                }
            }
        }
        None
    }
}

fn orient(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i64 {
    ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum()
}

fn on_segment(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> bool {
    r.0 >= p.0.min(q.0) && r.0 <= p.0.max(q.0) && r.1 >= p.1.min(q.1) && r.1 <= p.1.max(q.1)
}

/// Segment intersection for segments without shared endpoints, including
/// collinear overlap and touching.
fn segments_cross(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}
