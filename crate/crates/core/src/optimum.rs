//! Witness dominating sets and ratio bookkeeping.
//!
//! On the infinite triangular lattice the nodes with `col + 2·row ≡ 0 (mod 7)`
//! form a perfect code: the seven closed-neighbourhood offsets hit the seven
//! residues exactly once. Restricted to the strip this misses a few nodes
//! along the outer edge, which a deterministic patch pass covers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Coord, Grid, Params};
use crate::local::{check_dominating, DomSet};
use crate::ratio::ExactRatio;

pub const DEFAULT_NODE_LIMIT: usize = 25;

pub fn in_residue_pattern(c: Coord) -> bool {
    (c.col + 2 * c.row).is_multiple_of(7)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    pub members: DomSet,
    pub internal_member_count: usize,
    pub boundary_member_count: usize,
    /// Members contributed by the residue pattern.
    pub pattern_count: usize,
    /// Members added by the patch pass.
    pub patch_count: usize,
}

impl WitnessSet {
    pub fn size(&self) -> usize {
        self.members.size()
    }

    /// Members among the internal nodes of block `b`.
    pub fn internal_in_block(&self, grid: &Grid, b: usize) -> usize {
        grid.internal_nodes(b)
            .into_iter()
            .filter(|&v| self.members.contains(v))
            .count()
    }
}

/// Residue-class pattern plus patch pass: scanning nodes in global order,
/// each undominated node gets the smallest node of its closed neighbourhood
/// added.
pub fn pattern_witness(grid: &Grid) -> WitnessSet {
    let n = grid.len();
    let mut members = DomSet::from_members(n, (0..n).filter(|&v| in_residue_pattern(grid.coord(v))));
    let pattern_count = members.size();

    let mut dominated = vec![false; n];
    for v in members.members().collect::<Vec<_>>() {
        dominated[v] = true;
        for &w in grid.neighbors(v) {
            dominated[w] = true;
        }
    }
    let mut patch_count = 0;
    for v in 0..n {
        if dominated[v] {
            continue;
        }
        let pick = grid
            .neighbors(v)
            .iter()
            .copied()
            .chain([v])
            .min()
            .expect("closed neighbourhood");
        members.insert(pick);
        patch_count += 1;
        dominated[pick] = true;
        for &w in grid.neighbors(pick) {
            dominated[w] = true;
        }
    }
    debug_assert!(check_dominating(grid, &members).is_empty());

    let internal_member_count = members.members().filter(|&v| grid.is_internal(v)).count();
    WitnessSet {
        boundary_member_count: members.size() - internal_member_count,
        internal_member_count,
        members,
        pattern_count,
        patch_count,
    }
}

/// Minimum dominating set size by branch and bound, for grids with at most
/// `node_limit` nodes (never more than 64).
pub fn exact_mds(grid: &Grid, node_limit: usize) -> Result<usize> {
    let n = grid.len();
    let limit = node_limit.min(64);
    if n > limit {
        return Err(Error::SizeLimit { n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    let closed: Vec<u64> = (0..n)
        .map(|v| grid.neighbors(v).iter().fold(1u64 << v, |m, &w| m | 1u64 << w))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let max_cover = closed.iter().map(|m| m.count_ones()).max().unwrap_or(1);

    let mut best = n;
    branch(&closed, all, max_cover, 0, 0, &mut best);
    Ok(best)
}

fn branch(closed: &[u64], all: u64, max_cover: u32, dominated: u64, used: usize, best: &mut usize) {
    if dominated == all {
        *best = (*best).min(used);
        return;
    }
    let missing = (all & !dominated).count_ones();
    let lower = used + missing.div_ceil(max_cover) as usize;
    if lower >= *best {
        return;
    }
    // some member of N[u] must be chosen for the lowest undominated u
    let u = (all & !dominated).trailing_zeros() as usize;
    let mut options: Vec<usize> = (0..closed.len()).filter(|&w| closed[w] >> u & 1 == 1).collect();
    options.sort_by_key(|&w| (std::cmp::Reverse((closed[w] & !dominated).count_ones()), w));
    for w in options {
        branch(closed, all, max_cover, dominated | closed[w], used + 1, best);
    }
}

/// Ratio floor implied by the forced blocks: every internal node of the
/// `r - leftover` forced blocks is in the output, against a witness of
/// `witness_size`.
pub fn ratio_bound(params: &Params, leftover: usize, witness_size: usize) -> Result<ExactRatio> {
    if witness_size == 0 {
        return Err(Error::InvalidParams("witness size must be positive".into()));
    }
    if leftover > params.r() {
        return Err(Error::InvalidParams(format!(
            "leftover {leftover} exceeds block count {}",
            params.r()
        )));
    }
    let forced = ((params.r() - leftover) * params.internal_per_block()) as u64;
    Ok(ExactRatio::new(forced, witness_size as u64))
}
