//! Independent oracles shared by the integration suites. None of these go
//! through the library's search or solver code paths.
#![allow(dead_code)]

use itertools::Itertools;
use planar_lb::grid::Grid;

/// Minimum dominating set size by enumerating subsets in order of size.
pub fn mds_by_enumeration(grid: &Grid) -> usize {
    let n = grid.len();
    assert!(n <= 30);
    let closed: Vec<u32> = (0..n)
        .map(|v| grid.neighbors(v).iter().fold(1u32 << v, |m, &w| m | 1 << w))
        .collect();
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for size in 0..=n {
        for set in (0..n).combinations(size) {
            if set.iter().fold(0u32, |m, &v| m | closed[v]) == all {
                return size;
            }
        }
    }
    unreachable!("the whole vertex set dominates")
}

/// Lexicographically first monochromatic `m`-subset of `pool`, color 0 tried
/// before color 1, by plain enumeration of all `m`-subsets.
pub fn first_mono_by_enumeration(
    color: &dyn Fn(&[u32]) -> bool,
    k: usize,
    pool: &[u32],
    m: usize,
) -> Option<(Vec<u32>, bool)> {
    for want in [false, true] {
        for y in pool.iter().copied().combinations(m) {
            if y.iter().copied().combinations(k).all(|x| color(&x) == want) {
                return Some((y, want));
            }
        }
    }
    None
}

/// `side × side` torus with triangular-lattice adjacency. Returns, for the
/// residue set `col + 2·row ≡ 0 (mod 7)`, whether every non-member has exactly
/// one member in its closed neighbourhood and every member has none besides
/// itself.
pub fn torus_perfect_code(side: i64) -> bool {
    let member = |c: i64, r: i64| (c.rem_euclid(side) + 2 * r.rem_euclid(side)) % 7 == 0;
    let offsets = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];
    (0..side).all(|c| {
        (0..side).all(|r| {
            let hits = offsets.iter().filter(|&&(dc, dr)| member(c + dc, r + dr)).count();
            hits == 1
        })
    })
}
