//! Two-colorings of `K`-subsets of identifiers.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Coord, Grid};
use crate::local::{IdAssignment, LocalAlgorithm, Network};

/// A coloring `c(X) ∈ {0, 1}` of the `arity()`-subsets of identifiers.
pub trait SubsetColoring: Sync {
    fn arity(&self) -> usize;

    /// `subset` is strictly ascending with exactly `arity()` elements.
    fn color(&self, subset: &[u32]) -> bool;

    fn try_color(&self, subset: &[u32]) -> Result<bool> {
        if subset.len() != self.arity() {
            return Err(Error::SubsetSize {
                expected: self.arity(),
                got: subset.len(),
            });
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(Error::SubsetSize {
                expected: self.arity(),
                got: sorted.len(),
            });
        }
        Ok(self.color(&sorted))
    }
}

/// A coloring given by a closure; handy for synthetic instances.
pub struct FnColoring<F> {
    arity: usize,
    f: F,
}

impl<F: Fn(&[u32]) -> bool + Sync> FnColoring<F> {
    pub fn new(arity: usize, f: F) -> Self {
        FnColoring { arity, f }
    }
}

impl<F: Fn(&[u32]) -> bool + Sync> SubsetColoring for FnColoring<F> {
    fn arity(&self) -> usize {
        self.arity
    }

    fn color(&self, subset: &[u32]) -> bool {
        (self.f)(subset)
    }
}

/// Memoizing wrapper keyed by the sorted subset. Counts fresh evaluations,
/// which is what search budgets are measured in.
pub struct Memo<C> {
    inner: C,
    cache: Mutex<HashMap<Box<[u32]>, bool>>,
    fresh: AtomicU64,
}

impl<C: SubsetColoring> Memo<C> {
    pub fn new(inner: C) -> Self {
        Memo {
            inner,
            cache: Mutex::new(HashMap::new()),
            fresh: AtomicU64::new(0),
        }
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }

    /// Number of evaluations that missed the cache so far.
    pub fn evaluations(&self) -> u64 {
        self.fresh.load(Ordering::Relaxed)
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

impl<C: SubsetColoring> SubsetColoring for Memo<C> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn color(&self, subset: &[u32]) -> bool {
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        if let Some(&c) = self.cache.lock().unwrap().get(subset) {
            return c;
        }
        // evaluated outside the lock; a concurrent duplicate computes the same bit
        let c = self.inner.color(subset);
        let mut cache = self.cache.lock().unwrap();
        if cache.insert(subset.into(), c).is_none() {
            self.fresh.fetch_add(1, Ordering::Relaxed);
        }
        c
    }
}

/// How identifiers outside `X` are spread over the rest of the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fill {
    /// `V \ X` ascending over the remaining nodes in global node order.
    Canonical,
    /// `V \ X` shuffled by a seeded RNG, then laid out in global node order.
    Shuffled(u64),
}

/// The coloring induced by a local algorithm: `X` is placed row-major
/// ascending into the region around an internal node, the rest of the
/// identifiers are filled in, and the color is the algorithm's bit there.
pub struct GraphColoring<'a, A: ?Sized> {
    grid: &'a Grid,
    alg: &'a A,
    center: Coord,
}

impl<'a, A: LocalAlgorithm + ?Sized> GraphColoring<'a, A> {
    pub fn new(grid: &'a Grid, alg: &'a A) -> Result<Self> {
        let t = grid.params().t();
        if alg.radius() > t {
            return Err(Error::RadiusMismatch {
                algorithm: alg.name().to_string(),
                radius: alg.radius(),
                t,
            });
        }
        Ok(GraphColoring {
            grid,
            alg,
            center: grid.canonical_center(0),
        })
    }

    pub fn center(&self) -> Coord {
        self.center
    }

    /// The full assignment used to evaluate `X` at `center` under `fill`.
    pub fn placement(&self, x: &[u32], center: Coord, fill: &Fill) -> Result<IdAssignment> {
        let k = self.grid.params().region_size();
        if x.len() != k {
            return Err(Error::SubsetSize {
                expected: k,
                got: x.len(),
            });
        }
        let n = self.grid.len();
        let region = self.grid.region_of(center)?;
        let mut sorted = x.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k || sorted.iter().any(|&id| id == 0 || id as usize > n) {
            return Err(Error::NotBijection {
                n,
                reason: "subset must hold distinct identifiers in 1..=n".into(),
            });
        }

        let mut ids = vec![0u32; n];
        for (cell, &id) in region.cells.iter().zip(&sorted) {
            ids[self.grid.index_of(*cell).expect("region lies in the grid")] = id;
        }
        let mut rest = complement(&sorted, n);
        if let Fill::Shuffled(seed) = fill {
            rest.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
        }
        let mut rest = rest.into_iter();
        for slot in ids.iter_mut().filter(|s| **s == 0) {
            *slot = rest.next().expect("n - K identifiers for n - K nodes");
        }
        IdAssignment::from_ids(ids)
    }

    /// Evaluate with an explicit center and fill; the plain coloring uses the
    /// canonical ones.
    pub fn evaluate(&self, x: &[u32], center: Coord, fill: &Fill) -> Result<bool> {
        let ids = self.placement(x, center, fill)?;
        let v = self.grid.index_of(center).expect("center lies in the grid");
        Ok(self.alg.decide_at(Network::new(self.grid, &ids), v))
    }
}

impl<A: LocalAlgorithm + ?Sized> SubsetColoring for GraphColoring<'_, A> {
    fn arity(&self) -> usize {
        self.grid.params().region_size()
    }

    fn color(&self, subset: &[u32]) -> bool {
        self.evaluate(subset, self.center, &Fill::Canonical)
            .expect("subset of the right size over 1..=n")
    }
}

/// Ascending identifiers of `1..=n` not in the sorted slice `x`.
fn complement(x: &[u32], n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n - x.len());
    let mut it = x.iter().peekable();
    for id in 1..=n as u32 {
        if it.peek() == Some(&&id) {
            it.next();
        } else {
            out.push(id);
        }
    }
    out
}

/// The memoized coloring `c` of `alg` on `grid`.
pub fn graph_coloring<'a, A: LocalAlgorithm + ?Sized>(
    grid: &'a Grid,
    alg: &'a A,
) -> Result<Memo<GraphColoring<'a, A>>> {
    Ok(Memo::new(GraphColoring::new(grid, alg)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringConfig {
    pub center: Coord,
    pub fill: Fill,
    pub bit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WellDefinedness {
    Pass {
        evaluations: usize,
    },
    Fail {
        first: ColoringConfig,
        second: ColoringConfig,
    },
}

impl WellDefinedness {
    pub fn passed(&self) -> bool {
        matches!(self, WellDefinedness::Pass { .. })
    }
}

/// Up to `count` internal nodes, one per block first, then further internal
/// nodes of block 0.
fn spread_centers(grid: &Grid, count: usize) -> Vec<Coord> {
    let mut out: Vec<Coord> = (0..grid.params().r())
        .map(|b| grid.canonical_center(b))
        .take(count)
        .collect();
    for v in grid.internal_nodes(0) {
        if out.len() >= count {
            break;
        }
        let c = grid.coord(v);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Recompute `c(X)` under `fills` fills (the canonical one plus seeded
/// shuffles) at `centers` different internal nodes; all bits must agree.
pub fn well_definedness_check<A: LocalAlgorithm + ?Sized>(
    grid: &Grid,
    alg: &A,
    x: &[u32],
    fills: usize,
    centers: usize,
    seed: u64,
) -> Result<WellDefinedness> {
    let coloring = GraphColoring::new(grid, alg)?;
    let fills: Vec<Fill> = std::iter::once(Fill::Canonical)
        .chain(
            (1..fills.max(1) as u64).map(|i| Fill::Shuffled(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i))),
        )
        .collect();
    let mut first: Option<ColoringConfig> = None;
    let mut evaluations = 0;
    for center in spread_centers(grid, centers.max(1)) {
        for fill in &fills {
            let bit = coloring.evaluate(x, center, fill)?;
            evaluations += 1;
            let cfg = ColoringConfig {
                center,
                fill: fill.clone(),
                bit,
            };
            match &first {
                None => first = Some(cfg),
                Some(f) if f.bit != bit => {
                    return Ok(WellDefinedness::Fail {
                        first: f.clone(),
                        second: cfg,
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok(WellDefinedness::Pass { evaluations })
}
