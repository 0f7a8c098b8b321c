//! Deterministic local algorithms on a grid with unique identifiers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::view::{extract_view, View};

/// Bijection between identifiers `1..=n` and node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdAssignment {
    id_of: Vec<u32>,
    node_of: Vec<usize>,
}

impl IdAssignment {
    /// `ids[node]` is the identifier of `node`.
    pub fn from_ids(ids: Vec<u32>) -> Result<Self> {
        let n = ids.len();
        let mut node_of = vec![usize::MAX; n];
        for (node, &id) in ids.iter().enumerate() {
            if id == 0 || id as usize > n {
                return Err(Error::NotBijection {
                    n,
                    reason: format!("identifier {id} at node {node} is out of range"),
                });
            }
            let slot = &mut node_of[id as usize - 1];
            if *slot != usize::MAX {
                return Err(Error::NotBijection {
                    n,
                    reason: format!("identifier {id} used by nodes {} and {node}", *slot),
                });
            }
            *slot = node;
        }
        Ok(IdAssignment { id_of: ids, node_of })
    }

    /// Node `i` gets identifier `i + 1`.
    pub fn row_major(n: usize) -> Self {
        IdAssignment {
            id_of: (1..=n as u32).collect(),
            node_of: (0..n).collect(),
        }
    }

    pub fn shuffled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut ids: Vec<u32> = (1..=n as u32).collect();
        ids.shuffle(rng);
        Self::from_ids(ids).expect("a permutation of 1..=n")
    }

    pub fn len(&self) -> usize {
        self.id_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.id_of.is_empty()
    }

    pub fn id_of(&self, node: usize) -> u32 {
        self.id_of[node]
    }

    pub fn node_of(&self, id: u32) -> usize {
        self.node_of[id as usize - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.id_of
    }

    pub fn into_ids(self) -> Vec<u32> {
        self.id_of
    }
}

/// Everything a node could in principle observe: the graph and its labels.
#[derive(Clone, Copy)]
pub struct Network<'a> {
    pub grid: &'a Grid,
    pub ids: &'a IdAssignment,
}

impl<'a> Network<'a> {
    pub fn new(grid: &'a Grid, ids: &'a IdAssignment) -> Self {
        Network { grid, ids }
    }

    pub fn view(&self, v: usize, radius: usize) -> View {
        extract_view(self.grid, self.ids, v, radius)
    }
}

/// A deterministic constant-radius algorithm deciding membership in a
/// dominating set.
///
/// Implementors normally provide only [`decide`](Self::decide). The runner
/// always goes through [`decide_at`](Self::decide_at), whose default feeds the
/// radius-limited view; an implementation that overrides it can read the whole
/// network, which is exactly what [`verify_locality`] is meant to catch.
pub trait LocalAlgorithm: Sync {
    fn name(&self) -> &str;

    fn radius(&self) -> usize;

    fn decide(&self, view: &View) -> bool;

    fn decide_at(&self, net: Network<'_>, v: usize) -> bool {
        self.decide(&net.view(v, self.radius()))
    }
}

/// Membership bit per node, in global node order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomSet {
    bits: Vec<bool>,
}

impl DomSet {
    pub fn empty(n: usize) -> Self {
        DomSet { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        DomSet { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        DomSet { bits }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut d = Self::empty(n);
        for v in members {
            d.insert(v);
        }
        d
    }

    /// Number of nodes the set is defined over.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Number of members.
    pub fn size(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn insert(&mut self, v: usize) {
        self.bits[v] = true;
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

#[derive(Serialize, Deserialize)]
struct DomSetRepr {
    n: usize,
    size: usize,
    bits: Vec<u8>,
}

impl Serialize for DomSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DomSetRepr {
            n: self.universe(),
            size: self.size(),
            bits: self.bits.iter().map(|&b| b as u8).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DomSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DomSetRepr::deserialize(d)?;
        if repr.bits.len() != repr.n || repr.bits.iter().any(|&b| b > 1) {
            return Err(serde::de::Error::custom("bits must be n values in {0, 1}"));
        }
        Ok(DomSet {
            bits: repr.bits.into_iter().map(|b| b == 1).collect(),
        })
    }
}

/// Evaluate `alg` at every node. Nodes are evaluated in parallel; the result
/// does not depend on scheduling.
pub fn run_algorithm<A: LocalAlgorithm + ?Sized>(grid: &Grid, ids: &IdAssignment, alg: &A) -> DomSet {
    let net = Network::new(grid, ids);
    let bits = (0..grid.len()).into_par_iter().map(|v| alg.decide_at(net, v)).collect();
    DomSet { bits }
}

/// Nodes with no member in their closed neighbourhood, ascending.
pub fn check_dominating(grid: &Grid, d: &DomSet) -> Vec<usize> {
    (0..grid.len())
        .filter(|&v| !d.contains(v) && !grid.neighbors(v).iter().any(|&w| d.contains(w)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct LocalityCounterexample {
    pub node: usize,
    pub first: IdAssignment,
    pub second: IdAssignment,
    pub first_bit: bool,
    pub second_bit: bool,
}

#[derive(Debug, Clone)]
pub enum LocalityReport {
    Pass { trials: usize },
    Fail(Box<LocalityCounterexample>),
}

impl LocalityReport {
    pub fn passed(&self) -> bool {
        matches!(self, LocalityReport::Pass { .. })
    }
}

/// Randomized check that `alg`'s bit at a node is unaffected by the
/// identifiers outside its declared radius.
///
/// Each trial draws a random assignment and node `v`, then permutes the
/// identifiers held outside `ball(v, radius)` among themselves.
pub fn verify_locality<A: LocalAlgorithm + ?Sized>(alg: &A, grid: &Grid, trials: usize, seed: u64) -> LocalityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.len();
    for _ in 0..trials {
        let first = IdAssignment::shuffled(n, &mut rng);
        let v = rng.gen_range(0..n);
        let mut inside = vec![false; n];
        for (w, _) in grid.ball(v, alg.radius()) {
            inside[w] = true;
        }
        let outside: Vec<usize> = (0..n).filter(|&w| !inside[w]).collect();
        let mut moved: Vec<u32> = outside.iter().map(|&w| first.id_of(w)).collect();
        moved.shuffle(&mut rng);
        let mut ids = first.as_slice().to_vec();
        for (&w, &id) in outside.iter().zip(&moved) {
            ids[w] = id;
        }
        let second = IdAssignment::from_ids(ids).expect("permutation preserves bijectivity");

        let a = alg.decide_at(Network::new(grid, &first), v);
        let b = alg.decide_at(Network::new(grid, &second), v);
        if a != b {
            return LocalityReport::Fail(Box::new(LocalityCounterexample {
                node: v,
                first,
                second,
                first_bit: a,
                second_bit: b,
            }));
        }
    }
    LocalityReport::Pass { trials }
}
