//! Bounded search for monochromatic sets.
//!
//! A set `Y` is monochromatic when all its `K`-subsets get the same color.
//! Existence for large pools is guaranteed by Ramsey's theorem, but the pool
//! sizes that guarantees are far out of reach, so this module searches within
//! an explicit evaluation budget and attaches a certificate saying how much of
//! `Y` was checked.

use std::fmt;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::coloring::{Memo, SubsetColoring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Take the `M` smallest pool identifiers and probe them.
    ConstantProbe,
    /// Grow `Y` one identifier at a time, probing subsets through each
    /// candidate. Restarts from arithmetic-progression cores.
    GreedyExtension,
    /// Lexicographic backtracking over `M`-subsets with every `K`-subset
    /// checked.
    Exact,
    /// Constant probe, then greedy extension, then exact search.
    Tiered,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::ConstantProbe,
        Strategy::GreedyExtension,
        Strategy::Exact,
        Strategy::Tiered,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Strategy::ConstantProbe => "constant-probe",
            Strategy::GreedyExtension => "greedy-extension",
            Strategy::Exact => "exact",
            Strategy::Tiered => "tiered",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.label() == s)
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Probes per candidate set for sampled certificates.
    pub samples: usize,
    /// Maximum fresh coloring evaluations per search.
    pub budget: u64,
    /// Enumerate all `K`-subsets of `Y` when there are at most this many.
    pub exact_limit: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            samples: 200,
            budget: 1_000_000,
            exact_limit: 20_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "kebab-case")]
pub enum CertificateLevel {
    /// Every `K`-subset of `Y` was checked.
    Exact,
    /// This many uniformly sampled `K`-subsets were checked.
    Sampled { samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoCertificate {
    #[serde(flatten)]
    pub level: CertificateLevel,
    pub strategy: Strategy,
    pub color: u8,
    /// Fresh coloring evaluations spent by the search that produced this.
    pub probes: u64,
    /// `Y`, ascending.
    pub subset: Vec<u32>,
}

impl MonoCertificate {
    pub fn is_exact(&self) -> bool {
        self.level == CertificateLevel::Exact
    }

    pub fn color_bit(&self) -> bool {
        self.color == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExhaustionReason {
    /// The evaluation budget ran out.
    Budget,
    /// The strategy finished without a certified set.
    Failed,
    /// Exact search proved no monochromatic set of the target size exists.
    NoneExists,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(MonoCertificate),
    Exhausted {
        spent: u64,
        budget: u64,
        reason: ExhaustionReason,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&MonoCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

struct OutOfBudget;

/// Budgeted access to a memoized coloring.
struct Prober<'a, C> {
    coloring: &'a Memo<C>,
    start: u64,
    budget: u64,
    scratch: Vec<u32>,
}

impl<'a, C: SubsetColoring> Prober<'a, C> {
    fn new(coloring: &'a Memo<C>, budget: u64) -> Self {
        Prober {
            coloring,
            start: coloring.evaluations(),
            budget,
            scratch: Vec::new(),
        }
    }

    fn spent(&self) -> u64 {
        self.coloring.evaluations() - self.start
    }

    /// Color of the set `items`, which need not be sorted.
    fn color(&mut self, items: impl IntoIterator<Item = u32>) -> Result<bool, OutOfBudget> {
        if self.spent() >= self.budget {
            return Err(OutOfBudget);
        }
        self.scratch.clear();
        self.scratch.extend(items);
        self.scratch.sort_unstable();
        Ok(self.coloring.color(&self.scratch))
    }
}

fn binomial_at_most(n: usize, k: usize, limit: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > limit as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Check `y` and return its certificate level and color, `None` if two probed
/// subsets disagree.
fn certify<C: SubsetColoring>(
    prober: &mut Prober<'_, C>,
    y: &[u32],
    k: usize,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(CertificateLevel, bool)>, OutOfBudget> {
    let reference = prober.color(y[..k].iter().copied())?;
    if binomial_at_most(y.len(), k, cfg.exact_limit).is_some() {
        for combo in y.iter().copied().combinations(k) {
            if prober.color(combo)? != reference {
                return Ok(None);
            }
        }
        return Ok(Some((CertificateLevel::Exact, reference)));
    }
    for _ in 0..cfg.samples {
        let idx = sample(rng, y.len(), k);
        if prober.color(idx.into_iter().map(|i| y[i]))? != reference {
            return Ok(None);
        }
    }
    Ok(Some((CertificateLevel::Sampled { samples: cfg.samples }, reference)))
}

fn constant_probe<C: SubsetColoring>(
    prober: &mut Prober<'_, C>,
    pool: &[u32],
    target: usize,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Vec<u32>, CertificateLevel, bool)>, OutOfBudget> {
    let k = prober.coloring.arity();
    let y = pool[..target].to_vec();
    Ok(certify(prober, &y, k, cfg, rng)?.map(|(level, color)| (y, level, color)))
}

const MAX_CORE_STRIDE: usize = 4;

/// Greedy extension from a sequence of cores: stride 1 (the `K` smallest),
/// then every residue class of stride 2, 3, ... up to `MAX_CORE_STRIDE`. The
/// core's color is the target; each remaining pool identifier, ascending, is
/// accepted if sampled `K`-subsets made of it and `K - 1` members of `Y` all
/// have the target color. A completed `Y` is then certified from scratch.
fn greedy_extension<C: SubsetColoring>(
    prober: &mut Prober<'_, C>,
    pool: &[u32],
    target: usize,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Vec<u32>, CertificateLevel, bool)>, OutOfBudget> {
    let k = prober.coloring.arity();
    for stride in 1..=MAX_CORE_STRIDE {
        for offset in 0..stride {
            let core: Vec<u32> = pool.iter().copied().skip(offset).step_by(stride).take(k).collect();
            if core.len() < k {
                continue;
            }
            let want = prober.color(core.iter().copied())?;
            let mut y = core.clone();
            for &x in pool {
                if y.len() == target {
                    break;
                }
                if core.binary_search(&x).is_ok() {
                    continue;
                }
                if accepts(prober, &y, x, k, want, cfg, rng)? {
                    y.push(x);
                }
            }
            if y.len() < target {
                continue;
            }
            y.sort_unstable();
            if let Some((level, color)) = certify(prober, &y, k, cfg, rng)? {
                return Ok(Some((y, level, color)));
            }
        }
    }
    Ok(None)
}

fn accepts<C: SubsetColoring>(
    prober: &mut Prober<'_, C>,
    y: &[u32],
    x: u32,
    k: usize,
    want: bool,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
) -> Result<bool, OutOfBudget> {
    if k == 0 {
        return Ok(true);
    }
    if binomial_at_most(y.len(), k - 1, cfg.samples as u64).is_some() {
        for combo in y.iter().copied().combinations(k - 1) {
            if prober.color(combo.into_iter().chain([x]))? != want {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for _ in 0..cfg.samples {
        let idx = sample(rng, y.len(), k - 1);
        if prober.color(idx.into_iter().map(|i| y[i]).chain([x]))? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographically first monochromatic `target`-subset of `pool`, trying
/// color 0 before color 1. Returns `Ok(None)` when none exists.
fn exact_search<C: SubsetColoring>(
    prober: &mut Prober<'_, C>,
    pool: &[u32],
    target: usize,
) -> Result<Option<(Vec<u32>, bool)>, OutOfBudget> {
    let k = prober.coloring.arity();
    for want in [false, true] {
        let mut chosen = Vec::with_capacity(target);
        if extend_exact(prober, pool, 0, target, k, want, &mut chosen)? {
            return Ok(Some((chosen, want)));
        }
    }
    Ok(None)
}

fn extend_exact<C: SubsetColoring>(
    prober: &mut Prober<'_, C>,
    pool: &[u32],
    from: usize,
    target: usize,
    k: usize,
    want: bool,
    chosen: &mut Vec<u32>,
) -> Result<bool, OutOfBudget> {
    if chosen.len() == target {
        return Ok(true);
    }
    let needed = target - chosen.len();
    if pool.len() < from + needed {
        return Ok(false);
    }
    for i in from..=pool.len() - needed {
        let e = pool[i];
        let mut ok = true;
        if k > 0 && chosen.len() + 1 >= k {
            for combo in chosen.iter().copied().combinations(k - 1) {
                if prober.color(combo.into_iter().chain([e]))? != want {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            chosen.push(e);
            if extend_exact(prober, pool, i + 1, target, k, want, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// Search `pool` (ascending) for a monochromatic set of size `target`.
///
/// Exhaustion is a normal outcome, not an error.
///
/// # Panics
///
/// If `pool.len() < target` or `target < coloring.arity()`.
pub fn find_monochromatic<C: SubsetColoring>(
    coloring: &Memo<C>,
    pool: &[u32],
    target: usize,
    strategy: Strategy,
    cfg: &SearchConfig,
) -> SearchOutcome {
    let k = coloring.arity();
    assert!(target >= k && pool.len() >= target, "need |pool| >= M >= K");
    debug_assert!(pool.windows(2).all(|w| w[0] < w[1]));

    let mut prober = Prober::new(coloring, cfg.budget);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let tiers: &[Strategy] = match strategy {
        Strategy::Tiered => &[Strategy::ConstantProbe, Strategy::GreedyExtension, Strategy::Exact],
        ref s => std::slice::from_ref(s),
    };

    let mut proven_empty = false;
    for &tier in tiers {
        let found = match tier {
            Strategy::ConstantProbe => constant_probe(&mut prober, pool, target, cfg, &mut rng),
            Strategy::GreedyExtension => greedy_extension(&mut prober, pool, target, cfg, &mut rng),
            Strategy::Exact => exact_search(&mut prober, pool, target).map(|r| match r {
                Some((y, color)) => Some((y, CertificateLevel::Exact, color)),
                None => {
                    proven_empty = true;
                    None
                }
            }),
            Strategy::Tiered => unreachable!(),
        };
        match found {
            Ok(Some((subset, level, color))) => {
                return SearchOutcome::Found(MonoCertificate {
                    level,
                    strategy: tier,
                    color: color as u8,
                    probes: prober.spent(),
                    subset,
                })
            }
            Ok(None) => {}
            Err(OutOfBudget) => {
                return SearchOutcome::Exhausted {
                    spent: prober.spent(),
                    budget: cfg.budget,
                    reason: ExhaustionReason::Budget,
                }
            }
        }
    }
    SearchOutcome::Exhausted {
        spent: prober.spent(),
        budget: cfg.budget,
        reason: if proven_empty {
            ExhaustionReason::NoneExists
        } else {
            ExhaustionReason::Failed
        },
    }
}
