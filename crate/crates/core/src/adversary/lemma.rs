//! Block-by-block assignment and the fooling evaluation.

use serde::{Deserialize, Serialize};

use super::coloring::graph_coloring;
use super::search::{find_monochromatic, ExhaustionReason, MonoCertificate, SearchConfig, SearchOutcome, Strategy};
use crate::error::{Error, Result};
use crate::grid::{Grid, Params};
use crate::local::{check_dominating, run_algorithm, DomSet, IdAssignment, LocalAlgorithm};
use crate::optimum::{pattern_witness, ratio_bound};
use crate::ratio::ExactRatio;

#[derive(Debug, Clone)]
pub struct BlockAssignment {
    pub ids: IdAssignment,
    /// Certificates for blocks `0..r - leftover`, in block order.
    pub certificates: Vec<MonoCertificate>,
    pub leftover: usize,
    /// Why the search stopped, when it stopped before the last block.
    pub stopped: Option<(u64, ExhaustionReason)>,
    /// Fresh coloring evaluations over the whole run.
    pub probes: u64,
}

fn block_seed(seed: u64, block: usize) -> u64 {
    seed ^ (block as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Fill blocks in order with monochromatic sets drawn from the shrinking pool
/// of unused identifiers, each placed row-major ascending. At the first block
/// the search cannot certify, the remaining identifiers go ascending over the
/// remaining nodes in global node order.
pub fn lemma1_assign<A: LocalAlgorithm + ?Sized>(
    grid: &Grid,
    alg: &A,
    strategy: Strategy,
    cfg: &SearchConfig,
) -> Result<BlockAssignment> {
    let coloring = graph_coloring(grid, alg)?;
    let params = grid.params();
    let n = grid.len();
    let block_size = params.block_size();

    let mut ids = vec![0u32; n];
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    let mut certificates = Vec::new();
    let mut stopped = None;

    for b in 0..params.r() {
        let block_cfg = SearchConfig {
            seed: block_seed(cfg.seed, b),
            ..cfg.clone()
        };
        match find_monochromatic(&coloring, &pool, block_size, strategy, &block_cfg) {
            SearchOutcome::Found(cert) => {
                for (node, &id) in grid.block_nodes(b).into_iter().zip(&cert.subset) {
                    ids[node] = id;
                }
                pool.retain(|id| cert.subset.binary_search(id).is_err());
                certificates.push(cert);
            }
            SearchOutcome::Exhausted { spent, reason, .. } => {
                stopped = Some((spent, reason));
                break;
            }
        }
    }

    let leftover = params.r() - certificates.len();
    let mut rest = pool.into_iter();
    for slot in ids.iter_mut().filter(|s| **s == 0) {
        *slot = rest.next().expect("pool matches unassigned nodes");
    }

    Ok(BlockAssignment {
        ids: IdAssignment::from_ids(ids)?,
        certificates,
        leftover,
        stopped,
        probes: coloring.evaluations(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub block: usize,
    pub certificate: Option<MonoCertificate>,
    /// All internal nodes of the block are in the algorithm's output.
    pub forced: bool,
    /// The sampled certificate was contradicted by the simulation.
    pub downgraded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoolingReport {
    pub params: Params,
    pub algorithm: String,
    pub strategy: Strategy,
    pub seed: u64,
    pub samples: usize,
    pub budget: u64,
    pub per_block: Vec<BlockReport>,
    /// Blocks not forced, `r - forced_blocks`.
    pub l: usize,
    pub forced_blocks: usize,
    #[serde(rename = "D_size")]
    pub d_size: usize,
    #[serde(rename = "Dstar_size")]
    pub dstar_size: usize,
    /// `|D| / |D*|`.
    pub ratio: ExactRatio,
    pub ratio_decimal: String,
    /// Floor on the ratio implied by the forced blocks alone.
    pub ratio_bound: ExactRatio,
    pub probes: u64,
}

/// Run the assignment, simulate the algorithm on it and compare its output
/// against the witness dominating set.
pub fn evaluate_fooling<A: LocalAlgorithm + ?Sized>(
    grid: &Grid,
    alg: &A,
    strategy: Strategy,
    cfg: &SearchConfig,
) -> Result<FoolingReport> {
    let assignment = lemma1_assign(grid, alg, strategy, cfg)?;
    let d = run_algorithm(grid, &assignment.ids, alg);
    let undominated = check_dominating(grid, &d);
    if let Some(&first) = undominated.first() {
        return Err(Error::InvalidAlgorithm {
            algorithm: alg.name().to_string(),
            undominated: undominated.len(),
            first: grid.coord(first),
        });
    }

    let params = *grid.params();
    let per_block = (0..params.r())
        .map(|b| {
            let certificate = assignment.certificates.get(b).cloned();
            let (forced, downgraded) = match &certificate {
                None => (false, false),
                Some(cert) => block_forcing(grid, &d, b, cert)?,
            };
            Ok(BlockReport {
                block: b,
                certificate,
                forced,
                downgraded,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let forced_blocks = per_block.iter().filter(|b| b.forced).count();
    let l = params.r() - forced_blocks;
    let witness = pattern_witness(grid);
    let dstar_size = witness.size();
    let ratio = ExactRatio::new(d.size() as u64, dstar_size as u64);

    Ok(FoolingReport {
        params,
        algorithm: alg.name().to_string(),
        strategy,
        seed: cfg.seed,
        samples: cfg.samples,
        budget: cfg.budget,
        per_block,
        l,
        forced_blocks,
        d_size: d.size(),
        dstar_size,
        ratio,
        ratio_decimal: ratio.decimal6(),
        ratio_bound: ratio_bound(&params, l, dstar_size)?,
        probes: assignment.probes,
    })
}

/// `(forced, downgraded)` for a certified block.
fn block_forcing(grid: &Grid, d: &DomSet, block: usize, cert: &MonoCertificate) -> Result<(bool, bool)> {
    let missing: Vec<usize> = grid
        .internal_nodes(block)
        .into_iter()
        .filter(|&v| !d.contains(v))
        .collect();
    let Some(&first) = missing.first() else {
        return Ok((true, false));
    };
    if !cert.is_exact() {
        return Ok((false, true));
    }
    // A color-0 block is legal only when every internal node has a boundary
    // neighbour to be dominated by, i.e. when m' < 3.
    if !cert.color_bit() && grid.params().m_prime() < 3 {
        return Ok((false, false));
    }
    let c = grid.coord(first);
    Err(Error::Soundness {
        block,
        detail: format!(
            "exact certificate of color {} but internal node ({}, {}) is not in D ({} such nodes)",
            cert.color,
            c.col,
            c.row,
            missing.len()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::search::CertificateLevel;
    use crate::algorithms::{AllIn, MinGreedy};
    use crate::grid::build_grid;

    #[test]
    fn all_in_certifies_every_block() {
        let g = build_grid(Params::new(7, 3, 1).unwrap());
        let a = lemma1_assign(&g, &AllIn, Strategy::ConstantProbe, &SearchConfig::default()).unwrap();
        assert_eq!(a.leftover, 0);
        assert_eq!(a.certificates.len(), 3);
        for c in &a.certificates {
            assert_eq!(c.strategy, Strategy::ConstantProbe);
            assert_eq!(c.level, CertificateLevel::Sampled { samples: 200 });
        }
    }

    #[test]
    fn greedy_blocks_are_consecutive_segments() {
        let g = build_grid(Params::new(9, 4, 2).unwrap());
        let a = lemma1_assign(&g, &MinGreedy, Strategy::ConstantProbe, &SearchConfig::default()).unwrap();
        assert_eq!(a.leftover, 0);
        for (i, c) in a.certificates.iter().enumerate() {
            let want: Vec<u32> = (i as u32 * 81 + 1..=(i as u32 + 1) * 81).collect();
            assert_eq!(c.subset, want);
        }
        let d = run_algorithm(&g, &a.ids, &MinGreedy);
        for b in 0..4 {
            assert!(g.internal_nodes(b).into_iter().all(|v| d.contains(v)));
        }
    }

    #[test]
    fn exhaustion_leaves_canonical_fill() {
        let g = build_grid(Params::new(7, 2, 1).unwrap());
        let cfg = SearchConfig {
            budget: 0,
            ..SearchConfig::default()
        };
        let a = lemma1_assign(&g, &AllIn, Strategy::ConstantProbe, &cfg).unwrap();
        assert_eq!(a.leftover, 2);
        assert_eq!(a.ids, IdAssignment::row_major(g.len()));
        assert!(matches!(a.stopped, Some((0, ExhaustionReason::Budget))));
    }

    #[test]
    fn all_in_report() {
        let g = build_grid(Params::new(7, 3, 1).unwrap());
        let rep = evaluate_fooling(&g, &AllIn, Strategy::Tiered, &SearchConfig::default()).unwrap();
        assert_eq!(rep.l, 0);
        assert_eq!(rep.d_size, 147);
        assert_eq!(rep.ratio, ExactRatio::new(147, rep.dstar_size as u64));
        assert_eq!(rep.ratio_bound, ExactRatio::new(75, rep.dstar_size as u64));
    }

    #[test]
    fn exact_certificate_on_tiny_blocks() {
        // m = 5, T = 2: M = K = 25, so every certificate is a single check
        let g = build_grid(Params::new(5, 3, 2).unwrap());
        let rep = evaluate_fooling(&g, &MinGreedy, Strategy::ConstantProbe, &SearchConfig::default()).unwrap();
        assert_eq!(rep.forced_blocks, 3);
        for b in &rep.per_block {
            let c = b.certificate.as_ref().unwrap();
            assert!(c.is_exact());
            assert_eq!(c.probes, 1);
        }
    }
}
