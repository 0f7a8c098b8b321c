//! Reference local algorithms.

use crate::error::{Error, Result};
use crate::local::{LocalAlgorithm, Network};
use crate::view::View;

/// Every node joins. Radius 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct AllIn;

impl LocalAlgorithm for AllIn {
    fn name(&self) -> &str {
        "all"
    }

    fn radius(&self) -> usize {
        0
    }

    fn decide(&self, _view: &View) -> bool {
        true
    }
}

/// A node joins iff it holds the smallest identifier in the closed
/// neighbourhood of itself or of one of its neighbours. Depends only on the
/// relative order of identifiers. Radius 2.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinGreedy;

impl LocalAlgorithm for MinGreedy {
    fn name(&self) -> &str {
        "greedy"
    }

    fn radius(&self) -> usize {
        2
    }

    fn decide(&self, view: &View) -> bool {
        view.closed_neighborhood(View::CENTER).any(|w| {
            view.closed_neighborhood(w)
                .min_by_key(|&u| view.id(u))
                .is_some_and(|u| u == View::CENTER)
        })
    }
}

/// Every node `w` designates a dominator in `N[w]`: the smallest identifier
/// when the identifier sum over `N[w]` is even, the largest otherwise. A node
/// joins iff some neighbour (or itself) designates it. Radius 2.
#[derive(Debug, Clone, Copy, Default)]
pub struct ValueParity;

impl ValueParity {
    fn designated(view: &View, w: usize) -> usize {
        let sum: u64 = view.closed_neighborhood(w).map(|u| view.id(u) as u64).sum();
        let members = view.closed_neighborhood(w);
        if sum.is_multiple_of(2) {
            members.min_by_key(|&u| view.id(u))
        } else {
            members.max_by_key(|&u| view.id(u))
        }
        .expect("closed neighbourhood is non-empty")
    }
}

impl LocalAlgorithm for ValueParity {
    fn name(&self) -> &str {
        "value"
    }

    fn radius(&self) -> usize {
        2
    }

    fn decide(&self, view: &View) -> bool {
        view.closed_neighborhood(View::CENTER)
            .any(|w| Self::designated(view, w) == View::CENTER)
    }
}

/// Deliberately non-local: declares radius 2 but answers by looking up where
/// identifier 1 sits anywhere in the network. Used to exercise the locality
/// and well-definedness checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct GlobalMinLeak;

impl LocalAlgorithm for GlobalMinLeak {
    fn name(&self) -> &str {
        "global-min-leak"
    }

    fn radius(&self) -> usize {
        2
    }

    fn decide(&self, _view: &View) -> bool {
        true
    }

    fn decide_at(&self, net: Network<'_>, _v: usize) -> bool {
        net.ids.node_of(1).is_multiple_of(2)
    }
}

pub const ALGORITHM_NAMES: [&str; 3] = ["all", "greedy", "value"];

pub fn by_name(name: &str) -> Result<Box<dyn LocalAlgorithm>> {
    match name {
        "all" => Ok(Box::new(AllIn)),
        "greedy" => Ok(Box::new(MinGreedy)),
        "value" => Ok(Box::new(ValueParity)),
        other => Err(Error::UnknownAlgorithm(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_grid, Params};
    use crate::local::{check_dominating, run_algorithm, IdAssignment};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Direct evaluation of the value rule on the graph, without views.
    fn value_rule_oracle(g: &crate::grid::Grid, ids: &IdAssignment) -> Vec<bool> {
        let n = g.len();
        let closed = |w: usize| {
            let mut c = vec![w];
            c.extend_from_slice(g.neighbors(w));
            c
        };
        let mut designated_by = vec![false; n];
        for w in 0..n {
            let nb = closed(w);
            let sum: u64 = nb.iter().map(|&u| ids.id_of(u) as u64).sum();
            let pick = if sum.is_multiple_of(2) {
                *nb.iter().min_by_key(|&&u| ids.id_of(u)).unwrap()
            } else {
                *nb.iter().max_by_key(|&&u| ids.id_of(u)).unwrap()
            };
            designated_by[pick] = true;
        }
        designated_by
    }

    #[test]
    fn value_matches_direct_evaluation() {
        let g = build_grid(Params::new(7, 1, 0).unwrap());
        let ids = IdAssignment::row_major(g.len());
        let d = run_algorithm(&g, &ids, &ValueParity);
        assert_eq!(d.bits(), value_rule_oracle(&g, &ids).as_slice());

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = build_grid(Params::new(9, 2, 2).unwrap());
        for _ in 0..5 {
            let ids = IdAssignment::shuffled(g.len(), &mut rng);
            let d = run_algorithm(&g, &ids, &ValueParity);
            assert_eq!(d.bits(), value_rule_oracle(&g, &ids).as_slice());
        }
    }

    #[test]
    fn reference_algorithms_dominate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (m, r) in [(5, 1), (7, 3), (9, 2), (1, 4)] {
            let g = build_grid(Params::new(m, r, 0).unwrap());
            for _ in 0..10 {
                let ids = IdAssignment::shuffled(g.len(), &mut rng);
                for alg in ALGORITHM_NAMES {
                    let alg = by_name(alg).unwrap();
                    let d = run_algorithm(&g, &ids, alg.as_ref());
                    assert!(check_dominating(&g, &d).is_empty(), "{} on m={m} r={r}", alg.name());
                }
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(by_name("nope"), Err(Error::UnknownAlgorithm(_))));
    }
}
