mod common;

use planar_lb::adversary::{
    find_monochromatic, ExhaustionReason, FnColoring, Memo, SearchConfig, SearchOutcome, Strategy,
};
use planar_lb::algorithms::MinGreedy;
use planar_lb::grid::{build_grid, Params};
use planar_lb::local::{run_algorithm, IdAssignment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn residue_pattern_is_perfect_code_on_tori() {
    for side in [7, 14, 21, 28] {
        assert!(common::torus_perfect_code(side), "side {side}");
    }
    // wrap-around breaks the residues off multiples of seven
    for side in [8, 10, 20] {
        assert!(!common::torus_perfect_code(side), "side {side}");
    }
}

#[test]
fn exact_search_examples() {
    let pool: Vec<u32> = (1..=10).collect();
    let even = Memo::new(FnColoring::new(1, |x: &[u32]| x[0] % 2 == 1));
    let c = find_monochromatic(&even, &pool, 5, Strategy::Exact, &SearchConfig::default());
    let c = c.certificate().unwrap();
    assert_eq!(c.subset, vec![2, 4, 6, 8, 10]);
    assert_eq!(c.color, 0);

    let pool: Vec<u32> = (1..=18).collect();
    let gap = Memo::new(FnColoring::new(2, |x: &[u32]| x[1] - x[0] > 9));
    let c = find_monochromatic(&gap, &pool, 4, Strategy::Exact, &SearchConfig::default());
    assert_eq!(c.certificate().unwrap().subset, vec![1, 2, 3, 4]);
}

#[test]
fn exact_search_proves_absence() {
    // an odd pair sum needs one even and one odd, so any three ids mix colors
    let pool: Vec<u32> = (1..=4).collect();
    let f = Memo::new(FnColoring::new(2, |x: &[u32]| (x[0] + x[1]) % 2 == 1));
    match find_monochromatic(&f, &pool, 3, Strategy::Exact, &SearchConfig::default()) {
        SearchOutcome::Exhausted { reason, .. } => assert_eq!(reason, ExhaustionReason::NoneExists),
        other => panic!("{other:?}"),
    }
}

#[test]
fn budget_is_respected() {
    let pool: Vec<u32> = (1..=40).collect();
    let f = Memo::new(FnColoring::new(2, |x: &[u32]| (x[0] * x[1]) % 5 == 2));
    let cfg = SearchConfig {
        budget: 50,
        ..SearchConfig::default()
    };
    let out = find_monochromatic(&f, &pool, 12, Strategy::Exact, &cfg);
    assert!(f.evaluations() <= 50, "{}", f.evaluations());
    if let SearchOutcome::Exhausted { spent, budget, .. } = out {
        assert!(spent <= budget);
    }
}

#[test]
fn greedy_output_matches_direct_rule() {
    let g = build_grid(Params::new(7, 2, 2).unwrap());
    let ids = IdAssignment::shuffled(g.len(), &mut ChaCha8Rng::seed_from_u64(9));
    let d = run_algorithm(&g, &ids, &MinGreedy);
    let closed = |v: usize| g.neighbors(v).iter().copied().chain([v]).collect::<Vec<_>>();
    let argmin = |v: usize| closed(v).into_iter().min_by_key(|&w| ids.id_of(w)).unwrap();
    for v in 0..g.len() {
        let want = closed(v).into_iter().any(|w| argmin(w) == v);
        assert_eq!(d.contains(v), want, "node {v}");
    }
}
