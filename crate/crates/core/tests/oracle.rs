//! The deciders against the brute-force oracles on seeded random systems.
//! The acceptance test covers seeds 0..1000; this one continues from there.

mod common;

use common::{run, Tally};

const SEEDS: std::ops::Range<u64> = 1000..1300;

fn assert_clean(t: &Tally) {
    assert_eq!(t.systems, (SEEDS.end - SEEDS.start) as usize);
    assert!(t.failures.is_empty(), "{} failures:\n{}", t.failures.len(), t.failures.join("\n"));
}

#[test]
fn implication_chain() {
    assert_clean(&run(SEEDS, common::implication_chain));
}

#[test]
fn congruence_matches_naive() {
    assert_clean(&run(SEEDS, common::congruence_matches_naive));
}

#[test]
fn forward_matches_search() {
    let t = run(SEEDS, common::forward_matches_search);
    eprintln!("{} small systems, {} pairs", t.reach_checked, t.reach_pairs);
    assert_clean(&t);
    assert!(t.reach_checked >= 50);
}

#[test]
fn witnesses_verify_and_yes_survives_refutation() {
    let t = run(SEEDS, common::verdicts_checked);
    eprintln!("{} witnesses verified, {} YES verdicts searched", t.witnesses, t.refutations);
    assert_clean(&t);
}
