//! The fuzz harness shared by the oracle and acceptance tests.

#![allow(dead_code)]

use std::ops::Range;
use std::sync::Mutex;

use gtrs::oracle::{
    bounded_reach, fuzz_spec, gen_random_trs, naive_congruence, verify_witness, Reach,
    Reachability, Refuter, SearchBudget,
};
use gtrs::preprocess::curry;
use gtrs::{Analysis, Trs};

#[derive(Default, Debug)]
pub struct Tally {
    pub systems: usize,
    pub reach_checked: usize,
    pub reach_pairs: usize,
    pub reach_inconclusive: usize,
    pub witnesses: usize,
    pub refutations: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn absorb(&mut self, o: Tally) {
        self.systems += o.systems;
        self.reach_checked += o.reach_checked;
        self.reach_pairs += o.reach_pairs;
        self.reach_inconclusive += o.reach_inconclusive;
        self.witnesses += o.witnesses;
        self.refutations += o.refutations;
        self.failures.extend(o.failures);
    }

    pub fn clean(&self) -> bool {
        self.failures.is_empty() && self.reach_inconclusive == 0
    }
}

/// Runs `check` on every seed, spread over the available cores.
pub fn run(seeds: Range<u64>, check: impl Fn(u64, &Trs, &mut Tally) + Sync) -> Tally {
    let total = Mutex::new(Tally::default());
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
    std::thread::scope(|s| {
        for w in 0..workers {
            let (total, check, seeds) = (&total, &check, seeds.clone());
            s.spawn(move || {
                let mut local = Tally::default();
                for seed in seeds.skip(w).step_by(workers) {
                    let trs = gen_random_trs(&fuzz_spec(seed));
                    local.systems += 1;
                    check(seed, &trs, &mut local);
                }
                total.lock().unwrap().absorb(local);
            });
        }
    });
    total.into_inner().unwrap()
}

pub fn implication_chain(seed: u64, trs: &Trs, t: &mut Tally) {
    if let Err(e) = Analysis::new(trs).unwrap().decide_all() {
        t.failures.push(format!("seed {seed}: {e}"));
    }
}

pub fn congruence_matches_naive(seed: u64, trs: &Trs, t: &mut Tally) {
    let a = Analysis::new(trs).unwrap();
    let mut naive = naive_congruence(a.flat());
    naive.sort();
    if naive != a.congruence().partition() {
        t.failures.push(format!("seed {seed}: partitions differ"));
    }
}

/// F against bounded search on all flat pairs, for systems with at most 12
/// flat constants. The size bound is 3× the total size of those constants'
/// terms.
pub fn forward_matches_search(seed: u64, trs: &Trs, t: &mut Tally) {
    let ctrs = curry(trs).unwrap();
    let a = Analysis::from_curried(&ctrs);
    let fs = a.flat();
    if fs.len() > 12 {
        return;
    }
    t.reach_checked += 1;
    let subterm_size: u64 = (0..fs.len()).map(|p| ctrs.store().size(fs.term(p))).sum();
    // one-to-many forward search with tight node caps first; pairs it
    // cannot settle are retried alone with the bidirectional search at the
    // full default budget
    let quick = SearchBudget {
        max_size: 3 * subterm_size,
        max_nodes: 20_000,
        max_steps: 200_000,
        ..SearchBudget::for_trs(&ctrs.trs)
    };
    let full = SearchBudget {
        max_size: 3 * subterm_size,
        ..SearchBudget::for_trs(&ctrs.trs)
    };
    let targets: Vec<_> = (0..fs.len()).map(|q| fs.term(q)).collect();
    let mut search = Reachability::new(&ctrs.trs, quick);
    for p in 0..fs.len() {
        let found = search.reach_all(fs.term(p), &targets);
        for (q, r) in found.into_iter().enumerate() {
            t.reach_pairs += 1;
            let f = a.forward().get(p, q);
            let r = match r {
                Reach::NotFound { exhaustive: false } if f => bounded_reach(&ctrs.trs, fs.term(p), fs.term(q), &full),
                r => r,
            };
            match (f, r) {
                (true, Reach::Found) | (false, Reach::NotFound { .. }) => {}
                (true, Reach::NotFound { exhaustive: false }) => {
                    t.reach_inconclusive += 1;
                    t.failures.push(format!("seed {seed}: {} -> {} not found", fs.label(p), fs.label(q)));
                }
                (f, r) => t.failures.push(format!(
                    "seed {seed}: {} -> {}: F says {f}, search says {r:?}",
                    fs.label(p),
                    fs.label(q)
                )),
            }
        }
    }
}

/// Every NO verdict's witness verifies; every YES verdict survives refutation.
pub fn verdicts_checked(seed: u64, trs: &Trs, t: &mut Tally) {
    let all = Analysis::new(trs).unwrap().decide_all().unwrap();
    let mut refuter = None;
    for v in all.iter() {
        if v.holds {
            t.refutations += 1;
            let refuter = refuter.get_or_insert_with(|| Refuter::new(trs, &SearchBudget::for_trs(trs)));
            if let Some(cex) = refuter.refute(v.property) {
                t.failures.push(format!("seed {seed}: {} YES refuted: {}", v.property, cex.description));
            }
        } else {
            t.witnesses += 1;
            if let Err(e) = verify_witness(trs, v) {
                t.failures.push(format!("seed {seed}: {} witness: {e}", v.property));
            }
        }
    }
}
