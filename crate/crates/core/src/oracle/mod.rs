//! Independent brute-force cross-checks for the deciders: naive fixpoints,
//! bounded rewriting search, witness verification and a random generator.

mod gen;
mod naive;
mod search;
mod witness;

pub use gen::{fuzz_spec, gen_random_trs, TrsGenSpec};
pub use naive::{class_index, naive_congruence, naive_forward, naive_joinable, naive_ts};
pub use search::{bounded_reach, refute_property, Counterexample, Reach, Reachability, Refuter, SearchBudget};
pub use witness::{verify_witness, WitnessError};
