//! Currying and flattening.

mod curry;
mod flatten;

pub use curry::{curry, CurriedTrs};
pub use flatten::{flatten, flatten_with, Flat, FlatEntry, FlatSystem, Shape};
