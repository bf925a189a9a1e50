//! Decision procedures for confluence and normal-form properties of finite
//! ground term rewrite systems.
//!
//! The pipeline curries the input system, names every subterm with a flat
//! constant, and then computes a handful of closures over those constants
//! (congruence classes, the rewrite closure, meetable and joinable pairs,
//! top-stabilizable sides). The four deciders in [`decide`] are cheap passes
//! over these tables.
//!
//! ```
//! use gtrs::{io::parse_trs, Analysis, Property};
//!
//! let trs = parse_trs("(RULES f(a) -> a, f(a) -> b, a -> a)").unwrap();
//! let analysis = Analysis::new(&trs).unwrap();
//! assert!(!analysis.decide(Property::Unc).holds);
//! ```

pub mod analysis;
pub mod automaton;
pub mod congruence;
pub mod decide;
pub mod families;
pub mod horn;
pub mod io;
pub mod oracle;
pub mod preprocess;
pub mod relations;
pub mod stability;
pub mod term;

pub use analysis::Analysis;
pub use decide::{decide_all, InconsistencyError, Property, Verdict, Verdicts, Witness};
pub use term::{Rule, SymbolId, TermId, TermStore, Trs};
