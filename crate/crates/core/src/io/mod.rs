//! Reading problem files, printing systems, and machine-readable reports.

mod parse;
mod print;
mod report;
mod tables;

pub use parse::{parse_curried_term, parse_term, parse_trs, ParseError, ParseErrorKind, Pos};
pub use print::print_trs;
pub use tables::render_tables;
pub use report::{
    build_report, render_text, witness_from_report, witness_report, Report, ReportOptions, SizeReport, Timings,
    VerdictsReport, WitnessReport,
};
