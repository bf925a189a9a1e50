use std::fmt::Write;
use std::path::Path;

use gtrs::io::{witness_from_report, Report};
use gtrs::oracle::verify_witness;
use gtrs::{Analysis, Property, Verdict};

use crate::{load, read, CliError};

/// Verifies every witness in a JSON report with the independent oracles.
pub fn run(file: &Path, report: &Path) -> Result<String, CliError> {
    let trs = load(file)?;
    let text = read(report)?;
    let report: Report = serde_json::from_str(&text).map_err(|source| CliError::Report {
        path: report.display().to_string(),
        source,
    })?;
    let input = |message: String| CliError::Input {
        path: file.display().to_string(),
        message,
    };
    let analysis = Analysis::new(&trs).map_err(|e| input(e.to_string()))?;
    let witnesses = report.witnesses.unwrap_or_default();
    if witnesses.is_empty() {
        return Ok("no witnesses to check\n".to_owned());
    }
    let mut out = String::new();
    let mut rejected = Vec::new();
    for (key, w) in &witnesses {
        let property: Property = key.parse().map_err(|e| input(format!("{e}")))?;
        let witness = witness_from_report(&analysis, property, w).map_err(input)?;
        match verify_witness(&trs, &Verdict::no(property, witness)) {
            Ok(()) => {
                let _ = writeln!(out, "{}: witness verified", property.name());
            }
            Err(e) => rejected.push(format!("{}: {e}", property.name())),
        }
    }
    if rejected.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Rejected(rejected.join("; ")))
    }
}
