use std::fmt::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use gtrs::io::{Report, ReportOptions};
use gtrs::Property;

use crate::{decide, load, CliError};

#[derive(Debug, Serialize)]
pub struct Failure {
    pub file: String,
    pub error: String,
}

#[derive(Debug, Default, Serialize)]
pub struct Counts {
    pub cr: usize,
    pub nfp: usize,
    pub unc: usize,
    pub unr: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub files: usize,
    pub decided: usize,
    /// Files holding each property.
    pub yes: Counts,
    pub reports: Vec<Report>,
    pub parse_errors: Vec<Failure>,
}

fn trs_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "trs") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Decides every `.trs` file in `dir`. Unparsable files are listed, not
/// fatal; an internal inconsistency in any file is.
pub fn run(dir: &Path, opts: &ReportOptions, jobs: Option<usize>) -> Result<Summary, CliError> {
    let files = trs_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .expect("thread pool");
    let outcomes: Vec<Result<Report, CliError>> =
        pool.install(|| files.par_iter().map(|f| decide(f, &load(f)?, opts)).collect());

    let mut summary = Summary {
        files: files.len(),
        decided: 0,
        yes: Counts::default(),
        reports: Vec::new(),
        parse_errors: Vec::new(),
    };
    for (file, outcome) in files.iter().zip(outcomes) {
        match outcome {
            Ok(report) => {
                let yes = |p| report.verdicts.get(p) == Some("YES");
                summary.yes.cr += yes(Property::Cr) as usize;
                summary.yes.nfp += yes(Property::Nfp) as usize;
                summary.yes.unc += yes(Property::Unc) as usize;
                summary.yes.unr += yes(Property::Unr) as usize;
                summary.decided += 1;
                summary.reports.push(report);
            }
            Err(e @ (CliError::Parse { .. } | CliError::Io { .. })) => summary.parse_errors.push(Failure {
                file: file.display().to_string(),
                error: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(summary)
}

pub fn render_text(s: &Summary, timings: bool) -> String {
    let width = s
        .reports
        .iter()
        .map(|r| r.file.chars().count())
        .chain(s.parse_errors.iter().map(|f| f.file.chars().count()))
        .chain([4])
        .max()
        .unwrap_or(4);
    let mut out = format!("{:width$}  CR   NFP  UNC  UNR", "file");
    if timings {
        out.push_str("  time (ms)");
    }
    out.push('\n');
    let cell = |r: &Report, p| r.verdicts.get(p).unwrap_or("-").to_owned();
    for r in &s.reports {
        let _ = write!(
            out,
            "{:width$}  {:4} {:4} {:4} {:4}",
            r.file,
            cell(r, Property::Cr),
            cell(r, Property::Nfp),
            cell(r, Property::Unc),
            cell(r, Property::Unr)
        );
        if let Some(t) = &r.timings_ms {
            let _ = write!(out, " {:10.3}", t.total);
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    for f in &s.parse_errors {
        let _ = writeln!(out, "{:width$}  parse error: {}", f.file, f.error);
    }
    let _ = writeln!(
        out,
        "{} files, {} decided, {} parse errors; YES: CR {}, NFP {}, UNC {}, UNR {}",
        s.files,
        s.decided,
        s.parse_errors.len(),
        s.yes.cr,
        s.yes.nfp,
        s.yes.unc,
        s.yes.unr
    );
    out
}
