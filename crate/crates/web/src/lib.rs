//! WebAssembly bindings for the browser demo. Every export takes plain
//! strings or numbers and returns JSON, so the page needs no glue beyond
//! `JSON.parse`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use gtrs::families::exponential_unr;
use gtrs::io::{build_report, parse_trs, print_trs, render_tables, Report, ReportOptions};
use gtrs::oracle::{gen_random_trs, TrsGenSpec};
use gtrs::{Analysis, Property};

#[derive(Serialize)]
struct Analyzed {
    report: Report,
    tables: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Decides all four properties of a system in the textual TRS format and
/// returns `{report, tables}`. Errors are human-readable strings.
#[wasm_bindgen]
pub fn analyze(source: &str) -> Result<String, String> {
    let trs = parse_trs(source).map_err(|e| e.to_string())?;
    let opts = ReportOptions {
        properties: Property::ALL.to_vec(),
        witnesses: true,
        timings: false,
    };
    let report = build_report("input", &trs, &opts).map_err(|e| e.to_string())?;
    let tables = render_tables(&Analysis::new(&trs).map_err(|e| e.to_string())?);
    Ok(to_json(&Analyzed { report, tables }))
}

#[derive(Serialize)]
struct Exponential {
    k: usize,
    rules: usize,
    subterms: usize,
    unr: &'static str,
    /// Sizes of the two witness terms, smaller first.
    witness_sizes: [u64; 2],
    /// The witness pair, only when it is short enough to display.
    witness: Option<[String; 2]>,
}

const SHOW_LIMIT: u64 = 200;

/// Decides UNR for `a_k → b, a_i → a_{i-1} ∘ a_{i-1}`. The witness grows
/// like `2^k` while the tables stay linear in `k`.
#[wasm_bindgen]
pub fn exponential(k: usize) -> Result<String, String> {
    if k > 60 {
        return Err("k must be at most 60".to_owned());
    }
    let ctrs = exponential_unr(k);
    let analysis = Analysis::from_curried(&ctrs);
    let verdict = analysis.decide(Property::Unr);
    let pair = verdict
        .witness
        .as_ref()
        .and_then(|w| w.terms.as_ref())
        .ok_or("UNR unexpectedly holds")?;
    let store = pair.curried.store();
    let mut sizes = [store.size(pair.left), store.size(pair.right)];
    sizes.sort_unstable();
    Ok(to_json(&Exponential {
        k,
        rules: ctrs.trs.rules.len(),
        subterms: analysis.flat().len(),
        unr: verdict.answer(),
        witness_sizes: sizes,
        witness: (sizes[1] <= SHOW_LIMIT).then(|| pair.render()),
    }))
}

/// A pseudo-random ground system, printed in the input format.
#[wasm_bindgen]
pub fn random_trs(seed: u32, constants: usize, unary: usize, binary: usize, rules: usize, depth: usize) -> String {
    let spec = TrsGenSpec {
        seed: u64::from(seed),
        constants: constants.clamp(1, 8),
        unary: unary.min(4),
        binary: binary.min(4),
        rules: rules.clamp(1, 12),
        max_depth: depth.min(5),
    };
    print_trs(&gen_random_trs(&spec))
}
