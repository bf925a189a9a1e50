use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::decide::{check_chain, DecideError, Property, TermPair, Verdict, Verdicts, Witness, WitnessKind};
use crate::io::parse_curried_term;
use crate::preprocess::{curry, flatten, CurriedTrs, Flat};
use crate::term::Trs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub properties: Vec<Property>,
    pub witnesses: bool,
    pub timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            properties: Property::ALL.to_vec(),
            witnesses: false,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    /// Number of rules.
    pub rules: usize,
    /// Sum of the sizes of all rule sides.
    pub total: u64,
    /// Distinct subterms of the rule sides.
    pub subterms: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nfp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unc: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unr: Option<String>,
}

impl VerdictsReport {
    pub fn get(&self, p: Property) -> Option<&str> {
        match p {
            Property::Cr => self.cr.as_deref(),
            Property::Nfp => self.nfp.as_deref(),
            Property::Unc => self.unc.as_deref(),
            Property::Unr => self.unr.as_deref(),
        }
    }

    fn slot(&mut self, p: Property) -> &mut Option<String> {
        match p {
            Property::Cr => &mut self.cr,
            Property::Nfp => &mut self.nfp,
            Property::Unc => &mut self.unc,
            Property::Unr => &mut self.unr,
        }
    }
}

/// A negative verdict's evidence in readable form. Constants are flat
/// constants `[t]`; classes are named by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub constants: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub classes: Vec<String>,
}

/// Wall-clock milliseconds per phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub curry: f64,
    pub flatten: f64,
    pub closures: f64,
    pub decision: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub file: String,
    pub size: SizeReport,
    pub verdicts: VerdictsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeMap<String, WitnessReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

pub fn witness_report(analysis: &Analysis, w: &Witness) -> WitnessReport {
    let fs = analysis.flat();
    let cc = analysis.congruence();
    WitnessReport {
        kind: w.kind.tag().to_owned(),
        condition: w.kind.condition(),
        terms: w.terms.as_ref().map(|p| p.render()),
        constants: w.flats.iter().map(|&p| fs.label(p)).collect(),
        classes: w
            .classes
            .iter()
            .map(|&c| format!("{}_R", fs.label(cc.representative(c))))
            .collect(),
    }
}

/// Rebuilds the witness a report describes, resolving constant and class
/// labels against `analysis`. Fails with a message on anything unknown.
pub fn witness_from_report(
    analysis: &Analysis,
    property: Property,
    report: &WitnessReport,
) -> Result<Witness, String> {
    let kind = match (report.kind.as_str(), report.condition, property) {
        ("convertible-normal-forms", None, Property::Nfp) => WitnessKind::NfpNotUnc,
        ("convertible-normal-forms", None, _) => WitnessKind::UncConvertibleNormalForms,
        ("unr-first-condition", None, _) => WitnessKind::UnrFirst,
        ("unr-second-condition", None, _) => WitnessKind::UnrSecond,
        ("nfp-condition", Some(i @ 1..=4), _) => WitnessKind::NfpCondition(i),
        ("cr-condition", Some(i @ 1..=3), _) => WitnessKind::CrCondition(i),
        (kind, cond, _) => return Err(format!("unknown witness kind {kind} {cond:?}")),
    };
    let fs = analysis.flat();
    let mut curried = analysis.curried().clone();
    let flat = |label: &str, curried: &mut CurriedTrs| -> Result<Flat, String> {
        let inner = label
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or_else(|| format!("`{label}` is not a constant label"))?;
        let t = parse_curried_term(inner, curried).map_err(|e| format!("`{label}`: {e}"))?;
        fs.flat_of(t).ok_or_else(|| format!("`{label}` is not a subterm of the system"))
    };
    let flats = report
        .constants
        .iter()
        .map(|l| flat(l, &mut curried))
        .collect::<Result<Vec<_>, _>>()?;
    let classes = report
        .classes
        .iter()
        .map(|l| {
            let l = l.strip_suffix("_R").ok_or_else(|| format!("`{l}` is not a class label"))?;
            Ok(analysis.congruence().class_of(flat(l, &mut curried)?))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let terms = match &report.terms {
        Some([l, r]) => {
            let left = parse_curried_term(l, &mut curried).map_err(|e| format!("`{l}`: {e}"))?;
            let right = parse_curried_term(r, &mut curried).map_err(|e| format!("`{r}`: {e}"))?;
            Some(TermPair { curried, left, right })
        }
        None => None,
    };
    Ok(Witness {
        kind,
        terms,
        flats,
        classes,
    })
}

fn ms(since: Option<Instant>) -> f64 {
    since.map_or(0.0, |t| t.elapsed().as_secs_f64() * 1e3)
}

/// Runs the requested deciders and assembles a report. When all four
/// properties are requested the implication chain is checked as well.
pub fn build_report(file: &str, trs: &Trs, opts: &ReportOptions) -> Result<Report, DecideError> {
    // the clock is only read when asked for; wasm32 has no Instant
    let now = || opts.timings.then(Instant::now);
    let start = now();
    let ctrs = curry(trs)?;
    let t_curry = ms(start);

    let t = now();
    let analysis = Analysis::from_flat(flatten(&ctrs));
    let t_flatten = ms(t);

    // build the tables each decider reads; UNR builds the meetable relation
    // itself, only when its first condition holds
    let t = now();
    for &p in &opts.properties {
        analysis.congruence();
        match p {
            Property::Unc => {
                analysis.automaton();
            }
            Property::Unr => {
                analysis.automaton();
                analysis.forward();
            }
            Property::Nfp => {
                analysis.automaton();
                analysis.stability();
            }
            Property::Cr => {
                analysis.joinable();
                analysis.stability();
            }
        }
    }
    let t_closures = ms(t);

    let t = now();
    let mut decided: Vec<Verdict> = Vec::new();
    for p in Property::ALL {
        if opts.properties.contains(&p) {
            decided.push(analysis.decide(p));
        }
    }
    let t_decision = ms(t);

    if decided.len() == 4 {
        let mut it = decided.iter().cloned();
        let all = Verdicts {
            cr: it.next().expect("four"),
            nfp: it.next().expect("four"),
            unc: it.next().expect("four"),
            unr: it.next().expect("four"),
        };
        check_chain(&all)?;
    }

    let mut verdicts = VerdictsReport::default();
    let mut witnesses = BTreeMap::new();
    for v in &decided {
        *verdicts.slot(v.property) = Some(v.answer().to_owned());
        if let Some(w) = &v.witness {
            witnesses.insert(v.property.key().to_owned(), witness_report(&analysis, w));
        }
    }

    Ok(Report {
        file: file.to_owned(),
        size: SizeReport {
            rules: trs.rules.len(),
            total: trs.size(),
            subterms: trs.subterms().len(),
        },
        verdicts,
        witnesses: opts.witnesses.then_some(witnesses),
        timings_ms: opts.timings.then(|| Timings {
            curry: t_curry,
            flatten: t_flatten,
            closures: t_closures,
            decision: t_decision,
            total: ms(start),
        }),
    })
}

/// `CR: NO` lines, optionally followed by witness and timing lines.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for p in Property::ALL {
        let Some(answer) = report.verdicts.get(p) else { continue };
        let _ = writeln!(out, "{}: {answer}", p.name());
        let Some(w) = report.witnesses.as_ref().and_then(|ws| ws.get(p.key())) else {
            continue;
        };
        let mut line = format!("  witness: {}", w.kind);
        if let Some(c) = w.condition {
            let _ = write!(line, " {c}");
        }
        if let Some([l, r]) = &w.terms {
            let _ = write!(line, "; terms {l} , {r}");
        }
        if !w.constants.is_empty() {
            let _ = write!(line, "; constants {}", w.constants.join(" "));
        }
        if !w.classes.is_empty() {
            let _ = write!(line, "; classes {}", w.classes.join(" "));
        }
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(t) = &report.timings_ms {
        let _ = writeln!(
            out,
            "time (ms): curry {:.3}, flatten {:.3}, closures {:.3}, decision {:.3}, total {:.3}",
            t.curry, t.flatten, t.closures, t.decision, t.total
        );
    }
    out
}
