//! The four deciders and their verdicts.

mod cr;
mod runs;
mod unr;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::Analysis;
use crate::congruence::ClassId;
use crate::preprocess::{CurriedTrs, Flat};
use crate::term::{TermError, TermId, Trs};

pub use cr::decide_cr;
pub use runs::{decide_nfp, decide_unc, unc_pops};
pub use unr::{decide_unr, unr_first, unr_second, FirstCondition, UnrStats, WitnessMaps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Cr,
    Nfp,
    Unc,
    Unr,
}

impl Property {
    pub const ALL: [Property; 4] = [Property::Cr, Property::Nfp, Property::Unc, Property::Unr];

    pub fn name(self) -> &'static str {
        match self {
            Property::Cr => "CR",
            Property::Nfp => "NFP",
            Property::Unc => "UNC",
            Property::Unr => "UNR",
        }
    }

    /// Lowercase name, as used on the command line and in JSON keys.
    pub fn key(self) -> &'static str {
        match self {
            Property::Cr => "cr",
            Property::Nfp => "nfp",
            Property::Unc => "unc",
            Property::Unr => "unr",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown property `{0}` (expected cr, nfp, unc or unr)")]
pub struct UnknownProperty(String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cr" => Ok(Property::Cr),
            "nfp" => Ok(Property::Nfp),
            "unc" => Ok(Property::Unc),
            "unr" => Ok(Property::Unr),
            _ => Err(UnknownProperty(s.to_owned())),
        }
    }
}

/// Two curried terms in a store that extends the analysed system's store.
#[derive(Clone, Debug)]
pub struct TermPair {
    pub curried: CurriedTrs,
    pub left: TermId,
    pub right: TermId,
}

impl TermPair {
    /// Both terms, uncurried where possible.
    pub fn render(&self) -> [String; 2] {
        [self.curried.render(self.left), self.curried.render(self.right)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// `terms` are distinct convertible normal forms; `classes = [c]`.
    UncConvertibleNormalForms,
    /// `terms` are distinct normal forms of the pivot `flats = [p]`.
    UnrFirst,
    /// `terms = (w(p), s)` with `s ∈ W'(p, _)`; `flats = [p]`.
    UnrSecond,
    /// NFP fails because UNC fails; same payload as the UNC witness.
    NfpNotUnc,
    /// Violated NFP condition 1..=4.
    NfpCondition(u8),
    /// Violated confluence condition 1..=3.
    CrCondition(u8),
}

impl WitnessKind {
    pub fn condition(self) -> Option<u8> {
        match self {
            WitnessKind::NfpCondition(i) | WitnessKind::CrCondition(i) => Some(i),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            WitnessKind::UncConvertibleNormalForms => "convertible-normal-forms",
            WitnessKind::UnrFirst => "unr-first-condition",
            WitnessKind::UnrSecond => "unr-second-condition",
            WitnessKind::NfpNotUnc => "convertible-normal-forms",
            WitnessKind::NfpCondition(_) => "nfp-condition",
            WitnessKind::CrCondition(_) => "cr-condition",
        }
    }
}

/// Evidence for a negative verdict.
///
/// Payload per kind:
/// - NFP 1: `flats = [p, [c]]`, `terms = (p, c)`: `p ↔* c` but not `p →* c`.
/// - NFP 2: `flats = [[c]]`, `classes = [s1, s2, [c]_R]` with `TS(s1 ∘ s2)`.
/// - NFP 3: `flats = [q]`, `classes = [p1, p2, pr]`, `terms = (q, s1 ∘ s2)`.
/// - NFP 4: `classes = [p1', p2', p1, p2, pr]`, `terms = (s1 ∘ s2, s1 ∘ s2)`.
/// - CR 1: `classes = [s1, s2, t1, t2, target]`.
/// - CR 2: `flats = [t']`, `classes = [s1, s2, target]`.
/// - CR 3: `flats = [p, q]`, `classes = [c]`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: WitnessKind,
    pub terms: Option<TermPair>,
    pub flats: Vec<Flat>,
    pub classes: Vec<ClassId>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes(property: Property) -> Self {
        Self {
            property,
            holds: true,
            witness: None,
        }
    }

    pub fn no(property: Property, witness: Witness) -> Self {
        Self {
            property,
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn answer(&self) -> &'static str {
        if self.holds {
            "YES"
        } else {
            "NO"
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdicts {
    pub cr: Verdict,
    pub nfp: Verdict,
    pub unc: Verdict,
    pub unr: Verdict,
}

impl Verdicts {
    pub fn get(&self, p: Property) -> &Verdict {
        match p {
            Property::Cr => &self.cr,
            Property::Nfp => &self.nfp,
            Property::Unc => &self.unc,
            Property::Unr => &self.unr,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Verdict> {
        [&self.cr, &self.nfp, &self.unc, &self.unr].into_iter()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("internal inconsistency: {stronger} holds but {weaker} does not")]
pub struct InconsistencyError {
    pub stronger: Property,
    pub weaker: Property,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error(transparent)]
    Input(#[from] TermError),
    #[error(transparent)]
    Inconsistent(#[from] InconsistencyError),
}

/// Checks `CR ⇒ NFP ⇒ UNC ⇒ UNR` on the boolean answers.
pub fn check_chain(v: &Verdicts) -> Result<(), InconsistencyError> {
    let chain = [&v.cr, &v.nfp, &v.unc, &v.unr];
    for pair in chain.windows(2) {
        if pair[0].holds && !pair[1].holds {
            return Err(InconsistencyError {
                stronger: pair[0].property,
                weaker: pair[1].property,
            });
        }
    }
    Ok(())
}

/// Runs all four deciders on `trs` and checks the implication chain.
pub fn decide_all(trs: &Trs) -> Result<Verdicts, DecideError> {
    Ok(Analysis::new(trs)?.decide_all()?)
}
