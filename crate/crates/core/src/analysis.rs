//! Lazily computed preprocessing artifacts for one TRS.
//!
//! Each table is built on first use and cached, so deciding UNC alone never
//! pays for the cubic closures that CR, NFP and UNR need.

use std::sync::OnceLock;

use crate::automaton::{build_nf_automaton, NfAutomaton};
use crate::congruence::{congruence_closure, CongruenceClosure};
use crate::decide::{self, check_chain, InconsistencyError, Property, Verdict, Verdicts};
use crate::preprocess::{curry, flatten, CurriedTrs, FlatSystem};
use crate::relations::{joinable, meetable, rewrite_closure, BinRel};
use crate::stability::{nf_pairs, top_stabilizable, StabilityTables};
use crate::term::{TermError, Trs};

#[derive(Debug)]
pub struct Analysis {
    fs: FlatSystem,
    cc: OnceLock<CongruenceClosure>,
    nfa: OnceLock<NfAutomaton>,
    fwd: OnceLock<BinRel>,
    meet: OnceLock<BinRel>,
    join: OnceLock<BinRel>,
    nf: OnceLock<BinRel>,
    ts: OnceLock<StabilityTables>,
}

impl Analysis {
    pub fn new(trs: &Trs) -> Result<Self, TermError> {
        Ok(Self::from_curried(&curry(trs)?))
    }

    /// Starts from an already curried system (e.g. one written directly with `∘`).
    pub fn from_curried(ctrs: &CurriedTrs) -> Self {
        Self::from_flat(flatten(ctrs))
    }

    pub fn from_flat(fs: FlatSystem) -> Self {
        Self {
            fs,
            cc: OnceLock::new(),
            nfa: OnceLock::new(),
            fwd: OnceLock::new(),
            meet: OnceLock::new(),
            join: OnceLock::new(),
            nf: OnceLock::new(),
            ts: OnceLock::new(),
        }
    }

    pub fn flat(&self) -> &FlatSystem {
        &self.fs
    }

    pub fn curried(&self) -> &CurriedTrs {
        &self.fs.curried
    }

    pub fn congruence(&self) -> &CongruenceClosure {
        self.cc.get_or_init(|| congruence_closure(&self.fs))
    }

    pub fn automaton(&self) -> &NfAutomaton {
        self.nfa.get_or_init(|| build_nf_automaton(&self.fs))
    }

    pub fn forward(&self) -> &BinRel {
        self.fwd.get_or_init(|| {
            let fwd = rewrite_closure(&self.fs);
            if cfg!(debug_assertions) {
                let cc = self.congruence();
                for (p, q) in fwd.pairs() {
                    debug_assert_eq!(cc.class_of(p), cc.class_of(q), "F respects (·)_R");
                }
            }
            fwd
        })
    }

    pub fn meetable(&self) -> &BinRel {
        self.meet.get_or_init(|| meetable(&self.fs, self.forward()))
    }

    pub fn joinable(&self) -> &BinRel {
        self.join.get_or_init(|| joinable(&self.fs, self.forward()))
    }

    pub fn nf_pairs(&self) -> &BinRel {
        self.nf.get_or_init(|| nf_pairs(&self.fs, self.forward()))
    }

    pub fn stability(&self) -> &StabilityTables {
        self.ts
            .get_or_init(|| top_stabilizable(&self.fs, self.congruence(), self.nf_pairs()))
    }

    pub fn decide(&self, property: Property) -> Verdict {
        let fs = &self.fs;
        match property {
            Property::Unc => decide::decide_unc(fs, self.congruence(), self.automaton()),
            Property::Unr => {
                decide::decide_unr(fs, self.forward(), || self.meetable(), self.automaton())
            }
            Property::Nfp => decide::decide_nfp(
                fs,
                self.congruence(),
                self.automaton(),
                self.forward(),
                self.stability(),
            ),
            Property::Cr => {
                decide::decide_cr(self.congruence(), self.forward(), self.joinable(), self.stability())
            }
        }
    }

    /// All four verdicts, checked against `CR ⇒ NFP ⇒ UNC ⇒ UNR`.
    pub fn decide_all(&self) -> Result<Verdicts, InconsistencyError> {
        let v = Verdicts {
            cr: self.decide(Property::Cr),
            nfp: self.decide(Property::Nfp),
            unc: self.decide(Property::Unc),
            unr: self.decide(Property::Unr),
        };
        check_chain(&v)?;
        Ok(v)
    }
}
