//! UNC and NFP: enumeration of the accepting runs of C × N.
//!
//! Every item `(p, q, s)` on the worklist is a normal form `s` whose run ends
//! in class `p` of C and state `q` of N. C × N is deterministic, so while no
//! class has been seen twice every item is new, and a class reached twice
//! yields two distinct convertible normal forms.

use std::collections::VecDeque;

use super::{Property, TermPair, Verdict, Witness, WitnessKind};
use crate::automaton::{NState, NfAutomaton};
use crate::congruence::{ClassId, CongruenceClosure};
use crate::preprocess::{CurriedTrs, Flat, FlatSystem};
use crate::relations::BinRel;
use crate::stability::StabilityTables;
use crate::term::TermId;

/// Checks grafted onto the enumeration at its two push sites.
trait Hooks {
    /// A normal-form constant `[c]` was pushed.
    fn on_const(&mut self, _c: Flat) -> Option<Witness> {
        None
    }

    /// `term = s1 ∘ s2` (in `curried`) was pushed via transition `t`.
    fn on_app(&mut self, _t: usize, _term: TermId, _curried: &CurriedTrs) -> Option<Witness> {
        None
    }
}

struct NoHooks;
impl Hooks for NoHooks {}

/// Listing-4 enumeration. `Err` carries the first violation.
fn enumerate<H: Hooks>(
    fs: &FlatSystem,
    cc: &CongruenceClosure,
    nfa: &NfAutomaton,
    hooks: &mut H,
    not_unc: WitnessKind,
) -> Result<usize, Witness> {
    let mut curried = fs.curried.clone();
    let mut seen: Vec<Option<(NState, TermId)>> = vec![None; cc.class_count()];
    let mut worklist: VecDeque<(ClassId, NState, TermId)> = VecDeque::new();

    for &c in fs.const_rules() {
        if nfa.is_reducible(c) {
            continue;
        }
        worklist.push_back((cc.class_of(c), NState::Flat(c), fs.term(c)));
        if let Some(w) = hooks.on_const(c) {
            return Err(w);
        }
    }

    let mut pops = 0;
    while let Some((p, q, s)) = worklist.pop_front() {
        pops += 1;
        if let Some((_, t)) = seen[p] {
            return Err(Witness {
                kind: not_unc,
                terms: Some(TermPair {
                    curried,
                    left: t,
                    right: s,
                }),
                flats: vec![],
                classes: vec![p],
            });
        }
        seen[p] = Some((q, s));
        for &ti in cc.uses(p) {
            let tr = &cc.transitions()[ti];
            let (Some((q1, s1)), Some((q2, s2))) = (seen[tr.left], seen[tr.right]) else {
                continue;
            };
            if let Some(qr) = nfa.delta(fs, q1, q2) {
                let term = curried.trs.store.apply(s1, s2);
                worklist.push_back((tr.target, qr, term));
                if let Some(w) = hooks.on_app(ti, term, &curried) {
                    return Err(w);
                }
            }
        }
    }
    Ok(pops)
}

/// UNC: no two distinct normal forms are convertible.
pub fn decide_unc(fs: &FlatSystem, cc: &CongruenceClosure, nfa: &NfAutomaton) -> Verdict {
    match enumerate(fs, cc, nfa, &mut NoHooks, WitnessKind::UncConvertibleNormalForms) {
        Ok(_) => Verdict::yes(Property::Unc),
        Err(w) => Verdict::no(Property::Unc, w),
    }
}

/// Number of worklist items processed by a successful UNC run (`None` if UNC
/// fails). Exposed for the linear-bound tests.
pub fn unc_pops(fs: &FlatSystem, cc: &CongruenceClosure, nfa: &NfAutomaton) -> Option<usize> {
    enumerate(fs, cc, nfa, &mut NoHooks, WitnessKind::UncConvertibleNormalForms).ok()
}

struct NfpHooks<'a> {
    fs: &'a FlatSystem,
    cc: &'a CongruenceClosure,
    fwd: &'a BinRel,
    ts: &'a StabilityTables,
}

impl Hooks for NfpHooks<'_> {
    fn on_const(&mut self, c: Flat) -> Option<Witness> {
        let class = self.cc.class_of(c);
        // (1) every constant convertible to c rewrites to it
        if let Some(&p) = self.cc.members(class).iter().find(|&&p| !self.fwd.get(p, c)) {
            return Some(Witness {
                kind: WitnessKind::NfpCondition(1),
                terms: Some(TermPair {
                    curried: self.fs.curried.clone(),
                    left: self.fs.term(p),
                    right: self.fs.term(c),
                }),
                flats: vec![p, c],
                classes: vec![class],
            });
        }
        // (2) no top-stabilizable side leads to the class of c
        if let Some(&t) = self.cc.into(class).iter().find(|&&t| self.ts.side(t)) {
            let tr = &self.cc.transitions()[t];
            return Some(Witness {
                kind: WitnessKind::NfpCondition(2),
                terms: None,
                flats: vec![c],
                classes: vec![tr.left, tr.right, class],
            });
        }
        None
    }

    fn on_app(&mut self, t: usize, term: TermId, curried: &CurriedTrs) -> Option<Witness> {
        let tr = &self.cc.transitions()[t];
        let pr = tr.target;
        // (3) every constant in the target class rewrites to some E-rule
        // target whose arguments have the classes of the transition
        let bad = self
            .cc
            .members(pr)
            .iter()
            .find(|&&q| !tr.sources.iter().any(|&g| self.fwd.get(q, g)));
        if let Some(&q) = bad {
            return Some(Witness {
                kind: WitnessKind::NfpCondition(3),
                terms: Some(TermPair {
                    curried: curried.clone(),
                    left: self.fs.term(q),
                    right: term,
                }),
                flats: vec![q],
                classes: vec![tr.left, tr.right, pr],
            });
        }
        // (4) no other top-stabilizable side leads to the target class
        if let Some(&u) = self.cc.into(pr).iter().find(|&&u| u != t && self.ts.side(u)) {
            let other = &self.cc.transitions()[u];
            return Some(Witness {
                kind: WitnessKind::NfpCondition(4),
                terms: Some(TermPair {
                    curried: curried.clone(),
                    left: term,
                    right: term,
                }),
                flats: vec![],
                classes: vec![other.left, other.right, tr.left, tr.right, pr],
            });
        }
        None
    }
}

/// NFP: every term convertible to a normal form rewrites to it.
pub fn decide_nfp(
    fs: &FlatSystem,
    cc: &CongruenceClosure,
    nfa: &NfAutomaton,
    fwd: &BinRel,
    ts: &StabilityTables,
) -> Verdict {
    let mut hooks = NfpHooks { fs, cc, fwd, ts };
    match enumerate(fs, cc, nfa, &mut hooks, WitnessKind::NfpNotUnc) {
        Ok(_) => Verdict::yes(Property::Nfp),
        Err(w) => Verdict::no(Property::Nfp, w),
    }
}
