use std::collections::HashSet;

use thiserror::Error;

use super::naive::{class_index, naive_congruence, naive_forward, naive_joinable, naive_ts};
use crate::decide::{Verdict, WitnessKind};
use crate::preprocess::{curry, flatten, flatten_with, CurriedTrs, FlatSystem, Shape};
use crate::term::{TermError, TermId, Trs};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

fn reject<T>(msg: impl Into<String>) -> Result<T, WitnessError> {
    Err(WitnessError::Rejected(msg.into()))
}

fn ensure(cond: bool, msg: &str) -> Result<(), WitnessError> {
    if cond {
        Ok(())
    } else {
        reject(msg)
    }
}

/// Normal form by direct matching: no subterm is a left-hand side.
fn is_normal(curried: &CurriedTrs, t: TermId) -> bool {
    let lhs: HashSet<TermId> = curried.trs.rules.iter().map(|r| r.lhs).collect();
    curried.store().subterms(t).iter().all(|u| !lhs.contains(u))
}

/// Independent tables over the base flattening.
struct Tables {
    fs: FlatSystem,
    class: Vec<usize>,
    fwd: Vec<Vec<bool>>,
}

impl Tables {
    fn new(ctrs: &CurriedTrs) -> Self {
        let fs = flatten(ctrs);
        let class = class_index(&naive_congruence(&fs), fs.len());
        let fwd = naive_forward(&fs);
        Self { fs, class, fwd }
    }

    fn flat(&self, p: usize) -> Result<(), WitnessError> {
        ensure(p < self.fs.len(), "flat constant out of range")
    }

    /// E-rules whose arguments have classes `(a, b)`, with their targets.
    fn e_rules_over(&self, a: usize, b: usize) -> Vec<usize> {
        self.fs
            .app_rules()
            .iter()
            .copied()
            .filter(|&p| match self.fs.shape(p) {
                Shape::App(l, r) => self.class[l] == a && self.class[r] == b,
                Shape::Const(_) => false,
            })
            .collect()
    }

    fn transition_to(&self, a: usize, b: usize, target: usize) -> bool {
        self.e_rules_over(a, b).iter().any(|&p| self.class[p] == target)
    }

    fn ts_side(&self, a: usize, b: usize) -> bool {
        naive_ts(&self.fs, &self.fwd, &self.class).0.contains(&(a, b))
    }
}

/// Re-checks the witness of a negative verdict against `trs` using only the
/// naive oracles and direct matching.
pub fn verify_witness(trs: &Trs, verdict: &Verdict) -> Result<(), WitnessError> {
    let Some(w) = &verdict.witness else {
        return ensure(verdict.holds, "negative verdict without witness");
    };
    ensure(!verdict.holds, "positive verdict with a witness")?;
    let ctrs = curry(trs)?;
    let base = Tables::new(&ctrs);

    // convertibility and normality of the term pair, if any
    let pair_classes = match &w.terms {
        Some(pair) => {
            let store = pair.curried.store();
            ensure(
                store.contains(pair.left) && store.contains(pair.right),
                "witness terms not in their store",
            )?;
            let ext = flatten_with(&pair.curried, &[pair.left, pair.right]);
            let ext_class = class_index(&naive_congruence(&ext), ext.len());
            let class_of = |t| ext_class[ext.flat_of(t).expect("named by extension")];
            Some((class_of(pair.left), class_of(pair.right), ext, ext_class))
        }
        None => None,
    };
    let pair = || w.terms.as_ref().expect("checked by caller");

    let normal_pair = |distinct: bool| -> Result<(usize, usize), WitnessError> {
        let Some((cl, cr, ..)) = &pair_classes else {
            return reject("missing witness terms");
        };
        let p = pair();
        if distinct {
            ensure(p.left != p.right, "witness terms are not distinct")?;
            ensure(is_normal(&p.curried, p.left), "first witness term is reducible")?;
        }
        ensure(is_normal(&p.curried, p.right), "second witness term is reducible")?;
        Ok((*cl, *cr))
    };

    match w.kind {
        WitnessKind::UncConvertibleNormalForms
        | WitnessKind::NfpNotUnc
        | WitnessKind::UnrFirst
        | WitnessKind::UnrSecond => {
            let (cl, cr) = normal_pair(true)?;
            ensure(cl == cr, "witness terms are not convertible")?;
            if w.kind == WitnessKind::UnrFirst {
                let &[p] = &w.flats[..] else { return reject("expected one pivot") };
                base.flat(p)?;
                ensure(base.class[p] == cl, "pivot not convertible to the witnesses")?;
            }
            Ok(())
        }
        WitnessKind::NfpCondition(1) => {
            let &[p, c] = &w.flats[..] else { return reject("expected [p, c]") };
            base.flat(p)?;
            base.flat(c)?;
            ensure(matches!(base.fs.shape(c), Shape::Const(_)), "c is not a constant")?;
            ensure(is_normal(&ctrs, base.fs.term(c)), "c is reducible")?;
            ensure(base.class[p] == base.class[c], "p and c are not convertible")?;
            ensure(!base.fwd[p][c], "p rewrites to c")
        }
        WitnessKind::NfpCondition(2) => {
            let (&[c], &[s1, s2, k]) = (&w.flats[..], &w.classes[..]) else {
                return reject("expected [c] and [s1, s2, class]");
            };
            base.flat(c)?;
            ensure(matches!(base.fs.shape(c), Shape::Const(_)), "c is not a constant")?;
            ensure(is_normal(&ctrs, base.fs.term(c)), "c is reducible")?;
            ensure(base.class[c] == k, "class mismatch")?;
            ensure(base.transition_to(s1, s2, k), "no such C-transition")?;
            ensure(base.ts_side(s1, s2), "side is not top-stabilizable")
        }
        WitnessKind::NfpCondition(3) => {
            let (&[q], &[p1, p2, pr]) = (&w.flats[..], &w.classes[..]) else {
                return reject("expected [q] and [p1, p2, pr]");
            };
            base.flat(q)?;
            let (_, cr) = normal_pair(false)?;
            let (.., ext, ext_class) = pair_classes.as_ref().expect("pair present");
            let Some((s1, s2)) = pair().curried.store().as_apply(pair().right) else {
                return reject("normal form is not an application");
            };
            let (f1, f2) = (ext.flat_of(s1).expect("named"), ext.flat_of(s2).expect("named"));
            ensure((ext_class[f1], ext_class[f2]) == (p1, p2), "argument classes mismatch")?;
            ensure(cr == pr && base.class[q] == pr, "q and the normal form are not convertible")?;
            let reaches = base.e_rules_over(p1, p2).iter().any(|&g| base.fwd[q][g]);
            ensure(!reaches, "q rewrites to a matching E-rule target")
        }
        WitnessKind::NfpCondition(4) => {
            let &[a1, a2, p1, p2, pr] = &w.classes[..] else {
                return reject("expected [p1', p2', p1, p2, pr]");
            };
            let (_, cr) = normal_pair(false)?;
            let (.., ext, ext_class) = pair_classes.as_ref().expect("pair present");
            let Some((s1, s2)) = pair().curried.store().as_apply(pair().right) else {
                return reject("normal form is not an application");
            };
            let (f1, f2) = (ext.flat_of(s1).expect("named"), ext.flat_of(s2).expect("named"));
            ensure((ext_class[f1], ext_class[f2]) == (p1, p2), "argument classes mismatch")?;
            ensure(cr == pr, "normal form not in the target class")?;
            ensure((a1, a2) != (p1, p2), "sides coincide")?;
            ensure(base.transition_to(a1, a2, pr), "no such C-transition")?;
            ensure(base.ts_side(a1, a2), "side is not top-stabilizable")
        }
        WitnessKind::CrCondition(1) => {
            let &[s1, s2, t1, t2, k] = &w.classes[..] else {
                return reject("expected [s1, s2, t1, t2, class]");
            };
            ensure((s1, s2) != (t1, t2), "sides coincide")?;
            ensure(base.transition_to(s1, s2, k) && base.transition_to(t1, t2, k), "no such C-transitions")?;
            ensure(base.ts_side(s1, s2) && base.ts_side(t1, t2), "side is not top-stabilizable")
        }
        WitnessKind::CrCondition(2) => {
            let (&[t], &[s1, s2, k]) = (&w.flats[..], &w.classes[..]) else {
                return reject("expected [t'] and [s1, s2, class]");
            };
            base.flat(t)?;
            ensure(base.class[t] == k, "t' not in the target class")?;
            ensure(base.transition_to(s1, s2, k), "no such C-transition")?;
            ensure(base.ts_side(s1, s2), "side is not top-stabilizable")?;
            let reaches = base.e_rules_over(s1, s2).iter().any(|&g| base.fwd[t][g]);
            ensure(!reaches, "t' rewrites to a matching E-rule target")
        }
        WitnessKind::CrCondition(3) => {
            let &[p, q] = &w.flats[..] else { return reject("expected [p, q]") };
            base.flat(p)?;
            base.flat(q)?;
            ensure(base.class[p] == base.class[q], "p and q are not convertible")?;
            let join = naive_joinable(&base.fs, &base.fwd);
            ensure(!join[p][q], "p and q are joinable")
        }
        WitnessKind::NfpCondition(_) | WitnessKind::CrCondition(_) => reject("unknown condition"),
    }
}
