//! UNR via the first and second UNR-conditions.
//!
//! `s ∈ W(p, q)`: `s` is a normal form accepted in state `q` of N with
//! `s →*_{E ∪ F⁻} p`. The first condition requires `W(p, _)` to have at most
//! one element for every `p`; the second compares `w(p)` against the normal
//! forms reachable through a meetable peak, `W'(p, q)`.
//!
//! Witness terms stay hash-consed; they can have exponential tree size.

use std::collections::{HashMap, VecDeque};

use super::{Property, TermPair, Verdict, Witness, WitnessKind};
use crate::automaton::{NState, NfAutomaton};
use crate::preprocess::{CurriedTrs, Flat, FlatSystem, Shape};
use crate::relations::BinRel;
use crate::term::TermId;

/// `w(p)` and `n(p)`: the unique element of `W(p, _)` and the state of N
/// accepting it. Terms live in `curried`, which extends the system's store.
#[derive(Clone, Debug)]
pub struct WitnessMaps {
    pub curried: CurriedTrs,
    pub w: Vec<Option<TermId>>,
    pub n: Vec<Option<NState>>,
}

pub enum FirstCondition {
    Holds(WitnessMaps),
    Violated(Witness),
}

/// E-rules with `p` as an argument, each once.
fn uses(fs: &FlatSystem, p: Flat) -> impl Iterator<Item = Flat> + '_ {
    let right = fs.right_uses(p).iter().copied().filter(move |&r| match fs.shape(r) {
        Shape::App(l, _) => l != p,
        Shape::Const(_) => false,
    });
    fs.left_uses(p).iter().copied().chain(right)
}

/// Checks the first UNR-condition, computing `w` and `n` when it holds.
pub fn unr_first(fs: &FlatSystem, fwd: &BinRel, nfa: &NfAutomaton) -> FirstCondition {
    let n_flats = fs.len();
    let mut curried = fs.curried.clone();
    let mut w: Vec<Option<TermId>> = vec![None; n_flats];
    let mut n: Vec<Option<NState>> = vec![None; n_flats];
    let mut worklist: VecDeque<(Flat, NState, TermId)> = fs
        .const_rules()
        .iter()
        .filter(|&&c| !nfa.is_reducible(c))
        .map(|&c| (c, NState::Flat(c), fs.term(c)))
        .collect();

    while let Some((p, q, s)) = worklist.pop_front() {
        if let Some(t) = w[p] {
            if s != t {
                return FirstCondition::Violated(Witness {
                    kind: WitnessKind::UnrFirst,
                    terms: Some(TermPair {
                        curried,
                        left: t,
                        right: s,
                    }),
                    flats: vec![p],
                    classes: vec![],
                });
            }
            continue;
        }
        w[p] = Some(s);
        n[p] = Some(q);
        for r in uses(fs, p) {
            let Shape::App(p1, p2) = fs.shape(r) else { unreachable!() };
            let (Some(s1), Some(s2)) = (w[p1], w[p2]) else { continue };
            let (q1, q2) = (n[p1].expect("n defined with w"), n[p2].expect("n defined with w"));
            if let Some(qr) = nfa.delta(fs, q1, q2) {
                let term = curried.trs.store.apply(s1, s2);
                worklist.push_back((r, qr, term));
            }
        }
        for p2 in fwd.column(p) {
            worklist.push_back((p2, q, s));
        }
    }
    FirstCondition::Holds(WitnessMaps { curried, w, n })
}

/// A value of `w'`: a single term, or the saturated `∞` carrying two distinct
/// members of the set as evidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Val {
    One(TermId),
    Many(TermId, TermId),
}

impl Val {
    fn compose(self, other: Val, curried: &mut CurriedTrs) -> Val {
        let store = &mut curried.trs.store;
        match (self, other) {
            (Val::One(a), Val::One(b)) => Val::One(store.apply(a, b)),
            (Val::Many(a1, a2), Val::One(b)) => Val::Many(store.apply(a1, b), store.apply(a2, b)),
            (Val::One(a), Val::Many(b1, b2)) => Val::Many(store.apply(a, b1), store.apply(a, b2)),
            (Val::Many(a1, a2), Val::Many(b1, _)) => {
                Val::Many(store.apply(a1, b1), store.apply(a2, b1))
            }
        }
    }

    /// A member distinct from `t`, if any.
    fn other_than(self, t: TermId) -> Option<TermId> {
        match self {
            Val::One(s) => (s != t).then_some(s),
            Val::Many(a, b) => Some(if a != t { a } else { b }),
        }
    }
}

/// Bookkeeping exposed for tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UnrStats {
    pub pushes: usize,
    /// Maximum number of times a single `w'` cell changed.
    pub max_cell_updates: u8,
}

/// Checks the second UNR-condition given `w`, `n` and `↑`.
pub fn unr_second(
    fs: &FlatSystem,
    fwd: &BinRel,
    meet: &BinRel,
    maps: WitnessMaps,
    nfa: &NfAutomaton,
) -> (Verdict, UnrStats) {
    let WitnessMaps { mut curried, w, n } = maps;
    let mut stats = UnrStats::default();
    let mut cells: HashMap<(Flat, NState), (Val, u8)> = HashMap::new();
    // states with a defined cell, per flat constant
    let mut defined: Vec<Vec<NState>> = vec![Vec::new(); fs.len()];
    let mut worklist: VecDeque<(Flat, NState, Val)> = VecDeque::new();

    for (p, q) in meet.pairs() {
        if let (Some(t), Some(nq)) = (w[q], n[q]) {
            worklist.push_back((p, nq, Val::One(t)));
        }
    }
    stats.pushes = worklist.len();

    while let Some((p, q, mut s)) = worklist.pop_front() {
        match cells.get_mut(&(p, q)) {
            Some((t, updates)) => {
                if *t == s || matches!(t, Val::Many(..)) {
                    continue;
                }
                let Val::One(t0) = *t else { unreachable!() };
                s = match s {
                    Val::One(s0) => Val::Many(t0, s0),
                    many => many,
                };
                *t = s;
                *updates += 1;
                stats.max_cell_updates = stats.max_cell_updates.max(*updates);
            }
            None => {
                cells.insert((p, q), (s, 1));
                defined[p].push(q);
                stats.max_cell_updates = stats.max_cell_updates.max(1);
            }
        }
        if let Some(t) = w[p] {
            if let Some(other) = s.other_than(t) {
                let witness = Witness {
                    kind: WitnessKind::UnrSecond,
                    terms: Some(TermPair {
                        curried,
                        left: t,
                        right: other,
                    }),
                    flats: vec![p],
                    classes: vec![],
                };
                return (Verdict::no(Property::Unr, witness), stats);
            }
        }
        for r in uses(fs, p) {
            let Shape::App(p1, p2) = fs.shape(r) else { unreachable!() };
            if p1 == p {
                for &q2 in &defined[p2] {
                    let Some(qr) = nfa.delta(fs, q, q2) else { continue };
                    let s2 = cells[&(p2, q2)].0;
                    let right = if p2 == p && q2 == q { s } else { s2 };
                    worklist.push_back((r, qr, s.compose(right, &mut curried)));
                    stats.pushes += 1;
                }
            }
            if p2 == p {
                for &q1 in &defined[p1] {
                    let Some(qr) = nfa.delta(fs, q1, q) else { continue };
                    let s1 = cells[&(p1, q1)].0;
                    worklist.push_back((r, qr, s1.compose(s, &mut curried)));
                    stats.pushes += 1;
                }
            }
        }
        for p2 in fwd.row(p) {
            worklist.push_back((p2, q, s));
            stats.pushes += 1;
        }
    }
    (Verdict::yes(Property::Unr), stats)
}

/// UNR: no term has two distinct normal forms.
pub fn decide_unr<'a>(
    fs: &FlatSystem,
    fwd: &BinRel,
    meet: impl FnOnce() -> &'a BinRel,
    nfa: &NfAutomaton,
) -> Verdict {
    match unr_first(fs, fwd, nfa) {
        FirstCondition::Violated(w) => Verdict::no(Property::Unr, w),
        FirstCondition::Holds(maps) => unr_second(fs, fwd, meet(), maps, nfa).0,
    }
}
