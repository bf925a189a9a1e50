//! The deterministic automaton N accepting exactly the R°-normal forms.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::horn::{self, Order};
use crate::preprocess::{Flat, FlatSystem, Shape};
use crate::term::{TermId, TermStore};

/// A state of N: a normal-form flat constant or the catch-all `[⋆]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NState {
    Flat(Flat),
    Star,
}

impl NState {
    /// Dense index in `0..=n`, with `[⋆]` at `n`.
    pub fn index(self, n: usize) -> usize {
        match self {
            NState::Flat(p) => p,
            NState::Star => n,
        }
    }
}

/// One transition of N, for listing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NTransition {
    Const(TermId, NState),
    App(NState, NState, NState),
}

#[derive(Clone, Debug)]
pub struct NfAutomaton {
    reducible: FixedBitSet,
}

pub fn build_nf_automaton(fs: &FlatSystem) -> NfAutomaton {
    // (side) every left-hand side is reducible; (arg_i) so is every E-rule
    // target with a reducible argument
    let seeds = fs.rflat().iter().map(|&(l, _)| l);
    let reducible = horn::solve(fs.len(), seeds, Order::Lifo, |p, _, out| {
        out.extend_from_slice(fs.left_uses(p));
        out.extend_from_slice(fs.right_uses(p));
    });
    NfAutomaton { reducible }
}

impl NfAutomaton {
    pub fn is_reducible(&self, p: Flat) -> bool {
        self.reducible.contains(p)
    }

    /// States other than `[⋆]`, ascending.
    pub fn normal_flats(&self) -> impl Iterator<Item = Flat> + '_ {
        self.reducible.zeroes()
    }

    pub fn states(&self) -> Vec<NState> {
        self.normal_flats()
            .map(NState::Flat)
            .chain(std::iter::once(NState::Star))
            .collect()
    }

    /// `δ(c)` for a constant term `c`.
    pub fn delta_const(&self, fs: &FlatSystem, c: TermId) -> Option<NState> {
        match fs.constant(c) {
            Some(p) if self.is_reducible(p) => None,
            Some(p) => Some(NState::Flat(p)),
            None => Some(NState::Star),
        }
    }

    /// `δ(q1 ∘ q2)`: the E-rule target if it is a normal form, nothing if it is
    /// reducible, `[⋆]` if E has no rule for the pair.
    pub fn delta(&self, fs: &FlatSystem, q1: NState, q2: NState) -> Option<NState> {
        let (NState::Flat(p1), NState::Flat(p2)) = (q1, q2) else {
            return Some(NState::Star);
        };
        match fs.app(p1, p2) {
            Some(p) if self.is_reducible(p) => None,
            Some(p) => Some(NState::Flat(p)),
            None => Some(NState::Star),
        }
    }

    /// The state reached on `t`, or `None` if `t` is reducible.
    pub fn run(&self, fs: &FlatSystem, store: &TermStore, t: TermId) -> Option<NState> {
        let mut memo: HashMap<TermId, Option<NState>> = HashMap::new();
        for u in store.subterms(t) {
            let q = match store.as_apply(u) {
                Some((l, r)) => match (memo[&l], memo[&r]) {
                    (Some(ql), Some(qr)) => self.delta(fs, ql, qr),
                    _ => None,
                },
                None => self.delta_const(fs, u),
            };
            memo.insert(u, q);
        }
        memo[&t]
    }

    pub fn is_normal_form(&self, fs: &FlatSystem, store: &TermStore, t: TermId) -> bool {
        self.run(fs, store, t).is_some()
    }

    /// All transitions of N: the defined constant transitions and `δ` over
    /// every pair of states.
    pub fn transitions(&self, fs: &FlatSystem) -> Vec<NTransition> {
        let mut out = Vec::new();
        for &p in fs.const_rules() {
            if let Shape::Const(c) = fs.shape(p) {
                if !self.is_reducible(p) {
                    out.push(NTransition::Const(c, NState::Flat(p)));
                }
            }
        }
        let states = self.states();
        for &q1 in &states {
            for &q2 in &states {
                if let Some(q) = self.delta(fs, q1, q2) {
                    out.push(NTransition::App(q1, q2, q));
                }
            }
        }
        out
    }

    pub fn state_label(&self, fs: &FlatSystem, q: NState) -> String {
        match q {
            NState::Flat(p) => fs.label(p),
            NState::Star => "[⋆]".to_owned(),
        }
    }
}

impl fmt::Display for NState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NState::Flat(p) => write!(f, "#{p}"),
            NState::Star => f.write_str("⋆"),
        }
    }
}
