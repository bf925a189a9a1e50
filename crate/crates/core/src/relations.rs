//! Binary relations over flat constants: the rewrite closure F, meetable
//! constants ↑ and joinable constants ↓.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::horn::{self, Derived, Order};
use crate::preprocess::{Flat, FlatSystem, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelKind {
    Forward,
    Meetable,
    Joinable,
}

/// Dense `n × n` boolean matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct BinRel {
    n: usize,
    bits: FixedBitSet,
    pub kind: RelKind,
}

impl BinRel {
    pub fn empty(n: usize, kind: RelKind) -> Self {
        Self {
            n,
            bits: FixedBitSet::with_capacity(n * n),
            kind,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, p: Flat, q: Flat) -> bool {
        self.bits.contains(p * self.n + q)
    }

    pub fn set(&mut self, p: Flat, q: Flat) {
        self.bits.insert(p * self.n + q);
    }

    /// Columns `q` with `(p, q)` in the relation.
    pub fn row(&self, p: Flat) -> impl Iterator<Item = Flat> + '_ {
        (0..self.n).filter(move |&q| self.get(p, q))
    }

    /// Rows `p` with `(p, q)` in the relation.
    pub fn column(&self, q: Flat) -> impl Iterator<Item = Flat> + '_ {
        (0..self.n).filter(move |&p| self.get(p, q))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Flat, Flat)> + '_ {
        self.bits.ones().map(|a| (a / self.n, a % self.n))
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::empty(self.n, self.kind);
        for (p, q) in self.pairs() {
            t.set(q, p);
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(p, q)| self.get(q, p))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|p| self.get(p, p))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs().all(|(p, q)| self.row(q).all(|r| self.get(p, r)))
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Emits `(cong)` conclusions for a new atom `(p, q)`: E-rules `p∘p2 → pr`
/// and `q∘q2 → qr` with `p2 ~ q2`, and symmetrically for the right argument.
fn cong(fs: &FlatSystem, n: usize, p: Flat, q: Flat, d: &Derived<'_>, out: &mut Vec<usize>) {
    for &pr in fs.left_uses(p) {
        let Shape::App(_, p2) = fs.shape(pr) else { unreachable!() };
        for &qr in fs.left_uses(q) {
            let Shape::App(_, q2) = fs.shape(qr) else { unreachable!() };
            if d.holds(p2 * n + q2) {
                out.push(pr * n + qr);
            }
        }
    }
    for &pr in fs.right_uses(p) {
        let Shape::App(p1, _) = fs.shape(pr) else { unreachable!() };
        for &qr in fs.right_uses(q) {
            let Shape::App(q1, _) = fs.shape(qr) else { unreachable!() };
            if d.holds(p1 * n + q1) {
                out.push(pr * n + qr);
            }
        }
    }
}

/// The rewrite closure `F = { p → q | p →* q under R♭ ∪ E± }`, via the rules
/// (refl), (base), (trans) and (cong).
pub fn rewrite_closure(fs: &FlatSystem) -> BinRel {
    let n = fs.len();
    let seeds = (0..n)
        .map(|p| p * n + p)
        .chain(fs.rflat().iter().map(|&(l, r)| l * n + r));
    let bits = horn::solve(n * n, seeds, Order::Lifo, |a, d, out| {
        let (p, q) = (a / n, a % n);
        for r in 0..n {
            if d.holds(r * n + p) {
                out.push(r * n + q);
            }
            if d.holds(q * n + r) {
                out.push(p * n + r);
            }
        }
        cong(fs, n, p, q, d, out);
    });
    BinRel {
        n,
        bits,
        kind: RelKind::Forward,
    }
}

/// Shared core of ↑ and ↓. `steps` is the relation used by the step rules:
/// (step_l) `q → p`, `q ~ r` gives `p ~ r`; (step_r) `p ~ q`, `q → r` gives `p ~ r`.
fn peak_closure(fs: &FlatSystem, steps: &BinRel, kind: RelKind) -> BinRel {
    let n = fs.len();
    debug_assert_eq!(steps.size(), n);
    let bits = horn::solve(n * n, (0..n).map(|p| p * n + p), Order::Lifo, |a, d, out| {
        let (q, r) = (a / n, a % n);
        for p in steps.row(q) {
            out.push(p * n + r);
        }
        for s in steps.row(r) {
            out.push(q * n + s);
        }
        cong(fs, n, q, r, d, out);
    });
    BinRel { n, bits, kind }
}

/// Meetable constants: `p ↑ q` iff `p ←*_{E∪F} · →*_{E∪F} q`.
pub fn meetable(fs: &FlatSystem, fwd: &BinRel) -> BinRel {
    peak_closure(fs, fwd, RelKind::Meetable)
}

/// Joinable constants: `p ↓ q` iff `p` and `q` have a common reduct under
/// `E⁻ ∪ F`. The step rules use F backwards: (step_l) `p → q ∈ F`, `q ↓ r`
/// gives `p ↓ r`; (step_r) `p ↓ q`, `r → q ∈ F` gives `p ↓ r`.
pub fn joinable(fs: &FlatSystem, fwd: &BinRel) -> BinRel {
    let n = fs.len();
    let bits = horn::solve(n * n, (0..n).map(|p| p * n + p), Order::Lifo, |a, d, out| {
        let (q, r) = (a / n, a % n);
        for p in fwd.column(q) {
            out.push(p * n + r);
        }
        for s in fwd.column(r) {
            out.push(q * n + s);
        }
        cong(fs, n, q, r, d, out);
    });
    BinRel {
        n,
        bits,
        kind: RelKind::Joinable,
    }
}
