//! E/F-normal pairs NF° and the top-stabilizable sides and constants TS.

use fixedbitset::FixedBitSet;

use crate::congruence::{ClassId, CongruenceClosure};
use crate::horn::{self, Order};
use crate::preprocess::{FlatSystem, Shape};
use crate::relations::BinRel;

/// `nf.get(p, q)` iff `p ∘ q` is in E/F-normal form: there are no
/// `p → p'`, `q → q'` in F with `p' ∘ q'` an E left-hand side.
pub fn nf_pairs(fs: &FlatSystem, fwd: &BinRel) -> BinRel {
    let n = fs.len();
    let mut reducible = BinRel::empty(n, fwd.kind);
    for &e in fs.app_rules() {
        let Shape::App(l, r) = fs.shape(e) else { unreachable!() };
        let preds_r: Vec<_> = fwd.column(r).collect();
        for p in fwd.column(l) {
            for &q in &preds_r {
                reducible.set(p, q);
            }
        }
    }
    let mut nf = BinRel::empty(n, fwd.kind);
    for p in 0..n {
        for q in 0..n {
            if !reducible.get(p, q) {
                nf.set(p, q);
            }
        }
    }
    nf
}

/// Top-stabilizable sides (indexed by C-transition) and constants (class ids).
#[derive(Clone, Debug)]
pub struct StabilityTables {
    ts_side: FixedBitSet,
    ts_const: FixedBitSet,
}

impl StabilityTables {
    /// Whether the left-hand side of the C-transition with index `t` is
    /// top-stabilizable.
    pub fn side(&self, t: usize) -> bool {
        self.ts_side.contains(t)
    }

    pub fn constant(&self, c: ClassId) -> bool {
        self.ts_const.contains(c)
    }

    pub fn sides(&self) -> impl Iterator<Item = usize> + '_ {
        self.ts_side.ones()
    }

    pub fn constants(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.ts_const.ones()
    }
}

/// Least predicates closed under (nf), (ts₀) and (ts_i), restricted to
/// left-hand sides of C. Atoms: transition `t` is atom `t`, class `c` is
/// atom `m + c`.
pub fn top_stabilizable(fs: &FlatSystem, cc: &CongruenceClosure, nf: &BinRel) -> StabilityTables {
    let m = cc.transitions().len();
    let k = cc.class_count();
    let n = fs.len();
    let mut seeds = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if nf.get(p, q) {
                if let Some(t) = cc.transition(cc.class_of(p), cc.class_of(q)) {
                    seeds.push(t);
                }
            }
        }
    }
    let bits = horn::solve(m + k, seeds, Order::Lifo, |a, _, out| {
        if a < m {
            out.push(m + cc.transitions()[a].target);
        } else {
            out.extend_from_slice(cc.uses(a - m));
        }
    });
    let mut ts_side = FixedBitSet::with_capacity(m);
    let mut ts_const = FixedBitSet::with_capacity(k);
    for a in bits.ones() {
        if a < m {
            ts_side.insert(a);
        } else {
            ts_const.insert(a - m);
        }
    }
    StabilityTables { ts_side, ts_const }
}
