//! CR via the three confluence conditions.

use super::{Property, Verdict, Witness, WitnessKind};
use crate::congruence::CongruenceClosure;
use crate::relations::BinRel;
use crate::stability::StabilityTables;

/// Confluence of R°. Conditions are checked in the order 3, 1, 2 so that the
/// reported violation is the most elementary one (a non-joinable pair).
pub fn decide_cr(
    cc: &CongruenceClosure,
    fwd: &BinRel,
    join: &BinRel,
    ts: &StabilityTables,
) -> Verdict {
    let violation = |index, flats, classes| {
        Verdict::no(
            Property::Cr,
            Witness {
                kind: WitnessKind::CrCondition(index),
                terms: None,
                flats,
                classes,
            },
        )
    };

    // (3) convertible constants are joinable
    for c in 0..cc.class_count() {
        let members = cc.members(c);
        for (i, &p) in members.iter().enumerate() {
            if let Some(&q) = members[i + 1..].iter().find(|&&q| !join.get(p, q)) {
                return violation(3, vec![p, q], vec![c]);
            }
        }
    }

    // (1) at most one top-stabilizable side per target class
    for c in 0..cc.class_count() {
        let mut sides = cc.into(c).iter().filter(|&&t| ts.side(t));
        if let (Some(&a), Some(&b)) = (sides.next(), sides.next()) {
            let (ta, tb) = (&cc.transitions()[a], &cc.transitions()[b]);
            return violation(1, vec![], vec![ta.left, ta.right, tb.left, tb.right, c]);
        }
    }

    // (2) every t' in the target class of a top-stabilizable side s1∘s2
    // rewrites to the target of some E-rule t1∘t2 → q with (t_i)_R = s_i
    for t in ts.sides() {
        let tr = &cc.transitions()[t];
        let bad = cc
            .members(tr.target)
            .iter()
            .find(|&&t2| !tr.sources.iter().any(|&q| fwd.get(t2, q)));
        if let Some(&t2) = bad {
            return violation(2, vec![t2], vec![tr.left, tr.right, tr.target]);
        }
    }

    Verdict::yes(Property::Cr)
}
