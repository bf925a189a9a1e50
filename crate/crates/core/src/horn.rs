//! Least fixpoints of ground Horn clauses over a dense atom universe.
//!
//! Clause instances are never materialized. Instead a *schema* callback is
//! invoked once per derived atom and reports every conclusion of an instance
//! that has the atom as a premise and whose other premises already hold.
//! Since an instance fires as soon as its last premise is processed, the
//! result is the least fixpoint regardless of the worklist order.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    Lifo,
    Fifo,
}

/// Derived atoms so far, as seen by a schema.
pub struct Derived<'a> {
    bits: &'a FixedBitSet,
}

impl Derived<'_> {
    #[inline]
    pub fn holds(&self, atom: usize) -> bool {
        self.bits.contains(atom)
    }

    pub fn bits(&self) -> &FixedBitSet {
        self.bits
    }
}

/// Computes the least set of atoms in `0..universe` containing `seeds` and
/// closed under `schema`. The schema receives the newly processed atom, the
/// current derived set, and a buffer for conclusions.
pub fn solve<S>(
    universe: usize,
    seeds: impl IntoIterator<Item = usize>,
    order: Order,
    mut schema: S,
) -> FixedBitSet
where
    S: FnMut(usize, &Derived<'_>, &mut Vec<usize>),
{
    let mut bits = FixedBitSet::with_capacity(universe);
    let mut queue = VecDeque::new();
    for s in seeds {
        if !bits.put(s) {
            queue.push_back(s);
        }
    }
    let mut out = Vec::new();
    loop {
        let next = match order {
            Order::Lifo => queue.pop_back(),
            Order::Fifo => queue.pop_front(),
        };
        let Some(atom) = next else { break };
        schema(atom, &Derived { bits: &bits }, &mut out);
        for c in out.drain(..) {
            if !bits.put(c) {
                queue.push_back(c);
            }
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Transitive closure over `0..n` with atoms `i*n + j`.
    fn transitive(n: usize, edges: &[(usize, usize)], order: Order) -> FixedBitSet {
        solve(n * n, edges.iter().map(|&(i, j)| i * n + j), order, |a, d, out| {
            let (p, q) = (a / n, a % n);
            for r in 0..n {
                if d.holds(r * n + p) {
                    out.push(r * n + q);
                }
                if d.holds(q * n + r) {
                    out.push(p * n + r);
                }
            }
        })
    }

    #[test]
    fn transitive_closure_example() {
        let n = 3;
        let got = transitive(n, &[(0, 1), (1, 2)], Order::Lifo);
        let pairs: Vec<_> = got.ones().map(|a| (a / n, a % n)).collect();
        assert_eq!(pairs, [(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn empty_seeds() {
        let got = solve(10, [], Order::Lifo, |_, _, out| out.push(3));
        assert_eq!(got.count_ones(..), 0);
    }

    /// Random clause sets: each clause is (premises, conclusion).
    fn clauses() -> impl Strategy<Value = (usize, Vec<(Vec<usize>, usize)>, Vec<usize>)> {
        (2usize..20).prop_flat_map(|n| {
            let clause = (prop::collection::vec(0..n, 1..3), 0..n);
            (
                Just(n),
                prop::collection::vec(clause, 0..40),
                prop::collection::vec(0..n, 0..4),
            )
        })
    }

    fn solve_clauses(n: usize, cs: &[(Vec<usize>, usize)], seeds: &[usize], order: Order) -> FixedBitSet {
        solve(n, seeds.iter().copied(), order, |a, d, out| {
            for (prem, concl) in cs {
                if prem.contains(&a) && prem.iter().all(|&p| d.holds(p)) {
                    out.push(*concl);
                }
            }
        })
    }

    /// Naive iteration to a fixpoint.
    fn naive(n: usize, cs: &[(Vec<usize>, usize)], seeds: &[usize]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for &s in seeds {
            bits.insert(s);
        }
        loop {
            let mut changed = false;
            for (prem, concl) in cs {
                if prem.iter().all(|&p| bits.contains(p)) && !bits.put(*concl) {
                    changed = true;
                }
            }
            if !changed {
                return bits;
            }
        }
    }

    proptest! {
        #[test]
        fn order_independent_and_least((n, cs, seeds) in clauses()) {
            let lifo = solve_clauses(n, &cs, &seeds, Order::Lifo);
            let fifo = solve_clauses(n, &cs, &seeds, Order::Fifo);
            prop_assert_eq!(&lifo, &fifo);
            prop_assert_eq!(&lifo, &naive(n, &cs, &seeds));
        }

        #[test]
        fn monotone_in_seeds((n, cs, seeds) in clauses(), extra in 0usize..20) {
            let base = solve_clauses(n, &cs, &seeds, Order::Lifo);
            let mut more_seeds = seeds.clone();
            more_seeds.push(extra % n);
            let more = solve_clauses(n, &cs, &more_seeds, Order::Lifo);
            prop_assert!(base.is_subset(&more));
        }
    }
}
