//! Parametric systems used for scaling checks and demos.

use crate::preprocess::CurriedTrs;
use crate::term::{Rule, TermStore, Trs};

/// `a_k → b` and `a_i → a_{i-1} ∘ a_{i-1}` for `0 < i ≤ k`, written over `∘`.
/// `a_k` has the normal forms `b` and `t_k` (`t_0 = a_0`,
/// `t_{i+1} = t_i ∘ t_i`), and `t_k` has size `2^{k+1} - 1`.
pub fn exponential_unr(k: usize) -> CurriedTrs {
    let mut store = TermStore::curried();
    let a: Vec<_> = (0..=k)
        .map(|i| store.constant(&format!("a{i}")).expect("fresh constant"))
        .collect();
    let b = store.constant("b").expect("fresh constant");
    let mut rules = vec![Rule { lhs: a[k], rhs: b }];
    for i in 1..=k {
        let rhs = store.apply(a[i - 1], a[i - 1]);
        rules.push(Rule { lhs: a[i], rhs });
    }
    CurriedTrs::from_applicative(Trs { store, rules }).expect("constants and ∘ only")
}

/// `c_i → f(c_{i+1})` for `i < n`, plus `f(c_n) → c_0`: one long cycle of
/// `n + 1` rules whose tables stay sparse.
pub fn chain(n: usize) -> Trs {
    let mut store = TermStore::new();
    let f = store.symbol("f", 1).expect("fresh symbol");
    let c: Vec<_> = (0..=n)
        .map(|i| store.constant(&format!("c{i}")).expect("fresh constant"))
        .collect();
    let mut rules = Vec::with_capacity(n + 1);
    for i in 0..n {
        let rhs = store.intern(f, &[c[i + 1]]).expect("unary");
        rules.push(Rule { lhs: c[i], rhs });
    }
    let last = store.intern(f, &[c[n]]).expect("unary");
    rules.push(Rule { lhs: last, rhs: c[0] });
    Trs { store, rules }
}
