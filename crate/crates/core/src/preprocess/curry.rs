use std::collections::HashMap;
use std::fmt::Write as _;

use crate::term::{Rule, TermError, TermId, TermStore, Trs, APPLY};

/// A ground TRS over constants and the binary symbol `∘`, together with the
/// arities of the original signature (needed to uncurry witnesses).
#[derive(Clone, Debug)]
pub struct CurriedTrs {
    pub trs: Trs,
    arities: HashMap<String, usize>,
}

/// `(f(t1,…,tn))° = f ∘ t1° ∘ ⋯ ∘ tn°`, applied to every rule side.
pub fn curry(trs: &Trs) -> Result<CurriedTrs, TermError> {
    let mut store = TermStore::curried();
    let mut arities = HashMap::new();
    for (_, sym) in trs.store.symbols() {
        if sym.name == APPLY {
            return Err(TermError::InconsistentArity {
                name: sym.name.clone(),
                expected: 2,
                found: sym.arity,
            });
        }
        arities.insert(sym.name.clone(), sym.arity);
    }
    let mut memo = HashMap::new();
    let rules = trs
        .rules
        .iter()
        .map(|r| {
            Ok(Rule {
                lhs: curry_term(&trs.store, r.lhs, &mut store, &mut memo)?,
                rhs: curry_term(&trs.store, r.rhs, &mut store, &mut memo)?,
            })
        })
        .collect::<Result<Vec<_>, TermError>>()?;
    Ok(CurriedTrs {
        trs: Trs { store, rules },
        arities,
    })
}

fn curry_term(
    src: &TermStore,
    t: TermId,
    dst: &mut TermStore,
    memo: &mut HashMap<TermId, TermId>,
) -> Result<TermId, TermError> {
    for u in src.subterms(t) {
        if memo.contains_key(&u) {
            continue;
        }
        let mut acc = dst.constant(src.symbol_name(src.head(u)))?;
        for a in src.args(u) {
            acc = dst.apply(acc, memo[a]);
        }
        memo.insert(u, acc);
    }
    Ok(memo[&t])
}

impl CurriedTrs {
    /// Wraps a system written directly over constants and `∘`. Every other
    /// symbol is treated as a constant of the original signature.
    pub fn from_applicative(trs: Trs) -> Result<Self, TermError> {
        let mut arities = HashMap::new();
        for (_, sym) in trs.store.symbols() {
            match (sym.name.as_str(), sym.arity) {
                (APPLY, 2) => {}
                (name, 0) if name != APPLY => {
                    arities.insert(name.to_owned(), 0);
                }
                (name, arity) => {
                    return Err(TermError::InconsistentArity {
                        name: name.to_owned(),
                        expected: if name == APPLY { 2 } else { 0 },
                        found: arity,
                    })
                }
            }
        }
        Ok(Self { trs, arities })
    }

    /// Curries a single term of the original signature into this system's store.
    pub fn curry_term(&mut self, src: &TermStore, t: TermId) -> Result<TermId, TermError> {
        curry_term(src, t, &mut self.trs.store, &mut HashMap::new())
    }

    pub fn store(&self) -> &TermStore {
        &self.trs.store
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.arities.get(name).copied()
    }

    /// Head constant and arguments of the `∘`-spine of `t`.
    fn spine(&self, mut t: TermId) -> (TermId, Vec<TermId>) {
        let store = &self.trs.store;
        let mut args = Vec::new();
        while let Some((l, r)) = store.as_apply(t) {
            args.push(r);
            t = l;
        }
        args.reverse();
        (t, args)
    }

    fn in_image(&self, t: TermId, memo: &mut HashMap<TermId, bool>) -> bool {
        if let Some(&ok) = memo.get(&t) {
            return ok;
        }
        let (head, args) = self.spine(t);
        let name = self.trs.store.symbol_name(self.trs.store.head(head));
        let ok = self.arity(name) == Some(args.len())
            && args.iter().all(|&a| self.in_image(a, memo));
        memo.insert(t, ok);
        ok
    }

    /// Inverse of currying, into `dst`. `None` if `t` is not the curried form
    /// of a well-formed term over the original signature.
    pub fn uncurry(&self, t: TermId, dst: &mut TermStore) -> Option<TermId> {
        if !self.in_image(t, &mut HashMap::new()) {
            return None;
        }
        let mut memo: HashMap<TermId, TermId> = HashMap::new();
        self.uncurry_rec(t, dst, &mut memo)
    }

    fn uncurry_rec(
        &self,
        t: TermId,
        dst: &mut TermStore,
        memo: &mut HashMap<TermId, TermId>,
    ) -> Option<TermId> {
        if let Some(&u) = memo.get(&t) {
            return Some(u);
        }
        let (head, args) = self.spine(t);
        let name = self.trs.store.symbol_name(self.trs.store.head(head));
        let sym = dst.symbol(name, args.len()).ok()?;
        let mut new_args = Vec::with_capacity(args.len());
        for a in args {
            new_args.push(self.uncurry_rec(a, dst, memo)?);
        }
        let u = dst.intern(sym, &new_args).ok()?;
        memo.insert(t, u);
        Some(u)
    }

    /// Renders `t` uncurried when it lies in the currying image, otherwise
    /// with explicit `∘`.
    pub fn render(&self, t: TermId) -> String {
        if !self.in_image(t, &mut HashMap::new()) {
            return self.trs.store.display(t).to_string();
        }
        let mut out = String::new();
        // explicit stack of pending output: terms or literal separators
        enum Item<'a> {
            Term(TermId),
            Lit(&'a str),
        }
        let mut stack = vec![Item::Term(t)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Lit(s) => out.push_str(s),
                Item::Term(u) => {
                    let (head, args) = self.spine(u);
                    let _ = write!(out, "{}", self.trs.store.symbol_name(self.trs.store.head(head)));
                    if args.is_empty() {
                        continue;
                    }
                    out.push('(');
                    stack.push(Item::Lit(")"));
                    for (i, &a) in args.iter().enumerate().rev() {
                        stack.push(Item::Term(a));
                        if i > 0 {
                            stack.push(Item::Lit(", "));
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_trs;

    #[test]
    fn curries_u() {
        let u = parse_trs("(RULES f(a) -> a, f(a) -> b, a -> a)").unwrap();
        let c = curry(&u).unwrap();
        let s = c.store();
        let shown: Vec<String> = c
            .trs
            .rules
            .iter()
            .map(|r| format!("{} -> {}", s.display(r.lhs), s.display(r.rhs)))
            .collect();
        assert_eq!(shown, ["f ∘ a -> a", "f ∘ a -> b", "a -> a"]);
        assert_eq!(s.size(c.trs.rules[0].lhs), 3);
    }

    #[test]
    fn curries_nested_binary() {
        let t = parse_trs("(RULES g(a, h(b)) -> a)").unwrap();
        let c = curry(&t).unwrap();
        let s = c.store();
        assert_eq!(s.display(c.trs.rules[0].lhs).to_string(), "g ∘ a ∘ (h ∘ b)");
        assert_eq!(c.render(c.trs.rules[0].lhs), "g(a, h(b))");
    }

    #[test]
    fn constant_rules_unchanged() {
        let t = parse_trs("(RULES a -> b)").unwrap();
        let c = curry(&t).unwrap();
        assert_eq!(c.render(c.trs.rules[0].lhs), "a");
        assert_eq!(c.render(c.trs.rules[0].rhs), "b");
    }

    #[test]
    fn uncurry_roundtrip_and_fallback() {
        let t = parse_trs("(RULES f(f(b)) -> b)").unwrap();
        let mut c = curry(&t).unwrap();
        let lhs = c.trs.rules[0].lhs;
        let mut dst = TermStore::new();
        let back = c.uncurry(lhs, &mut dst).unwrap();
        assert_eq!(dst.display(back).to_string(), "f(f(b))");

        let store = &mut c.trs.store;
        let f = store.constant("f").unwrap();
        let ff = store.apply(f, f);
        assert!(c.uncurry(ff, &mut TermStore::new()).is_none());
        assert_eq!(c.render(ff), "f ∘ f");
    }
}
