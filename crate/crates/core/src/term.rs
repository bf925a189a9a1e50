//! Hash-consed ground terms.
//!
//! A [`TermStore`] owns a signature and a table of maximally shared terms:
//! every distinct term is interned exactly once, so two [`TermId`]s are equal
//! iff the terms they name are structurally equal. Ids are dense and assigned
//! in creation order, which lets later phases keep array-indexed side tables.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of the binary application symbol of curried stores.
pub const APPLY: &str = "∘";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TermId(pub u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("symbol `{name}` used with arity {found}, but it has arity {expected}")]
    InconsistentArity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol `{name}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown symbol id {0}")]
    UnknownSymbol(u32),
    #[error("unknown term id {0}")]
    UnknownTerm(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    head: SymbolId,
    args: Box<[TermId]>,
}

/// Interning table for ground terms over one signature.
///
/// Construction is single-threaded; a finished store is plain data and can be
/// shared between threads by reference.
#[derive(Clone, Debug, Default)]
pub struct TermStore {
    symbols: Vec<Symbol>,
    symbol_index: HashMap<String, SymbolId>,
    nodes: Vec<Node>,
    sizes: Vec<u64>,
    table: HashMap<Node, TermId>,
    apply: Option<SymbolId>,
}

impl TermStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// A store whose signature contains the binary application symbol `∘`.
    pub fn curried() -> Self {
        let mut store = Self::new();
        let apply = store
            .symbol(APPLY, 2)
            .expect("fresh store has no conflicting symbol");
        store.apply = Some(apply);
        store
    }

    /// Declares `name` with `arity`, or returns the existing symbol.
    pub fn symbol(&mut self, name: &str, arity: usize) -> Result<SymbolId, TermError> {
        if let Some(&id) = self.symbol_index.get(name) {
            let expected = self.symbols[id.index()].arity;
            if expected != arity {
                return Err(TermError::InconsistentArity {
                    name: name.to_owned(),
                    expected,
                    found: arity,
                });
            }
            return Ok(id);
        }
        let id = SymbolId(self.symbols.len() as u32);
        self.symbols.push(Symbol {
            name: name.to_owned(),
            arity,
        });
        self.symbol_index.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn lookup_symbol(&self, name: &str) -> Option<SymbolId> {
        self.symbol_index.get(name).copied()
    }

    pub fn symbol_info(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.index()]
    }

    pub fn symbol_name(&self, id: SymbolId) -> &str {
        &self.symbols[id.index()].name
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymbolId, &Symbol)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (SymbolId(i as u32), s))
    }

    /// The application symbol, if this is a curried store.
    pub fn apply_symbol(&self) -> Option<SymbolId> {
        self.apply
    }

    /// Returns the id of `head(args)`, creating it if it does not exist yet.
    pub fn intern(&mut self, head: SymbolId, args: &[TermId]) -> Result<TermId, TermError> {
        let symbol = self
            .symbols
            .get(head.index())
            .ok_or(TermError::UnknownSymbol(head.0))?;
        if symbol.arity != args.len() {
            return Err(TermError::ArityMismatch {
                name: symbol.name.clone(),
                expected: symbol.arity,
                found: args.len(),
            });
        }
        if let Some(bad) = args.iter().find(|a| a.index() >= self.nodes.len()) {
            return Err(TermError::UnknownTerm(bad.0));
        }
        let node = Node {
            head,
            args: args.into(),
        };
        if let Some(&id) = self.table.get(&node) {
            return Ok(id);
        }
        let size = args
            .iter()
            .fold(1u64, |acc, a| acc.saturating_add(self.sizes[a.index()]));
        let id = TermId(self.nodes.len() as u32);
        self.nodes.push(node.clone());
        self.sizes.push(size);
        self.table.insert(node, id);
        Ok(id)
    }

    /// Interns the constant `name`, declaring it if necessary.
    pub fn constant(&mut self, name: &str) -> Result<TermId, TermError> {
        let sym = self.symbol(name, 0)?;
        self.intern(sym, &[])
    }

    /// Interns `left ∘ right`.
    ///
    /// # Panics
    /// If the store is not curried.
    pub fn apply(&mut self, left: TermId, right: TermId) -> TermId {
        let apply = self.apply.expect("apply() on a store without ∘");
        self.intern(apply, &[left, right])
            .expect("application of valid terms")
    }

    /// Looks up `head(args)` without creating it.
    pub fn find(&self, head: SymbolId, args: &[TermId]) -> Option<TermId> {
        let node = Node {
            head,
            args: args.into(),
        };
        self.table.get(&node).copied()
    }

    pub fn head(&self, t: TermId) -> SymbolId {
        self.nodes[t.index()].head
    }

    pub fn args(&self, t: TermId) -> &[TermId] {
        &self.nodes[t.index()].args
    }

    /// `Some((l, r))` if `t = l ∘ r`.
    pub fn as_apply(&self, t: TermId) -> Option<(TermId, TermId)> {
        let node = &self.nodes[t.index()];
        match (self.apply, &*node.args) {
            (Some(apply), &[l, r]) if apply == node.head => Some((l, r)),
            _ => None,
        }
    }

    pub fn is_constant(&self, t: TermId) -> bool {
        self.nodes[t.index()].args.is_empty()
    }

    /// Number of symbol occurrences of `t` (not DAG nodes). Saturates at `u64::MAX`.
    pub fn size(&self, t: TermId) -> u64 {
        self.sizes[t.index()]
    }

    /// Number of interned terms.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, t: TermId) -> bool {
        t.index() < self.nodes.len()
    }

    /// All distinct subterms of `t`, including `t`, in post-order (children
    /// left to right before their parent).
    pub fn subterms(&self, t: TermId) -> Vec<TermId> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        self.collect_subterms(t, &mut seen, &mut out);
        out
    }

    pub(crate) fn collect_subterms(
        &self,
        t: TermId,
        seen: &mut std::collections::HashSet<TermId>,
        out: &mut Vec<TermId>,
    ) {
        // explicit stack: witness terms can be deep
        let mut stack = vec![(t, false)];
        while let Some((u, expanded)) = stack.pop() {
            if expanded {
                out.push(u);
                continue;
            }
            if !seen.insert(u) {
                continue;
            }
            stack.push((u, true));
            for &a in self.args(u).iter().rev() {
                if !seen.contains(&a) {
                    stack.push((a, false));
                }
            }
        }
    }

    /// Copies `t` from `other` into this store, matching symbols by name.
    pub fn import(&mut self, other: &TermStore, t: TermId) -> Result<TermId, TermError> {
        let mut map: HashMap<TermId, TermId> = HashMap::new();
        for u in other.subterms(t) {
            let sym = other.symbol_info(other.head(u));
            let head = self.symbol(&sym.name, sym.arity)?;
            let args: Vec<TermId> = other.args(u).iter().map(|a| map[a]).collect();
            let id = self.intern(head, &args)?;
            map.insert(u, id);
        }
        Ok(map[&t])
    }

    pub fn display(&self, t: TermId) -> TermDisplay<'_> {
        TermDisplay { store: self, term: t }
    }
}

/// Renders a term in prefix notation; `∘` is printed infix and left-associative.
pub struct TermDisplay<'a> {
    store: &'a TermStore,
    term: TermId,
}

impl TermDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, t: TermId, right_of_apply: bool) -> fmt::Result {
        let store = self.store;
        if let Some((l, r)) = store.as_apply(t) {
            if right_of_apply {
                f.write_str("(")?;
            }
            self.write(f, l, false)?;
            f.write_str(" ∘ ")?;
            self.write(f, r, true)?;
            if right_of_apply {
                f.write_str(")")?;
            }
            return Ok(());
        }
        f.write_str(store.symbol_name(store.head(t)))?;
        let args = store.args(t);
        if !args.is_empty() {
            f.write_str("(")?;
            for (i, &a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                self.write(f, a, false)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.term, false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: TermId,
    pub rhs: TermId,
}

/// A finite ground term rewrite system. The signature is the symbol table of
/// `store`, which contains exactly the symbols occurring in the rules when the
/// system comes from the parser or the generator.
#[derive(Clone, Debug, Default)]
pub struct Trs {
    pub store: TermStore,
    pub rules: Vec<Rule>,
}

impl Trs {
    pub fn new(store: TermStore, rules: Vec<Rule>) -> Result<Self, TermError> {
        for r in &rules {
            for t in [r.lhs, r.rhs] {
                if !store.contains(t) {
                    return Err(TermError::UnknownTerm(t.0));
                }
            }
        }
        Ok(Self { store, rules })
    }

    /// Total size `‖R‖`: the sum of the sizes of all rule sides.
    pub fn size(&self) -> u64 {
        self.rules
            .iter()
            .map(|r| self.store.size(r.lhs) + self.store.size(r.rhs))
            .sum()
    }

    /// Distinct subterms of all rule sides, in first-occurrence post-order.
    pub fn subterms(&self) -> Vec<TermId> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for r in &self.rules {
            self.store.collect_subterms(r.lhs, &mut seen, &mut out);
            self.store.collect_subterms(r.rhs, &mut seen, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `t_0 = a_0`, `t_{i+1} = t_i ∘ t_i`.
    fn doubling(store: &mut TermStore, k: usize) -> Vec<TermId> {
        let mut ts = vec![store.constant("a0").unwrap()];
        for i in 0..k {
            let t = ts[i];
            ts.push(store.apply(t, t));
        }
        ts
    }

    #[test]
    fn interning_is_deterministic() {
        let mut s = TermStore::curried();
        let f = s.constant("f").unwrap();
        let a = s.constant("a").unwrap();
        let x = s.apply(f, a);
        let y = s.apply(f, a);
        assert_eq!(x, y);
        assert_ne!(f, a);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn arity_is_checked() {
        let mut s = TermStore::new();
        let f = s.symbol("f", 1).unwrap();
        let a = s.constant("a").unwrap();
        assert!(matches!(
            s.intern(f, &[a, a]),
            Err(TermError::ArityMismatch { expected: 1, found: 2, .. })
        ));
        assert!(matches!(
            s.symbol("f", 2),
            Err(TermError::InconsistentArity { expected: 1, found: 2, .. })
        ));
        assert!(matches!(s.intern(f, &[TermId(99)]), Err(TermError::UnknownTerm(99))));
    }

    #[test]
    fn doubling_family_sizes() {
        let mut s = TermStore::curried();
        let ts = doubling(&mut s, 10);
        assert_eq!(s.size(ts[10]), 2047);
        // one node per t_i
        assert_eq!(s.subterms(ts[10]).len(), 11);
        assert_eq!(s.len(), 11);
        assert_eq!(s.subterms(ts[3]), vec![ts[0], ts[1], ts[2], ts[3]]);
    }

    #[test]
    fn subterms_of_constant_and_application() {
        let mut s = TermStore::curried();
        let f = s.constant("f").unwrap();
        let a = s.constant("a").unwrap();
        let fa = s.apply(f, a);
        assert_eq!(s.subterms(a), vec![a]);
        assert_eq!(s.subterms(fa), vec![f, a, fa]);
    }

    #[test]
    fn size_counts_occurrences() {
        let mut s = TermStore::new();
        let f = s.symbol("f", 1).unwrap();
        let a = s.constant("a").unwrap();
        let fa = s.intern(f, &[a]).unwrap();
        assert_eq!(s.size(fa), 2);
    }

    #[test]
    fn display_is_left_associative() {
        let mut s = TermStore::curried();
        let f = s.constant("f").unwrap();
        let b = s.constant("b").unwrap();
        let fb = s.apply(f, b);
        let ffb = s.apply(f, fb);
        let g = s.constant("g").unwrap();
        let gf = s.apply(g, f);
        let gfb = s.apply(gf, b);
        assert_eq!(s.display(ffb).to_string(), "f ∘ (f ∘ b)");
        assert_eq!(s.display(gfb).to_string(), "g ∘ f ∘ b");
    }

    #[test]
    fn import_matches_by_name() {
        let mut s = TermStore::curried();
        let f = s.constant("f").unwrap();
        let a = s.constant("a").unwrap();
        let fa = s.apply(f, a);
        let mut other = TermStore::curried();
        other.constant("zzz").unwrap();
        let copied = other.import(&s, fa).unwrap();
        assert_eq!(other.display(copied).to_string(), "f ∘ a");
    }
}
