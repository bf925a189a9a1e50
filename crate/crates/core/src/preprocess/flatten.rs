use std::collections::{HashMap, HashSet};

use super::CurriedTrs;
use crate::term::TermId;

/// A flat constant `[s]`, numbered densely from 0.
pub type Flat = usize;

/// The defining E-rule of a flat constant: `c → [c]` or `[s1]∘[s2] → [s1∘s2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Const(TermId),
    App(Flat, Flat),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatEntry {
    /// The curried subterm `s` named by this constant.
    pub term: TermId,
    pub shape: Shape,
}

/// The flattening of a curried TRS: one flat constant per subterm, the
/// definitional rules E (exactly one per flat constant, so E-rules are
/// indexed by their right-hand side) and the constant rules R♭.
#[derive(Clone, Debug)]
pub struct FlatSystem {
    pub curried: CurriedTrs,
    entries: Vec<FlatEntry>,
    by_term: HashMap<TermId, Flat>,
    app_index: HashMap<(Flat, Flat), Flat>,
    app_rules: Vec<Flat>,
    const_rules: Vec<Flat>,
    rflat: Vec<(Flat, Flat)>,
    left_uses: Vec<Vec<Flat>>,
    right_uses: Vec<Vec<Flat>>,
}

pub fn flatten(ctrs: &CurriedTrs) -> FlatSystem {
    flatten_with(ctrs, &[])
}

/// Flattens `ctrs`, additionally naming all subterms of `extra` (which must
/// live in the curried store). Extra terms get flat constants and E-rules but
/// contribute no R♭ rules.
pub fn flatten_with(ctrs: &CurriedTrs, extra: &[TermId]) -> FlatSystem {
    let store = ctrs.store();
    let mut order = Vec::new();
    let mut seen = HashSet::new();
    for r in &ctrs.trs.rules {
        store.collect_subterms(r.lhs, &mut seen, &mut order);
        store.collect_subterms(r.rhs, &mut seen, &mut order);
    }
    for &t in extra {
        store.collect_subterms(t, &mut seen, &mut order);
    }

    let n = order.len();
    let mut fs = FlatSystem {
        curried: ctrs.clone(),
        entries: Vec::with_capacity(n),
        by_term: HashMap::with_capacity(n),
        app_index: HashMap::new(),
        app_rules: Vec::new(),
        const_rules: Vec::new(),
        rflat: Vec::with_capacity(ctrs.trs.rules.len()),
        left_uses: vec![Vec::new(); n],
        right_uses: vec![Vec::new(); n],
    };
    for t in order {
        let p = fs.entries.len();
        let shape = match store.as_apply(t) {
            Some((l, r)) => {
                let (pl, pr) = (fs.by_term[&l], fs.by_term[&r]);
                fs.app_index.insert((pl, pr), p);
                fs.app_rules.push(p);
                fs.left_uses[pl].push(p);
                fs.right_uses[pr].push(p);
                Shape::App(pl, pr)
            }
            None => {
                fs.const_rules.push(p);
                Shape::Const(t)
            }
        };
        fs.entries.push(FlatEntry { term: t, shape });
        fs.by_term.insert(t, p);
    }
    for r in &ctrs.trs.rules {
        fs.rflat.push((fs.by_term[&r.lhs], fs.by_term[&r.rhs]));
    }
    fs
}

impl FlatSystem {
    /// Number of flat constants.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, p: Flat) -> FlatEntry {
        self.entries[p]
    }

    pub fn entries(&self) -> &[FlatEntry] {
        &self.entries
    }

    pub fn shape(&self, p: Flat) -> Shape {
        self.entries[p].shape
    }

    pub fn term(&self, p: Flat) -> TermId {
        self.entries[p].term
    }

    /// Flat constant naming the curried subterm `t`, if `t ⊴ R°`.
    pub fn flat_of(&self, t: TermId) -> Option<Flat> {
        self.by_term.get(&t).copied()
    }

    /// Target of the E-rule `p1 ∘ p2 → _`.
    pub fn app(&self, p1: Flat, p2: Flat) -> Option<Flat> {
        self.app_index.get(&(p1, p2)).copied()
    }

    /// Target of the E-rule `c → [c]` for a constant term `c`.
    pub fn constant(&self, c: TermId) -> Option<Flat> {
        self.by_term
            .get(&c)
            .copied()
            .filter(|&p| matches!(self.entries[p].shape, Shape::Const(_)))
    }

    /// Flat constants defined by an E-rule `[s1] ∘ [s2] → [s]`.
    pub fn app_rules(&self) -> &[Flat] {
        &self.app_rules
    }

    /// Flat constants defined by an E-rule `c → [c]`.
    pub fn const_rules(&self) -> &[Flat] {
        &self.const_rules
    }

    /// R♭: one `[ℓ] → [r]` per input rule, in input order.
    pub fn rflat(&self) -> &[(Flat, Flat)] {
        &self.rflat
    }

    /// E-rules with `p` as left argument (identified by their right-hand side).
    pub fn left_uses(&self, p: Flat) -> &[Flat] {
        &self.left_uses[p]
    }

    /// E-rules with `p` as right argument.
    pub fn right_uses(&self, p: Flat) -> &[Flat] {
        &self.right_uses[p]
    }

    /// Human-readable name `[s]` using the curried notation.
    pub fn label(&self, p: Flat) -> String {
        format!("[{}]", self.curried.store().display(self.entries[p].term))
    }

    /// E⁻-normal form of `p`, rebuilt in `store` from the E-rules alone.
    /// Applied to both sides of every R♭ rule this reproduces R°.
    pub fn unflatten(&self, p: Flat, store: &mut crate::term::TermStore) -> TermId {
        let mut built: Vec<Option<TermId>> = vec![None; self.len()];
        let mut stack = vec![p];
        while let Some(&q) = stack.last() {
            if built[q].is_some() {
                stack.pop();
                continue;
            }
            match self.entries[q].shape {
                Shape::Const(c) => {
                    let name = self.curried.store().symbol_name(self.curried.store().head(c));
                    built[q] = Some(store.constant(name).expect("constant symbol"));
                    stack.pop();
                }
                Shape::App(l, r) => match (built[l], built[r]) {
                    (Some(tl), Some(tr)) => {
                        built[q] = Some(store.apply(tl, tr));
                        stack.pop();
                    }
                    _ => {
                        stack.push(l);
                        stack.push(r);
                    }
                },
            }
        }
        built[p].expect("built")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_trs;
    use crate::preprocess::curry;
    use crate::term::TermStore;

    fn flat(src: &str) -> FlatSystem {
        flatten(&curry(&parse_trs(src).unwrap()).unwrap())
    }

    fn e_rules(fs: &FlatSystem) -> Vec<String> {
        (0..fs.len())
            .map(|p| match fs.shape(p) {
                Shape::Const(c) => {
                    format!("{} -> {}", fs.curried.store().display(c), fs.label(p))
                }
                Shape::App(l, r) => format!("{}∘{} -> {}", fs.label(l), fs.label(r), fs.label(p)),
            })
            .collect()
    }

    #[test]
    fn flattening_of_u() {
        let fs = flat("(RULES f(a) -> a, f(a) -> b, a -> a)");
        assert_eq!(
            e_rules(&fs),
            ["f -> [f]", "a -> [a]", "[f]∘[a] -> [f ∘ a]", "b -> [b]"]
        );
        let rflat: Vec<String> = fs
            .rflat()
            .iter()
            .map(|&(l, r)| format!("{} -> {}", fs.label(l), fs.label(r)))
            .collect();
        assert_eq!(rflat, ["[f ∘ a] -> [a]", "[f ∘ a] -> [b]", "[a] -> [a]"]);
    }

    #[test]
    fn flattening_of_v() {
        let fs = flat("(RULES a -> b, a -> f(a), b -> f(f(b)), f(f(f(b))) -> b)");
        assert_eq!(fs.len(), 7);
        assert_eq!(fs.app_rules().len(), 4);
        let f = fs.flat_of(fs.curried.store().lookup_symbol("f").map(|s| {
            fs.curried.store().find(s, &[]).unwrap()
        }).unwrap()).unwrap();
        assert_eq!(fs.left_uses(f).len(), 4);
    }

    #[test]
    fn single_constant_rule() {
        let fs = flat("(RULES a -> b)");
        assert_eq!(e_rules(&fs), ["a -> [a]", "b -> [b]"]);
        assert_eq!(fs.rflat(), &[(0, 1)]);
    }

    #[test]
    fn unflatten_reproduces_curried_rules() {
        let fs = flat("(RULES g(a, h(b)) -> h(a), f(a) -> b)");
        let mut store = TermStore::curried();
        for (rule, &(l, r)) in fs.curried.trs.rules.iter().zip(fs.rflat()) {
            let lhs = fs.unflatten(l, &mut store);
            let rhs = fs.unflatten(r, &mut store);
            let src = fs.curried.store();
            assert_eq!(store.display(lhs).to_string(), src.display(rule.lhs).to_string());
            assert_eq!(store.display(rhs).to_string(), src.display(rule.rhs).to_string());
        }
    }
}
