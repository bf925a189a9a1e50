//! Bounded rewriting search. Everything here is one-sided: a positive answer
//! is a genuine rewrite sequence or counterexample, a negative answer only
//! means nothing was found within the budget.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::decide::Property;
use crate::term::{Rule, SymbolId, TermId, TermStore, Trs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Terms larger than this are never visited.
    pub max_size: u64,
    /// Maximum number of distinct terms visited.
    pub max_nodes: usize,
    /// Maximum number of term expansions.
    pub max_steps: usize,
    /// Start terms for refutation are enumerated up to this size.
    pub start_size: u64,
    pub max_starts: usize,
}

impl SearchBudget {
    /// Term size bound 3× the largest rule side, 10⁵ terms, 10⁶ steps.
    pub fn for_trs(trs: &Trs) -> Self {
        let largest = trs
            .rules
            .iter()
            .flat_map(|r| [trs.store.size(r.lhs), trs.store.size(r.rhs)])
            .max()
            .unwrap_or(1);
        Self {
            max_size: 3 * largest,
            max_nodes: 100_000,
            max_steps: 1_000_000,
            start_size: (largest + 1).min(4),
            max_starts: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reach {
    Found,
    /// Not found; `exhaustive` if every term reachable from the source was
    /// visited, which makes the negative answer conclusive.
    NotFound { exhaustive: bool },
}

/// One-step reducts under a rule list, memoized per term.
struct Steps {
    rules: Vec<Rule>,
    memo: HashMap<TermId, Vec<TermId>>,
}

impl Steps {
    fn new(rules: Vec<Rule>) -> Self {
        Self {
            rules,
            memo: HashMap::new(),
        }
    }

    fn successors(&mut self, store: &mut TermStore, t: TermId) -> Vec<TermId> {
        if let Some(v) = self.memo.get(&t) {
            return v.clone();
        }
        let mut out: Vec<TermId> = self.rules.iter().filter(|r| r.lhs == t).map(|r| r.rhs).collect();
        let head = store.head(t);
        let args = store.args(t).to_vec();
        for (i, &a) in args.iter().enumerate() {
            for a2 in self.successors(store, a) {
                let mut new_args = args.clone();
                new_args[i] = a2;
                out.push(store.intern(head, &new_args).expect("well-formed"));
            }
        }
        out.sort_unstable();
        out.dedup();
        self.memo.insert(t, out.clone());
        out
    }
}

/// Forward steps over a private copy of the system's store.
struct Stepper {
    store: TermStore,
    steps: Steps,
}

impl Stepper {
    fn new(trs: &Trs) -> Self {
        Self {
            store: trs.store.clone(),
            steps: Steps::new(trs.rules.clone()),
        }
    }

    fn successors(&mut self, t: TermId) -> Vec<TermId> {
        self.steps.successors(&mut self.store, t)
    }
}

/// Does `s →* t` under `trs`? Bidirectional breadth-first search: forward
/// steps from `s`, reversed steps from `t`, each side within `budget`.
pub fn bounded_reach(trs: &Trs, s: TermId, t: TermId, budget: &SearchBudget) -> Reach {
    if s == t {
        return Reach::Found;
    }
    let mut store = trs.store.clone();
    let reversed = trs.rules.iter().map(|r| Rule { lhs: r.rhs, rhs: r.lhs }).collect();
    let mut sides = [
        (Steps::new(trs.rules.clone()), HashSet::from([s]), VecDeque::from([s]), true),
        (Steps::new(reversed), HashSet::from([t]), VecDeque::from([t]), true),
    ];
    let mut steps = 0;
    loop {
        // expand the side with the smaller frontier
        let i = if sides[0].2.len() <= sides[1].2.len() { 0 } else { 1 };
        let [a, b] = &mut sides;
        let ((dir, seen, queue, exhaustive), other) = if i == 0 { (a, &b.1) } else { (b, &a.1) };
        let Some(u) = queue.pop_front() else {
            // this side has nothing left: conclusive iff it was never cut
            return Reach::NotFound { exhaustive: *exhaustive };
        };
        steps += 1;
        if steps > budget.max_steps {
            return Reach::NotFound { exhaustive: false };
        }
        for v in dir.successors(&mut store, u) {
            if other.contains(&v) {
                return Reach::Found;
            }
            if store.size(v) > budget.max_size || seen.len() >= budget.max_nodes {
                *exhaustive = false;
                continue;
            }
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
}

/// Repeated bounded reachability queries over one system, sharing the
/// memoized one-step reducts between queries.
pub struct Reachability {
    stepper: Stepper,
    budget: SearchBudget,
}

impl Reachability {
    pub fn new(trs: &Trs, budget: SearchBudget) -> Self {
        Self {
            stepper: Stepper::new(trs),
            budget,
        }
    }

    /// Which of `targets` are reachable from `s`. Stops early once all are found.
    pub fn reach_all(&mut self, s: TermId, targets: &[TermId]) -> Vec<Reach> {
        let budget = self.budget;
        let mut found = vec![false; targets.len()];
        let mut missing = targets.len();
        let mut seen = std::collections::HashSet::from([s]);
        let mut queue = VecDeque::from([s]);
        let mut exhaustive = true;
        let mut steps = 0;
        while let Some(u) = queue.pop_front() {
            for (i, &t) in targets.iter().enumerate() {
                if t == u && !found[i] {
                    found[i] = true;
                    missing -= 1;
                }
            }
            if missing == 0 {
                break;
            }
            steps += 1;
            if steps > budget.max_steps {
                exhaustive = false;
                break;
            }
            for v in self.stepper.successors(u) {
                if self.stepper.store.size(v) > budget.max_size || seen.len() >= budget.max_nodes {
                    exhaustive = false;
                    continue;
                }
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        found
            .into_iter()
            .map(|f| if f { Reach::Found } else { Reach::NotFound { exhaustive } })
            .collect()
    }
}

/// A concrete failure of a property, found by bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub property: Property,
    pub description: String,
    /// Terms named in the description, in the original signature.
    pub terms: Vec<String>,
}

/// The explored rewrite graph.
struct Graph {
    nodes: Vec<TermId>,
    index: HashMap<TermId, usize>,
    succ: Vec<Vec<usize>>,
    /// Some successor was not visited (or the node was not expanded).
    pruned: Vec<bool>,
    expanded: Vec<bool>,
}

impl Graph {
    fn explore(stepper: &mut Stepper, starts: &[TermId], budget: &SearchBudget) -> Self {
        let mut g = Graph {
            nodes: Vec::new(),
            index: HashMap::new(),
            succ: Vec::new(),
            pruned: Vec::new(),
            expanded: Vec::new(),
        };
        let mut queue = VecDeque::new();
        for &s in starts {
            if g.add(s).1 {
                queue.push_back(g.index[&s]);
            }
        }
        let mut steps = 0;
        while let Some(i) = queue.pop_front() {
            if steps >= budget.max_steps {
                break;
            }
            steps += 1;
            g.expanded[i] = true;
            for v in stepper.successors(g.nodes[i]) {
                if stepper.store.size(v) > budget.max_size {
                    g.pruned[i] = true;
                    continue;
                }
                if !g.index.contains_key(&v) && g.nodes.len() >= budget.max_nodes {
                    g.pruned[i] = true;
                    continue;
                }
                let (j, fresh) = g.add(v);
                g.succ[i].push(j);
                if fresh {
                    queue.push_back(j);
                }
            }
        }
        for i in 0..g.nodes.len() {
            if !g.expanded[i] {
                g.pruned[i] = true;
            }
        }
        g
    }

    fn add(&mut self, t: TermId) -> (usize, bool) {
        if let Some(&i) = self.index.get(&t) {
            return (i, false);
        }
        let i = self.nodes.len();
        self.nodes.push(t);
        self.index.insert(t, i);
        self.succ.push(Vec::new());
        self.pruned.push(false);
        self.expanded.push(false);
        (i, true)
    }

    fn is_normal(&self, i: usize) -> bool {
        self.expanded[i] && !self.pruned[i] && self.succ[i].is_empty()
    }

    /// Nodes reachable from `i` and whether that set is complete.
    fn reach(&self, i: usize) -> (FixedBitSet, bool) {
        let mut seen = FixedBitSet::with_capacity(self.nodes.len());
        let mut stack = vec![i];
        seen.insert(i);
        let mut complete = true;
        while let Some(u) = stack.pop() {
            complete &= !self.pruned[u];
            for &v in &self.succ[u] {
                if !seen.put(v) {
                    stack.push(v);
                }
            }
        }
        (seen, complete)
    }
}

/// Terms over the signature of `trs`, in order of increasing size up to
/// `max_size`, at most `limit` of them.
fn small_terms(store: &mut TermStore, max_size: u64, limit: usize) -> Vec<TermId> {
    let symbols: Vec<(SymbolId, usize)> = store.symbols().map(|(id, s)| (id, s.arity)).collect();
    let mut by_size: Vec<Vec<TermId>> = vec![Vec::new(); max_size as usize + 1];
    let mut out = Vec::new();
    for size in 1..=max_size as usize {
        let mut level = Vec::new();
        for &(f, arity) in &symbols {
            if arity == 0 {
                if size == 1 {
                    level.push(store.intern(f, &[]).expect("constant"));
                }
                continue;
            }
            if size < arity + 1 {
                continue;
            }
            // all ways to split size-1 into `arity` positive parts
            let mut stack: Vec<(Vec<TermId>, usize)> = vec![(Vec::new(), size - 1)];
            while let Some((args, rest)) = stack.pop() {
                if level.len() + out.len() >= limit {
                    break;
                }
                if args.len() == arity {
                    if rest == 0 {
                        level.push(store.intern(f, &args).expect("arity"));
                    }
                    continue;
                }
                let remaining = arity - args.len();
                for part in 1..=rest.saturating_sub(remaining - 1) {
                    for &a in &by_size[part] {
                        let mut next = args.clone();
                        next.push(a);
                        stack.push((next, rest - part));
                    }
                }
            }
        }
        level.truncate(limit.saturating_sub(out.len()));
        out.extend_from_slice(&level);
        by_size[size] = level;
        if out.len() >= limit {
            break;
        }
    }
    out
}

/// Searches for a concrete counterexample to `property` among small terms
/// and the subterms of `trs`. Only conclusive counterexamples are returned.
pub fn refute_property(trs: &Trs, property: Property, budget: &SearchBudget) -> Option<Counterexample> {
    Refuter::new(trs, budget).refute(property)
}

/// A rewrite graph explored once from the start terms, queried for
/// counterexamples to any of the four properties.
pub struct Refuter {
    store: TermStore,
    graph: Graph,
    starts: usize,
    normals: Vec<usize>,
    reach_memo: HashMap<usize, (FixedBitSet, bool)>,
}

impl Refuter {
    pub fn new(trs: &Trs, budget: &SearchBudget) -> Self {
        let mut stepper = Stepper::new(trs);
        let mut starts = trs.subterms();
        let extra = small_terms(&mut stepper.store, budget.start_size, budget.max_starts);
        for t in extra {
            if !starts.contains(&t) {
                starts.push(t);
            }
        }
        let graph = Graph::explore(&mut stepper, &starts, budget);
        let normals = (0..graph.nodes.len()).filter(|&i| graph.is_normal(i)).collect();
        Self {
            store: stepper.store,
            starts: starts.len().min(graph.nodes.len()),
            graph,
            normals,
            reach_memo: HashMap::new(),
        }
    }

    fn reach(&mut self, i: usize) -> (FixedBitSet, bool) {
        let g = &self.graph;
        self.reach_memo.entry(i).or_insert_with(|| g.reach(i)).clone()
    }

    pub fn refute(&mut self, property: Property) -> Option<Counterexample> {
        let cx = |this: &Self, description: &str, nodes: &[usize]| {
            Some(Counterexample {
                property,
                description: description.to_owned(),
                terms: nodes
                    .iter()
                    .map(|&i| this.store.display(this.graph.nodes[i]).to_string())
                    .collect(),
            })
        };
        let n = self.graph.nodes.len();
        match property {
            Property::Unc => {
                // components of the conversion graph
                let mut comp: Vec<usize> = (0..n).collect();
                fn root(comp: &mut [usize], mut x: usize) -> usize {
                    while comp[x] != x {
                        comp[x] = comp[comp[x]];
                        x = comp[x];
                    }
                    x
                }
                for i in 0..n {
                    for &j in &self.graph.succ[i] {
                        let (a, b) = (root(&mut comp, i), root(&mut comp, j));
                        comp[a.max(b)] = a.min(b);
                    }
                }
                let mut first: HashMap<usize, usize> = HashMap::new();
                for &m in &self.normals {
                    let r = root(&mut comp, m);
                    if let Some(&l) = first.get(&r) {
                        return cx(self, "distinct convertible normal forms", &[l, m]);
                    }
                    first.insert(r, m);
                }
                None
            }
            Property::Unr => {
                for s in 0..self.starts {
                    let (reach, _) = self.reach(s);
                    let mut nfs = self.normals.iter().filter(|&&m| reach.contains(m));
                    if let (Some(&a), Some(&b)) = (nfs.next(), nfs.next()) {
                        return cx(self, "term with two distinct normal forms", &[s, a, b]);
                    }
                }
                None
            }
            Property::Nfp | Property::Cr => {
                const CANDIDATES: usize = 32;
                for s in 0..self.starts {
                    let (reach, _) = self.reach(s);
                    let candidates: Vec<usize> = reach.ones().take(CANDIDATES).collect();
                    for &y in &candidates {
                        let (ry, complete) = self.reach(y);
                        if !complete {
                            continue;
                        }
                        if property == Property::Nfp {
                            // y ↔* m via s, but y does not reach m
                            let bad = self.normals.iter().find(|&&m| reach.contains(m) && !ry.contains(m));
                            if let Some(&m) = bad {
                                return cx(
                                    self,
                                    "term convertible to a normal form it does not reduce to",
                                    &[y, m, s],
                                );
                            }
                            continue;
                        }
                        for &z in &candidates {
                            if z <= y {
                                continue;
                            }
                            let (rz, complete) = self.reach(z);
                            if complete && ry.is_disjoint(&rz) {
                                return cx(
                                    self,
                                    "common ancestor of two terms without a common reduct",
                                    &[s, y, z],
                                );
                            }
                        }
                    }
                }
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_trs;
    use crate::io::parse_term;

    fn reach(src: &str, s: &str, t: &str, size: u64) -> Reach {
        let mut trs = parse_trs(src).unwrap();
        let s = parse_term(s, &mut trs.store).unwrap();
        let t = parse_term(t, &mut trs.store).unwrap();
        let budget = SearchBudget {
            max_size: size,
            ..SearchBudget::for_trs(&trs)
        };
        bounded_reach(&trs, s, t, &budget)
    }

    const U: &str = "(RULES f(a) -> a, f(a) -> b, a -> a)";
    const V: &str = "(RULES a -> b, a -> f(a), b -> f(f(b)), f(f(f(b))) -> b)";
    const W: &str = "(RULES b -> a, b -> c, a -> a, c -> c)";

    #[test]
    fn reachability_examples() {
        assert_eq!(reach(U, "f(a)", "b", 5), Reach::Found);
        assert_eq!(reach(U, "f(f(a))", "f(b)", 5), Reach::Found);
        assert_eq!(reach(V, "a", "f(f(f(b)))", 8), Reach::Found);
        assert_eq!(reach(U, "b", "a", 5), Reach::NotFound { exhaustive: true });
    }

    #[test]
    fn refutations() {
        let u = parse_trs(U).unwrap();
        let cx = refute_property(&u, Property::Unr, &SearchBudget::for_trs(&u)).unwrap();
        assert_eq!(cx.terms.len(), 3);
        let v = parse_trs(V).unwrap();
        for p in Property::ALL {
            assert_eq!(refute_property(&v, p, &SearchBudget::for_trs(&v)), None, "{p}");
        }
        let w = parse_trs(W).unwrap();
        let cx = refute_property(&w, Property::Cr, &SearchBudget::for_trs(&w)).unwrap();
        assert_eq!(cx.terms, ["b", "a", "c"]);
        assert_eq!(refute_property(&w, Property::Unc, &SearchBudget::for_trs(&w)), None);
    }
}
