//! Congruence closure of the flattened system: convertibility classes of
//! flat constants and the deterministic automaton C over class ids.

use std::collections::HashMap;

use crate::preprocess::{Flat, FlatSystem, Shape};
use crate::term::{TermId, TermStore};

/// Dense class id, ordered by the smallest flat constant in the class.
pub type ClassId = usize;

/// A transition `left ∘ right → target` of C, with the E-rules it is the
/// class image of (identified by their right-hand sides).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub left: ClassId,
    pub right: ClassId,
    pub target: ClassId,
    pub sources: Vec<Flat>,
}

#[derive(Clone, Debug)]
pub struct CongruenceClosure {
    class_of: Vec<ClassId>,
    members: Vec<Vec<Flat>>,
    const_index: HashMap<TermId, ClassId>,
    transitions: Vec<Transition>,
    trans_index: HashMap<(ClassId, ClassId), usize>,
    uses: Vec<Vec<usize>>,
    into: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

pub fn congruence_closure(fs: &FlatSystem) -> CongruenceClosure {
    let n = fs.len();
    let mut uf = UnionFind::new(n);
    let mut uses: Vec<Vec<Flat>> = vec![Vec::new(); n];
    let mut sig: HashMap<(usize, usize), Flat> = HashMap::new();
    let mut pending: Vec<(Flat, Flat)> = fs.rflat().to_vec();

    for &p in fs.app_rules() {
        let Shape::App(l, r) = fs.shape(p) else { unreachable!() };
        uses[l].push(p);
        if r != l {
            uses[r].push(p);
        }
        // arguments are still singletons, so no two app rules can collide
        sig.insert((l, r), p);
    }

    while let Some((a, b)) = pending.pop() {
        let (mut ra, mut rb) = (uf.find(a), uf.find(b));
        if ra == rb {
            continue;
        }
        if uf.size[ra] < uf.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        // absorb rb into ra
        uf.parent[rb] = ra;
        uf.size[ra] += uf.size[rb];
        let moved = std::mem::take(&mut uses[rb]);
        for &u in &moved {
            let Shape::App(l, r) = fs.shape(u) else { unreachable!() };
            let key = (uf.find(l), uf.find(r));
            match sig.get(&key) {
                Some(&v) if uf.find(v) != uf.find(u) => pending.push((u, v)),
                Some(_) => {}
                None => {
                    sig.insert(key, u);
                }
            }
        }
        uses[ra].extend(moved);
    }

    let mut class_of = vec![usize::MAX; n];
    let mut root_class: HashMap<usize, ClassId> = HashMap::new();
    let mut members: Vec<Vec<Flat>> = Vec::new();
    for p in 0..n {
        let root = uf.find(p);
        let next = members.len();
        let c = *root_class.entry(root).or_insert(next);
        if c == next {
            members.push(Vec::new());
        }
        members[c].push(p);
        class_of[p] = c;
    }

    let k = members.len();
    let mut cc = CongruenceClosure {
        class_of,
        members,
        const_index: HashMap::new(),
        transitions: Vec::new(),
        trans_index: HashMap::new(),
        uses: vec![Vec::new(); k],
        into: vec![Vec::new(); k],
    };
    for p in 0..n {
        match fs.shape(p) {
            Shape::Const(c) => {
                cc.const_index.insert(c, cc.class_of[p]);
            }
            Shape::App(l, r) => {
                let key = (cc.class_of[l], cc.class_of[r]);
                let target = cc.class_of[p];
                match cc.trans_index.get(&key) {
                    Some(&i) => {
                        debug_assert_eq!(cc.transitions[i].target, target, "C is deterministic");
                        cc.transitions[i].sources.push(p);
                    }
                    None => {
                        let i = cc.transitions.len();
                        cc.transitions.push(Transition {
                            left: key.0,
                            right: key.1,
                            target,
                            sources: vec![p],
                        });
                        cc.trans_index.insert(key, i);
                        cc.uses[key.0].push(i);
                        if key.1 != key.0 {
                            cc.uses[key.1].push(i);
                        }
                        cc.into[target].push(i);
                    }
                }
            }
        }
    }
    cc
}

/// A term over curried symbols mixed with flat constants or class ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MixedTerm {
    Const(TermId),
    Flat(Flat),
    Class(ClassId),
    App(Box<MixedTerm>, Box<MixedTerm>),
}

impl CongruenceClosure {
    pub fn class_of(&self, p: Flat) -> ClassId {
        self.class_of[p]
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    /// Flat constants in class `c`, ascending.
    pub fn members(&self, c: ClassId) -> &[Flat] {
        &self.members[c]
    }

    /// The representative flat constant of `c` (its smallest member).
    pub fn representative(&self, c: ClassId) -> Flat {
        self.members[c][0]
    }

    /// The transition `c → [c]_R` for a constant term.
    pub fn const_transition(&self, c: TermId) -> Option<ClassId> {
        self.const_index.get(&c).copied()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, left: ClassId, right: ClassId) -> Option<usize> {
        self.trans_index.get(&(left, right)).copied()
    }

    /// Transitions with `c` as (either) argument.
    pub fn uses(&self, c: ClassId) -> &[usize] {
        &self.uses[c]
    }

    /// Transitions with target `c`.
    pub fn into(&self, c: ClassId) -> &[usize] {
        &self.into[c]
    }

    /// The partition as sorted member lists, ordered by smallest member.
    pub fn partition(&self) -> Vec<Vec<Flat>> {
        self.members.clone()
    }

    /// The homomorphism `(·)_R`: replaces flat constants by their classes.
    pub fn apply_class_map(&self, t: &MixedTerm) -> MixedTerm {
        match t {
            MixedTerm::Flat(p) => MixedTerm::Class(self.class_of[*p]),
            MixedTerm::App(l, r) => MixedTerm::App(
                Box::new(self.apply_class_map(l)),
                Box::new(self.apply_class_map(r)),
            ),
            other => other.clone(),
        }
    }

    /// Decides `s ↔* t` under R° for arbitrary curried ground terms by running
    /// C bottom-up. Where C has no transition the subterm stays concrete, and
    /// the resulting mixed normal forms are compared structurally.
    pub fn convertible(&self, store: &TermStore, s: TermId, t: TermId) -> bool {
        let mut run = Residues::default();
        run.of(self, store, s) == run.of(self, store, t)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Residue {
    Class(ClassId),
    Const(TermId),
    App(u32, u32),
}

/// Hash-consed residues of a C run, so that comparing them is O(1) even for
/// terms with exponential tree size.
#[derive(Default)]
struct Residues {
    nodes: HashMap<Residue, u32>,
    memo: HashMap<TermId, u32>,
    classes: Vec<Option<ClassId>>,
}

impl Residues {
    fn intern(&mut self, r: Residue) -> u32 {
        let next = self.nodes.len() as u32;
        let id = *self.nodes.entry(r).or_insert(next);
        if id == next {
            self.classes.push(match r {
                Residue::Class(c) => Some(c),
                _ => None,
            });
        }
        id
    }

    fn of(&mut self, cc: &CongruenceClosure, store: &TermStore, t: TermId) -> u32 {
        for u in store.subterms(t) {
            if self.memo.contains_key(&u) {
                continue;
            }
            let r = match store.as_apply(u) {
                Some((l, r)) => {
                    let (il, ir) = (self.memo[&l], self.memo[&r]);
                    match (self.classes[il as usize], self.classes[ir as usize]) {
                        (Some(cl), Some(cr)) => match cc.transition(cl, cr) {
                            Some(i) => Residue::Class(cc.transitions[i].target),
                            None => Residue::App(il, ir),
                        },
                        _ => Residue::App(il, ir),
                    }
                }
                None => match cc.const_transition(u) {
                    Some(c) => Residue::Class(c),
                    None => Residue::Const(u),
                },
            };
            let id = self.intern(r);
            self.memo.insert(u, id);
        }
        self.memo[&t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_trs;
    use crate::preprocess::{curry, flatten};

    fn setup(src: &str) -> (FlatSystem, CongruenceClosure) {
        let fs = flatten(&curry(&parse_trs(src).unwrap()).unwrap());
        let cc = congruence_closure(&fs);
        (fs, cc)
    }

    fn labels(fs: &FlatSystem, cc: &CongruenceClosure) -> Vec<Vec<String>> {
        cc.partition()
            .into_iter()
            .map(|m| m.into_iter().map(|p| fs.label(p)).collect())
            .collect()
    }

    #[test]
    fn classes_of_u() {
        let (fs, cc) = setup("(RULES f(a) -> a, f(a) -> b, a -> a)");
        assert_eq!(labels(&fs, &cc), [vec!["[f]"], vec!["[a]", "[f ∘ a]", "[b]"]]);
        assert_eq!(cc.transitions().len(), 1);
        let t = &cc.transitions()[0];
        assert_eq!((t.left, t.right, t.target), (0, 1, 1));
    }

    #[test]
    fn classes_of_v() {
        let (_, cc) = setup("(RULES a -> b, a -> f(a), b -> f(f(b)), f(f(f(b))) -> b)");
        let sizes: Vec<usize> = cc.partition().iter().map(Vec::len).collect();
        assert_eq!(sizes, [6, 1]);
        assert_eq!(cc.transitions().len(), 1);
        assert_eq!(cc.transitions()[0].sources.len(), 4);
    }

    #[test]
    fn identity_without_relating_rules() {
        let (_, cc) = setup("(RULES a -> a, b -> b)");
        assert_eq!(cc.partition(), [vec![0], vec![1]]);
    }

    #[test]
    fn class_map_and_convertibility() {
        let (mut fs, cc) = setup("(RULES f(a) -> a, f(a) -> b, a -> a)");
        let s = fs.curried.store();
        let f = s.find(s.lookup_symbol("f").unwrap(), &[]).unwrap();
        let a = s.find(s.lookup_symbol("a").unwrap(), &[]).unwrap();
        let b = s.find(s.lookup_symbol("b").unwrap(), &[]).unwrap();
        let (pf, pb) = (fs.flat_of(f).unwrap(), fs.flat_of(b).unwrap());
        let mixed = MixedTerm::App(Box::new(MixedTerm::Flat(pf)), Box::new(MixedTerm::Flat(pb)));
        assert_eq!(
            cc.apply_class_map(&mixed),
            MixedTerm::App(Box::new(MixedTerm::Class(0)), Box::new(MixedTerm::Class(1)))
        );
        assert!(cc.convertible(s, a, b));
        assert!(!cc.convertible(s, f, a));
        let store = &mut fs.curried.trs.store;
        let fb = store.apply(f, b);
        let ffb = store.apply(f, fb);
        let g = store.constant("g").unwrap();
        let gb = store.apply(g, b);
        let ga = store.apply(g, a);
        let store = fs.curried.store();
        assert!(cc.convertible(store, fb, b));
        assert!(cc.convertible(store, ffb, a));
        assert!(cc.convertible(store, gb, ga));
        assert!(!cc.convertible(store, gb, g));
    }

    #[test]
    fn rflat_sides_share_classes_and_e_rules_are_transitions() {
        let (fs, cc) = setup("(RULES g(a, h(b)) -> h(a), h(a) -> b, c -> g(b, b))");
        for &(l, r) in fs.rflat() {
            assert_eq!(cc.class_of(l), cc.class_of(r));
        }
        for &p in fs.app_rules() {
            let Shape::App(l, r) = fs.shape(p) else { unreachable!() };
            let i = cc.transition(cc.class_of(l), cc.class_of(r)).unwrap();
            assert_eq!(cc.transitions()[i].target, cc.class_of(p));
        }
    }
}
