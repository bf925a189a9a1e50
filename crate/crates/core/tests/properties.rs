//! Structural invariants over random ground systems.

use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gtrs::automaton::build_nf_automaton;
use gtrs::decide::{unc_pops, unr_first, unr_second, FirstCondition};
use gtrs::io::{parse_trs, print_trs};
use gtrs::oracle::{fuzz_spec, gen_random_trs};
use gtrs::preprocess::{curry, flatten, flatten_with};
use gtrs::{Analysis, TermId, TermStore, Trs};

fn random_trs() -> impl Strategy<Value = Trs> {
    any::<u64>().prop_map(|seed| gen_random_trs(&fuzz_spec(seed)))
}

/// A random term over the signature of `store`, mostly built from rule
/// subterms so that reducible terms are common.
fn random_term(rng: &mut ChaCha8Rng, trs: &Trs, store: &mut TermStore, depth: usize) -> TermId {
    let subterms = trs.subterms();
    let symbols: Vec<_> = store.symbols().map(|(id, s)| (id, s.arity)).collect();
    if depth == 0 || rng.gen_bool(0.3) {
        if !subterms.is_empty() && rng.gen_bool(0.5) {
            return subterms[rng.gen_range(0..subterms.len())];
        }
        let consts: Vec<_> = symbols.iter().filter(|s| s.1 == 0).collect();
        let c = consts[rng.gen_range(0..consts.len())].0;
        return store.intern(c, &[]).unwrap();
    }
    let (f, arity) = symbols[rng.gen_range(0..symbols.len())];
    let args: Vec<TermId> = (0..arity).map(|_| random_term(rng, trs, store, depth - 1)).collect();
    store.intern(f, &args).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_print_roundtrip(trs in random_trs()) {
        let printed = print_trs(&trs);
        let once = parse_trs(&printed).unwrap();
        prop_assert_eq!(print_trs(&once), printed.clone());
        let twice = parse_trs(&print_trs(&once)).unwrap();
        prop_assert_eq!(print_trs(&twice), printed);
    }

    #[test]
    fn curried_size_bound(trs in random_trs()) {
        let ctrs = curry(&trs).unwrap();
        for (r, c) in trs.rules.iter().zip(&ctrs.trs.rules) {
            for (s, sc) in [(r.lhs, c.lhs), (r.rhs, c.rhs)] {
                let (n, m) = (trs.store.size(s), ctrs.store().size(sc));
                prop_assert!(m <= 2 * n - 1, "|s°| = {m} > 2·{n} - 1");
            }
        }
    }

    #[test]
    fn curry_uncurry_roundtrip(trs in random_trs()) {
        let ctrs = curry(&trs).unwrap();
        let mut back = TermStore::new();
        for (r, c) in trs.rules.iter().zip(&ctrs.trs.rules) {
            for (s, sc) in [(r.lhs, c.lhs), (r.rhs, c.rhs)] {
                let u = ctrs.uncurry(sc, &mut back).expect("in the currying image");
                prop_assert_eq!(back.display(u).to_string(), trs.store.display(s).to_string());
                prop_assert_eq!(ctrs.render(sc), trs.store.display(s).to_string());
            }
        }
    }

    /// Replacing every flat constant by its E⁻-normal form turns R♭ back into R°.
    #[test]
    fn unflatten_reconstructs_curried_rules(trs in random_trs()) {
        let ctrs = curry(&trs).unwrap();
        let fs = flatten(&ctrs);
        let mut store = ctrs.store().clone();
        let rebuilt: Vec<(TermId, TermId)> = fs
            .rflat()
            .iter()
            .map(|&(l, r)| (fs.unflatten(l, &mut store), fs.unflatten(r, &mut store)))
            .collect();
        let original: Vec<(TermId, TermId)> = ctrs.trs.rules.iter().map(|r| (r.lhs, r.rhs)).collect();
        prop_assert_eq!(rebuilt, original);
        prop_assert_eq!(store.len(), ctrs.store().len());
    }

    /// The normal-form automaton accepts exactly the terms in which no
    /// subterm is a left-hand side.
    #[test]
    fn automaton_recognizes_normal_forms(seed in any::<u64>()) {
        let trs = gen_random_trs(&fuzz_spec(seed));
        prop_assume!(!trs.rules.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut store = trs.store.clone();
        let terms: Vec<TermId> = (0..24).map(|_| random_term(&mut rng, &trs, &mut store, 4)).collect();
        let with_terms = Trs { store, rules: trs.rules.clone() };
        let mut ctrs = curry(&with_terms).unwrap();
        let curried: Vec<TermId> = terms
            .iter()
            .map(|&t| ctrs.curry_term(&with_terms.store, t).unwrap())
            .collect();
        let fs = flatten(&ctrs);
        let nfa = build_nf_automaton(&fs);
        let lhs: HashSet<TermId> = ctrs.trs.rules.iter().map(|r| r.lhs).collect();
        for &t in &curried {
            let direct = ctrs.store().subterms(t).iter().all(|u| !lhs.contains(u));
            prop_assert_eq!(nfa.is_normal_form(&fs, ctrs.store(), t), direct);
        }
    }

    /// Naming extra terms adds flat constants but no rules, and leaves the
    /// classes of the original constants untouched.
    #[test]
    fn extension_is_conservative(seed in any::<u64>()) {
        let trs = gen_random_trs(&fuzz_spec(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut store = trs.store.clone();
        prop_assume!(store.symbols().count() > 0);
        let extra: Vec<TermId> = (0..4).map(|_| random_term(&mut rng, &trs, &mut store, 3)).collect();
        let with_terms = Trs { store, rules: trs.rules.clone() };
        let mut ctrs = curry(&with_terms).unwrap();
        let extra: Vec<TermId> = extra.iter().map(|&t| ctrs.curry_term(&with_terms.store, t).unwrap()).collect();
        let base = Analysis::from_curried(&ctrs);
        let ext = Analysis::from_flat(flatten_with(&ctrs, &extra));
        prop_assert_eq!(ext.flat().rflat().len(), base.flat().rflat().len());
        for p in 0..base.flat().len() {
            for q in 0..base.flat().len() {
                let same = |a: &Analysis| {
                    let (fp, fq) = (
                        a.flat().flat_of(base.flat().term(p)).unwrap(),
                        a.flat().flat_of(base.flat().term(q)).unwrap(),
                    );
                    a.congruence().class_of(fp) == a.congruence().class_of(fq)
                };
                prop_assert_eq!(same(&base), same(&ext));
            }
        }
    }

    /// UNC enumerates each class at most once; w′ cells change at most twice.
    #[test]
    fn worklist_bounds(trs in random_trs()) {
        let a = Analysis::new(&trs).unwrap();
        if let Some(pops) = unc_pops(a.flat(), a.congruence(), a.automaton()) {
            prop_assert!(pops <= a.congruence().class_count());
        }
        if let FirstCondition::Holds(maps) = unr_first(a.flat(), a.forward(), a.automaton()) {
            let (_, stats) = unr_second(a.flat(), a.forward(), a.meetable(), maps, a.automaton());
            prop_assert!(stats.max_cell_updates <= 2);
        }
    }

    /// Relations are what their names say.
    #[test]
    fn relation_shapes(trs in random_trs()) {
        let a = Analysis::new(&trs).unwrap();
        let (f, m, j) = (a.forward(), a.meetable(), a.joinable());
        prop_assert!(f.is_reflexive() && f.is_transitive());
        prop_assert!(m.is_reflexive() && m.is_symmetric());
        prop_assert!(j.is_reflexive() && j.is_symmetric());
        for (p, q) in f.pairs() {
            prop_assert!(m.get(p, q) && j.get(p, q));
        }
        for (p, q) in j.pairs() {
            prop_assert_eq!(a.congruence().class_of(p), a.congruence().class_of(q));
        }
    }
}

#[test]
fn generator_respects_limits() {
    for seed in 0..200 {
        let spec = fuzz_spec(seed);
        let trs = gen_random_trs(&spec);
        assert_eq!(trs.rules.len(), spec.rules);
        assert!((1..=5).contains(&spec.rules));
        fn depth(s: &TermStore, t: TermId) -> usize {
            s.args(t).iter().map(|&a| 1 + depth(s, a)).max().unwrap_or(0)
        }
        for r in &trs.rules {
            assert!(depth(&trs.store, r.lhs) <= 3 && depth(&trs.store, r.rhs) <= 3);
        }
    }
}
