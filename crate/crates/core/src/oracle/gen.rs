use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::{Rule, SymbolId, TermId, TermStore, Trs};

/// Parameters of the random ground TRS generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrsGenSpec {
    pub seed: u64,
    pub constants: usize,
    pub unary: usize,
    pub binary: usize,
    pub rules: usize,
    /// Maximum depth of a rule side; a constant has depth 0.
    pub max_depth: usize,
}

impl Default for TrsGenSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            constants: 3,
            unary: 1,
            binary: 1,
            rules: 3,
            max_depth: 3,
        }
    }
}

fn gen_term(rng: &mut ChaCha8Rng, store: &mut TermStore, syms: &[(SymbolId, usize)], depth: usize) -> TermId {
    let consts: Vec<SymbolId> = syms.iter().filter(|s| s.1 == 0).map(|s| s.0).collect();
    let funs: Vec<(SymbolId, usize)> = syms.iter().copied().filter(|s| s.1 > 0).collect();
    // skew towards constants; deeper positions are more likely to stop
    if depth == 0 || funs.is_empty() || rng.gen_bool(0.45) {
        let c = consts[rng.gen_range(0..consts.len())];
        return store.intern(c, &[]).expect("constant");
    }
    let (f, arity) = funs[rng.gen_range(0..funs.len())];
    let args: Vec<TermId> = (0..arity).map(|_| gen_term(rng, store, syms, depth - 1)).collect();
    store.intern(f, &args).expect("arity")
}

/// A deterministic pseudo-random ground TRS. Its signature consists of
/// exactly the symbols occurring in its rules.
pub fn gen_random_trs(spec: &TrsGenSpec) -> Trs {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut scratch = TermStore::new();
    let mut syms = Vec::new();
    for i in 0..spec.constants.max(1) {
        syms.push((scratch.symbol(&format!("c{i}"), 0).expect("fresh"), 0));
    }
    for i in 0..spec.unary {
        syms.push((scratch.symbol(&format!("f{i}"), 1).expect("fresh"), 1));
    }
    for i in 0..spec.binary {
        syms.push((scratch.symbol(&format!("g{i}"), 2).expect("fresh"), 2));
    }
    let mut sides = Vec::new();
    for _ in 0..spec.rules {
        let l = gen_term(&mut rng, &mut scratch, &syms, spec.max_depth);
        let r = gen_term(&mut rng, &mut scratch, &syms, spec.max_depth);
        sides.push((l, r));
    }
    // re-intern into a fresh store so unused symbols are not declared
    let mut store = TermStore::new();
    let rules = sides
        .into_iter()
        .map(|(l, r)| Rule {
            lhs: store.import(&scratch, l).expect("import"),
            rhs: store.import(&scratch, r).expect("import"),
        })
        .collect();
    Trs { store, rules }
}

/// The fuzz corpus: seed `i` gets 1–5 rules, depth ≤ 3, and a signature
/// varying between 2–4 constants and 0–2 function symbols of each arity.
pub fn fuzz_spec(seed: u64) -> TrsGenSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    TrsGenSpec {
        seed,
        constants: rng.gen_range(2..=4),
        unary: rng.gen_range(0..=2),
        binary: rng.gen_range(0..=1),
        rules: rng.gen_range(1..=5),
        max_depth: 3,
    }
}
