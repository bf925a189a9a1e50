//! Brute-force fixpoints over flat constants. Deliberately naive: plain
//! iteration of every rule until nothing changes, no worklists, no union-find.

use crate::preprocess::{Flat, FlatSystem, Shape};

type Matrix = Vec<Vec<bool>>;

fn app_rules(fs: &FlatSystem) -> Vec<(Flat, Flat, Flat)> {
    fs.app_rules()
        .iter()
        .map(|&p| match fs.shape(p) {
            Shape::App(l, r) => (l, r, p),
            Shape::Const(_) => unreachable!(),
        })
        .collect()
}

/// Convertibility classes: merge R♭ sides, then merge E-rule targets whose
/// arguments are pairwise merged, until stable. Classes are sorted member
/// lists ordered by smallest member.
pub fn naive_congruence(fs: &FlatSystem) -> Vec<Vec<Flat>> {
    let n = fs.len();
    // label[p]: smallest member of p's class
    let mut label: Vec<Flat> = (0..n).collect();
    let apps = app_rules(fs);
    let merge = |label: &mut Vec<Flat>, a: Flat, b: Flat| -> bool {
        let (la, lb) = (label[a], label[b]);
        if la == lb {
            return false;
        }
        let (keep, drop) = (la.min(lb), la.max(lb));
        for l in label.iter_mut() {
            if *l == drop {
                *l = keep;
            }
        }
        true
    };
    loop {
        let mut changed = false;
        for &(l, r) in fs.rflat() {
            changed |= merge(&mut label, l, r);
        }
        for &(l1, r1, p) in &apps {
            for &(l2, r2, q) in &apps {
                if label[l1] == label[l2] && label[r1] == label[r2] {
                    changed |= merge(&mut label, p, q);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Flat>> = Vec::new();
    for p in 0..n {
        // the smallest member comes first, so its class is created before use
        if label[p] == p {
            index[p] = classes.len();
            classes.push(Vec::new());
        }
        classes[index[label[p]]].push(p);
    }
    classes
}

/// Class index per flat constant for a partition.
pub fn class_index(partition: &[Vec<Flat>], n: usize) -> Vec<usize> {
    let mut out = vec![usize::MAX; n];
    for (i, c) in partition.iter().enumerate() {
        for &p in c {
            out[p] = i;
        }
    }
    out
}

/// The rewrite closure by iterating (refl), (base), (trans) and (cong).
pub fn naive_forward(fs: &FlatSystem) -> Matrix {
    let n = fs.len();
    let mut m = vec![vec![false; n]; n];
    for (p, row) in m.iter_mut().enumerate() {
        row[p] = true;
    }
    for &(l, r) in fs.rflat() {
        m[l][r] = true;
    }
    let apps = app_rules(fs);
    loop {
        let mut changed = false;
        for p in 0..n {
            for q in 0..n {
                if !m[p][q] && (0..n).any(|r| m[p][r] && m[r][q]) {
                    m[p][q] = true;
                    changed = true;
                }
            }
        }
        for &(p1, p2, p) in &apps {
            for &(q1, q2, q) in &apps {
                if !m[p][q] && m[p1][q1] && m[p2][q2] {
                    m[p][q] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

/// Joinable constants by iterating the (refl), (cong), (step) rules with F
/// used backwards.
pub fn naive_joinable(fs: &FlatSystem, fwd: &Matrix) -> Matrix {
    let n = fs.len();
    let mut m = vec![vec![false; n]; n];
    for (p, row) in m.iter_mut().enumerate() {
        row[p] = true;
    }
    let apps = app_rules(fs);
    loop {
        let mut changed = false;
        for p in 0..n {
            for r in 0..n {
                if m[p][r] {
                    continue;
                }
                // p → q, q ↓ r   or   p ↓ q, r → q
                let step = (0..n).any(|q| (fwd[p][q] && m[q][r]) || (m[p][q] && fwd[r][q]));
                if step {
                    m[p][r] = true;
                    changed = true;
                }
            }
        }
        for &(p1, p2, p) in &apps {
            for &(q1, q2, q) in &apps {
                if !m[p][q] && m[p1][q1] && m[p2][q2] {
                    m[p][q] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

/// Top-stabilizable sides as class-id pairs (under `classes`) and
/// top-stabilizable class ids, computed from the definitions.
pub fn naive_ts(
    fs: &FlatSystem,
    fwd: &Matrix,
    classes: &[usize],
) -> (Vec<(usize, usize)>, Vec<usize>) {
    let n = fs.len();
    let apps = app_rules(fs);
    // C-transitions: class images of E-rules
    let mut c_trans: Vec<(usize, usize, usize)> = apps
        .iter()
        .map(|&(l, r, p)| (classes[l], classes[r], classes[p]))
        .collect();
    c_trans.sort_unstable();
    c_trans.dedup();

    let reducible = |p: Flat, q: Flat| {
        apps.iter().any(|&(l, r, _)| fwd[p][l] && fwd[q][r])
    };
    let mut sides: Vec<(usize, usize)> = Vec::new();
    let mut consts: Vec<usize> = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let side = (classes[p], classes[q]);
            if !reducible(p, q)
                && c_trans.iter().any(|&(a, b, _)| (a, b) == side)
                && !sides.contains(&side)
            {
                sides.push(side);
            }
        }
    }
    loop {
        let mut changed = false;
        for &(a, b, t) in &c_trans {
            if sides.contains(&(a, b)) && !consts.contains(&t) {
                consts.push(t);
                changed = true;
            }
            if (consts.contains(&a) || consts.contains(&b)) && !sides.contains(&(a, b)) {
                sides.push((a, b));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    sides.sort_unstable();
    consts.sort_unstable();
    (sides, consts)
}
