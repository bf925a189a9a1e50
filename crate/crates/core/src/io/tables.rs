use std::fmt::Write;

use crate::analysis::Analysis;
use crate::automaton::NTransition;
use crate::preprocess::Shape;
use crate::relations::BinRel;

/// Plain-text dump of every intermediate table, in flat-constant id order.
/// Relations are printed one row per line: `p: q1 q2 ...`.
pub fn render_tables(a: &Analysis) -> String {
    let fs = a.flat();
    let cc = a.congruence();
    let nfa = a.automaton();
    let store = fs.curried.store();
    let class = |c: usize| format!("{}_R", fs.label(cc.representative(c)));
    let mut out = String::new();

    out.push_str("E:\n");
    for p in 0..fs.len() {
        match fs.shape(p) {
            Shape::Const(c) => writeln!(out, "  {} -> {}", store.display(c), fs.label(p)),
            Shape::App(l, r) => writeln!(out, "  {} ∘ {} -> {}", fs.label(l), fs.label(r), fs.label(p)),
        }
        .expect("string write");
    }
    out.push_str("R♭:\n");
    for &(l, r) in fs.rflat() {
        let _ = writeln!(out, "  {} -> {}", fs.label(l), fs.label(r));
    }

    let states: Vec<String> = nfa.states().into_iter().map(|q| nfa.state_label(fs, q)).collect();
    let _ = writeln!(out, "N states: {}", states.join(" "));
    out.push_str("N transitions:\n");
    for t in nfa.transitions(fs) {
        match t {
            NTransition::Const(c, q) => {
                let _ = writeln!(out, "  {} -> {}", store.display(c), nfa.state_label(fs, q));
            }
            NTransition::App(q1, q2, q) => {
                let _ = writeln!(
                    out,
                    "  {} ∘ {} -> {}",
                    nfa.state_label(fs, q1),
                    nfa.state_label(fs, q2),
                    nfa.state_label(fs, q)
                );
            }
        }
    }

    out.push_str("classes:\n");
    for c in 0..cc.class_count() {
        let members: Vec<String> = cc.members(c).iter().map(|&p| fs.label(p)).collect();
        let _ = writeln!(out, "  {} = {{{}}}", class(c), members.join(", "));
    }
    out.push_str("C:\n");
    for &p in fs.const_rules() {
        if let Shape::Const(c) = fs.shape(p) {
            let _ = writeln!(out, "  {} -> {}", store.display(c), class(cc.class_of(p)));
        }
    }
    for t in cc.transitions() {
        let _ = writeln!(out, "  {} ∘ {} -> {}", class(t.left), class(t.right), class(t.target));
    }

    let relation = |out: &mut String, name: &str, rel: &BinRel| {
        let _ = writeln!(out, "{name}:");
        for p in 0..fs.len() {
            let row: Vec<String> = rel.row(p).map(|q| fs.label(q)).collect();
            let _ = writeln!(out, "  {}: {}", fs.label(p), row.join(" "));
        }
    };
    relation(&mut out, "F", a.forward());
    relation(&mut out, "↑", a.meetable());
    relation(&mut out, "↓", a.joinable());

    let nf = a.nf_pairs();
    let reducible: Vec<String> = (0..fs.len())
        .flat_map(|p| {
            (0..fs.len())
                .filter(move |&q| !nf.get(p, q))
                .map(move |q| format!("{} ∘ {}", fs.label(p), fs.label(q)))
        })
        .collect();
    let _ = writeln!(out, "¬NF°: {}", reducible.join(", "));

    let ts = a.stability();
    let sides: Vec<String> = ts
        .sides()
        .map(|t| {
            let t = &cc.transitions()[t];
            format!("{} ∘ {}", class(t.left), class(t.right))
        })
        .collect();
    let consts: Vec<String> = ts.constants().map(class).collect();
    let _ = writeln!(out, "TS sides: {}", sides.join(", "));
    let _ = writeln!(out, "TS constants: {}", consts.join(", "));
    out
}
