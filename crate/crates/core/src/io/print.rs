use std::fmt::Write;

use crate::term::Trs;

/// Prints `trs` in the input syntax; `parse_trs(&print_trs(t))` yields the
/// same rules.
pub fn print_trs(trs: &Trs) -> String {
    let mut out = String::from("(RULES");
    for (i, r) in trs.rules.iter().enumerate() {
        let sep = if i + 1 < trs.rules.len() { "," } else { "" };
        let _ = write!(
            out,
            "\n  {} -> {}{sep}",
            trs.store.display(r.lhs),
            trs.store.display(r.rhs)
        );
    }
    out.push_str("\n)\n");
    out
}
