//! Prints the intermediate tables of a problem file.

use gtrs::{io, Analysis};

fn main() {
    let path = std::env::args().nth(1).expect("usage: tables FILE");
    let text = std::fs::read_to_string(&path).expect("readable file");
    let trs = io::parse_trs(&text).unwrap_or_else(|e| panic!("{path}:{e}"));
    let analysis = Analysis::new(&trs).expect("well-formed system");
    print!("{}", io::render_tables(&analysis));
}
