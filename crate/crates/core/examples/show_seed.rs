fn main() {
    let seed: u64 = std::env::args().nth(1).unwrap().parse().unwrap();
    let trs = gtrs::oracle::gen_random_trs(&gtrs::oracle::fuzz_spec(seed));
    print!("{}", gtrs::io::print_trs(&trs));
}
