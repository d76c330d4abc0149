//! Defines a supercongruence in the expression language and sweeps it.
//!
//! Pass a series file to check your own; see `series/` for the format.

use supercong::congruence::CheckOptions;
use supercong::exact::to_decimal_string;
use supercong::hypdsl::{parse, parse_series_file, sum_series, sweep_series, SumMode};

const BUILTIN: &str = "\
name=b2
summand=(-1)^n * poch(1/2,n)^3 / fact(n)^3 * (4*n+1)
rhs=p*(-1)^((p-1)/2)
modexp=3
";

fn main() {
    let src = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable series file"),
        None => BUILTIN.to_string(),
    };
    let specs = match parse_series_file(&src) {
        Ok(specs) => specs,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };

    let summand = parse("poch(1/2,n)^3 / fact(n)^3 * (42*n+5) / 64^n", &["n"]).unwrap();
    println!("summand: {summand}");
    let s3 = sum_series(&summand, "n", 3, SumMode::Exact).unwrap().into_exact().unwrap();
    println!("S(3) = {}", to_decimal_string(&s3));

    let reports = sweep_series(&specs, 3, 60, 1, 4, &CheckOptions::default()).unwrap();
    for r in &reports {
        println!("{r}");
    }
}
