//! Fixed-precision p-adic arithmetic: cancellation is tracked, and a value
//! whose digits have all cancelled reports only a lower bound.

use supercong::congruence::{Backend, Check, CheckOptions};
use supercong::exact::{rat, PadicScaled};
use supercong::series::{s_k2, s_k2_padic};

fn main() {
    let p = 7;
    let x = PadicScaled::encode(&rat(47, 512), p, 6);
    let y = PadicScaled::encode(&rat(-47, 512), p, 6);
    println!("47/512       = {x}");
    println!("x + (-x)     = {}  valuation {}", x.add(&y).unwrap(), x.add(&y).unwrap().valuation());
    println!("1/(49/3)     = {}", PadicScaled::encode(&rat(49, 3), p, 6).invert().unwrap());

    let modular = s_k2_padic(3, p, 8).unwrap();
    println!("S(3) mod 7^8 = {modular}  agrees with exact: {}", modular.agrees_with(&s_k2(3)));

    let opts = CheckOptions::with_backend(Backend::Padic);
    for p in [1009u64, 1999, 4999] {
        println!("{}", Check::K2.run(p, 1, &opts).unwrap());
    }
}
