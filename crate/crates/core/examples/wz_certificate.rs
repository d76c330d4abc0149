//! Proves the WZ certificate identity symbolically, then shows that
//! perturbing any single coefficient breaks it.

use supercong::exact::int;
use supercong::wz::{certificate_at, Certificate};

fn main() {
    let cert = Certificate::guillera();
    let (lhs, rhs) = cert.sides();
    println!("lhs = {lhs}");
    println!("rhs = {rhs}");
    println!("identity holds: {}", cert.holds());

    let (l, r) = certificate_at(2, 1).expect("no pole at (2, 1)");
    println!("at (n, k) = (2, 1): {l} = {r}");

    let names: Vec<String> = Certificate::guillera().coefficients_mut().into_iter().map(|(n, _)| n).collect();
    for (i, name) in names.iter().enumerate() {
        let mut mutated = Certificate::guillera();
        *mutated.coefficients_mut()[i].1 += int(1);
        println!("{name:>18} + 1 -> holds: {}", mutated.holds());
    }
}
