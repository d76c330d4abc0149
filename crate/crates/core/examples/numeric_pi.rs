//! The partial sums converge to 16/π and 32/π³; compares them with
//! enclosures computed independently from Machin's formula.

use supercong::exact::to_decimal_digits;
use supercong::series::{reference_16_over_pi, reference_32_over_pi_cubed, s_g7, s_k2};

fn main() {
    let (lo, hi) = reference_16_over_pi(100);
    for n in [5, 20, 60] {
        let s = s_k2(n);
        println!("S({n:>2}) = {}  inside: {}", to_decimal_digits(&s, 100), lo <= s && s <= hi);
    }
    let (lo, hi) = reference_32_over_pi_cubed(60);
    let s = s_g7(40);
    println!("32/pi^3 ~ {}  inside: {}", to_decimal_digits(&s, 60), lo <= s && s <= hi);
}
