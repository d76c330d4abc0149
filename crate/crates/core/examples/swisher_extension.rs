//! Prime-power instances of the extension conjectures: the (K.2) sum at
//! level r, and the degree-7 companion whose modulus drops by one at p = 5.

use supercong::congruence::{check_g7, check_swisher};

fn main() {
    for (p, r) in [(3, 2), (5, 2), (7, 2), (3, 3)] {
        println!("{}", check_swisher(p, r).expect("odd prime"));
    }
    for p in [3, 5, 7, 11, 13] {
        println!("{}", check_g7(p, 1).expect("odd prime"));
    }
}
