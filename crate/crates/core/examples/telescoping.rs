//! Splits S((p-1)/2) into the boundary term F((p-1)/2, p) and the G-sum.

use supercong::wz::{telescoping_check, wz_grid_check};

fn main() {
    wz_grid_check(20, 20).expect("WZ relation on the 20 x 20 grid");
    for p in [3u64, 5, 7, 11, 13] {
        let t = telescoping_check(p).expect("telescoping holds");
        println!("p = {p:>2}: S = {}\n        F = {}\n        G = {}", t.lhs, t.boundary, t.g_sum);
    }
}
