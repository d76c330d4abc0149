//! Rigorous rational enclosures of π, 16/π and 32/π³ from Machin's formula
//! `π/4 = 4·arctan(1/5) − arctan(1/239)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{prime_power, Rational};

/// Bounds `lo ≤ arctan(1/x) ≤ hi` from the alternating Taylor series, with
/// `hi − lo` below `tolerance`.
fn arctan_inverse_bounds(x: u64, tolerance: &Rational) -> (Rational, Rational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone(); // x^(2k+1)
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        let next_power = &power * &x2;
        let next = Rational::new(BigInt::one(), &next_power * BigInt::from(2 * k + 3));
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
        if &next < tolerance {
            // the true value lies between consecutive partial sums
            let other = if k.is_even() { &sum - &next } else { &sum + &next };
            return if k.is_even() { (other, sum) } else { (sum, other) };
        }
        power = next_power;
        k += 1;
    }
}

/// Rounds `lo` down and `hi` up onto the grid `10^-grid_digits`.
fn widen_to_decimal_grid(lo: &Rational, hi: &Rational, grid_digits: u32) -> (Rational, Rational) {
    let scale = BigInt::from(10).pow(grid_digits);
    let down = (lo * Rational::from_integer(scale.clone())).floor().to_integer();
    let up = (hi * Rational::from_integer(scale.clone())).ceil().to_integer();
    (Rational::new(down, scale.clone()), Rational::new(up, scale))
}

fn tolerance(digits: u32) -> Rational {
    prime_power(10, -(digits as i64))
}

/// Exact rational bounds `lo < π < hi` with `hi − lo < 10^-digits`.
pub fn pi_interval(digits: u32) -> (Rational, Rational) {
    // 16 and 4 amplify the arctan errors, so ask for a few more digits
    let tol = tolerance(digits + 3);
    let (lo5, hi5) = arctan_inverse_bounds(5, &tol);
    let (lo239, hi239) = arctan_inverse_bounds(239, &tol);
    let four = Rational::from_integer(BigInt::from(4));
    let sixteen = Rational::from_integer(BigInt::from(16));
    let lo = &sixteen * lo5 - &four * hi239;
    let hi = &sixteen * hi5 - &four * lo239;
    widen_to_decimal_grid(&lo, &hi, digits + 2)
}

fn enclose<F>(digits: u32, map: F) -> (Rational, Rational)
where
    F: Fn(&Rational, &Rational) -> (Rational, Rational),
{
    let target = tolerance(digits);
    let mut guard = 3;
    loop {
        let (pi_lo, pi_hi) = pi_interval(digits + guard);
        let (lo, hi) = map(&pi_lo, &pi_hi);
        let (lo, hi) = widen_to_decimal_grid(&lo, &hi, digits + guard);
        if &hi - &lo < target {
            return (lo, hi);
        }
        guard += 2;
    }
}

/// Exact rational bounds `lo < 16/π < hi` with `hi − lo < 10^-digits`,
/// derived from the Machin enclosure of π (independent of the (K.2) series).
pub fn reference_16_over_pi(digits: u32) -> (Rational, Rational) {
    let sixteen = Rational::from_integer(BigInt::from(16));
    enclose(digits, |lo, hi| (&sixteen / hi, &sixteen / lo))
}

/// Exact rational bounds `lo < 32/π³ < hi` with `hi − lo < 10^-digits`.
pub fn reference_32_over_pi_cubed(digits: u32) -> (Rational, Rational) {
    let c = Rational::from_integer(BigInt::from(32));
    enclose(digits, |lo, hi| (&c / hi.pow(3), &c / lo.pow(3)))
}
