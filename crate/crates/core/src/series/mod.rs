//! Exact and p-adic evaluation of the named sums and terms: the (K.2)
//! summand and its truncations, the degree-7 companion series, the WZ pair
//! `F`, `G`, and the auxiliary sums behind the congruence proof.

mod reference;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{inv_rising_or_zero, rising};
use crate::exact::{int, prime_power, rat, sign_power, PadicScaled, Rational};
use crate::{Error, Result};

pub use reference::{pi_interval, reference_16_over_pi, reference_32_over_pi_cubed};

fn half() -> Rational {
    rat(1, 2)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// The two built-in Ramanujan-type series.
///
/// * `K2`: `Σ (1/2)_n³/n!³ · (42n+5)/64ⁿ = 16/π`
/// * `G7`: `Σ (1/2)_n⁷/n!⁷ · (168n³+76n²+14n+1)/2^{6n} = 32/π³`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinSeries {
    K2,
    G7,
}

impl BuiltinSeries {
    /// Exact summand computed from Pochhammer products.
    pub fn term(self, n: u64) -> Rational {
        let n_i = n as i64;
        let h = rising(&half(), n_i).expect("(1/2)_n has no poles");
        let f = Rational::from_integer(crate::combinat::factorial(n));
        let ratio = h / f;
        match self {
            BuiltinSeries::K2 => {
                ratio.pow(3) * int(42 * n_i + 5) / Rational::from_integer(big(64).pow(n as u32))
            }
            BuiltinSeries::G7 => {
                let weight = 168 * n_i.pow(3) + 76 * n_i.pow(2) + 14 * n_i + 1;
                ratio.pow(7) * int(weight) / Rational::from_integer(big(2).pow(6 * n as u32))
            }
        }
    }

    fn first_term(self) -> i64 {
        match self {
            BuiltinSeries::K2 => 5,
            BuiltinSeries::G7 => 1,
        }
    }

    /// `(numerator, denominator)` of `t_{n+1} / t_n`.
    pub fn term_ratio(self, n: u64) -> (BigInt, BigInt) {
        let n = big(n as i64);
        let two_n1: BigInt = &n * 2 + 1;
        let n1: BigInt = &n + 1;
        match self {
            BuiltinSeries::K2 => (
                two_n1.pow(3) * (&n * 42 + 47),
                big(512) * n1.pow(3) * (&n * 42 + 5),
            ),
            BuiltinSeries::G7 => {
                let w = |m: &BigInt| big(168) * m.pow(3) + big(76) * m.pow(2) + big(14) * m + 1;
                (two_n1.pow(7) * w(&n1), big(8192) * n1.pow(7) * w(&n))
            }
        }
    }

    /// Exact truncation `Σ_{n=0}^{N} t_n` via the term-ratio recurrence.
    pub fn partial_sum(self, terms: u64) -> Rational {
        let mut t = int(self.first_term());
        let mut sum = t.clone();
        for n in 0..terms {
            let (num, den) = self.term_ratio(n);
            t *= Rational::new(num, den);
            sum += &t;
        }
        sum
    }

    /// Truncated sum evaluated entirely in fixed-precision p-adic arithmetic.
    pub fn partial_sum_padic(self, terms: u64, p: u64, prec: u32) -> Result<PadicScaled> {
        let enc = |x: BigInt| PadicScaled::encode(&Rational::from_integer(x), p, prec);
        let mut t = PadicScaled::from_integer(self.first_term(), p, prec);
        let mut sum = t.clone();
        for n in 0..terms {
            let (num, den) = self.term_ratio(n);
            t = t.mul(&enc(num)).div(&enc(den))?;
            sum = sum.add(&t)?;
        }
        Ok(sum)
    }
}

/// Summand of the (K.2) series, `(1/2)_n³/n!³ · (42n+5)/64ⁿ`.
pub fn k2_term(n: u64) -> Rational {
    BuiltinSeries::K2.term(n)
}

/// `S(N) = Σ_{n=0}^{N} k2_term(n)`.
pub fn s_k2(terms: u64) -> Rational {
    BuiltinSeries::K2.partial_sum(terms)
}

/// `S(N)` in p-adic arithmetic with `prec` digits.
pub fn s_k2_padic(terms: u64, p: u64, prec: u32) -> Result<PadicScaled> {
    BuiltinSeries::K2.partial_sum_padic(terms, p, prec)
}

/// Summand `(1/2)_n⁷/n!⁷ · (168n³+76n²+14n+1)/2^{6n}`.
pub fn g7_term(n: u64) -> Rational {
    BuiltinSeries::G7.term(n)
}

pub fn s_g7(terms: u64) -> Rational {
    BuiltinSeries::G7.partial_sum(terms)
}

pub fn s_g7_padic(terms: u64, p: u64, prec: u32) -> Result<PadicScaled> {
    BuiltinSeries::G7.partial_sum_padic(terms, p, prec)
}

/// Weight `84n² − 56nk + 4k² + 52n − 12k + 5` of the WZ function `F`.
pub fn wz_weight(n: i64, k: i64) -> i64 {
    84 * n * n - 56 * n * k + 4 * k * k + 52 * n - 12 * k + 5
}

fn shared_factor(n: i64, k: i64, upper_shift: i64) -> Rational {
    let h = half();
    let hn = rising(&h, n).expect("(1/2)_n has no poles");
    let hnk = rising(&h, n + k - upper_shift).expect("half-integer Pochhammer has no poles");
    let hmk = rising(&h, n - k).expect("half-integer Pochhammer has no poles");
    let nf = inv_rising_or_zero(&Rational::one(), n).expect("n >= 0");
    sign_power(k) * hn * hnk * hmk.pow(2) * nf.pow(2) / prime_power(2, 4 * n)
}

/// `F(n,k) = w(n,k)·(−1)^k (1/2)_n (1/2)_{n+k} (1/2)_{n−k}² / (2^{4n} (1)_n² (1)_{2n−k+1})`.
///
/// Vanishes when `2n − k + 1 < 0` because `1/(1)_{2n−k+1}` does.
pub fn wz_f(n: i64, k: i64) -> Rational {
    let tail = inv_rising_or_zero(&Rational::one(), 2 * n - k + 1).expect("no poles for a = 1");
    if tail.is_zero() {
        return tail;
    }
    int(wz_weight(n, k)) * shared_factor(n, k, 0) * tail
}

/// `G(n,k) = 64n²·(−1)^k (1/2)_n (1/2)_{n+k−1} (1/2)_{n−k}² / (2^{4n} (1)_n² (1)_{2n−k})`.
pub fn wz_g(n: i64, k: i64) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let tail = inv_rising_or_zero(&Rational::one(), 2 * n - k).expect("no poles for a = 1");
    if tail.is_zero() {
        return tail;
    }
    int(64 * n * n) * shared_factor(n, k, 1) * tail
}

fn require_odd_prime(p: u64, what: &str) -> Result<()> {
    if p < 3 || !crate::exact::is_prime(p) {
        return Err(Error::Domain(format!("{what} needs an odd prime, got {p}")));
    }
    Ok(())
}

fn require_prime_above_3(p: u64, what: &str) -> Result<()> {
    if p <= 3 || !crate::exact::is_prime(p) {
        return Err(Error::Domain(format!("{what} needs a prime p > 3, got {p}")));
    }
    Ok(())
}

/// Both sides of `∏_{k=1}^{p−1}(p+2k) ≡ (−1)^{(p−1)/2} ∏_{k=1}^{(p−1)/2}(2k−1)² (mod p³)`.
pub fn key1_sides(p: u64) -> Result<(Rational, Rational)> {
    require_prime_above_3(p, "key1_sides")?;
    let pi = p as i64;
    let lhs = (1..pi).fold(BigInt::one(), |acc, k| acc * (pi + 2 * k));
    let half_p = (pi - 1) / 2;
    let odd = (1..=half_p).fold(BigInt::one(), |acc, k| acc * (2 * k - 1));
    let rhs = sign_power(half_p) * Rational::from_integer(odd.pow(2));
    Ok((Rational::from_integer(lhs), rhs))
}

/// `Σ_{k=2}^{p} (−1)^k (1/2)_{(p−1)/2+k} (1/2)_{(p+1)/2−k}² / (1)_{p+1−k}`.
pub fn key2_sum(p: u64) -> Result<Rational> {
    require_odd_prime(p, "key2_sum")?;
    let pi = p as i64;
    let h = half();
    // running values of (1/2)_{(p-1)/2+k}, (1/2)_{(p+1)/2-k} and 1/(p+1-k)!
    let mut up = rising(&h, (pi - 1) / 2 + 2)?;
    let mut down = rising(&h, (pi + 1) / 2 - 2)?;
    let mut inv_fact = inv_rising_or_zero(&Rational::one(), pi - 1)?;
    let mut sum = Rational::zero();
    for k in 2..=pi {
        sum += sign_power(k) * &up * down.pow(2) * &inv_fact;
        let j = (pi + 1) / 2 - k;
        up *= &h + int((pi - 1) / 2 + k);
        down /= &h + int(j - 1);
        inv_fact *= int(pi + 1 - k);
    }
    Ok(sum)
}

/// `Σ_{n=1}^{p−1} (1−p/2)_{n−1}² / (n! (1−3p/2)_{n−1})`, only for `p > 3`.
pub fn easier_sum(p: u64) -> Result<Rational> {
    require_prime_above_3(p, "easier_sum")?;
    let pi = p as i64;
    let a = int(1) - rat(pi, 2);
    let b = int(1) - rat(3 * pi, 2);
    // running products: (a)_{n-1}, (b)_{n-1}, n!
    let (mut ra, mut rb, mut nf) = (Rational::one(), Rational::one(), Rational::one());
    let mut sum = Rational::zero();
    for n in 1..pi {
        nf *= int(n);
        if rb.is_zero() {
            return Err(Error::Pole(format!("(1-3p/2)_{} vanishes at p = {p}", n - 1)));
        }
        sum += ra.pow(2) / (&nf * &rb);
        ra *= &a + int(n - 1);
        rb *= &b + int(n - 1);
    }
    Ok(sum)
}

/// Exact central binomial side of Morley's congruence, `C(p−1, (p−1)/2)`,
/// and its right side `(−1)^{(p−1)/2} 2^{2p−2}`.
pub fn morley_sides(p: u64) -> Result<(Rational, Rational)> {
    require_prime_above_3(p, "morley_sides")?;
    let half_p = (p - 1) / 2;
    let lhs = crate::combinat::binomial(p - 1, half_p)?;
    let rhs = sign_power(half_p as i64) * prime_power(2, 2 * p as i64 - 2);
    Ok((lhs, rhs))
}

/// Both sides of `(1/2)_{(p−1)/2}/(1)_{(p−1)/2}² = C(p−1,(p−1)/2) / (2^{p−2}(p−1)(1)_{(p−3)/2})`.
pub fn p2_sides(p: u64) -> Result<(Rational, Rational)> {
    require_odd_prime(p, "p2_sides")?;
    let m = (p as i64 - 1) / 2;
    let lhs = rising(&half(), m)? / rising(&Rational::one(), m)?.pow(2);
    let rhs = crate::combinat::binomial(p - 1, m as u64)?
        / (prime_power(2, p as i64 - 2) * int(p as i64 - 1) * rising(&Rational::one(), m - 1)?);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{vp, Valuation};

    #[test]
    fn k2_terms_and_sums() {
        assert_eq!(k2_term(0), int(5));
        assert_eq!(k2_term(1), rat(47, 512));
        assert_eq!(k2_term(2), rat(2403, 2097152));
        assert_eq!(s_k2(0), int(5));
        assert_eq!(s_k2(1), rat(2607, 512));
        assert_eq!(s_k2(2), rat(10680675, 2097152));
    }

    #[test]
    fn recurrence_matches_direct_products() {
        for series in [BuiltinSeries::K2, BuiltinSeries::G7] {
            let mut direct = Rational::zero();
            for n in 0..=40 {
                direct += series.term(n);
                assert_eq!(series.partial_sum(n), direct, "{series:?} N = {n}");
            }
        }
    }

    #[test]
    fn g7_terms_and_sums() {
        assert_eq!(s_g7(0), int(1));
        assert_eq!(g7_term(1), rat(259, 8192));
        assert_eq!(s_g7(1), rat(8451, 8192));
    }

    #[test]
    fn padic_sums_match_exact() {
        assert_eq!(s_k2_padic(0, 7, 8).unwrap(), PadicScaled::from_integer(5, 7, 8));
        assert!(s_k2_padic(2, 5, 10).unwrap().agrees_with(&rat(10680675, 2097152)));
        assert!(s_k2_padic(5, 11, 14).unwrap().agrees_with(&s_k2(5)));
        assert!(s_g7_padic(6, 13, 12).unwrap().agrees_with(&s_g7(6)));
    }

    #[test]
    fn padic_sums_match_exact_for_small_primes() {
        for p in (3..=200).filter(|&p| crate::exact::is_prime(p)) {
            let n = (p - 1) / 2;
            assert!(s_k2_padic(n, p, 14).unwrap().agrees_with(&s_k2(n)), "p = {p}");
        }
    }

    #[test]
    fn wz_f_examples() {
        assert_eq!(wz_f(1, 3), rat(315, 32));
        assert_eq!(wz_f(0, 2), int(0));
        for n in 0..=50 {
            assert_eq!(wz_f(n, 0), k2_term(n as u64), "n = {n}");
        }
    }

    #[test]
    fn wz_g_examples() {
        for k in 0..6 {
            assert_eq!(wz_g(0, k), int(0));
        }
        assert_eq!(wz_g(2, 1), rat(-3, 512));
        assert_eq!(wz_g(2, 2), rat(45, 256));
        assert_eq!(wz_g(2, 3), rat(-315, 64));
        assert_eq!(wz_g(1, 3), int(0));
    }

    #[test]
    fn key1_examples() {
        assert_eq!(key1_sides(5).unwrap(), (int(9009), int(9)));
        assert_eq!(key1_sides(7).unwrap(), (int(6235515), int(-225)));
        assert!(matches!(key1_sides(3), Err(Error::Domain(_))));
    }

    #[test]
    fn key2_examples() {
        assert_eq!(key2_sum(3).unwrap(), rat(-405, 16));
        assert_eq!(vp(&key2_sum(3).unwrap(), 3), Valuation::Finite(4));
        assert!(vp(&key2_sum(5).unwrap(), 5).meets(Valuation::Finite(3)).unwrap());
    }

    #[test]
    fn easier_examples() {
        let e5 = easier_sum(5).unwrap();
        assert_eq!(e5, int(1) - rat(9, 52) + rat(3, 1144) - rat(1, 27456));
        assert_eq!(e5, rat(22775, 27456));
        assert_eq!(vp(&e5, 5), Valuation::Finite(2));
        assert!(vp(&easier_sum(7).unwrap(), 7).meets(Valuation::Finite(2)).unwrap());
        assert!(matches!(easier_sum(3), Err(Error::Domain(_))));
    }

    #[test]
    fn key2_reduces_to_easier_sum() {
        // key2 = -(1+p/2)_p / (1/2)_{(p+1)/2} · p/6 · easier
        for p in [5u64, 7, 11, 13] {
            let pi = p as i64;
            let scale = rising(&(int(1) + rat(pi, 2)), pi).unwrap()
                / rising(&half(), (pi + 1) / 2).unwrap();
            let expected = -scale * rat(pi, 6) * easier_sum(p).unwrap();
            assert_eq!(key2_sum(p).unwrap(), expected, "p = {p}");
        }
    }

    #[test]
    fn p2_and_morley_examples() {
        assert_eq!(p2_sides(3).unwrap(), (rat(1, 2), rat(1, 2)));
        let (l, r) = p2_sides(5).unwrap();
        assert_eq!(l, rat(3, 16));
        assert_eq!(l, r);
        assert_eq!(morley_sides(5).unwrap(), (int(6), int(256)));
        assert_eq!(morley_sides(7).unwrap(), (int(20), int(-4096)));
    }
}
