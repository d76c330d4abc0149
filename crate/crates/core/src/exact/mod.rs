//! Exact rationals, p-adic valuations and congruences between rationals.

mod padic;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use padic::PadicScaled;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (zero is `0/1`).
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A p-adic valuation.
///
/// `AtLeast` only arises from the fixed-precision backend, when a value is
/// indistinguishable from zero at the surviving precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    AtLeast(i64),
    Infinite,
}

impl Valuation {
    /// Whether this valuation is at least `required`.
    ///
    /// Returns `None` when the answer depends on digits that are not known,
    /// i.e. `AtLeast(v)` against a larger requirement.
    pub fn meets(self, required: Valuation) -> Option<bool> {
        use Valuation::*;
        match (self, required) {
            (Infinite, _) => Some(true),
            (Finite(_), Infinite) => Some(false),
            (Finite(v), Finite(k) | AtLeast(k)) => Some(v >= k),
            (AtLeast(v), Finite(k) | AtLeast(k)) if v >= k => Some(true),
            (AtLeast(_), _) => None,
        }
    }

    /// The known lower bound, `None` for infinity.
    pub fn lower_bound(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// Multiplicity of `p` in a nonzero integer; strips it from `n` in place.
pub(crate) fn strip_prime(n: &mut BigUint, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p_big = BigUint::from(p);
    let mut count = 0;
    // peel off p^(2^j) blocks first so huge valuations stay cheap
    let mut powers = vec![p_big.clone()];
    loop {
        let last = powers.last().unwrap();
        if !(&*n % last).is_zero() {
            break;
        }
        *n /= last;
        count += 1i64 << (powers.len() - 1);
        let next = last * last;
        powers.push(next);
    }
    while let Some(pw) = powers.pop() {
        if (&*n % &pw).is_zero() {
            *n /= &pw;
            count += 1i64 << powers.len();
        }
    }
    count
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let mut m = n.magnitude().clone();
    strip_prime(&mut m, p)
}

/// p-adic valuation `v_p(num) − v_p(den)`, infinite for zero.
pub fn vp(x: &Rational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

/// `a ≡ b (mod p^k)` for rationals, i.e. `v_p(a − b) ≥ k`.
///
/// Also returns the achieved valuation so callers can report the margin.
pub fn congruent(a: &Rational, b: &Rational, p: u64, k: i64) -> (bool, Valuation) {
    let v = vp(&(a - b), p);
    let ok = v.meets(Valuation::Finite(k)).unwrap_or(false);
    (ok, v)
}

/// `p^e` as a rational; `e` may be negative.
pub fn prime_power(p: u64, e: i64) -> Rational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// `(-1)^e`.
pub fn sign_power(e: i64) -> Rational {
    if e.is_even() {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Decimal rendering `num/den` (or `num` for integers).
pub fn to_decimal_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal expansion of `x` truncated (toward zero) after `digits` places.
pub fn to_decimal_digits(x: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (x * Rational::from_integer(scale)).trunc().to_integer();
    let negative = scaled.sign() == num_bigint::Sign::Minus || (scaled.is_zero() && x.is_negative());
    let mut body = scaled.magnitude().to_string();
    let width = digits as usize + 1;
    if body.len() < width {
        body = format!("{}{body}", "0".repeat(width - body.len()));
    }
    let (whole, frac) = body.split_at(body.len() - digits as usize);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Deterministic primality test by trial division, sufficient for the
/// prime ranges handled here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decimal_digits_truncate() {
        assert_eq!(to_decimal_digits(&rat(1, 3), 5), "0.33333");
        assert_eq!(to_decimal_digits(&rat(-2, 3), 3), "-0.666");
        assert_eq!(to_decimal_digits(&rat(-1, 30), 1), "-0.0");
        assert_eq!(to_decimal_digits(&rat(2607, 512), 4), "5.0917");
        assert_eq!(to_decimal_digits(&int(-15), 0), "-15");
        assert_eq!(to_decimal_digits(&rat(1, 1000), 3), "0.001");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-5000i64..5000, 1i64..5000).prop_map(|(n, d)| rat(n, d))
    }

    #[test]
    fn valuation_of_zero_is_infinite() {
        assert_eq!(vp(&int(0), 7), Valuation::Infinite);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&rat(25, 12), 5), Valuation::Finite(2));
        assert_eq!(vp(&rat(25, 12), 2), Valuation::Finite(-2));
        assert_eq!(vp(&rat(25, 12), 3), Valuation::Finite(-1));
        // S(2) - 25 for the (K.2) series at p = 5
        assert_eq!(vp(&rat(-41748125, 2097152), 5), Valuation::Finite(4));
    }

    #[test]
    fn huge_valuations() {
        let x = prime_power(3, 1000) * rat(7, 2);
        assert_eq!(vp(&x, 3), Valuation::Finite(1000));
        assert_eq!(vp(&x.recip(), 3), Valuation::Finite(-1000));
        for e in 0..70 {
            assert_eq!(vp(&prime_power(5, e), 5), Valuation::Finite(e));
        }
    }

    #[test]
    fn congruence_examples() {
        let x = rat(17, 9);
        assert_eq!(congruent(&x, &x, 5, 3), (true, Valuation::Infinite));
        assert_eq!(
            congruent(&rat(2607, 512), &int(-15), 3, 4),
            (true, Valuation::Finite(4))
        );
        assert_eq!(
            congruent(&rat(1, 2), &int(1), 3, 1),
            (false, Valuation::Finite(0))
        );
    }

    #[test]
    fn meets_handles_lower_bounds() {
        use Valuation::*;
        assert_eq!(AtLeast(5).meets(Finite(4)), Some(true));
        assert_eq!(AtLeast(3).meets(Finite(4)), None);
        assert_eq!(Finite(3).meets(Finite(4)), Some(false));
        assert_eq!(Infinite.meets(Infinite), Some(true));
        assert_eq!(Finite(100).meets(Infinite), Some(false));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
    }

    proptest! {
        #[test]
        fn valuation_is_additive(x in small_rational(), y in small_rational(), p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
            prop_assert_eq!(vp(&(&x * &y), p), match (vp(&x, p), vp(&y, p)) {
                (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
                _ => Valuation::Infinite,
            });
        }

        #[test]
        fn valuation_is_ultrametric(x in small_rational(), y in small_rational(), p in prop::sample::select(vec![3u64, 5, 7])) {
            let (vx, vy, vs) = (vp(&x, p), vp(&y, p), vp(&(&x + &y), p));
            if let (Valuation::Finite(a), Valuation::Finite(b)) = (vx, vy) {
                let m = a.min(b);
                prop_assert!(vs.meets(Valuation::Finite(m)).unwrap());
                if a != b {
                    prop_assert_eq!(vs, Valuation::Finite(m));
                }
            }
        }

        #[test]
        fn congruence_is_an_equivalence(
            a in 0i64..400, b in 0i64..400, c in 0i64..400,
            d in 1i64..50, k in 1i64..4,
        ) {
            let p = 3;
            // p-integral inputs: denominators coprime to 3
            let den = |x: i64| if x % 3 == 0 { x + 1 } else { x };
            let (a, b, c) = (rat(a, den(d)), rat(b, den(d + 1)), rat(c, den(d + 2)));
            prop_assert!(congruent(&a, &a, p, k).0);
            prop_assert_eq!(congruent(&a, &b, p, k).0, congruent(&b, &a, p, k).0);
            if congruent(&a, &b, p, k).0 && congruent(&b, &c, p, k).0 {
                prop_assert!(congruent(&a, &c, p, k).0);
            }
        }
    }
}
