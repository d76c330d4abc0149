//! Pochhammer symbols, binomials, generalized harmonic numbers and the
//! ε-expansion of rising factorials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::Rational;
use crate::{Error, Result};

/// Rising factorial `(a)_m`.
///
/// For `m ≥ 0` this is `a(a+1)…(a+m−1)`; for `m < 0` it is the Gamma-quotient
/// continuation `∏_{k=1}^{|m|} 1/(a−k)`, which has a pole when some `a − k`
/// vanishes.
pub fn rising(a: &Rational, m: i64) -> Result<Rational> {
    let (u, v) = (a.numer(), a.denom());
    let len = m.unsigned_abs();
    if m >= 0 {
        // ∏ (u + jv) / v^m, reduced once
        let num = (0..len).fold((BigInt::one(), u.clone()), |(acc, f), _| {
            let next = &f + v;
            (acc * f, next)
        });
        Ok(Rational::new(num.0, denominator_power(v, len)))
    } else {
        let mut den = BigInt::one();
        let mut factor = u - v;
        for k in 1..=len {
            if factor.is_zero() {
                return Err(Error::Pole(format!("({a})_{m}: factor a-{k} vanishes")));
            }
            den *= &factor;
            factor -= v;
        }
        Ok(Rational::new(denominator_power(v, len), den))
    }
}

fn denominator_power(v: &BigInt, e: u64) -> BigInt {
    if v.is_one() {
        BigInt::one()
    } else {
        num_traits::pow(v.clone(), e as usize)
    }
}

/// `1/(a)_m` with poles of the denominator mapped to zero.
///
/// For negative `m` the reciprocal `Γ(a)/Γ(a+m) = ∏_{k=1}^{|m|} (a−k)` is a
/// polynomial in `a` and simply vanishes when `a` is a positive integer
/// `≤ |m|`; e.g. `1/(1)_{-1} = 0`. For `m ≥ 0` the result is infinite if
/// `(a)_m = 0`, which is reported as a pole.
pub fn inv_rising_or_zero(a: &Rational, m: i64) -> Result<Rational> {
    if m >= 0 {
        let r = rising(a, m)?;
        if r.is_zero() {
            return Err(Error::Pole(format!("1/({a})_{m} with ({a})_{m} = 0")));
        }
        return Ok(r.recip());
    }
    let (u, v) = (a.numer(), a.denom());
    let len = m.unsigned_abs();
    let mut num = BigInt::one();
    let mut factor = u - v;
    for _ in 0..len {
        if factor.is_zero() {
            return Ok(Rational::zero());
        }
        num *= &factor;
        factor -= v;
    }
    Ok(Rational::new(num, denominator_power(v, len)))
}

/// `n!` as an integer, computed as `(1)_n`.
pub(crate) fn factorial(n: u64) -> BigInt {
    rising(&Rational::one(), n as i64)
        .expect("(1)_n has no poles for n >= 0")
        .to_integer()
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<Rational> {
    if k > n {
        return Err(Error::Domain(format!("binomial({n}, {k}) needs k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(Rational::from_integer(acc))
}

/// Generalized harmonic number `H_n^{(i)} = Σ_{j=1}^{n} j^{−i}`.
pub fn harmonic(n: u64, i: u32) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    // common denominator lcm(1..n)^i keeps this at one reduction
    let lcm = (1..=n).fold(BigInt::one(), |acc, j| acc.lcm(&BigInt::from(j)));
    let denom = lcm.pow(i);
    let numer = (1..=n).fold(BigInt::zero(), |acc, j| acc + &denom / BigInt::from(j).pow(i));
    Rational::new(numer, denom)
}

/// Polynomial in ε truncated at a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsPoly {
    coefficients: Vec<Rational>,
}

impl EpsPoly {
    /// The constant polynomial `1` truncated at degree `d`.
    pub fn one(d: usize) -> Self {
        let mut coefficients = vec![Rational::zero(); d + 1];
        coefficients[0] = Rational::one();
        EpsPoly { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient of `ε^i`.
    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coefficients[i]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Multiplies in place by `(c + ε)`, discarding the overflow term.
    fn mul_linear(&mut self, c: &Rational) {
        for i in (0..self.coefficients.len()).rev() {
            let shifted = if i > 0 { self.coefficients[i - 1].clone() } else { Rational::zero() };
            self.coefficients[i] = &self.coefficients[i] * c + shifted;
        }
    }
}

/// Coefficients of `(1+ε)_k = (1+ε)(2+ε)…(k+ε)` up to `ε^d`.
pub fn rising_eps_poly(k: u64, d: usize) -> EpsPoly {
    let mut poly = EpsPoly::one(d);
    for j in 1..=k {
        poly.mul_linear(&Rational::from_integer(BigInt::from(j)));
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn rising_examples() {
        assert_eq!(rising(&rat(7, 3), 0).unwrap(), int(1));
        assert_eq!(rising(&rat(1, 2), 4).unwrap(), rat(105, 16));
        assert_eq!(rising(&rat(1, 2), -2).unwrap(), rat(4, 3));
        assert!(matches!(rising(&int(2), -3), Err(Error::Pole(_))));
        assert_eq!(rising(&int(-2), 3).unwrap(), int(0));
    }

    #[test]
    fn reciprocal_with_zero_at_pole() {
        assert_eq!(inv_rising_or_zero(&int(1), -1).unwrap(), int(0));
        assert_eq!(inv_rising_or_zero(&int(1), -5).unwrap(), int(0));
        assert_eq!(inv_rising_or_zero(&int(1), 3).unwrap(), rat(1, 6));
        assert_eq!(inv_rising_or_zero(&rat(1, 2), -2).unwrap(), rat(3, 4));
        assert!(matches!(inv_rising_or_zero(&int(-1), 3), Err(Error::Pole(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 0).unwrap(), int(1));
        assert_eq!(binomial(4, 2).unwrap(), int(6));
        assert_eq!(binomial(6, 3).unwrap(), int(20));
        assert_eq!(binomial(10, 10).unwrap(), int(1));
        assert!(matches!(binomial(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_matches_factorials() {
        for n in 0..40u64 {
            for k in 0..=n {
                let f = Rational::new(factorial(n), factorial(k) * factorial(n - k));
                assert_eq!(binomial(n, k).unwrap(), f);
            }
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0, 1), int(0));
        assert_eq!(harmonic(4, 1), rat(25, 12));
        assert_eq!(harmonic(4, 2), rat(205, 144));
        let direct: Rational = (1..=30).map(|j| rat(1, j * j * j)).sum();
        assert_eq!(harmonic(30, 3), direct);
    }

    #[test]
    fn eps_expansion_examples() {
        assert_eq!(rising_eps_poly(0, 2).coefficients(), &[int(1), int(0), int(0)]);
        assert_eq!(rising_eps_poly(3, 1).coefficients(), &[int(6), int(11)]);
        let p = rising_eps_poly(5, 1);
        assert_eq!(p.coefficient(0), &int(120));
        assert_eq!(p.coefficient(1), &(int(120) * harmonic(5, 1)));
        // full expansion of (1+e)(2+e)(3+e)
        assert_eq!(rising_eps_poly(3, 4).coefficients(), &[int(6), int(11), int(6), int(1), int(0)]);
    }

    #[test]
    fn eps_linear_coefficient_is_factorial_times_harmonic() {
        for k in 0..=100u64 {
            let p = rising_eps_poly(k, 1);
            let kf = Rational::from_integer(factorial(k));
            assert_eq!(p.coefficient(0), &kf);
            assert_eq!(p.coefficient(1), &(kf * harmonic(k, 1)));
        }
    }

    #[test]
    fn odd_square_reciprocals() {
        assert_eq!(int(1) + rat(1, 9), harmonic(4, 2) - rat(1, 4) * harmonic(2, 2));
        for n in 1..=200u64 {
            let odd: Rational = (1..=n).map(|j| Rational::new(1.into(), BigInt::from(2 * j - 1).pow(2))).sum();
            assert_eq!(odd, harmonic(2 * n, 2) - rat(1, 4) * harmonic(n, 2));
        }
    }

    #[test]
    fn double_harmonic_sum() {
        let mut acc = Rational::zero();
        for n in 1..=200u64 {
            acc += harmonic(n - 1, 1) / int(n as i64);
            let h1 = harmonic(n, 1);
            assert_eq!(int(2) * &acc, &h1 * &h1 - harmonic(n, 2));
        }
    }

    proptest! {
        #[test]
        fn rising_step(num in -40i64..40, den in 1i64..12, m in 0i64..200) {
            let a = rat(num, den);
            let lhs = rising(&a, m + 1).unwrap();
            let rhs = rising(&a, m).unwrap() * (&a + int(m));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn negative_index_inverts_shift(num in -40i64..40, den in 1i64..12, m in 0i64..60) {
            let a = rat(num, den);
            if let (Ok(neg), Ok(pos)) = (rising(&a, -m), rising(&(&a - int(m)), m)) {
                prop_assert_eq!(neg * pos, int(1));
            }
        }
    }
}
