use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{prime_power, strip_prime, vp, Rational, Valuation};
use crate::{Error, Result};

/// A fixed-precision p-adic number in scaled form.
///
/// Represents a value congruent to `p^exp · residue` modulo `p^(exp + prec)`,
/// i.e. `prec` is the relative precision and `exp + prec` the absolute one.
/// A residue of zero with `prec == 0` stands for "zero modulo `p^exp`": the
/// value cancelled to the full available precision. Exact zero is tracked
/// separately and absorbs everything.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicScaled {
    p: u64,
    prec: u32,
    exp: i64,
    residue: BigUint,
    exact_zero: bool,
}

fn modulus(p: u64, prec: u32) -> BigUint {
    BigUint::from(p).pow(prec)
}

fn mod_inverse(x: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    x.modinv(m)
}

impl PadicScaled {
    /// Encodes an exact rational with `prec` digits of relative precision.
    ///
    /// Panics if `p` is not an odd number ≥ 3.
    pub fn encode(x: &Rational, p: u64, prec: u32) -> Self {
        assert!(p >= 3 && p % 2 == 1, "p-adic backend requires an odd prime, got {p}");
        if x.is_zero() {
            return Self::zero(p, prec);
        }
        let mut num = x.numer().magnitude().clone();
        let mut den = x.denom().magnitude().clone();
        let exp = strip_prime(&mut num, p) - strip_prime(&mut den, p);
        let m = modulus(p, prec);
        let inv = mod_inverse(&(den % &m), &m).expect("p-free denominator is a unit");
        let mut residue = (num % &m) * inv % &m;
        if x.numer().sign() == num_bigint::Sign::Minus && !residue.is_zero() {
            residue = &m - residue;
        }
        PadicScaled { p, prec, exp, residue, exact_zero: false }
    }

    pub fn from_integer(n: i64, p: u64, prec: u32) -> Self {
        Self::encode(&Rational::from_integer(BigInt::from(n)), p, prec)
    }

    /// Exact zero.
    pub fn zero(p: u64, prec: u32) -> Self {
        PadicScaled { p, prec, exp: 0, residue: BigUint::zero(), exact_zero: true }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Relative precision in digits.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// Absolute precision `exp + prec`; `None` for exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        (!self.exact_zero).then(|| self.exp + self.prec as i64)
    }

    /// Exact valuation when a unit digit survives, otherwise the lower bound
    /// given by the absolute precision.
    pub fn valuation(&self) -> Valuation {
        if self.exact_zero {
            return Valuation::Infinite;
        }
        let n = self.clone().normalized();
        if n.residue.is_zero() {
            Valuation::AtLeast(n.exp)
        } else {
            Valuation::Finite(n.exp)
        }
    }

    /// Moves factors of `p` from the residue into the exponent. A residue that
    /// vanishes modulo `p^prec` collapses to "zero modulo `p^(exp+prec)`".
    pub fn normalized(mut self) -> Self {
        if self.exact_zero {
            return self;
        }
        if self.residue.is_zero() {
            self.exp += self.prec as i64;
            self.prec = 0;
            return self;
        }
        let shift = strip_prime(&mut self.residue, self.p);
        self.exp += shift;
        self.prec -= shift as u32;
        self
    }

    /// Whether `x` agrees with this value at the known precision.
    pub fn agrees_with(&self, x: &Rational) -> bool {
        if self.exact_zero {
            return x.is_zero();
        }
        let value = prime_power(self.p, self.exp)
            * Rational::from_integer(BigInt::from(self.residue.clone()));
        let known = self.exp + self.prec as i64;
        vp(&(x - value), self.p)
            .meets(Valuation::Finite(known))
            .unwrap_or(false)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.p, other.p, "mixed primes in p-adic addition");
        if self.exact_zero {
            return Ok(other.clone());
        }
        if other.exact_zero {
            return Ok(self.clone());
        }
        let m = self.exp.min(other.exp);
        let absolute = (self.exp + self.prec as i64).min(other.exp + other.prec as i64);
        let surviving = absolute - m;
        if surviving <= 0 {
            return Err(Error::PrecisionExhausted(format!(
                "addition at p = {} leaves no digits (absolute precision {absolute}, exponent {m})",
                self.p
            )));
        }
        let surviving = surviving as u32;
        let modulus = modulus(self.p, surviving);
        let shifted = |x: &Self| -> BigUint {
            let shift = (x.exp - m) as u32;
            if shift >= surviving {
                BigUint::zero()
            } else {
                &x.residue * BigUint::from(x.p).pow(shift) % &modulus
            }
        };
        let residue = (shifted(self) + shifted(other)) % &modulus;
        Ok(PadicScaled { p: self.p, prec: surviving, exp: m, residue, exact_zero: false }
            .normalized())
    }

    pub fn neg(&self) -> Self {
        if self.exact_zero || self.residue.is_zero() {
            return self.clone();
        }
        let m = modulus(self.p, self.prec);
        PadicScaled { residue: &m - &self.residue, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed primes in p-adic multiplication");
        if self.exact_zero {
            return self.clone();
        }
        if other.exact_zero {
            return other.clone();
        }
        let (a, b) = (self.clone().normalized(), other.clone().normalized());
        let prec = a.prec.min(b.prec);
        let m = modulus(a.p, prec);
        let residue = &a.residue * &b.residue % m;
        PadicScaled { p: a.p, prec, exp: a.exp + b.exp, residue, exact_zero: false }.normalized()
    }

    pub fn invert(&self) -> Result<Self> {
        if self.exact_zero {
            return Err(Error::DivisionByZero);
        }
        let n = self.clone().normalized();
        if n.residue.is_zero() {
            return Err(Error::PrecisionExhausted(format!(
                "cannot invert a value known only to be 0 mod {}^{}",
                n.p, n.exp
            )));
        }
        let m = modulus(n.p, n.prec);
        let residue = mod_inverse(&n.residue, &m).expect("unit residue");
        Ok(PadicScaled { p: n.p, prec: n.prec, exp: -n.exp, residue, exact_zero: false })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::from_integer(1, self.p, self.prec.max(1));
        let mut sq = base;
        while e > 0 {
            if e.is_odd() {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Short human-readable digest, e.g. `5^2*73 (mod 5^5)`.
    pub fn digest(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PadicScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_zero {
            return f.write_str("0");
        }
        let p = self.p;
        write!(f, "{p}^{}*{} (mod {p}^{})", self.exp, self.residue, self.exp + self.prec as i64)
    }
}

impl fmt::Debug for PadicScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicScaled({self})")
    }
}
