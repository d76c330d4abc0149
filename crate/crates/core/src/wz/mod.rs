//! Verification of the Guillera WZ pair.
//!
//! The pair `F`, `G` (see [`crate::series::wz_f`], [`crate::series::wz_g`])
//! satisfies `F(n,k−1) − F(n,k) = G(n+1,k) − G(n,k)`. Dividing by `G(n,k)`
//! turns this into an identity between rational functions of `n` and `k`,
//! which [`certificate_check`] verifies symbolically. [`wz_grid_check`] and
//! [`telescoping_check`] confirm the relation and its telescoped form with
//! exact rationals.

mod poly;

use thiserror::Error;

use crate::exact::{int, rat, Rational};
use crate::series::{s_k2, wz_f, wz_g};

pub use poly::{ratfunc_eq, BiPoly, RatFunc};

/// Coefficients of the divided WZ identity
///
/// ```text
///   −W'(n,k)(o₁+n−k)² / (s₁n²(2n−k+2)(2n−k+1))
///   − W(n,k)(n+k−o₂)·L(n,k) / (s₂n²(2n−k+1)(2n−k+2))
/// = (o₃+n)(n+k−o₄)(o₅+n−k)² / (s₃n²(2n−k+2)(2n−k+1)) − c
/// ```
///
/// where `W` is the weight of `F(n,k)`, `W'` the weight of `F(n,k−1)` and
/// `L = 2n − k + 2`. Weights are stored as coefficients of
/// `[n², nk, k², n, k, 1]`. Every field is public so that single-coefficient
/// mutations can be tested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub weight: [Rational; 6],
    pub shifted_weight: [Rational; 6],
    pub first_offset: Rational,
    pub first_scale: Rational,
    pub second_offset: Rational,
    pub second_factor: [Rational; 3],
    pub second_scale: Rational,
    pub rhs_n_offset: Rational,
    pub rhs_k_offset: Rational,
    pub rhs_diff_offset: Rational,
    pub rhs_scale: Rational,
    pub rhs_constant: Rational,
}

fn weight_poly(c: &[Rational; 6]) -> BiPoly {
    BiPoly::from_terms([
        (c[0].clone(), 2, 0),
        (c[1].clone(), 1, 1),
        (c[2].clone(), 0, 2),
        (c[3].clone(), 1, 0),
        (c[4].clone(), 0, 1),
        (c[5].clone(), 0, 0),
    ])
}

fn linear(cn: &Rational, ck: &Rational, c: &Rational) -> BiPoly {
    BiPoly::from_terms([(cn.clone(), 1, 0), (ck.clone(), 0, 1), (c.clone(), 0, 0)])
}

impl Certificate {
    /// The identity as displayed for the Guillera pair.
    pub fn guillera() -> Self {
        let h = rat(1, 2);
        Certificate {
            weight: [84, -56, 4, 52, -12, 5].map(int),
            shifted_weight: [84, -56, 4, 108, -20, 21].map(int),
            first_offset: h.clone(),
            first_scale: int(64),
            second_offset: h.clone(),
            second_factor: [2, -1, 2].map(int),
            second_scale: int(64),
            rhs_n_offset: h.clone(),
            rhs_k_offset: h.clone(),
            rhs_diff_offset: h,
            rhs_scale: int(16),
            rhs_constant: int(1),
        }
    }

    /// Every literal coefficient of the identity, labelled.
    pub fn coefficients_mut(&mut self) -> Vec<(String, &mut Rational)> {
        let monomials = ["n^2", "nk", "k^2", "n", "k", "1"];
        let mut out = Vec::new();
        for (name, c) in monomials.iter().zip(self.weight.iter_mut()) {
            out.push((format!("weight[{name}]"), c));
        }
        for (name, c) in monomials.iter().zip(self.shifted_weight.iter_mut()) {
            out.push((format!("shifted_weight[{name}]"), c));
        }
        for (name, c) in ["n", "k", "1"].iter().zip(self.second_factor.iter_mut()) {
            out.push((format!("second_factor[{name}]"), c));
        }
        out.push(("first_offset".into(), &mut self.first_offset));
        out.push(("first_scale".into(), &mut self.first_scale));
        out.push(("second_offset".into(), &mut self.second_offset));
        out.push(("second_scale".into(), &mut self.second_scale));
        out.push(("rhs_n_offset".into(), &mut self.rhs_n_offset));
        out.push(("rhs_k_offset".into(), &mut self.rhs_k_offset));
        out.push(("rhs_diff_offset".into(), &mut self.rhs_diff_offset));
        out.push(("rhs_scale".into(), &mut self.rhs_scale));
        out.push(("rhs_constant".into(), &mut self.rhs_constant));
        out
    }

    /// Left and right sides as rational functions of `(n, k)`.
    pub fn sides(&self) -> (RatFunc, RatFunc) {
        let (n, k) = (BiPoly::n(), BiPoly::k());
        let c = |x: &Rational| BiPoly::constant(x.clone());
        let one = int(1);
        let two = int(2);
        let d_plus2 = linear(&two, &-&one, &two); // 2n − k + 2
        let d_plus1 = linear(&two, &-&one, &one); // 2n − k + 1
        let n2 = &n * &n;

        let first = RatFunc::new(
            -(weight_poly(&self.shifted_weight) * (c(&self.first_offset) + &n - &k).pow(2)),
            c(&self.first_scale) * &n2 * &d_plus2 * &d_plus1,
        );
        let [fn_, fk, f1] = &self.second_factor;
        let second = RatFunc::new(
            -(weight_poly(&self.weight) * (&n + &k - c(&self.second_offset)) * linear(fn_, fk, f1)),
            c(&self.second_scale) * &n2 * &d_plus1 * &d_plus2,
        );
        let lhs = &first + &second;

        let rhs = RatFunc::new(
            (c(&self.rhs_n_offset) + &n)
                * (&n + &k - c(&self.rhs_k_offset))
                * (c(&self.rhs_diff_offset) + &n - &k).pow(2),
            c(&self.rhs_scale) * &n2 * &d_plus2 * &d_plus1,
        ) - RatFunc::from(c(&self.rhs_constant));
        (lhs, rhs)
    }

    /// Whether both sides agree as rational functions.
    pub fn holds(&self) -> bool {
        let (lhs, rhs) = self.sides();
        ratfunc_eq(&lhs, &rhs)
    }
}

/// Verifies the divided WZ identity as an exact polynomial identity.
pub fn certificate_check() -> bool {
    Certificate::guillera().holds()
}

/// Failure of one of the numeric WZ checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WzError {
    #[error("WZ relation fails at (n, k) = ({n}, {k}): {lhs} != {rhs}")]
    Grid { n: i64, k: i64, lhs: Rational, rhs: Rational },
    #[error("telescoped sum over n fails at p = {p}, k = {k}: {lhs} != {rhs}")]
    Step { p: u64, k: i64, lhs: Rational, rhs: Rational },
    #[error("telescoped identity fails at p = {p}: {lhs} != {rhs}")]
    Total { p: u64, lhs: Rational, rhs: Rational },
    #[error("telescoping needs an odd prime, got {0}")]
    Domain(u64),
}

/// Checks `F(n,k−1) − F(n,k) = G(n+1,k) − G(n,k)` for `0 ≤ n ≤ n_max`,
/// `1 ≤ k ≤ k_max`, reporting the first violation in row-major order.
pub fn wz_grid_check(n_max: i64, k_max: i64) -> Result<(), WzError> {
    wz_grid_check_with(wz_f, wz_g, n_max, k_max)
}

/// [`wz_grid_check`] for an arbitrary candidate pair.
pub fn wz_grid_check_with<F, G>(f: F, g: G, n_max: i64, k_max: i64) -> Result<(), WzError>
where
    F: Fn(i64, i64) -> Rational,
    G: Fn(i64, i64) -> Rational,
{
    for n in 0..=n_max {
        for k in 1..=k_max {
            let lhs = f(n, k - 1) - f(n, k);
            let rhs = g(n + 1, k) - g(n, k);
            if lhs != rhs {
                return Err(WzError::Grid { n, k, lhs, rhs });
            }
        }
    }
    Ok(())
}

/// Exact values appearing in the telescoped identity at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Telescoped {
    /// `Σ_{n=0}^{(p−1)/2} F(n, 0)`, which is also `S((p−1)/2)`.
    pub lhs: Rational,
    /// `F((p−1)/2, p)`.
    pub boundary: Rational,
    /// `Σ_{k=1}^{p} G((p+1)/2, k)`.
    pub g_sum: Rational,
}

/// Verifies `Σ_n F(n,0) = F((p−1)/2, p) + Σ_{k=1}^{p} G((p+1)/2, k)` exactly,
/// together with each per-`k` telescoping step
/// `Σ_n F(n,k−1) − Σ_n F(n,k) = G((p+1)/2, k)`.
pub fn telescoping_check(p: u64) -> Result<Telescoped, WzError> {
    if p < 3 || !crate::exact::is_prime(p) {
        return Err(WzError::Domain(p));
    }
    let top = (p as i64 - 1) / 2;
    let pk = p as i64;
    let column = |k: i64| -> Rational { (0..=top).map(|n| wz_f(n, k)).sum() };

    let mut previous = column(0);
    let lhs = previous.clone();
    for k in 1..=pk {
        let current = column(k);
        let step = &previous - &current;
        let g = wz_g(top + 1, k);
        if step != g {
            return Err(WzError::Step { p, k, lhs: step, rhs: g });
        }
        previous = current;
    }

    let boundary = wz_f(top, pk);
    let g_sum: Rational = (1..=pk).map(|k| wz_g(top + 1, k)).sum();
    let rhs = &boundary + &g_sum;
    if lhs != rhs {
        return Err(WzError::Total { p, lhs, rhs });
    }
    debug_assert_eq!(lhs, s_k2(top as u64));
    Ok(Telescoped { lhs, boundary, g_sum })
}

/// Both sides of the certificate identity evaluated at `(n, k)`, or `None`
/// where a displayed denominator vanishes.
pub fn certificate_at(n: i64, k: i64) -> Option<(Rational, Rational)> {
    let (lhs, rhs) = Certificate::guillera().sides();
    let (n, k) = (int(n), int(k));
    Some((lhs.eval(&n, &k)?, rhs.eval(&n, &k)?))
}
