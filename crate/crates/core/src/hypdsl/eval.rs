use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Expr, SummandAst};
use crate::combinat::rising;
use crate::exact::{PadicScaled, Rational};
use crate::{Error, Result};

/// Largest exponent magnitude accepted by `^`.
const MAX_EXPONENT: i64 = 1 << 20;

struct Env<'a> {
    bindings: &'a [(&'a str, i64)],
}

impl Env<'_> {
    fn lookup(&self, name: &str) -> Result<i64> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::Domain(format!("variable `{name}` is not bound")))
    }

    fn check_covers(&self, ast: &SummandAst) -> Result<()> {
        ast.variables().iter().try_for_each(|v| self.lookup(v).map(drop))
    }

    fn exact(&self, e: &Expr) -> Result<Rational> {
        Ok(match e {
            Expr::Int(n) => Rational::from_integer(n.clone()),
            Expr::Var(v) => Rational::from_integer(BigInt::from(self.lookup(v)?)),
            Expr::Neg(a) => -self.exact(a)?,
            Expr::Add(a, b) => self.exact(a)? + self.exact(b)?,
            Expr::Sub(a, b) => self.exact(a)? - self.exact(b)?,
            Expr::Mul(a, b) => self.exact(a)? * self.exact(b)?,
            Expr::Div(a, b) => {
                let d = self.exact(b)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.exact(a)? / d
            }
            Expr::Pow(a, b) => {
                let e = self.integer(b, "exponent")?;
                let base = self.exact(a)?;
                if e < 0 && base.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                base.pow(e as i32)
            }
            Expr::Poch(base, idx) => rising(base, self.integer(idx, "Pochhammer index")?)?,
            Expr::Fact(a) => rising(&Rational::one(), self.integer(a, "factorial argument")?)?,
        })
    }

    /// Exact integer value of a subexpression used as an exponent or index.
    fn integer(&self, e: &Expr, what: &str) -> Result<i64> {
        let v = self.exact(e)?;
        if !v.is_integer() {
            return Err(Error::NonInteger(format!("{what} `{e}` evaluates to {v}")));
        }
        v.to_integer()
            .to_i64()
            .filter(|x| x.abs() <= MAX_EXPONENT)
            .ok_or_else(|| Error::Domain(format!("{what} `{e}` = {v} is out of range")))
    }

    fn padic(&self, e: &Expr, p: u64, prec: u32) -> Result<PadicScaled> {
        let enc = |x: &Rational| PadicScaled::encode(x, p, prec);
        Ok(match e {
            Expr::Int(n) => enc(&Rational::from_integer(n.clone())),
            Expr::Var(v) => PadicScaled::from_integer(self.lookup(v)?, p, prec),
            Expr::Neg(a) => self.padic(a, p, prec)?.neg(),
            Expr::Add(a, b) => self.padic(a, p, prec)?.add(&self.padic(b, p, prec)?)?,
            Expr::Sub(a, b) => self.padic(a, p, prec)?.sub(&self.padic(b, p, prec)?)?,
            Expr::Mul(a, b) => self.padic(a, p, prec)?.mul(&self.padic(b, p, prec)?),
            Expr::Div(a, b) => {
                let d = self.padic(b, p, prec)?;
                self.padic(a, p, prec)?.div(&d)?
            }
            Expr::Pow(a, b) => {
                let e = self.integer(b, "exponent")?;
                self.padic(a, p, prec)?.pow(e)?
            }
            Expr::Poch(base, idx) => padic_rising(base, self.integer(idx, "Pochhammer index")?, p, prec)?,
            Expr::Fact(a) => padic_rising(&Rational::one(), self.integer(a, "factorial argument")?, p, prec)?,
        })
    }
}

/// `(a)_m` as a product of encoded factors, mirroring [`rising`].
fn padic_rising(a: &Rational, m: i64, p: u64, prec: u32) -> Result<PadicScaled> {
    let mut acc = PadicScaled::from_integer(1, p, prec);
    if m >= 0 {
        let mut factor = a.clone();
        for _ in 0..m {
            acc = acc.mul(&PadicScaled::encode(&factor, p, prec));
            factor += Rational::one();
        }
        return Ok(acc);
    }
    let mut factor = a - Rational::one();
    for k in 1..=m.unsigned_abs() {
        if factor.is_zero() {
            return Err(Error::Pole(format!("({a})_{m}: factor a-{k} vanishes")));
        }
        acc = acc.mul(&PadicScaled::encode(&factor, p, prec));
        factor -= Rational::one();
    }
    acc.invert()
}

/// Exact value of `ast` under `bindings`.
pub fn eval_exact(ast: &SummandAst, bindings: &[(&str, i64)]) -> Result<Rational> {
    let env = Env { bindings };
    env.check_covers(ast)?;
    env.exact(ast.root())
}

/// Value of `ast` in p-adic arithmetic with `prec` digits of relative
/// precision. Exponents and indices are still evaluated exactly.
pub fn eval_padic(ast: &SummandAst, bindings: &[(&str, i64)], p: u64, prec: u32) -> Result<PadicScaled> {
    if p < 3 || !crate::exact::is_prime(p) {
        return Err(Error::Domain(format!("p-adic evaluation needs an odd prime, got {p}")));
    }
    let env = Env { bindings };
    env.check_covers(ast)?;
    env.padic(ast.root(), p, prec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMode {
    Exact,
    Padic { p: u64, prec: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumValue {
    Exact(Rational),
    Padic(PadicScaled),
}

/// `Σ_{var=0}^{terms} ast`.
pub fn sum_series(ast: &SummandAst, var: &str, terms: u64, mode: SumMode) -> Result<SumValue> {
    if ast.variables().iter().any(|v| v != var) {
        return Err(Error::Domain(format!(
            "summand declared over {:?}, summation variable is `{var}`",
            ast.variables()
        )));
    }
    if let SumMode::Padic { p, .. } = mode {
        if p < 3 || !crate::exact::is_prime(p) {
            return Err(Error::Domain(format!("p-adic summation needs an odd prime, got {p}")));
        }
    }
    let index = |n: u64| -> Result<i64> {
        i64::try_from(n).map_err(|_| Error::Domain(format!("summation bound {n} is out of range")))
    };
    match mode {
        SumMode::Exact => {
            let mut sum = Rational::zero();
            for n in 0..=terms {
                sum += eval_exact(ast, &[(var, index(n)?)])?;
            }
            Ok(SumValue::Exact(sum))
        }
        SumMode::Padic { p, prec } => {
            let mut sum = PadicScaled::zero(p, prec);
            for n in 0..=terms {
                sum = sum.add(&eval_padic(ast, &[(var, index(n)?)], p, prec)?)?;
            }
            Ok(SumValue::Padic(sum))
        }
    }
}

impl SumValue {
    pub fn into_exact(self) -> Option<Rational> {
        match self {
            SumValue::Exact(x) => Some(x),
            SumValue::Padic(_) => None,
        }
    }

    pub fn into_padic(self) -> Option<PadicScaled> {
        match self {
            SumValue::Padic(x) => Some(x),
            SumValue::Exact(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::hypdsl::parse;
    use crate::series;

    const K2: &str = "poch(1/2,n)^3 / fact(n)^3 * (42*n+5) / 64^n";
    const G7: &str = "poch(1/2,n)^7/fact(n)^7*(168*n^3+76*n^2+14*n+1)/2^(6*n)";

    #[test]
    fn exact_examples() {
        let k2 = parse(K2, &["n"]).unwrap();
        assert_eq!(eval_exact(&k2, &[("n", 1)]).unwrap(), rat(47, 512));
        let rhs = parse("5*p*(-1)^((p-1)/2)", &["p"]).unwrap();
        assert_eq!(eval_exact(&rhs, &[("p", 3)]).unwrap(), int(-15));
        let pow = parse("64^n", &["n"]).unwrap();
        assert_eq!(eval_exact(&pow, &[("n", 0)]).unwrap(), int(1));
    }

    #[test]
    fn exact_errors() {
        let rhs = parse("(-1)^((p-1)/2)", &["p"]).unwrap();
        assert!(matches!(eval_exact(&rhs, &[("p", 4)]), Err(Error::NonInteger(_))));
        let pole = parse("poch(1, n)", &["n"]).unwrap();
        assert!(matches!(eval_exact(&pole, &[("n", -1)]), Err(Error::Pole(_))));
        let div = parse("1/(n-n)", &["n"]).unwrap();
        assert_eq!(eval_exact(&div, &[("n", 2)]), Err(Error::DivisionByZero));
        let zero_pow = parse("0^(-1)", &[]).unwrap();
        assert_eq!(eval_exact(&zero_pow, &[]), Err(Error::DivisionByZero));
        assert!(matches!(eval_exact(&pole, &[]), Err(Error::Domain(_))));
        assert!(matches!(eval_exact(&parse("2^n", &["n"]).unwrap(), &[("n", 1 << 30)]), Err(Error::Domain(_))));
    }

    #[test]
    fn padic_examples() {
        let k2 = parse(K2, &["n"]).unwrap();
        let v = eval_padic(&k2, &[("n", 2)], 5, 10).unwrap();
        assert_eq!(v, PadicScaled::encode(&rat(2403, 2097152), 5, 10));
        let v = eval_padic(&k2, &[("n", 1)], 7, 8).unwrap();
        assert_eq!(v, PadicScaled::encode(&rat(47, 512), 7, 8));
        let zero = parse("0", &[]).unwrap();
        assert!(eval_padic(&zero, &[], 5, 4).unwrap().is_exact_zero());
        assert!(matches!(eval_padic(&zero, &[], 9, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn sums_match_builtins() {
        let k2 = parse(K2, &["n"]).unwrap();
        let g7 = parse(G7, &["n"]).unwrap();
        let exact = |ast, n| sum_series(ast, "n", n, SumMode::Exact).unwrap().into_exact().unwrap();
        assert_eq!(exact(&k2, 1), rat(2607, 512));
        assert_eq!(exact(&k2, 0), int(5));
        assert_eq!(exact(&g7, 1), rat(8451, 8192));
        for n in [2, 7, 20] {
            assert_eq!(exact(&k2, n), series::s_k2(n));
            assert_eq!(exact(&g7, n), series::s_g7(n));
        }
        let padic = sum_series(&k2, "n", 3, SumMode::Padic { p: 7, prec: 6 }).unwrap().into_padic().unwrap();
        assert!(padic.agrees_with(&series::s_k2(3)));
        assert!(sum_series(&k2, "m", 3, SumMode::Exact).is_err());
    }

    #[test]
    fn negative_pochhammer_index_matches_exact() {
        let ast = parse("poch(7/2, n)", &["n"]).unwrap();
        for n in -4..=4 {
            let x = eval_exact(&ast, &[("n", n)]).unwrap();
            assert!(eval_padic(&ast, &[("n", n)], 7, 6).unwrap().agrees_with(&x));
        }
    }
}
