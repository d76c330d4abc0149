//! A small expression language for hypergeometric summands and the
//! right-hand sides of their congruences.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ("^" factor)?
//! atom   := integer | name | "(" expr ")"
//!         | "poch" "(" rational "," expr ")" | "fact" "(" expr ")"
//! rational := "-"? integer ("/" integer)?
//! ```
//!
//! Multiplication is never implicit. Exponents and Pochhammer indices are
//! evaluated exactly and must come out as integers.
//!
//! ```
//! use supercong::hypdsl::{parse, sum_series, SumMode, SumValue};
//! use supercong::exact::rat;
//!
//! let k2 = parse("poch(1/2,n)^3 / fact(n)^3 * (42*n+5) / 64^n", &["n"]).unwrap();
//! let s1 = sum_series(&k2, "n", 1, SumMode::Exact).unwrap();
//! assert_eq!(s1, SumValue::Exact(rat(2607, 512)));
//! ```

mod eval;
mod file;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::Rational;

pub use eval::{eval_exact, eval_padic, sum_series, SumMode, SumValue};
pub use file::{parse_series_file, sweep_series, SeriesSpec, DEFAULT_TERMS};
pub use parse::{parse, ParseError};

/// Expression tree. Integer literals produced by the parser are
/// non-negative; negation is always an explicit [`Expr::Neg`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    /// Rising factorial with a constant base.
    Poch(Rational, Box<Expr>),
    Fact(Box<Expr>),
}

/// A parsed expression together with the variable set it was checked
/// against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandAst {
    root: Expr,
    variables: Vec<String>,
}

impl SummandAst {
    pub fn root(&self) -> &Expr {
        &self.root
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Wraps a hand-built tree, checking every variable against `variables`.
    pub fn from_expr(root: Expr, variables: &[&str]) -> Option<Self> {
        let variables: Vec<String> = variables.iter().map(|v| v.to_string()).collect();
        root.all_vars(&mut |v| variables.iter().any(|d| d == v))
            .then_some(SummandAst { root, variables })
    }
}

impl Expr {
    fn all_vars(&self, ok: &mut impl FnMut(&str) -> bool) -> bool {
        match self {
            Expr::Int(_) => true,
            Expr::Var(v) => ok(v),
            Expr::Neg(a) | Expr::Poch(_, a) | Expr::Fact(a) => a.all_vars(ok),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.all_vars(ok) && b.all_vars(ok)
            }
        }
    }
}

/// Fully parenthesized rendering that reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr| write!(f, "({a} {op} {b})");
        match self {
            Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => write!(f, "(-{})", n.magnitude()),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => bin(f, a, "+", b),
            Expr::Sub(a, b) => bin(f, a, "-", b),
            Expr::Mul(a, b) => bin(f, a, "*", b),
            Expr::Div(a, b) => bin(f, a, "/", b),
            Expr::Pow(a, b) => bin(f, a, "^", b),
            Expr::Poch(base, idx) => {
                if base.denom().is_one() {
                    write!(f, "poch({}, {idx})", base.numer())
                } else {
                    write!(f, "poch({}/{}, {idx})", base.numer(), base.denom())
                }
            }
            Expr::Fact(a) => write!(f, "fact({a})"),
        }
    }
}

impl fmt::Display for SummandAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CORPUS: [&str; 20] = [
        "poch(1/2,n)^3 / fact(n)^3 * (42*n+5) / 64^n",
        "poch(1/2,n)^7/fact(n)^7*(168*n^3+76*n^2+14*n+1)/2^(6*n)",
        "5*p*(-1)^((p-1)/2)",
        "p^3*(-1)^((p-1)/2)",
        "4*r",
        "8*r - 1",
        "(p^r-1)/2",
        "-n",
        "--n",
        "1-2-3-4",
        "2^3^2",
        "-2^-2",
        "poch(-1/3, n) * poch(1/3, n) / poch(1, n)^2",
        "poch(5, n - 1)",
        "fact(2*n)/fact(n)^2/4^n",
        "(n+1)*(n+2)/(n+3)",
        "123456789012345678901234567890 * n",
        "n/2/3",
        "((((n))))",
        "poch(7,0)",
    ];

    #[test]
    fn corpus_round_trips() {
        for src in CORPUS {
            let ast = parse(src, &["n", "p", "r"]).unwrap();
            let again = parse(&ast.to_string(), &["n", "p", "r"]).unwrap();
            assert_eq!(ast, again, "{src}");
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..1000).prop_map(|v| Expr::Int(BigInt::from(v))),
            Just(Expr::Var("n".into())),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            let b = |e| Box::new(e);
            prop_oneof![
                inner.clone().prop_map(move |a| Expr::Neg(b(a))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Pow(b(x), b(y))),
                (-9i64..9, 1i64..9, inner.clone())
                    .prop_map(move |(u, v, x)| Expr::Poch(crate::exact::rat(u, v), b(x))),
                inner.prop_map(move |x| Expr::Fact(b(x))),
            ]
        })
    }

    proptest! {
        #[test]
        fn printed_trees_reparse(expr in arb_expr()) {
            let ast = SummandAst::from_expr(expr, &["n"]).unwrap();
            let again = parse(&ast.to_string(), &["n"]).unwrap();
            prop_assert_eq!(ast, again);
        }
    }

    #[test]
    fn from_expr_checks_variables() {
        assert!(SummandAst::from_expr(Expr::Var("m".into()), &["n"]).is_none());
        assert!(SummandAst::from_expr(Expr::Var("n".into()), &["n"]).is_some());
    }
}
