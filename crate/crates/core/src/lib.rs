//! Exact-arithmetic verification of Ramanujan-type supercongruences.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, p-adic valuations and a scaled fixed-precision
//!   p-adic residue type used by the fast modular backend.
//! - [`combinat`]: Pochhammer symbols, binomials, harmonic numbers and the
//!   first-order ε-expansion of rising factorials.
//! - [`series`]: the (K.2) series `Σ (1/2)_n³/n!³ (42n+5)/64ⁿ`, its degree-7
//!   companion, the Guillera WZ pair and the auxiliary sums used to prove
//!   the congruence, plus rigorous rational enclosures of `16/π`.
//! - [`wz`]: sparse bivariate polynomials, rational functions and the
//!   verification of the WZ certificate as a polynomial identity.
//! - [`congruence`]: one checker per congruence statement and a parallel
//!   prime sweep that produces deterministic reports.
//! - [`hypdsl`]: a small expression language for user-defined summands.
//! - [`cli`]: the `supercong` command-line front end.
//!
//! ```
//! use supercong::congruence::Check;
//!
//! let report = Check::K2.run_default(7, 1).unwrap();
//! assert!(report.passed());
//! ```

pub mod cli;
pub mod combinat;
pub mod congruence;
mod error;
pub mod exact;
pub mod hypdsl;
pub mod series;
pub mod wz;

pub use error::{Error, Result};
pub use exact::{PadicScaled, Rational, Valuation};
