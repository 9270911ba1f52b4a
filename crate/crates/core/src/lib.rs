//! Exact and asymptotic computations for Takeuchi numbers, Bell numbers and
//! the one-parameter family interpolating between them.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: rationals, Gaussian rationals, dense polynomials, exact
//!   interpolation and linear solves, MPFR floats.
//! - [`sequences`]: exact tables of `T_n`, `B_n`, Catalan numbers and the
//!   family `A_n(λ)`, plus the general recurrence runner.
//! - [`tak_oracle`]: memoised evaluation of Takeuchi's function, counting
//!   else-branch invocations.
//! - [`series`]: truncated power series and identity verification.
//! - [`asymptotics`]: Lambert W and the asymptotic formulas.
//! - [`ansatz`]: the polynomial ansatz pipeline producing `r_l(v)`, `λ_l`
//!   and the family `h_λ(x)` coefficients.
//! - [`extrapolation`]: sequence acceleration for `C_T` and `d(λ)`.

pub mod ansatz;
pub mod asymptotics;
pub mod error;
pub mod extrapolation;
pub mod numerics;
pub mod sequences;
pub mod series;
pub mod tak_oracle;

pub use error::{Error, Result};
pub use numerics::{BigFloat, BigInt, BigRational, GaussianRational, LambdaPoly, Polynomial};
pub use sequences::{RecurrenceSpec, SequenceTable};
pub use series::TruncatedPowerSeries;
