//! Exact special values of the L-function attached to the mod-p Moore
//! spectrum, `L(s, S/p) = ζ_F(s)/ζ(s)`, together with the checks that tie
//! their denominators to the orders of `π_*(L_KU S/p)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: big rationals, cyclotomic fields `Q(ζ_m)`, valuations.
//! * [`dirichlet`]: characters of modulus 1 and odd prime powers, `Dir(p²)[p]`.
//! * [`bernoulli`]: classical and generalized Bernoulli numbers.
//! * [`lvalues`]: `L(1-n, χ)`, `L(1-n, S/p)`, the denominator theorem and
//!   congruence checks.
//! * [`homotopy`]: the closed-form orders of `π_n(L_KU S/p)`.
//! * [`analytic`]: floating-point Euler products, Dirichlet series, Gauss
//!   sums and the coprimality probabilities.

pub mod analytic;
pub mod arith;
pub mod bernoulli;
pub mod dirichlet;
mod error;
pub mod homotopy;
pub mod lvalues;

pub use arith::{Cyclotomic, Rational, ResidueModLambda, Valuation};
pub use dirichlet::{CharacterGroup, DirichletCharacter};
pub use error::{Error, Result};
