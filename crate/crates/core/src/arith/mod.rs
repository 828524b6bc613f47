//! Exact arithmetic: rationals, cyclotomic fields and the valuations used by
//! the denominator arguments.

mod cyclotomic;
pub mod modular;
mod poly;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, ResidueModLambda};
pub use rational::{
    denominator, format_rational, int_valuation, padic_valuation, parse_rational, Rational,
    Valuation,
};
