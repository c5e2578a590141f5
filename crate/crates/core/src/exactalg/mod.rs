//! Exact Laurent-polynomial and factored-rational-function arithmetic.

mod exponent;
mod factor;
mod poly;
pub mod rational;
mod rational_function;
mod series;
pub mod wire;

pub use exponent::{default_names, render_monomial, ExponentVector};
pub use factor::QPowerFactor;
pub use poly::{poly_mul, LaurentPolynomial};
pub use rational::Rational;
pub use rational_function::{
    rf_add, rf_equal, rf_mul, rf_neg, rf_reduce, FactoredRational, MonomialImage, POLE_TOLERANCE,
};
pub use series::TruncatedSeries;
