//! Exact multiple zeta functions over function fields.
//!
//! Closed forms are rational functions in `x_k = q^{-s_k}` with denominators built from
//! binomials `1 - q^a x^e`. Every identity is checked with exact rational arithmetic and
//! compared against brute-force series from [`oracle`].

pub mod bundled;
pub mod coords;
pub mod error;
pub mod exactalg;
pub mod fieldspec;
pub mod oracle;
pub mod verify;
pub mod zeta_genus;
pub mod zeta_polyring;
pub mod zeta_rational;

pub use error::{Error, Result};
pub use exactalg::{
    ExponentVector, FactoredRational, LaurentPolynomial, MonomialImage, QPowerFactor, Rational,
    TruncatedSeries,
};
pub use fieldspec::{FunctionFieldSpec, LPolynomial};
