use std::cmp::Ordering;

use super::exponent::{render_monomial, ExponentVector};
use super::poly::LaurentPolynomial;
use super::rational::{fmt_rational, q_pow, Rational};
use crate::error::{Error, Result};

/// The binomial `1 - q^qpow * x^exponent`.
///
/// `exponent` is nonzero and oriented so its first nonzero entry is positive. Factors coming
/// out of the closed forms have all entries nonnegative; mixed-sign exponents only arise from
/// substitutions such as `x1 -> q^-1 x1 x2^-2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPowerFactor {
    qpow: i64,
    exponent: ExponentVector,
}

impl QPowerFactor {
    pub fn new(qpow: i64, exponent: impl Into<ExponentVector>) -> Result<Self> {
        let exponent = exponent.into();
        match exponent.leading() {
            None => Err(Error::Usage(
                "factor exponent must be nonzero (constants belong in the numerator)".into(),
            )),
            Some(l) if l < 0 => Err(Error::Usage(format!(
                "factor exponent {exponent:?} must have a positive leading entry"
            ))),
            Some(_) => Ok(QPowerFactor { qpow, exponent }),
        }
    }

    pub fn qpow(&self) -> i64 {
        self.qpow
    }

    pub fn exponent(&self) -> &ExponentVector {
        &self.exponent
    }

    pub fn arity(&self) -> usize {
        self.exponent.arity()
    }

    pub fn coefficient(&self, q: u64) -> Rational {
        q_pow(q, self.qpow)
    }

    pub fn to_poly(&self, q: u64) -> LaurentPolynomial {
        LaurentPolynomial::binomial(self.coefficient(q), self.exponent.clone())
    }

    pub fn render_with(&self, q: u64, names: &[String]) -> String {
        let c = self.coefficient(q);
        let mono = render_monomial(&self.exponent, names);
        if c == Rational::from_integer(1.into()) {
            format!("(1 - {mono})")
        } else {
            format!("(1 - {}*{mono})", fmt_rational(&c))
        }
    }
}

// Display order: higher graded exponent first, then ascending q-power.
impl Ord for QPowerFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .exponent
            .cmp(&self.exponent)
            .then(self.qpow.cmp(&other.qpow))
    }
}

impl PartialOrd for QPowerFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_misoriented() {
        assert!(QPowerFactor::new(1, [0, 0]).is_err());
        assert!(QPowerFactor::new(1, [-1, 2]).is_err());
        assert!(QPowerFactor::new(1, [0, 1]).is_ok());
        assert!(QPowerFactor::new(1, [1, -1]).is_ok());
    }

    #[test]
    fn ordering_puts_longer_monomials_first() {
        let mut v = vec![
            QPowerFactor::new(1, [0, 1]).unwrap(),
            QPowerFactor::new(2, [1, 1]).unwrap(),
            QPowerFactor::new(0, [0, 1]).unwrap(),
        ];
        v.sort();
        let names = super::super::exponent::default_names(2);
        let s: Vec<String> = v.iter().map(|f| f.render_with(2, &names)).collect();
        assert_eq!(s, ["(1 - 4*x1*x2)", "(1 - x2)", "(1 - 2*x2)"]);
    }
}
