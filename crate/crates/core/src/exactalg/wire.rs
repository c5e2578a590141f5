//! JSON documents for rational functions and truncated series.

use serde::{Deserialize, Serialize};

use super::exponent::ExponentVector;
use super::factor::QPowerFactor;
use super::poly::LaurentPolynomial;
use super::rational::{fmt_rational, parse_rational};
use super::rational_function::FactoredRational;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coefficient: String,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub qpow: i64,
    pub exponents: Vec<i64>,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionDoc {
    pub q: u64,
    pub variables: Vec<String>,
    pub text: String,
    pub numerator: Vec<TermDoc>,
    pub denominator: Vec<FactorDoc>,
}

impl RationalFunctionDoc {
    pub fn from_rational(f: &FactoredRational, names: &[String]) -> Self {
        RationalFunctionDoc {
            q: f.q(),
            variables: names.to_vec(),
            text: f.render_with(names),
            numerator: f
                .numerator()
                .terms()
                .map(|(e, c)| TermDoc {
                    coefficient: fmt_rational(c),
                    exponents: e.to_vec(),
                })
                .collect(),
            denominator: f
                .factors()
                .map(|(f, m)| FactorDoc {
                    qpow: f.qpow(),
                    exponents: f.exponent().to_vec(),
                    multiplicity: m,
                })
                .collect(),
        }
    }

    pub fn to_rational(&self) -> Result<FactoredRational> {
        let arity = self.variables.len();
        let mut terms = Vec::with_capacity(self.numerator.len());
        for t in &self.numerator {
            let c = parse_rational(&t.coefficient)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", t.coefficient)))?;
            terms.push((c, ExponentVector::new(t.exponents.clone())));
        }
        let num = LaurentPolynomial::from_terms(arity, terms)?;
        let mut factors = Vec::new();
        for f in &self.denominator {
            let atom = QPowerFactor::new(f.qpow, f.exponents.clone())?;
            for _ in 0..f.multiplicity {
                factors.push(atom.clone());
            }
        }
        FactoredRational::new(self.q, num, factors)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub variables: Vec<String>,
    pub bound: usize,
    pub coefficients: Vec<TermDoc>,
}

impl SeriesDoc {
    pub fn from_series(s: &TruncatedSeries, names: &[String]) -> Self {
        SeriesDoc {
            variables: names.to_vec(),
            bound: s.bound(),
            coefficients: s
                .iter()
                .map(|(e, c)| TermDoc {
                    coefficient: fmt_rational(c),
                    exponents: e.to_vec(),
                })
                .collect(),
        }
    }
}
