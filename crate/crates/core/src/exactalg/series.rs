use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::exponent::{default_names, render_monomial, ExponentVector};
use super::rational::{fmt_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// Exact coefficients of every monomial in the box `[0, bound]^arity`; absent means zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    arity: usize,
    bound: usize,
    coeffs: BTreeMap<ExponentVector, Rational>,
}

impl TruncatedSeries {
    pub fn new(arity: usize, bound: usize) -> Self {
        TruncatedSeries {
            arity,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn in_box(&self, e: &[i64]) -> bool {
        e.len() == self.arity && e.iter().all(|&k| k >= 0 && k as usize <= self.bound)
    }

    pub fn get(&self, e: &[i64]) -> Rational {
        self.coeffs
            .get(&ExponentVector::new(e.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets a coefficient; entries outside the box are dropped.
    pub fn set(&mut self, e: ExponentVector, c: Rational) {
        if !self.in_box(&e) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn add_to(&mut self, e: ExponentVector, c: Rational) {
        let cur = self.get(&e);
        self.set(e, cur + c);
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.coeffs.iter()
    }

    /// Product truncated to the common box.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        let bound = self.bound.min(other.bound);
        let mut out = TruncatedSeries::new(self.arity, bound);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if out.in_box(&e) {
                    out.add_to(e, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Restriction to a smaller box.
    pub fn truncate(&self, bound: usize) -> Self {
        let mut out = TruncatedSeries::new(self.arity, bound.min(self.bound));
        for (e, c) in &self.coeffs {
            out.set(e.clone(), c.clone());
        }
        out
    }

    /// Monomials (in either series) whose coefficients differ: `(exponent, self, other)`.
    pub fn differences(&self, other: &Self) -> Vec<(ExponentVector, Rational, Rational)> {
        let mut keys: Vec<&ExponentVector> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|e| {
                let a = self.get(e);
                let b = other.get(e);
                (a != b).then(|| (e.clone(), a, b))
            })
            .collect()
    }

    /// Partial sum of the series at a point.
    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(Complex64::new(to_f64(c), 0.0), |acc, (&k, x)| {
                        acc * x.powi(k as i32)
                    })
            })
            .sum()
    }

    pub fn render_with(&self, names: &[String]) -> String {
        let mut lines = Vec::with_capacity(self.coeffs.len());
        for (e, c) in &self.coeffs {
            let mono = render_monomial(e, names);
            let mono = if mono.is_empty() { "1".to_string() } else { mono };
            lines.push(format!("{mono}: {}", fmt_rational(c)));
        }
        lines.join("\n")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&default_names(self.arity)))
    }
}
