//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::exponent::{default_names, render_monomial, ExponentVector};
use super::rational::{fmt_rational, rat, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    arity: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(arity: usize) -> Self {
        LaurentPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::monomial(c, ExponentVector::zero(arity))
    }

    pub fn monomial(c: Rational, e: ExponentVector) -> Self {
        let mut p = Self::zero(e.arity());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn var(arity: usize, i: usize) -> Self {
        Self::monomial(Rational::one(), ExponentVector::unit(arity, i))
    }

    /// Builds from `(coefficient, exponents)` pairs, summing repeated exponents.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, ExponentVector)>,
    {
        let mut p = Self::zero(arity);
        for (c, e) in terms {
            if e.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: e.arity(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `1 - c x^e`.
    pub fn binomial(c: Rational, e: ExponentVector) -> Self {
        let arity = e.arity();
        Self::one(arity) - Self::monomial(c, e)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// The single term, if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| !e.is_nonnegative())
    }

    pub fn max_degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).min()
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by `c x^e`.
    pub fn mul_monomial(&self, c: &Rational, e: &ExponentVector) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(f, a)| (f + e, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by the binomial `1 - c x^e` (`e != 0`), or `None` when it does not divide.
    ///
    /// Terms are grouped into chains `base + t*e`; along each chain the polynomial is a
    /// univariate Laurent polynomial in `z = x^e`, divided synthetically by `1 - c z`.
    pub fn div_binomial(&self, c: &Rational, e: &ExponentVector) -> Option<Self> {
        assert!(!e.is_zero(), "binomial exponent must be nonzero");
        assert!(!c.is_zero());
        let pivot = e.iter().position(|&k| k != 0).expect("nonzero");
        let step = e[pivot];
        let mut chains: HashMap<ExponentVector, BTreeMap<i64, Rational>> = HashMap::new();
        for (alpha, a) in &self.terms {
            let t = alpha[pivot].div_euclid(step);
            let base = alpha - &e.scale(t);
            chains.entry(base).or_default().insert(t, a.clone());
        }
        let mut out = Self::zero(self.arity);
        for (base, chain) in chains {
            let t0 = *chain.keys().next().unwrap();
            let t1 = *chain.keys().next_back().unwrap();
            // a_t = b_t - c b_{t-1}
            let mut prev = Rational::zero();
            for t in t0..t1 {
                let a = chain.get(&t).cloned().unwrap_or_else(Rational::zero);
                let b = a + c * &prev;
                out.add_term(&base + &e.scale(t), b.clone());
                prev = b;
            }
            let last = chain.get(&t1).cloned().unwrap_or_else(Rational::zero);
            if last + c * &prev != Rational::zero() {
                return None;
            }
        }
        Some(out)
    }

    /// Applies `x_i -> coeff_i * x^{image_i}` for every variable, producing arity `new_arity`.
    pub(crate) fn map_monomials(
        &self,
        coeffs: &[Rational],
        images: &[ExponentVector],
        new_arity: usize,
    ) -> Self {
        let mut out = Self::zero(new_arity);
        for (alpha, a) in &self.terms {
            let mut c = a.clone();
            let mut e = ExponentVector::zero(new_arity);
            for (i, &k) in alpha.iter().enumerate() {
                if k != 0 {
                    c *= super::rational::rat_pow(&coeffs[i], k);
                    e = &e + &images[i].scale(k);
                }
            }
            out.add_term(e, c);
        }
        out
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut t = Complex64::new(to_f64(c), 0.0);
            for (x, &k) in point.iter().zip(e.iter()) {
                if k != 0 {
                    t *= x.powi(k as i32);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn render_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            let mono = render_monomial(e, names);
            let body = if mono.is_empty() {
                fmt_rational(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_rational(&mag), mono)
            };
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&default_names(self.arity)))
    }
}

/// Product of two polynomials of equal arity.
pub fn poly_mul(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    a.try_mul(b)
}

// Operator forms panic on arity mismatch; use the `try_*` methods at API boundaries.

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_add(rhs).expect("arity mismatch")
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&rat(-1))
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_mul(rhs).expect("arity mismatch")
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat_frac;

    fn x(arity: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(arity, i)
    }

    fn c(arity: usize, v: i64) -> LaurentPolynomial {
        LaurentPolynomial::constant(arity, rat(v))
    }

    #[test]
    fn difference_of_squares() {
        let p = (c(1, 1) + x(1, 0)) * (c(1, 1) - x(1, 0));
        assert_eq!(p.to_string(), "1 - x1^2");
    }

    #[test]
    fn identity_product() {
        let p = c(2, 3) + x(2, 0) * x(2, 1) - x(2, 1).scale(&rat_frac(1, 2));
        assert_eq!(&p * &LaurentPolynomial::one(2), p);
    }

    #[test]
    fn cube_difference() {
        let v = x(1, 0);
        let a = c(1, 1) - v.scale(&rat(2));
        let b = c(1, 1) + v.scale(&rat(2)) + v.pow(2).scale(&rat(4));
        assert_eq!((a * b).to_string(), "1 - 8*x1^3");
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(matches!(
            poly_mul(&x(1, 0), &x(2, 0)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn binomial_division() {
        // (1 - 4u^2) / (1 - 2u) = 1 + 2u
        let u = x(1, 0);
        let p = c(1, 1) - u.pow(2).scale(&rat(4));
        let quot = p.div_binomial(&rat(2), &[1].into()).unwrap();
        assert_eq!(quot.to_string(), "1 + 2*x1");
        assert!(p.div_binomial(&rat(3), &[1].into()).is_none());
    }

    #[test]
    fn binomial_division_laurent_and_mixed() {
        // (1 - x1 x2^-1)(x2^-3 + 5 x1^2) divided back out
        let e: ExponentVector = [1, -1].into();
        let f = LaurentPolynomial::binomial(rat(1), e.clone());
        let g = LaurentPolynomial::monomial(rat(1), [0, -3].into())
            + LaurentPolynomial::monomial(rat(5), [2, 0].into());
        let p = &f * &g;
        assert_eq!(p.div_binomial(&rat(1), &e).unwrap(), g);
        assert!(g.div_binomial(&rat(1), &e).is_none());
    }

    #[test]
    fn rendering_signs_and_fractions() {
        let p = c(2, -1) + x(2, 1).scale(&rat_frac(1, 3)) - (x(2, 0) * x(2, 1)).scale(&rat(2));
        assert_eq!(p.to_string(), "-1 + 1/3*x2 - 2*x1*x2");
        assert_eq!(LaurentPolynomial::zero(2).to_string(), "0");
    }
}
