//! Rational functions whose denominators are products of `1 - q^a x^e` binomials.
//!
//! Denominators are never expanded: equality is decided by cross-multiplication after
//! cancelling the shared part of the two factor multisets.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::exponent::{default_names, ExponentVector};
use super::factor::QPowerFactor;
use super::poly::LaurentPolynomial;
use super::rational::{q_pow, rat, Rational};
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// Distance to a vanishing denominator factor below which numeric evaluation refuses.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredRational {
    q: u64,
    num: LaurentPolynomial,
    den: BTreeMap<QPowerFactor, u32>,
}

/// Image `sign * q^qpow * x^exponent` of one variable under a monomial substitution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialImage {
    sign: i8,
    qpow: i64,
    exponent: ExponentVector,
}

impl MonomialImage {
    pub fn new(sign: i32, qpow: i64, exponent: impl Into<ExponentVector>) -> Result<Self> {
        let sign = match sign {
            1 => 1,
            -1 => -1,
            0 => return Err(Error::Usage("replacement coefficient is zero".into())),
            s => {
                return Err(Error::Usage(format!(
                    "replacement sign must be +1 or -1, got {s}"
                )))
            }
        };
        Ok(MonomialImage {
            sign,
            qpow,
            exponent: exponent.into(),
        })
    }

    /// `x_i -> x_i` in the given arity.
    pub fn identity(arity: usize, i: usize) -> Self {
        MonomialImage {
            sign: 1,
            qpow: 0,
            exponent: ExponentVector::unit(arity, i),
        }
    }

    /// Plain monomial image `x^exponent`.
    pub fn monomial(exponent: impl Into<ExponentVector>) -> Self {
        MonomialImage {
            sign: 1,
            qpow: 0,
            exponent: exponent.into(),
        }
    }

    pub fn exponent(&self) -> &ExponentVector {
        &self.exponent
    }

    fn coefficient(&self, q: u64) -> Rational {
        q_pow(q, self.qpow) * rat(self.sign as i64)
    }
}

/// Numerator/denominator under construction; folds arbitrary binomials into canonical factors.
struct Assembly {
    q: u64,
    num: LaurentPolynomial,
    den: BTreeMap<QPowerFactor, u32>,
}

impl Assembly {
    /// Divides by `(1 - sign * q^qpow * x^e)^mult`.
    fn divide(&mut self, sign: i8, qpow: i64, e: ExponentVector, mult: u32) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        if e.is_zero() {
            let v = Rational::one() - q_pow(self.q, qpow) * rat(sign as i64);
            if v.is_zero() {
                return Err(Error::Usage(
                    "substitution sends a denominator factor to zero".into(),
                ));
            }
            let inv = super::rational::rat_pow(&v, -(mult as i64));
            self.num = self.num.scale(&inv);
            return Ok(());
        }
        if sign < 0 {
            // 1/(1 + z) = (1 - z)/(1 - z^2)
            let z = LaurentPolynomial::binomial(q_pow(self.q, qpow), e.clone());
            self.num = &self.num * &z.pow(mult);
            return self.divide(1, 2 * qpow, e.scale(2), mult);
        }
        if e.leading().unwrap() < 0 {
            // 1 - c x^e = (-c x^e)(1 - c^-1 x^-e)
            let flip = -&e;
            let c = -q_pow(self.q, -qpow);
            for _ in 0..mult {
                self.num = self.num.mul_monomial(&c, &flip);
            }
            return self.divide(1, -qpow, flip, mult);
        }
        let f = QPowerFactor::new(qpow, e)?;
        *self.den.entry(f).or_insert(0) += mult;
        Ok(())
    }

    fn finish(self) -> FactoredRational {
        FactoredRational {
            q: self.q,
            num: self.num,
            den: self.den,
        }
    }
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::Usage(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

impl FactoredRational {
    pub fn new<I>(q: u64, num: LaurentPolynomial, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = QPowerFactor>,
    {
        check_q(q)?;
        let mut den = BTreeMap::new();
        for f in factors {
            if f.arity() != num.arity() {
                return Err(Error::ArityMismatch {
                    left: num.arity(),
                    right: f.arity(),
                });
            }
            *den.entry(f).or_insert(0) += 1;
        }
        Ok(FactoredRational { q, num, den })
    }

    pub fn from_poly(q: u64, num: LaurentPolynomial) -> Result<Self> {
        Self::new(q, num, [])
    }

    pub fn one(q: u64, arity: usize) -> Result<Self> {
        Self::from_poly(q, LaurentPolynomial::one(arity))
    }

    /// `1 / (1 - q^qpow x^e)`, reoriented if `e` has a negative leading entry.
    pub fn geometric(q: u64, qpow: i64, e: impl Into<ExponentVector>) -> Result<Self> {
        check_q(q)?;
        let e = e.into();
        let mut asm = Assembly {
            q,
            num: LaurentPolynomial::one(e.arity()),
            den: BTreeMap::new(),
        };
        asm.divide(1, qpow, e, 1)?;
        Ok(asm.finish())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn factors(&self) -> impl Iterator<Item = (&QPowerFactor, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn multiplicity(&self, f: &QPowerFactor) -> u32 {
        self.den.get(f).copied().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Expanded product of the denominator factors.
    pub fn denominator_poly(&self) -> LaurentPolynomial {
        product(self.q, self.arity(), self.den.iter().map(|(f, &m)| (f, m)))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::QMismatch {
                left: self.q,
                right: other.q,
            });
        }
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        Ok(FactoredRational {
            q: self.q,
            num: &self.num * &other.num,
            den,
        })
    }

    /// Sum over the merged (max-multiplicity) denominator multiset.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut merged = self.den.clone();
        for (f, &m) in &other.den {
            let e = merged.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |x: &Self| -> LaurentPolynomial {
            let missing = merged
                .iter()
                .map(|(f, &m)| (f, m - x.multiplicity(f)))
                .filter(|&(_, m)| m > 0);
            &x.num * &product(self.q, self.arity(), missing)
        };
        let num = &lift(self) + &lift(other);
        Ok(FactoredRational {
            q: self.q,
            num,
            den: merged,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FactoredRational {
            q: self.q,
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPolynomial) -> Result<Self> {
        self.mul(&Self::from_poly(self.q, p.clone())?)
    }

    /// Value equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        let mut only_self = Vec::new();
        let mut only_other = Vec::new();
        for (f, &m) in &self.den {
            let o = other.multiplicity(f);
            if m > o {
                only_self.push((f, m - o));
            }
        }
        for (f, &m) in &other.den {
            let s = self.multiplicity(f);
            if m > s {
                only_other.push((f, m - s));
            }
        }
        let lhs = &self.num * &product(self.q, self.arity(), only_other);
        let rhs = &other.num * &product(self.q, self.arity(), only_self);
        Ok(lhs == rhs)
    }

    /// Cancels every denominator factor that exactly divides the numerator.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return FactoredRational {
                q: self.q,
                num: self.num.clone(),
                den: BTreeMap::new(),
            };
        }
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (f, &m) in &self.den {
            let mut left = m;
            while left > 0 {
                match num.div_binomial(&f.coefficient(self.q), f.exponent()) {
                    Some(quot) => {
                        num = quot;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(f.clone(), left);
            }
        }
        FactoredRational {
            q: self.q,
            num,
            den,
        }
    }

    /// `p * self` as a polynomial, dividing out as many denominator factors as possible.
    /// Returns the quotient and the factors that did not divide.
    pub fn clear_denominator(
        &self,
        p: &LaurentPolynomial,
    ) -> Result<(LaurentPolynomial, Vec<(QPowerFactor, u32)>)> {
        if p.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: p.arity(),
            });
        }
        let mut acc = p * &self.num;
        let mut leftover = Vec::new();
        for (f, &m) in &self.den {
            let mut left = m;
            while left > 0 {
                match acc.div_binomial(&f.coefficient(self.q), f.exponent()) {
                    Some(quot) => {
                        acc = quot;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                leftover.push((f.clone(), left));
            }
        }
        Ok((acc, leftover))
    }

    /// Removes one copy of `f` from the denominator.
    pub fn without_factor(&self, f: &QPowerFactor) -> Option<Self> {
        let m = self.multiplicity(f);
        if m == 0 {
            return None;
        }
        let mut den = self.den.clone();
        if m == 1 {
            den.remove(f);
        } else {
            den.insert(f.clone(), m - 1);
        }
        Some(FactoredRational {
            q: self.q,
            num: self.num.clone(),
            den,
        })
    }

    /// Formal power-series coefficients for every exponent vector in the box `[0, bound]^d`.
    pub fn series_expand(&self, bound: usize) -> Result<TruncatedSeries> {
        if self.num.has_negative_exponents() {
            return Err(Error::NotAPowerSeries(format!(
                "numerator {} has negative exponents",
                self.num
            )));
        }
        if let Some((f, _)) = self.den.iter().find(|(f, _)| !f.exponent().is_nonnegative()) {
            return Err(Error::NotAPowerSeries(format!(
                "denominator factor with exponent {:?} is not a power-series unit",
                f.exponent()
            )));
        }
        let d = self.arity();
        let side = bound + 1;
        let size = side.pow(d as u32);
        let index = |e: &[i64]| e.iter().fold(0usize, |acc, &k| acc * side + k as usize);
        let mut dense = vec![Rational::zero(); size];
        for (e, c) in self.num.terms() {
            if e.iter().all(|&k| k as usize <= bound) {
                dense[index(e)] = c.clone();
            }
        }
        let mut cursor = vec![0i64; d];
        for (f, &m) in &self.den {
            let c = f.coefficient(self.q);
            let e = f.exponent();
            if e.iter().any(|&k| k as usize > bound) {
                continue;
            }
            let shift = index(e);
            for _ in 0..m {
                // In-place multiplication by 1/(1 - c x^e): S[a] += c * S[a - e], ascending.
                for lin in shift..size {
                    decode(lin, side, &mut cursor);
                    if cursor.iter().zip(e.iter()).all(|(a, b)| a >= b) {
                        let add = &c * &dense[lin - shift];
                        if !add.is_zero() {
                            dense[lin] += add;
                        }
                    }
                }
            }
        }
        let mut series = TruncatedSeries::new(d, bound);
        for (lin, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                decode(lin, side, &mut cursor);
                series.set(ExponentVector::new(cursor.clone()), c);
            }
        }
        Ok(series)
    }

    /// Substitutes `x_var -> image`, keeping the arity.
    pub fn substitute(&self, var: usize, image: &MonomialImage) -> Result<Self> {
        let d = self.arity();
        if var >= d {
            return Err(Error::Usage(format!(
                "variable index {var} out of range for arity {d}"
            )));
        }
        if image.exponent.arity() != d {
            return Err(Error::ArityMismatch {
                left: d,
                right: image.exponent.arity(),
            });
        }
        let images: Vec<MonomialImage> = (0..d)
            .map(|i| {
                if i == var {
                    image.clone()
                } else {
                    MonomialImage::identity(d, i)
                }
            })
            .collect();
        self.map_variables(&images, d)
    }

    /// Applies `x_i -> images[i]` simultaneously, landing in `new_arity` variables.
    pub fn map_variables(&self, images: &[MonomialImage], new_arity: usize) -> Result<Self> {
        if images.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|m| m.exponent.arity() != new_arity) {
            return Err(Error::ArityMismatch {
                left: new_arity,
                right: bad.exponent.arity(),
            });
        }
        let coeffs: Vec<Rational> = images.iter().map(|m| m.coefficient(self.q)).collect();
        let exps: Vec<ExponentVector> = images.iter().map(|m| m.exponent.clone()).collect();
        let mut asm = Assembly {
            q: self.q,
            num: self.num.map_monomials(&coeffs, &exps, new_arity),
            den: BTreeMap::new(),
        };
        for (f, &m) in &self.den {
            let mut sign = 1i8;
            let mut qpow = f.qpow();
            let mut e = ExponentVector::zero(new_arity);
            for (i, &k) in f.exponent().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if images[i].sign < 0 && k.rem_euclid(2) == 1 {
                    sign = -sign;
                }
                qpow += images[i].qpow * k;
                e = &e + &images[i].exponent.scale(k);
            }
            asm.divide(sign, qpow, e, m)?;
        }
        Ok(asm.finish())
    }

    /// Floating-point value at a point given in the `x` coordinates.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: point.len(),
            });
        }
        let mut den = Complex64::one();
        for (f, &m) in &self.den {
            let v = f.to_poly(self.q).evaluate(point);
            if v.norm() < POLE_TOLERANCE {
                return Err(Error::PoleProximity {
                    tolerance: POLE_TOLERANCE,
                });
            }
            den *= v.powi(m as i32);
        }
        Ok(self.num.evaluate(point) / den)
    }

    pub fn render_with(&self, names: &[String]) -> String {
        let num = self.num.render_with(names);
        if self.den.is_empty() {
            return num;
        }
        let num = if self.num.len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let atoms: Vec<String> = self
            .den
            .iter()
            .map(|(f, &m)| {
                let s = f.render_with(self.q, names);
                if m > 1 {
                    format!("{s}^{m}")
                } else {
                    s
                }
            })
            .collect();
        if atoms.len() == 1 {
            format!("{num}/{}", atoms[0])
        } else {
            format!("{num}/({})", atoms.concat())
        }
    }
}

fn decode(mut lin: usize, side: usize, out: &mut [i64]) {
    for slot in out.iter_mut().rev() {
        *slot = (lin % side) as i64;
        lin /= side;
    }
}

fn product<'a, I>(q: u64, arity: usize, factors: I) -> LaurentPolynomial
where
    I: IntoIterator<Item = (&'a QPowerFactor, u32)>,
{
    let mut acc = LaurentPolynomial::one(arity);
    for (f, m) in factors {
        let p = f.to_poly(q);
        for _ in 0..m {
            acc = &acc * &p;
        }
    }
    acc
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&default_names(self.arity())))
    }
}

pub fn rf_mul(a: &FactoredRational, b: &FactoredRational) -> Result<FactoredRational> {
    a.mul(b)
}

pub fn rf_add(a: &FactoredRational, b: &FactoredRational) -> Result<FactoredRational> {
    a.add(b)
}

pub fn rf_neg(a: &FactoredRational) -> FactoredRational {
    a.neg()
}

pub fn rf_equal(a: &FactoredRational, b: &FactoredRational) -> Result<bool> {
    a.equals(b)
}

pub fn rf_reduce(a: &FactoredRational) -> FactoredRational {
    a.reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat_frac;

    fn geo(q: u64, a: i64, e: &[i64]) -> FactoredRational {
        FactoredRational::geometric(q, a, e.to_vec()).unwrap()
    }

    #[test]
    fn additive_inverse_keeps_denominator() {
        let a = geo(2, 1, &[1]);
        let s = a.add(&a.neg()).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.factors().count(), 1);
        assert_eq!(s.reduce().to_string(), "0");
    }

    #[test]
    fn denominators_merge_on_multiplication() {
        let p = geo(2, 0, &[1, 0]).mul(&geo(2, 0, &[0, 1])).unwrap();
        assert_eq!(p.to_string(), "1/((1 - x1)(1 - x2))");
    }

    #[test]
    fn cross_multiplied_sum() {
        // 1/(1-v) + 1/(1-2v) = (2 - 3v)/((1-v)(1-2v))
        let s = geo(2, 0, &[1]).add(&geo(2, 1, &[1])).unwrap();
        assert_eq!(s.to_string(), "(2 - 3*x1)/((1 - x1)(1 - 2*x1))");
    }

    #[test]
    fn equality_of_equivalent_fractions() {
        let a = geo(2, 0, &[1]);
        let num = LaurentPolynomial::one(1) + LaurentPolynomial::var(1, 0);
        let b = FactoredRational::new(2, num, [QPowerFactor::new(0, [2]).unwrap()]).unwrap();
        assert!(a.equals(&b).unwrap());
        assert!(!a.equals(&geo(2, 1, &[1])).unwrap());
    }

    #[test]
    fn q_mismatch_is_an_error() {
        assert!(matches!(
            geo(2, 1, &[1]).add(&geo(3, 1, &[1])),
            Err(Error::QMismatch { .. })
        ));
    }

    #[test]
    fn reduce_cancels() {
        let v = LaurentPolynomial::var(1, 0);
        let one = LaurentPolynomial::one(1);
        let f = |a: i64| QPowerFactor::new(a, [1]).unwrap();
        let r = FactoredRational::new(2, &one - &v, [f(0)]).unwrap().reduce();
        assert_eq!(r.to_string(), "1");
        let r = FactoredRational::new(2, &one - &(&v * &v).scale(&rat(4)), [f(1)])
            .unwrap()
            .reduce();
        assert_eq!(r.to_string(), "1 + 2*x1");
        let r = FactoredRational::new(3, &one - &v.scale(&rat(3)), [f(0), f(1)])
            .unwrap()
            .reduce();
        assert_eq!(r.to_string(), "1/(1 - x1)");
    }

    #[test]
    fn geometric_series() {
        let s = geo(2, 1, &[1]).series_expand(3).unwrap();
        let c: Vec<Rational> = (0..=3).map(|n| s.get(&[n])).collect();
        assert_eq!(c, vec![rat(1), rat(2), rat(4), rat(8)]);

        let s = geo(2, 0, &[1, 0])
            .mul(&geo(2, 0, &[0, 1]))
            .unwrap()
            .series_expand(1)
            .unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(_, c)| *c == rat(1)));

        let s = geo(2, 2, &[1, 0])
            .mul(&geo(2, 1, &[0, 1]))
            .unwrap()
            .series_expand(2)
            .unwrap();
        assert_eq!(s.get(&[1, 0]), rat(4));
        assert_eq!(s.get(&[2, 2]), rat(64));
    }

    #[test]
    fn laurent_numerator_is_not_a_power_series() {
        let f = FactoredRational::from_poly(2, LaurentPolynomial::monomial(rat(1), [-1].into()))
            .unwrap();
        assert!(matches!(f.series_expand(2), Err(Error::NotAPowerSeries(_))));
    }

    #[test]
    fn identity_substitution() {
        let f = geo(2, 2, &[1, 1]).mul(&geo(2, 1, &[0, 1])).unwrap();
        let g = f.substitute(0, &MonomialImage::identity(2, 0)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn reciprocal_substitution_rewrites_factor() {
        // 1/(1 - q x) under x -> q^-1 x^-1 is 1/(1 - x^-1) = -x/(1 - x)
        let f = geo(3, 1, &[1]);
        let g = f
            .substitute(0, &MonomialImage::new(1, -1, [-1]).unwrap())
            .unwrap();
        assert_eq!(g.to_string(), "-x1/(1 - x1)");
    }

    #[test]
    fn negative_sign_substitution() {
        // 1/(1 - x) under x -> -x is 1/(1 + x) = (1 - x)/(1 - x^2)
        let f = geo(2, 0, &[1]);
        let g = f
            .substitute(0, &MonomialImage::new(-1, 0, [1]).unwrap())
            .unwrap();
        assert_eq!(g.to_string(), "(1 - x1)/(1 - x1^2)");
        let back = g
            .substitute(0, &MonomialImage::new(-1, 0, [1]).unwrap())
            .unwrap();
        assert!(back.equals(&f).unwrap());
    }

    #[test]
    fn zero_sign_is_rejected() {
        assert!(MonomialImage::new(0, 0, [1]).is_err());
    }

    #[test]
    fn numeric_evaluation() {
        let f = geo(2, 1, &[1]);
        let at = |v: f64| f.evaluate(&[Complex64::new(v, 0.0)]).unwrap();
        assert!((at(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((at(0.25) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!(matches!(
            f.evaluate(&[Complex64::new(0.5, 0.0)]),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn rendering_fraction_coefficients() {
        let f = geo(3, -1, &[1, 0]).scale(&rat_frac(2, 3));
        assert_eq!(f.to_string(), "2/3/(1 - 1/3*x1)");
        let sq = geo(2, 0, &[1]).mul(&geo(2, 0, &[1])).unwrap();
        assert_eq!(sq.to_string(), "1/(1 - x1)^2");
    }
}
