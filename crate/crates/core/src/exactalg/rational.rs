//! Helpers around `BigRational`, the coefficient field of every closed form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `q^a` for any integer `a`, exactly.
pub fn q_pow(q: u64, a: i64) -> Rational {
    let base = BigInt::from(q);
    let p = num_traits::pow(base, a.unsigned_abs() as usize);
    if a >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Integer power of a rational with a possibly negative exponent. Panics on `0^-n`.
pub fn rat_pow(r: &Rational, n: i64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let p = num_traits::pow(r.clone(), n.unsigned_abs() as usize);
    if n > 0 {
        p
    } else {
        assert!(!p.is_zero(), "zero raised to a negative power");
        p.recip()
    }
}

/// Reduced `p/r` form, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back for huge numerators/denominators.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_powers() {
        assert_eq!(q_pow(2, 3), rat(8));
        assert_eq!(q_pow(3, -2), rat_frac(1, 9));
        assert_eq!(q_pow(5, 0), rat(1));
    }

    #[test]
    fn formatting_round_trips() {
        for r in [rat(0), rat(-7), rat_frac(-3, 4), rat_frac(10, 4)] {
            assert_eq!(parse_rational(&fmt_rational(&r)), Some(r));
        }
        assert_eq!(fmt_rational(&rat_frac(10, 4)), "5/2");
        assert!(parse_rational("1/0").is_none());
    }
}
