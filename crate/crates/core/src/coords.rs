//! Coordinates shared by the zeta modules.
//!
//! `x_k = q^{-s_k}` are the working variables. The tail products `y_k = x_k x_{k+1} ... x_d`
//! stand for `q^{-(s_k + ... + s_d)}`; a factor `1 - q^c y_k` vanishes exactly on the linear
//! subvariety `s_k + ... + s_d = c`.

use std::fmt;

use num_complex::Complex64;

use crate::exactalg::{ExponentVector, MonomialImage, QPowerFactor};

/// Exponent vector of `y_k` (0-based `k`) in `d` variables.
pub fn y_exponent(d: usize, k: usize) -> ExponentVector {
    ExponentVector::new((0..d).map(|j| i64::from(j >= k)).collect())
}

/// Images `y_k -> x_k ... x_d`, for moving a rational function from `y` to `x` coordinates.
pub fn y_to_x(d: usize) -> Vec<MonomialImage> {
    (0..d).map(|k| MonomialImage::monomial(y_exponent(d, k))).collect()
}

/// `x_k = q^{-s_k}` evaluated at complex `s`.
pub fn x_point(q: u64, s: &[Complex64]) -> Vec<Complex64> {
    let ln_q = (q as f64).ln();
    s.iter().map(|sk| (-sk * ln_q).exp()).collect()
}

/// The linear subvariety `s_start + ... + s_d = value` (1-based `start`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subvariety {
    pub start: usize,
    pub value: i64,
    pub depth: usize,
}

impl Subvariety {
    /// Recognizes `1 - q^c y_k` in `x` coordinates.
    pub fn from_factor(f: &QPowerFactor) -> Option<Self> {
        let e = f.exponent();
        let d = e.arity();
        let k = e.iter().position(|&v| v != 0)?;
        (*e == y_exponent(d, k)).then_some(Subvariety {
            start: k + 1,
            value: f.qpow(),
            depth: d,
        })
    }

    /// Recognizes `1 - q^c y_k` when the variables already are `(y_1, ..., y_d)`.
    pub fn from_y_factor(f: &QPowerFactor) -> Option<Self> {
        let e = f.exponent();
        let k = e.iter().position(|&v| v != 0)?;
        let unit = e.iter().enumerate().all(|(j, &v)| v == i64::from(j == k));
        unit.then_some(Subvariety {
            start: k + 1,
            value: f.qpow(),
            depth: e.arity(),
        })
    }
}

impl fmt::Display for Subvariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (self.start..=self.depth).map(|k| format!("s{k}")).collect();
        write!(f, "{}={}", vars.join("+"), self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_vectors() {
        assert_eq!(y_exponent(3, 0).to_vec(), vec![1, 1, 1]);
        assert_eq!(y_exponent(3, 2).to_vec(), vec![0, 0, 1]);
    }

    #[test]
    fn subvariety_recognition() {
        let f = QPowerFactor::new(2, [0, 1, 1]).unwrap();
        let sv = Subvariety::from_factor(&f).unwrap();
        assert_eq!(sv.to_string(), "s2+s3=2");
        assert!(Subvariety::from_factor(&QPowerFactor::new(1, [1, 0, 1]).unwrap()).is_none());
        let u = QPowerFactor::new(1, [1, 0]).unwrap();
        assert_eq!(Subvariety::from_y_factor(&u).unwrap().to_string(), "s1+s2=1");
    }
}
