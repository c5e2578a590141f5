use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer exponent vector of a Laurent monomial. Ordered graded-lexicographically
/// (total degree first, then lexicographic with `x1` most significant).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(exps: Vec<i64>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(arity: usize) -> Self {
        ExponentVector(vec![0; arity])
    }

    pub fn unit(arity: usize, i: usize) -> Self {
        let mut v = vec![0; arity];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// First nonzero entry, if any.
    pub fn leading(&self) -> Option<i64> {
        self.0.iter().copied().find(|&e| e != 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|e| e * k).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for ExponentVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for ExponentVector {
    fn from(v: [i64; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.arity(), rhs.arity());
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.arity(), rhs.arity());
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|e| -e).collect())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Renders `x1^a*x2^b` style monomials; empty string for the constant monomial.
pub fn render_monomial(e: &ExponentVector, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

pub fn default_names(arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let mut v: Vec<ExponentVector> = vec![
            [1, 1].into(),
            [0, 0].into(),
            [2, 0].into(),
            [0, 1].into(),
            [1, 0].into(),
            [-1, 0].into(),
        ];
        v.sort();
        let got: Vec<Vec<i64>> = v.into_iter().map(|e| e.into_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![-1, 0],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0]
            ]
        );
    }

    #[test]
    fn monomial_text() {
        let names = default_names(3);
        assert_eq!(render_monomial(&[1, 0, 2].into(), &names), "x1*x3^2");
        assert_eq!(render_monomial(&[0, -1, 0].into(), &names), "x2^-1");
        assert_eq!(render_monomial(&[0, 0, 0].into(), &names), "");
    }
}
