//! Polynomials over a prime field, enumerated literally.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Polynomial over `F_p`, coefficients stored low degree first, no leading zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrimeFieldPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimeFieldPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(PrimeFieldPoly { p, coeffs })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &PrimeFieldPoly) -> PrimeFieldPoly {
        debug_assert!(m.is_monic());
        let p = self.p;
        let dm = m.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.coeffs.iter().enumerate() {
                    let sub = lead * c % p;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        PrimeFieldPoly { p, coeffs: r }
    }
}

impl fmt::Display for PrimeFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

/// All `p^n` monic polynomials of degree `n`, in lexicographic order of their coefficients
/// read from the top.
pub fn enumerate_monic(p: u64, n: usize) -> Result<Vec<PrimeFieldPoly>> {
    require_prime(p)?;
    let count = p
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Unsupported(format!("{p}^{n} monic polynomials")))?;
    let mut out = Vec::with_capacity(count as usize);
    for mut idx in 0..count {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        for c in coeffs.iter_mut().take(n) {
            *c = idx % p;
            idx /= p;
        }
        out.push(PrimeFieldPoly { p, coeffs });
    }
    Ok(out)
}

/// Monic irreducibles of every degree up to `max_degree`, found by trial division.
pub struct IrreducibleSieve {
    p: u64,
    by_degree: Vec<Vec<PrimeFieldPoly>>,
}

impl IrreducibleSieve {
    pub fn new(p: u64, max_degree: usize) -> Result<Self> {
        require_prime(p)?;
        let mut by_degree: Vec<Vec<PrimeFieldPoly>> = vec![Vec::new()];
        for n in 1..=max_degree {
            let mut found = Vec::new();
            for f in enumerate_monic(p, n)? {
                let reducible = by_degree[1..=n / 2]
                    .iter()
                    .flatten()
                    .any(|g| f.rem_monic(g).is_zero());
                if !reducible {
                    found.push(f);
                }
            }
            by_degree.push(found);
        }
        Ok(IrreducibleSieve { p, by_degree })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn of_degree(&self, n: usize) -> &[PrimeFieldPoly] {
        &self.by_degree[n]
    }

    pub fn count(&self, n: usize) -> u64 {
        self.by_degree[n].len() as u64
    }
}

/// Number of monic irreducibles of degree `n >= 1` over `F_p`, by trial division.
pub fn irreducible_count(p: u64, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::Usage("irreducible degree must be at least 1".into()));
    }
    Ok(IrreducibleSieve::new(p, n)?.count(n))
}

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Necklace formula `(1/n) sum_{e | n} mu(e) p^{n/e}`; valid for any prime power `p`.
pub fn necklace_count(p: u64, n: u32) -> u64 {
    assert!(n >= 1);
    let total: i128 = (1..=n)
        .filter(|e| n % e == 0)
        .map(|e| mobius(e as u64) as i128 * (p as i128).pow(n / e))
        .sum();
    (total / n as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_lists() {
        let lin: Vec<String> = enumerate_monic(2, 1)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(lin, ["T", "T + 1"]);
        assert_eq!(
            enumerate_monic(2, 0).unwrap(),
            vec![PrimeFieldPoly::new(2, vec![1]).unwrap()]
        );
        assert_eq!(enumerate_monic(3, 2).unwrap().len(), 9);
        assert!(matches!(enumerate_monic(4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn small_irreducible_counts() {
        assert_eq!(irreducible_count(2, 1).unwrap(), 2);
        assert_eq!(irreducible_count(2, 2).unwrap(), 1);
        assert_eq!(irreducible_count(2, 3).unwrap(), 2);
        let sieve = IrreducibleSieve::new(2, 3).unwrap();
        let cubics: Vec<String> = sieve.of_degree(3).iter().map(|f| f.to_string()).collect();
        assert_eq!(cubics, ["T^3 + T + 1", "T^3 + T^2 + 1"]);
    }

    #[test]
    fn trial_division_matches_necklace_formula() {
        for p in [2u64, 3, 5] {
            let sieve = IrreducibleSieve::new(p, 6).unwrap();
            for n in 1..=6 {
                assert_eq!(sieve.count(n), necklace_count(p, n as u32), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn remainder() {
        // T^2 + 1 = (T + 1)^2 over F_2
        let f = PrimeFieldPoly::new(2, vec![1, 0, 1]).unwrap();
        let g = PrimeFieldPoly::new(2, vec![1, 1]).unwrap();
        assert!(f.rem_monic(&g).is_zero());
        let f = PrimeFieldPoly::new(3, vec![1, 0, 1]).unwrap();
        let g = PrimeFieldPoly::new(3, vec![1, 1]).unwrap();
        assert_eq!(f.rem_monic(&g).coefficients(), &[2]);
    }
}
