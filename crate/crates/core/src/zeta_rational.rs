//! Genus 0: the multiple zeta function of the rational function field `F_q(T)`.
//!
//! Effective divisors of degree `n` number `b_n = (q^{n+1} - 1)/(q - 1)`. Writing each `b_n`
//! as a difference of two geometric terms and summing the nested series gives one term per
//! subset `S` of `{1..d}`.

use std::fmt;

use num_traits::{One, Zero};

use crate::coords::{y_exponent, Subvariety};
use crate::error::{Error, Result};
use crate::exactalg::rational::{fmt_rational, q_pow, rat, Rational};
use crate::exactalg::{FactoredRational, LaurentPolynomial, QPowerFactor};
use crate::zeta_polyring::{shifted_one_var, ShiftedArgument};

fn check_args(q: u64, d: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::Usage(format!("q must be at least 2, got {q}")));
    }
    if d == 0 {
        return Err(Error::Usage("depth must be at least 1".into()));
    }
    Ok(())
}

/// One summand of the subset expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetTerm {
    /// 1-based members of `S`.
    pub subset: Vec<usize>,
    pub depth: usize,
    /// `(-1)^{d - |S|}`
    pub sign: i32,
    /// `c_j(S) = #{k in S : k >= j}` for `j = 1..d`.
    pub exponents: Vec<i64>,
}

impl SubsetTerm {
    fn from_mask(d: usize, mask: u32) -> Self {
        let subset: Vec<usize> = (1..=d).filter(|k| mask >> (k - 1) & 1 == 1).collect();
        let exponents = (1..=d)
            .map(|j| subset.iter().filter(|&&k| k >= j).count() as i64)
            .collect();
        SubsetTerm {
            sign: if (d - subset.len()) % 2 == 0 { 1 } else { -1 },
            subset,
            depth: d,
            exponents,
        }
    }

    /// `sign * q^{|S|} / (q - 1)^d`
    pub fn prefactor(&self, q: u64) -> Rational {
        let qm1 = Rational::from_integer((q - 1).into());
        rat(self.sign as i64) * q_pow(q, self.subset.len() as i64)
            / num_traits::pow(qm1, self.depth)
    }

    /// `prefactor * prod_j 1/(1 - q^{c_j} y_j)`
    pub fn value(&self, q: u64) -> FactoredRational {
        let d = self.depth;
        let factors = (0..d).map(|j| QPowerFactor::new(self.exponents[j], y_exponent(d, j)).unwrap());
        FactoredRational::new(q, LaurentPolynomial::constant(d, self.prefactor(q)), factors)
            .expect("valid q")
    }
}

impl fmt::Display for SubsetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.subset.iter().map(|k| k.to_string()).collect();
        let c: Vec<String> = self.exponents.iter().map(|k| k.to_string()).collect();
        write!(
            f,
            "S={{{}}} sign={} c=({})",
            members.join(","),
            if self.sign > 0 { "+" } else { "-" },
            c.join(",")
        )
    }
}

/// All `2^d` terms, ordered by bitmask of `S`.
pub fn subset_terms(d: usize) -> Vec<SubsetTerm> {
    (0..1u32 << d).map(|mask| SubsetTerm::from_mask(d, mask)).collect()
}

/// `Z_d(F_q(T))` in the `x` coordinates, reduced.
pub fn closed_form_genus0(q: u64, d: usize) -> Result<FactoredRational> {
    check_args(q, d)?;
    if d > 16 {
        return Err(Error::Unsupported(format!("depth {d} has 2^{d} subset terms")));
    }
    let mut total = FactoredRational::from_poly(q, LaurentPolynomial::zero(d))?;
    for term in subset_terms(d) {
        total = total.add(&term.value(q))?;
    }
    Ok(total.reduce())
}

/// The four-term depth-2 expansion written out by hand, kept as a regression target for
/// the subset formula. Variables `(x1, x2)`, with `u = x1 x2`, `v = x2`.
pub fn genus0_d2_display(q: u64) -> Result<FactoredRational> {
    check_args(q, 2)?;
    let u = [1, 1];
    let v = [0, 1];
    let term = |c: i64, a: i64, b: i64| -> Result<FactoredRational> {
        let num = LaurentPolynomial::constant(2, rat(c) * q_pow(q, 0));
        FactoredRational::new(
            q,
            num,
            [QPowerFactor::new(a, u)?, QPowerFactor::new(b, v)?],
        )
    };
    let qi = q as i64;
    let sum = term(qi * qi, 2, 1)?
        .add(&term(-qi, 1, 0)?)?
        .add(&term(-qi, 1, 1)?)?
        .add(&term(1, 0, 0)?)?;
    let qm1 = Rational::from_integer((q - 1).into());
    Ok(sum.scale(&(Rational::one() / (&qm1 * &qm1))))
}

/// `(q-1)^d (1 - x_d)(1 - q x_d) prod_{k<d} (1 - y_k)(1 - q y_k)(1 - q^2 y_k)`, expanded.
pub fn q_polynomial(q: u64, d: usize) -> Result<LaurentPolynomial> {
    check_args(q, d)?;
    let qm1 = Rational::from_integer((q - 1).into());
    let mut out = LaurentPolynomial::constant(d, num_traits::pow(qm1, d));
    for k in 0..d {
        let top = if k + 1 == d { 1 } else { 2 };
        for c in 0..=top {
            out = &out * &LaurentPolynomial::binomial(q_pow(q, c), y_exponent(d, k));
        }
    }
    Ok(out)
}

/// Outcome of multiplying the closed form by [`q_polynomial`].
#[derive(Clone, Debug)]
pub struct PolynomialReport {
    pub q: u64,
    pub depth: usize,
    /// `Q * Z` after dividing out every factor that divides.
    pub product: LaurentPolynomial,
    /// Denominator factors that `Q` failed to absorb.
    pub leftover: Vec<(QPowerFactor, u32)>,
    /// Degree of `product` in each `x_k`.
    pub degrees: Vec<i64>,
    /// `2d - 1`
    pub bound: i64,
}

impl PolynomialReport {
    pub fn is_polynomial(&self) -> bool {
        self.leftover.is_empty() && !self.product.has_negative_exponents()
    }

    pub fn within_bound(&self) -> bool {
        self.degrees.iter().all(|&k| k <= self.bound)
    }
}

impl fmt::Display for PolynomialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(|k| k.to_string()).collect();
        write!(
            f,
            "q={} d={} polynomial={} degrees=({}) bound={}",
            self.q,
            self.depth,
            self.is_polynomial(),
            degs.join(","),
            self.bound
        )?;
        if !self.leftover.is_empty() {
            let names = crate::exactalg::default_names(self.depth);
            let left: Vec<String> = self
                .leftover
                .iter()
                .map(|(g, m)| {
                    let s = g.render_with(self.q, &names);
                    if *m > 1 { format!("{s}^{m}") } else { s }
                })
                .collect();
            write!(f, " leftover={}", left.join(""))?;
        }
        Ok(())
    }
}

/// Computes `Q * Z` by exact division, reporting any factor that does not divide.
pub fn q_times_z(q: u64, d: usize) -> Result<PolynomialReport> {
    let z = closed_form_genus0(q, d)?;
    let (product, leftover) = z.clear_denominator(&q_polynomial(q, d)?)?;
    let degrees = (0..d)
        .map(|k| product.max_degree_in(k).unwrap_or(0))
        .collect();
    Ok(PolynomialReport {
        q,
        depth: d,
        product,
        leftover,
        degrees,
        bound: 2 * d as i64 - 1,
    })
}

/// `Q * Z` must be a polynomial with every per-variable degree `<= 2d - 1`.
/// A denominator factor that `Q` cannot absorb is an identity violation.
pub fn q_times_z_is_polynomial(q: u64, d: usize) -> Result<(bool, PolynomialReport)> {
    let report = q_times_z(q, d)?;
    if !report.is_polynomial() {
        return Err(Error::IdentityViolation(format!(
            "Q*Z is not a polynomial: {report}"
        )));
    }
    Ok((report.within_bound(), report))
}

/// One product of one-variable zeta functions of `F_q[T]` with a rational coefficient.
#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub coefficient: Rational,
    pub arguments: Vec<ShiftedArgument>,
}

impl fmt::Display for DecompositionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.coefficient))?;
        for a in &self.arguments {
            write!(f, "*Z({a})")?;
        }
        Ok(())
    }
}

impl DecompositionTerm {
    pub fn value(&self, q: u64) -> FactoredRational {
        let d = self.arguments.first().map_or(1, |a| a.depth);
        self.arguments
            .iter()
            .fold(
                FactoredRational::from_poly(q, LaurentPolynomial::constant(d, self.coefficient.clone()))
                    .unwrap(),
                |acc, a| acc.mul(&shifted_one_var(q, a)).unwrap(),
            )
    }
}

/// The depth-2 decomposition into products `Z(F_q[T], .)`:
/// `q^2 Z(s+w-1)Z(w) - q Z(s+w)Z(w+1) - q Z(s+w)Z(w) + Z(s+w+1)Z(w+1)`, all over `(q-1)^2`.
pub fn decomposition_d2(q: u64) -> Vec<DecompositionTerm> {
    let qm1 = Rational::from_integer((q - 1).into());
    let scale = Rational::one() / (&qm1 * &qm1);
    let arg = |start: usize, shift: i64| ShiftedArgument {
        start,
        depth: 2,
        shift,
    };
    let qr = q_pow(q, 1);
    vec![
        DecompositionTerm {
            coefficient: &qr * &qr * &scale,
            arguments: vec![arg(1, -1), arg(2, 0)],
        },
        DecompositionTerm {
            coefficient: -&qr * &scale,
            arguments: vec![arg(1, 0), arg(2, 1)],
        },
        DecompositionTerm {
            coefficient: -&qr * &scale,
            arguments: vec![arg(1, 0), arg(2, 0)],
        },
        DecompositionTerm {
            coefficient: scale.clone(),
            arguments: vec![arg(1, 1), arg(2, 1)],
        },
    ]
}

/// Each subset term, read as a product of one-variable zeta functions of `F_q[T]`:
/// `1/(1 - q^c y_j) = Z(F_q[T], s_j + ... + s_d + 1 - c)`.
pub fn decomposition(q: u64, d: usize) -> Vec<DecompositionTerm> {
    subset_terms(d)
        .into_iter()
        .map(|t| DecompositionTerm {
            coefficient: t.prefactor(q),
            arguments: (0..d)
                .map(|j| ShiftedArgument {
                    start: j + 1,
                    depth: d,
                    shift: 1 - t.exponents[j],
                })
                .collect(),
        })
        .collect()
}

fn sum_terms(q: u64, d: usize, terms: &[DecompositionTerm]) -> Result<FactoredRational> {
    terms.iter().try_fold(
        FactoredRational::from_poly(q, LaurentPolynomial::zero(d))?,
        |acc, t| acc.add(&t.value(q)),
    )
}

/// The depth-2 decomposition reproduces the closed form.
pub fn decomposition_check_d2(q: u64) -> Result<bool> {
    check_args(q, 2)?;
    sum_terms(q, 2, &decomposition_d2(q))?.equals(&closed_form_genus0(q, 2)?)
}

/// The general-depth decomposition reproduces the closed form.
pub fn decomposition_check(q: u64, d: usize) -> Result<bool> {
    check_args(q, d)?;
    sum_terms(q, d, &decomposition(q, d))?.equals(&closed_form_genus0(q, d)?)
}

/// Subvarieties carrying the reduced denominator of the closed form. Each must be simple and
/// of the form `s_k + ... + s_d = c` with `0 <= c <= d - k + 1`.
pub fn pole_subvarieties_genus0(q: u64, d: usize) -> Result<Vec<Subvariety>> {
    let z = closed_form_genus0(q, d)?;
    let mut out = Vec::new();
    for (f, m) in z.factors() {
        let sv = Subvariety::from_factor(f).ok_or_else(|| {
            Error::IdentityViolation(format!(
                "denominator factor {} is not on a tail subvariety",
                f.render_with(q, &crate::exactalg::default_names(d))
            ))
        })?;
        if m != 1 {
            return Err(Error::IdentityViolation(format!("pole on {sv} has order {m}")));
        }
        let top = (d - sv.start + 1) as i64;
        if !(0..=top).contains(&sv.value) {
            return Err(Error::IdentityViolation(format!(
                "pole on {sv} outside 0..={top}"
            )));
        }
        out.push(sv);
    }
    out.sort();
    Ok(out)
}

/// Sum of `sign * q^{|S|}` over all subsets: equals `(q - 1)^d`, so the constant term is 1.
pub fn subset_constant_sum(q: u64, d: usize) -> Rational {
    subset_terms(d)
        .iter()
        .map(|t| rat(t.sign as i64) * q_pow(q, t.subset.len() as i64))
        .fold(Rational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldspec::FunctionFieldSpec;
    use crate::oracle::truncated_series_b;

    #[test]
    fn depth_one_is_the_one_variable_zeta() {
        let z = closed_form_genus0(2, 1).unwrap();
        assert_eq!(z.to_string(), "1/((1 - x1)(1 - 2*x1))");
        let spec = FunctionFieldSpec::rational(5).unwrap();
        assert!(closed_form_genus0(5, 1).unwrap().equals(&spec.one_var_zeta()).unwrap());
    }

    #[test]
    fn subset_exponents() {
        let terms = subset_terms(2);
        let full = terms.iter().find(|t| t.subset == [1, 2]).unwrap();
        assert_eq!(full.exponents, [2, 1]);
        assert_eq!(full.sign, 1);
        let one = terms.iter().find(|t| t.subset == [1]).unwrap();
        assert_eq!((one.exponents.as_slice(), one.sign), (&[1, 0][..], -1));
        let two = terms.iter().find(|t| t.subset == [2]).unwrap();
        assert_eq!(two.exponents, [1, 1]);
        assert_eq!(two.to_string(), "S={2} sign=- c=(1,1)");
    }

    #[test]
    fn subset_formula_matches_hand_display() {
        for q in [2, 3, 5, 7] {
            let display = genus0_d2_display(q).unwrap();
            assert!(closed_form_genus0(q, 2).unwrap().equals(&display).unwrap());
        }
    }

    #[test]
    fn series_matches_nested_sum() {
        for q in [2, 3, 5] {
            let spec = FunctionFieldSpec::rational(q).unwrap();
            for d in 1..=3 {
                let s = closed_form_genus0(q, d).unwrap().series_expand(5).unwrap();
                assert_eq!(s, truncated_series_b(&spec, d, 5), "q={q} d={d}");
            }
        }
        let s = closed_form_genus0(2, 2).unwrap().series_expand(2).unwrap();
        assert_eq!(s.get(&[0, 0]), rat(1));
        assert_eq!(s.get(&[0, 1]), rat(3));
    }

    #[test]
    fn constant_sum() {
        for (q, d) in [(2, 1), (3, 2), (5, 4)] {
            assert_eq!(subset_constant_sum(q, d), num_traits::pow(rat(q as i64 - 1), d));
        }
    }

    #[test]
    fn q_polynomial_shapes() {
        let q1 = q_polynomial(3, 1).unwrap();
        let expected = LaurentPolynomial::constant(1, rat(2))
            * LaurentPolynomial::binomial(rat(1), [1].into())
            * LaurentPolynomial::binomial(rat(3), [1].into());
        assert_eq!(q1, expected);
        assert_eq!(q_polynomial(2, 2).unwrap().max_degree_in(1), Some(5));
        assert_eq!(q_polynomial(2, 2).unwrap().max_degree_in(0), Some(3));
    }

    #[test]
    fn q_times_z_small_depths() {
        for q in [2, 3, 5] {
            for d in 1..=2 {
                let (ok, report) = q_times_z_is_polynomial(q, d).unwrap();
                assert!(ok, "{report}");
            }
        }
        let (_, r) = q_times_z_is_polynomial(2, 2).unwrap();
        assert_eq!(r.degrees, [1, 2]);
    }

    #[test]
    fn q_times_z_depth_three_leaves_one_factor() {
        let r = q_times_z(2, 3).unwrap();
        assert!(!r.is_polynomial());
        assert_eq!(r.leftover, vec![(QPowerFactor::new(3, [1, 1, 1]).unwrap(), 1)]);
        assert!(matches!(
            q_times_z_is_polynomial(2, 3),
            Err(Error::IdentityViolation(_))
        ));
    }

    #[test]
    fn decompositions() {
        for q in [2, 3, 5] {
            assert!(decomposition_check_d2(q).unwrap());
            assert!(decomposition_check(q, 3).unwrap());
        }
        let names: Vec<String> = decomposition_d2(2).iter().map(|t| t.to_string()).collect();
        assert_eq!(names[0], "4*Z(s1+s2-1)*Z(s2)");
        assert_eq!(names[3], "1*Z(s1+s2+1)*Z(s2+1)");
    }

    #[test]
    fn poles() {
        let d1: Vec<String> = pole_subvarieties_genus0(3, 1)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(d1, ["s1=0", "s1=1"]);
        let d2 = pole_subvarieties_genus0(2, 2).unwrap();
        let allowed = ["s1+s2=0", "s1+s2=1", "s1+s2=2", "s2=0", "s2=1"];
        assert!(d2.iter().all(|s| allowed.contains(&s.to_string().as_str())));
        assert!(pole_subvarieties_genus0(2, 3).is_ok());
    }
}
