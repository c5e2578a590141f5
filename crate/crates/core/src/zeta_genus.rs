//! Genus `g >= 1` at depth 2, in the variables `u = q^{-(s+w)}`, `v = q^{-w}`.
//!
//! The nested sum `sum_{n,m} b_n b_{n+m} u^n v^m` splits by where the effective counts
//! follow the Riemann-Roch formula: `A` (both indices small), `B` (only `n` small) and
//! `C` (neither).

use std::fmt;

use num_traits::One;

use crate::coords::{y_to_x, Subvariety};
use crate::error::{Error, Result};
use crate::exactalg::rational::{q_pow, rat, Rational};
use crate::exactalg::{
    ExponentVector, FactoredRational, LaurentPolynomial, MonomialImage, QPowerFactor,
    TruncatedSeries,
};
use crate::fieldspec::FunctionFieldSpec;

/// Variable names of the `(u, v)` coordinates.
pub fn uv_names() -> Vec<String> {
    vec!["u".to_string(), "v".to_string()]
}

fn require_positive_genus(spec: &FunctionFieldSpec) -> Result<()> {
    if spec.genus() == 0 {
        return Err(Error::Unsupported(
            "genus 0 has its own closed form at every depth; this construction needs g >= 1"
                .into(),
        ));
    }
    Ok(())
}

fn mono(c: Rational, u: i64, v: i64) -> LaurentPolynomial {
    LaurentPolynomial::monomial(c, ExponentVector::new(vec![u, v]))
}

fn u_factor(a: i64) -> QPowerFactor {
    QPowerFactor::new(a, [1, 0]).unwrap()
}

fn v_factor(a: i64) -> QPowerFactor {
    QPowerFactor::new(a, [0, 1]).unwrap()
}

/// `c / prod factors`
fn fraction<I>(q: u64, c: Rational, factors: I) -> FactoredRational
where
    I: IntoIterator<Item = QPowerFactor>,
{
    FactoredRational::new(q, LaurentPolynomial::constant(2, c), factors).unwrap()
}

/// `h / (q - 1)`
fn h_ratio(spec: &FunctionFieldSpec) -> Rational {
    rat(spec.class_number() as i64) / rat(spec.q() as i64 - 1)
}

/// `(2g - 2)(2g - 1)/2`, the exponent of `prod_{n=0}^{2g-2} v^n`.
pub fn v_monomial_exponent(g: u32) -> i64 {
    let g = g as i64;
    (2 * g - 2) * (2 * g - 1) / 2
}

/// `A = sum_{n <= 2g-2} sum_{m <= 2g-2-n} b_n b_{n+m} u^n v^m`.
pub fn part_a(spec: &FunctionFieldSpec) -> Result<FactoredRational> {
    require_positive_genus(spec)?;
    let top = 2 * spec.genus() - 2;
    let mut poly = LaurentPolynomial::zero(2);
    for n in 0..=top {
        for m in 0..=top - n {
            let c = spec.b_rational(n) * spec.b_rational(n + m);
            poly = &poly + &mono(c, n as i64, m as i64);
        }
    }
    FactoredRational::from_poly(spec.q(), poly)
}

/// `B = (h/(q-1)) [q^g/(1 - qv) - 1/(1 - v)] v^{2g-1} sum_{n <= 2g-2} b_n (u/v)^n`.
pub fn part_b(spec: &FunctionFieldSpec) -> Result<FactoredRational> {
    require_positive_genus(spec)?;
    let q = spec.q();
    let g = spec.genus() as i64;
    let bracket = fraction(q, q_pow(q, g), [v_factor(1)])
        .sub(&fraction(q, rat(1), [v_factor(0)]))?;
    // v^{2g-1} absorbs every (u/v)^n, so the sum is an honest polynomial
    let mut sum = LaurentPolynomial::zero(2);
    for n in 0..=2 * g - 2 {
        sum = &sum + &mono(spec.b_rational(n as u32), n, 2 * g - 1 - n);
    }
    Ok(bracket.mul_poly(&sum)?.scale(&h_ratio(spec)))
}

/// `C = (h/(q-1))^2 [q^{2g}/((1-qv)(1-q^2u)) - q^g/((1-qv)(1-qu)) - q^g/((1-v)(1-qu))
///  + 1/((1-v)(1-u))] u^{2g-1}`.
pub fn part_c(spec: &FunctionFieldSpec) -> Result<FactoredRational> {
    require_positive_genus(spec)?;
    let q = spec.q();
    let g = spec.genus() as i64;
    let qg = q_pow(q, g);
    let bracket = fraction(q, q_pow(q, 2 * g), [v_factor(1), u_factor(2)])
        .sub(&fraction(q, qg.clone(), [v_factor(1), u_factor(1)]))?
        .sub(&fraction(q, qg, [v_factor(0), u_factor(1)]))?
        .add(&fraction(q, rat(1), [v_factor(0), u_factor(0)]))?;
    let h = h_ratio(spec);
    Ok(bracket.mul_poly(&mono(&h * &h, 2 * g - 1, 0))?)
}

/// The depth-2 multiple zeta function of a genus `g >= 1` field, split into its three parts.
#[derive(Clone, Debug)]
pub struct GenusTwoVarForm {
    pub spec: FunctionFieldSpec,
    pub a: FactoredRational,
    pub b: FactoredRational,
    pub c: FactoredRational,
    pub total: FactoredRational,
}

impl GenusTwoVarForm {
    /// The total in the `x` coordinates: `u = x1 x2`, `v = x2`.
    pub fn total_in_x(&self) -> FactoredRational {
        self.total.map_variables(&y_to_x(2), 2).expect("monomial map")
    }

    /// Series of the total in `x`, on the box `[0, bound]^2`.
    pub fn series_in_x(&self, bound: usize) -> Result<TruncatedSeries> {
        self.total_in_x().series_expand(bound)
    }
}

impl fmt::Display for GenusTwoVarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.total.render_with(&uv_names()))
    }
}

pub fn closed_form_genus_d2(spec: &FunctionFieldSpec) -> Result<GenusTwoVarForm> {
    let a = part_a(spec)?;
    let b = part_b(spec)?;
    let c = part_c(spec)?;
    let total = a.add(&b)?.add(&c)?.reduce();
    Ok(GenusTwoVarForm {
        spec: spec.clone(),
        a,
        b,
        c,
        total,
    })
}

/// The denominator factors `(1-u)(1-qu)(1-q^2u)(1-v)(1-qv)`.
pub fn q_factors() -> [QPowerFactor; 5] {
    [u_factor(0), u_factor(1), u_factor(2), v_factor(0), v_factor(1)]
}

/// `Q(u,v) = (1-u)(1-qu)(1-q^2u)(1-v)(1-qv) prod_{n=0}^{2g-2} v^n`, expanded.
pub fn q_uv(spec: &FunctionFieldSpec) -> LaurentPolynomial {
    let q = spec.q();
    q_factors()
        .iter()
        .fold(mono(rat(1), 0, v_monomial_exponent(spec.genus())), |acc, f| {
            &acc * &f.to_poly(q)
        })
}

/// The three summands of the numerator `P`, built term by term.
#[derive(Clone, Debug)]
pub struct NumeratorParts {
    pub p1: LaurentPolynomial,
    pub p2: LaurentPolynomial,
    pub p3: LaurentPolynomial,
}

impl NumeratorParts {
    pub fn sum(&self) -> LaurentPolynomial {
        &(&self.p1 + &self.p2) + &self.p3
    }
}

fn binom(q: u64, a: i64, u: i64, v: i64) -> LaurentPolynomial {
    LaurentPolynomial::binomial(q_pow(q, a), ExponentVector::new(vec![u, v]))
}

fn numerator_parts(spec: &FunctionFieldSpec) -> Result<NumeratorParts> {
    let q = spec.q();
    let g = spec.genus() as i64;
    let m_exp = v_monomial_exponent(spec.genus());
    let h = h_ratio(spec);
    let (one_u, q_u, q2_u) = (binom(q, 0, 1, 0), binom(q, 1, 1, 0), binom(q, 2, 1, 0));
    let (one_v, q_v) = (binom(q, 0, 0, 1), binom(q, 1, 0, 1));

    let a = part_a(spec)?;
    let p1 = &q_uv(spec) * a.numerator();

    // sum_k b_k u^k prod_{n != k} v^n, with prod_{n != k} v^n = v^{M - k}
    let mut sum = LaurentPolynomial::zero(2);
    for k in 0..=2 * g - 2 {
        sum = &sum + &mono(spec.b_rational(k as u32), k, m_exp - k);
    }
    let bracket_b = &LaurentPolynomial::constant(2, q_pow(q, g)) * &one_v - q_v.clone();
    let p2 = (&(&(&one_u * &q_u) * &q2_u) * &bracket_b)
        .mul_monomial(&h, &ExponentVector::new(vec![0, 2 * g - 1]))
        * sum;

    let qg = LaurentPolynomial::constant(2, q_pow(q, g));
    let q2g = LaurentPolynomial::constant(2, q_pow(q, 2 * g));
    let bracket_c = &(&(&(&q_u * &one_v) * &one_u) * &q2g)
        - &(&(&(&q2_u * &one_v) * &one_u) * &qg)
        - (&(&(&q_v * &q2_u) * &one_u) * &qg)
        + &(&q_v * &q2_u) * &q_u;
    let p3 = bracket_c.mul_monomial(&(&h * &h), &ExponentVector::new(vec![2 * g - 1, m_exp]));
    Ok(NumeratorParts { p1, p2, p3 })
}

/// `(P, Q)` with `P = P1 + P2 + P3`. Fails unless `P/Q` equals the closed form and
/// `Q * (A + B + C)` divides out to exactly `P`.
pub fn pq_form(spec: &FunctionFieldSpec) -> Result<(LaurentPolynomial, LaurentPolynomial)> {
    require_positive_genus(spec)?;
    let form = closed_form_genus_d2(spec)?;
    let p = numerator_parts(spec)?.sum();
    let q_poly = q_uv(spec);
    let m_exp = v_monomial_exponent(spec.genus());
    let ratio = FactoredRational::new(
        spec.q(),
        p.mul_monomial(&Rational::one(), &ExponentVector::new(vec![0, -m_exp])),
        q_factors(),
    )?;
    if !ratio.equals(&form.total)? {
        return Err(Error::IdentityViolation(
            "P/Q differs from A + B + C".into(),
        ));
    }
    let (cleared, leftover) = form.total.clear_denominator(&q_poly)?;
    if !leftover.is_empty() || cleared != p {
        return Err(Error::IdentityViolation(
            "Q * (A + B + C) does not reduce to P".into(),
        ));
    }
    Ok((p, q_poly))
}

/// Actual degrees of `P` and `Q` with the stated upper bounds for `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub genus: u32,
    pub p_deg_u: i64,
    pub p_deg_v: i64,
    pub q_deg_u: i64,
    pub q_deg_v: i64,
    /// `2g + 1`
    pub p_bound_u: i64,
    /// `(1 + 2 + ... + 2g) + 2g - 2`
    pub p_bound_v: i64,
}

impl DegreeReport {
    pub fn holds(&self) -> bool {
        self.p_deg_u <= self.p_bound_u && self.p_deg_v <= self.p_bound_v
    }
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} deg_u(P)={} <= {}, deg_v(P)={} <= {}, deg_u(Q)={}, deg_v(Q)={}",
            self.genus,
            self.p_deg_u,
            self.p_bound_u,
            self.p_deg_v,
            self.p_bound_v,
            self.q_deg_u,
            self.q_deg_v
        )
    }
}

pub fn degree_report(spec: &FunctionFieldSpec) -> Result<DegreeReport> {
    let (p, q_poly) = pq_form(spec)?;
    let g = spec.genus() as i64;
    let report = DegreeReport {
        genus: spec.genus(),
        p_deg_u: p.max_degree_in(0).unwrap_or(0),
        p_deg_v: p.max_degree_in(1).unwrap_or(0),
        q_deg_u: q_poly.max_degree_in(0).unwrap_or(0),
        q_deg_v: q_poly.max_degree_in(1).unwrap_or(0),
        p_bound_u: 2 * g + 1,
        p_bound_v: g * (2 * g + 1) + 2 * g - 2,
    };
    if !report.holds() {
        return Err(Error::IdentityViolation(format!("degree bound fails: {report}")));
    }
    Ok(report)
}

/// `Z(K, t)` moved to `t = v`.
pub fn one_var_in_v(spec: &FunctionFieldSpec) -> Result<FactoredRational> {
    spec.one_var_zeta()
        .map_variables(&[MonomialImage::monomial([0, 1])], 2)
}

/// For `g = 1`: `Z_2(K; s, w) = Z(K, w) + P3/Q`.
pub fn g1_decomposition_check(spec: &FunctionFieldSpec) -> Result<bool> {
    if spec.genus() != 1 {
        return Err(Error::Unsupported(format!(
            "the genus-1 decomposition needs g = 1, got g = {}",
            spec.genus()
        )));
    }
    let p3 = numerator_parts(spec)?.p3;
    let m_exp = v_monomial_exponent(1);
    let tail = FactoredRational::new(
        spec.q(),
        p3.mul_monomial(&Rational::one(), &ExponentVector::new(vec![0, -m_exp])),
        q_factors(),
    )?;
    let rhs = one_var_in_v(spec)?.add(&tail)?;
    rhs.equals(&closed_form_genus_d2(spec)?.total)
}

/// Subvarieties of the reduced denominator: `1 - q^c u` is `s+w=c`, `1 - q^c v` is `w=c`.
/// Every factor must be one of the five in `Q` and simple.
pub fn pole_subvarieties_genus(spec: &FunctionFieldSpec) -> Result<Vec<Subvariety>> {
    let form = closed_form_genus_d2(spec)?;
    let allowed = q_factors();
    let mut out = Vec::new();
    for (f, m) in form.total.factors() {
        let text = f.render_with(spec.q(), &uv_names());
        if !allowed.contains(f) {
            return Err(Error::IdentityViolation(format!(
                "unexpected denominator factor {text}"
            )));
        }
        if m != 1 {
            return Err(Error::IdentityViolation(format!(
                "factor {text} has multiplicity {m}"
            )));
        }
        out.push(Subvariety::from_y_factor(f).expect("unit exponent"));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{elliptic_spec, truncated_series_b};

    fn e5() -> FunctionFieldSpec {
        FunctionFieldSpec::new(5, 1, 4, vec![1]).unwrap()
    }

    fn synthetic_g2() -> FunctionFieldSpec {
        FunctionFieldSpec::new(2, 2, 1, vec![1, 3, 9]).unwrap()
    }

    #[test]
    fn part_a_examples() {
        assert_eq!(part_a(&e5()).unwrap().to_string(), "1");
        let a = part_a(&synthetic_g2()).unwrap();
        assert!(a.is_polynomial());
        // b_n b_{n+m}: the u^n coefficient is b_n^2
        assert_eq!(
            a.render_with(&uv_names()),
            "1 + 3*v + 9*u + 9*v^2 + 27*u*v + 81*u^2"
        );
    }

    #[test]
    fn part_b_examples() {
        let b = part_b(&e5()).unwrap();
        let expected = FactoredRational::new(5, mono(rat(4), 0, 1), [v_factor(0), v_factor(1)]).unwrap();
        assert!(b.equals(&expected).unwrap());
        let b2 = part_b(&FunctionFieldSpec::new(2, 1, 1, vec![1]).unwrap()).unwrap();
        let expected = FactoredRational::new(2, mono(rat(1), 0, 1), [v_factor(0), v_factor(1)]).unwrap();
        assert!(b2.equals(&expected).unwrap());
        assert!(b.factors().all(|(f, _)| f.exponent().as_slice() == [0, 1]));
    }

    #[test]
    fn part_c_examples() {
        let c = part_c(&e5()).unwrap().series_expand(2).unwrap();
        assert_eq!(c.get(&[1, 0]), rat(16));
        assert_eq!(c.get(&[0, 0]), rat(0));
        let c2 = part_c(&FunctionFieldSpec::new(2, 1, 1, vec![1]).unwrap())
            .unwrap()
            .series_expand(1)
            .unwrap();
        assert_eq!(c2.get(&[1, 0]), rat(1));
    }

    #[test]
    fn total_coefficients() {
        let form = closed_form_genus_d2(&e5()).unwrap();
        let s = form.total.series_expand(2).unwrap();
        assert_eq!(s.get(&[0, 0]), rat(1));
        assert_eq!(s.get(&[0, 1]), rat(4));
        assert_eq!(s.get(&[1, 1]), rat(96));
    }

    #[test]
    fn series_matches_nested_sum() {
        for spec in [e5(), synthetic_g2(), elliptic_spec(7, 1, 0).unwrap()] {
            let form = closed_form_genus_d2(&spec).unwrap();
            assert_eq!(
                form.series_in_x(6).unwrap(),
                truncated_series_b(&spec, 2, 6),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn v_monomial() {
        assert_eq!(v_monomial_exponent(1), 0);
        assert_eq!(v_monomial_exponent(2), 3);
        assert_eq!(v_monomial_exponent(3), 10);
    }

    #[test]
    fn numerator_identity() {
        for spec in [e5(), synthetic_g2()] {
            let (p, q_poly) = pq_form(&spec).unwrap();
            let parts = numerator_parts(&spec).unwrap();
            let form = closed_form_genus_d2(&spec).unwrap();
            assert_eq!(parts.p1, &q_poly * form.a.numerator());
            assert_eq!(p, parts.sum());
        }
        let (_, q_poly) = pq_form(&e5()).unwrap();
        let expected = q_factors().iter().fold(LaurentPolynomial::one(2), |acc, f| &acc * &f.to_poly(5));
        assert_eq!(q_poly, expected);
    }

    #[test]
    fn degrees() {
        let r = degree_report(&e5()).unwrap();
        assert!(r.p_deg_u <= 3);
        assert_eq!(r.p_deg_v, 2);
        assert_eq!((r.q_deg_u, r.q_deg_v), (3, 2));
        assert!(degree_report(&synthetic_g2()).unwrap().holds());
    }

    #[test]
    fn genus_one_decomposition() {
        for spec in [
            e5(),
            FunctionFieldSpec::new(2, 1, 1, vec![1]).unwrap(),
            FunctionFieldSpec::new(3, 1, 4, vec![1]).unwrap(),
        ] {
            assert!(g1_decomposition_check(&spec).unwrap());
            let form = closed_form_genus_d2(&spec).unwrap();
            assert!(form.a.add(&form.b).unwrap().equals(&one_var_in_v(&spec).unwrap()).unwrap());
        }
        assert!(matches!(
            g1_decomposition_check(&synthetic_g2()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn poles_are_simple_and_predicted() {
        for spec in [e5(), synthetic_g2()] {
            let poles = pole_subvarieties_genus(&spec).unwrap();
            assert!(!poles.is_empty());
        }
    }

    #[test]
    fn genus_zero_is_refused() {
        let g0 = FunctionFieldSpec::rational(2).unwrap();
        assert!(matches!(closed_form_genus_d2(&g0), Err(Error::Unsupported(_))));
    }
}
