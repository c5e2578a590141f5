//! Named identity checks, filterable by family and parameters.

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::bundled::{self, BUNDLED, E5_LPOLY};
use crate::coords::x_point;
use crate::error::{Error, Result};
use crate::exactalg::rational::{fmt_rational, rat};
use crate::exactalg::{ExponentVector, FactoredRational, LaurentPolynomial, TruncatedSeries};
use crate::fieldspec::FunctionFieldSpec;
use crate::oracle::{
    self, is_prime, necklace_count, truncated_series_b, truncated_series_enum,
    truncated_series_poly_weights, IrreducibleSieve,
};
use crate::zeta_polyring::{self as poly, DoublePole, PolyZetaContext};
use crate::{zeta_genus as genus, zeta_rational as g0};

/// Check families with a one-line statement of the identity each one tests.
pub const FAMILIES: &[(&str, &str)] = &[
    ("poly_series", "Z_d(F_q[T]) = prod_k 1/(1 - q^{d-k+1} y_k), against monic counts"),
    ("involution", "xi_d invariant under s_1 -> 2d-1-2(s_2+...+s_d)-s_1"),
    ("mixed_relation", "xi_2(s, 1-w) = xi_2(s-2w+1, w)"),
    ("irreducibles", "trial-division irreducible counts equal the necklace formula"),
    ("euler", "Euler product over monic irreducibles agrees with the closed form"),
    ("residue", "residues on w=1 and s+w=2 of Z_2(F_q[T])"),
    ("zero_free", "Z_d(F_q[T]) has no zeros: reduced numerator is 1"),
    ("genus0_series", "Z_d(F_q(T)) subset expansion against the nested b_n sum"),
    ("genus0_polynomial", "Q * Z_d(F_q(T)) is a polynomial of degree <= 2d-1 in each x_k"),
    ("genus0_decomposition", "Z_2(F_q(T)) as a combination of products Z(F_q[T], .)"),
    ("genus0_poles", "poles of Z_d(F_q(T)) simple, on s_k+...+s_d = c, 0 <= c <= d-k+1"),
    ("genus_series", "A + B + C against the nested b_n sum at depth 2"),
    ("genus_pq", "Q * (A + B + C) = P1 + P2 + P3"),
    ("genus_degrees", "deg_u P <= 2g+1, deg_v P <= (1+...+2g)+2g-2"),
    ("genus_g1_decomposition", "g = 1: Z_2(K; s, w) = Z(K, w) + P3/Q"),
    ("genus_poles", "poles of Z_2(K) simple, among 1-u, 1-qu, 1-q^2u, 1-v, 1-qv"),
    ("fieldspec", "series of Z(K, t) lists the effective counts b_n"),
    ("l_polynomial", "spec rebuilt from L(t) = 1 - 2t + 5t^2 over F_5"),
    ("convergence", "partial sums of Z_2(F_2[T]; 3, 3) approach the closed form"),
];

/// Families whose comparisons can be corrupted on purpose.
pub const FAULTABLE: &[&str] = &["poly_series", "euler", "genus0_series", "genus_series", "fieldspec"];

fn anchor(family: &str) -> &'static str {
    FAMILIES
        .iter()
        .find(|(f, _)| *f == family)
        .map(|(_, a)| *a)
        .expect("registered family")
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub family: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "total": self.checks.len(),
            "failed": self.failures().count(),
            "checks": self.checks,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        )
    }
}

/// Filters for [`run`]. `None` means the family's default grid.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub only: Option<Vec<String>>,
    pub qs: Option<Vec<u64>>,
    pub depths: Option<Vec<usize>>,
    pub trunc: Option<usize>,
    pub specs: Option<Vec<(String, FunctionFieldSpec)>>,
    /// Family whose closed-form side gets one coefficient corrupted.
    pub fault: Option<String>,
    pub budget: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            only: None,
            qs: None,
            depths: None,
            trunc: None,
            specs: None,
            fault: None,
            budget: oracle::DEFAULT_BUDGET,
        }
    }
}

struct Runner<'a> {
    opts: &'a VerifyOptions,
    report: Report,
}

type Outcome = Result<(bool, String)>;

impl Runner<'_> {
    fn wants(&self, family: &str) -> bool {
        self.opts
            .only
            .as_ref()
            .is_none_or(|only| only.iter().any(|f| f == family))
    }

    fn qs(&self, default: &[u64]) -> Vec<u64> {
        self.opts.qs.clone().unwrap_or_else(|| default.to_vec())
    }

    fn depths(&self, default: &[usize]) -> Vec<usize> {
        self.opts.depths.clone().unwrap_or_else(|| default.to_vec())
    }

    fn has_depth(&self, d: usize) -> bool {
        self.opts.depths.as_ref().is_none_or(|ds| ds.contains(&d))
    }

    fn trunc(&self, default: usize) -> usize {
        self.opts.trunc.unwrap_or(default)
    }

    fn faulty(&self, family: &str) -> bool {
        self.opts.fault.as_deref() == Some(family)
    }

    fn corrupt(&self, family: &str, mut s: TruncatedSeries) -> TruncatedSeries {
        if self.faulty(family) {
            let zero = ExponentVector::zero(s.arity());
            s.add_to(zero, rat(1));
        }
        s
    }

    fn specs(&self) -> Result<Vec<(String, FunctionFieldSpec)>> {
        match &self.opts.specs {
            Some(list) => Ok(list.clone()),
            None => BUNDLED
                .iter()
                .map(|b| Ok((b.name.to_string(), b.spec()?)))
                .collect(),
        }
    }

    fn record(&mut self, family: &'static str, name: String, body: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (passed, detail) = match body() {
            Ok(outcome) => outcome,
            Err(e) => (false, format!("error: {e}")),
        };
        self.report.checks.push(CheckResult {
            name,
            family,
            anchor: anchor(family),
            passed,
            detail,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
}

fn series_outcome(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> (bool, String) {
    let diffs = lhs.differences(rhs);
    match diffs.first() {
        None => (true, format!("{} coefficients agree", lhs.len().max(rhs.len()))),
        Some((e, a, b)) => (
            false,
            format!(
                "{} mismatches, first at {:?}: {} vs {}",
                diffs.len(),
                e,
                fmt_rational(a),
                fmt_rational(b)
            ),
        ),
    }
}

fn bool_outcome(ok: bool) -> (bool, String) {
    (ok, String::new())
}

pub fn run(opts: &VerifyOptions) -> Result<Report> {
    if let Some(only) = &opts.only {
        if let Some(bad) = only.iter().find(|f| !FAMILIES.iter().any(|(g, _)| g == f)) {
            return Err(Error::Usage(format!("unknown check family {bad:?}")));
        }
    }
    if let Some(fault) = &opts.fault {
        if !FAULTABLE.contains(&fault.as_str()) {
            return Err(Error::Usage(format!(
                "fault injection supports {}, not {fault:?}",
                FAULTABLE.join(", ")
            )));
        }
    }
    let mut r = Runner {
        opts,
        report: Report::default(),
    };
    polyring_checks(&mut r);
    genus0_checks(&mut r);
    genus_checks(&mut r)?;
    Ok(r.report)
}

fn polyring_checks(r: &mut Runner) {
    let n = r.trunc(8);
    if r.wants("poly_series") {
        for q in r.qs(&[2, 3, 5]) {
            for d in r.depths(&[1, 2, 3]) {
                let budget = r.opts.budget;
                let closed_side = |r: &Runner| -> Result<TruncatedSeries> {
                    let ctx = PolyZetaContext::new(q, d)?;
                    Ok(r.corrupt("poly_series", poly::closed_form_poly(&ctx).series_expand(n)?))
                };
                let closed = closed_side(r);
                r.record("poly_series", format!("poly_series q={q} d={d} N={n}"), || {
                    let closed = closed?;
                    let (mut ok, mut detail) =
                        series_outcome(&closed, &truncated_series_poly_weights(q, d, n));
                    if ok && is_prime(q) && d <= 2 {
                        let m = n.min(4);
                        let counted = truncated_series_enum(q, d, m, budget)?;
                        let (ok2, detail2) = series_outcome(&closed.truncate(m), &counted);
                        ok = ok2;
                        detail = format!("{detail}; enumeration N={m}: {detail2}");
                    }
                    Ok((ok, detail))
                });
            }
        }
    }
    if r.wants("involution") {
        for q in r.qs(&[2, 3, 5]) {
            for d in r.depths(&[1, 2, 3]) {
                r.record("involution", format!("involution q={q} d={d}"), || {
                    Ok(bool_outcome(poly::check_involution(&PolyZetaContext::new(q, d)?)?))
                });
            }
        }
    }
    if r.wants("mixed_relation") && r.has_depth(2) {
        for q in r.qs(&[2, 3, 5]) {
            r.record("mixed_relation", format!("mixed_relation q={q} d=2"), || {
                Ok(bool_outcome(poly::mixed_relation_d2(q)?))
            });
        }
    }
    if r.wants("irreducibles") {
        for p in r.qs(&[2, 3, 5]).into_iter().filter(|&p| is_prime(p)) {
            r.record("irreducibles", format!("irreducibles p={p} n<=6"), || {
                let sieve = IrreducibleSieve::new(p, 6)?;
                let bad: Vec<usize> = (1..=6)
                    .filter(|&n| sieve.count(n) != necklace_count(p, n as u32))
                    .collect();
                Ok((bad.is_empty(), if bad.is_empty() { String::new() } else { format!("degrees {bad:?} differ") }))
            });
        }
    }
    if r.wants("euler") {
        let top = r.opts.trunc.unwrap_or(4);
        for q in r.qs(&[2, 3]).into_iter().filter(|&q| is_prime(q)) {
            for d in r.depths(&[1, 2]) {
                for big_d in 1..=top {
                    let faulty = r.faulty("euler");
                    r.record("euler", format!("euler q={q} d={d} D={big_d}"), || {
                        let ctx = PolyZetaContext::new(q, d)?;
                        let mut agreement = poly::euler_agreement(&ctx, big_d)?;
                        if faulty && agreement.mismatches.is_empty() {
                            agreement.mismatches.push((ExponentVector::zero(d), rat(2), rat(1)));
                        }
                        Ok((
                            agreement.agrees(),
                            format!(
                                "{} monomials compared, {} mismatches",
                                agreement.compared,
                                agreement.mismatches.len()
                            ),
                        ))
                    });
                }
            }
        }
    }
    if r.wants("residue") && r.has_depth(2) {
        for q in r.qs(&[2, 3, 5]) {
            r.record("residue", format!("residue q={q} d=2"), || residue_outcome(q));
        }
    }
    if r.wants("zero_free") {
        for q in r.qs(&[2, 3, 5]) {
            for d in r.depths(&[1, 2, 3]) {
                r.record("zero_free", format!("zero_free q={q} d={d}"), || {
                    Ok(bool_outcome(poly::zero_free_check(&PolyZetaContext::new(q, d)?)))
                });
            }
        }
    }
    if r.wants("convergence") && r.has_depth(2) {
        r.record("convergence", "convergence q=2 s=w=3 N=40".into(), || {
            let err = convergence_error(2, 3.0, 3.0, 40)?;
            Ok((err < 1e-6, format!("|partial - closed| = {err:.3e}")))
        });
    }
}

/// The three scaled residues, compared exactly with `1/(1 - q x1)`, `1/(1 - q x2)` and
/// `-q x1/(1 - q x1)`, plus a float probe near `w = 1` at `s = 3`.
pub fn residue_outcome(q: u64) -> Outcome {
    let geo = |e: [i64; 2]| FactoredRational::geometric(q, 1, e);
    let expected = [
        (DoublePole::WIsOne, geo([1, 0])?),
        (DoublePole::SumIsTwoInS, geo([0, 1])?),
        (
            DoublePole::SumIsTwoInW,
            geo([1, 0])?.mul_poly(&LaurentPolynomial::monomial(rat(-(q as i64)), [1, 0].into()))?,
        ),
    ];
    for (pole, want) in &expected {
        let got = poly::scaled_residue_d2(q, *pole)?;
        if !got.value.equals(want)? {
            return Ok((false, format!("{pole}: got {}, expected {want}", got.value)));
        }
    }
    let err = residue_probe_error(q, 3.0, 1e-6)?;
    Ok((err < 1e-4, format!("probe near w=1 at s=3: error {err:.3e}")))
}

/// `|(w - 1) Z_2(s, w) - value / log q|` at `w = 1 + eps`.
pub fn residue_probe_error(q: u64, s: f64, eps: f64) -> Result<f64> {
    let ctx = PolyZetaContext::new(q, 2)?;
    let z = poly::closed_form_poly(&ctx);
    let w = 1.0 + eps;
    let point = x_point(q, &[Complex64::new(s, 0.0), Complex64::new(w, 0.0)]);
    let probe = z.evaluate(&point)? * eps;
    let res = poly::scaled_residue_d2(q, DoublePole::WIsOne)?;
    let exact = res.value.evaluate(&point)? / (q as f64).ln();
    Ok((probe - exact).norm())
}

/// Distance between the partial sum over `m_1 <= m_2 <= n` and the closed form of
/// `Z_2(F_q[T]; s, w)`.
pub fn convergence_error(q: u64, s: f64, w: f64, n: usize) -> Result<f64> {
    let ctx = PolyZetaContext::new(q, 2)?;
    let point = x_point(q, &[Complex64::new(s, 0.0), Complex64::new(w, 0.0)]);
    let partial = truncated_series_poly_weights(q, 2, n).evaluate(&point);
    let closed = poly::closed_form_poly(&ctx).evaluate(&point)?;
    Ok((partial - closed).norm())
}

fn genus0_checks(r: &mut Runner) {
    let n = r.trunc(8);
    if r.wants("genus0_series") {
        for q in r.qs(&[2, 3, 5]) {
            for d in r.depths(&[1, 2, 3]) {
                let closed = g0::closed_form_genus0(q, d)
                    .and_then(|z| z.series_expand(n))
                    .map(|s| r.corrupt("genus0_series", s));
                r.record("genus0_series", format!("genus0_series q={q} d={d} N={n}"), || {
                    let spec = FunctionFieldSpec::rational(q)?;
                    Ok(series_outcome(&closed?, &truncated_series_b(&spec, d, n)))
                });
            }
        }
    }
    if r.wants("genus0_polynomial") {
        for q in r.qs(&[2, 3, 5]) {
            for d in r.depths(&[1, 2, 3]) {
                r.record("genus0_polynomial", format!("genus0_polynomial q={q} d={d}"), || {
                    let (ok, report) = g0::q_times_z_is_polynomial(q, d)?;
                    Ok((ok, report.to_string()))
                });
            }
        }
    }
    if r.wants("genus0_decomposition") && r.has_depth(2) {
        for q in r.qs(&[2, 3, 5]) {
            r.record("genus0_decomposition", format!("genus0_decomposition q={q} d=2"), || {
                Ok(bool_outcome(g0::decomposition_check_d2(q)?))
            });
        }
    }
    if r.wants("genus0_poles") {
        for q in r.qs(&[2, 3, 5]) {
            for d in r.depths(&[1, 2, 3]) {
                r.record("genus0_poles", format!("genus0_poles q={q} d={d}"), || {
                    let poles = g0::pole_subvarieties_genus0(q, d)?;
                    let text: Vec<String> = poles.iter().map(|p| p.to_string()).collect();
                    Ok((true, text.join(", ")))
                });
            }
        }
    }
}

fn genus_checks(r: &mut Runner) -> Result<()> {
    let specs = r.specs()?;
    let n = r.trunc(8);
    let depth_two = r.has_depth(2);
    for (name, spec) in &specs {
        if r.wants("fieldspec") {
            let closed = spec.one_var_zeta().series_expand(12).map(|s| r.corrupt("fieldspec", s));
            r.record("fieldspec", format!("fieldspec {name} n<=12"), || {
                let mut counts = TruncatedSeries::new(1, 12);
                for k in 0..=12u32 {
                    counts.set(ExponentVector::new(vec![k as i64]), spec.b_rational(k));
                }
                Ok(series_outcome(&closed?, &counts))
            });
        }
        if spec.genus() == 0 || !depth_two {
            continue;
        }
        if r.wants("genus_series") {
            let closed = genus::closed_form_genus_d2(spec)
                .and_then(|f| f.series_in_x(n))
                .map(|s| r.corrupt("genus_series", s));
            r.record("genus_series", format!("genus_series {name} N={n}"), || {
                Ok(series_outcome(&closed?, &truncated_series_b(spec, 2, n)))
            });
        }
        if r.wants("genus_pq") {
            r.record("genus_pq", format!("genus_pq {name}"), || {
                let (p, _) = genus::pq_form(spec)?;
                Ok((true, format!("P has {} terms", p.len())))
            });
        }
        if r.wants("genus_degrees") {
            r.record("genus_degrees", format!("genus_degrees {name}"), || {
                let report = genus::degree_report(spec)?;
                Ok((report.holds(), report.to_string()))
            });
        }
        if r.wants("genus_g1_decomposition") && spec.genus() == 1 {
            r.record("genus_g1_decomposition", format!("genus_g1_decomposition {name}"), || {
                Ok(bool_outcome(genus::g1_decomposition_check(spec)?))
            });
        }
        if r.wants("genus_poles") {
            r.record("genus_poles", format!("genus_poles {name}"), || {
                let poles = genus::pole_subvarieties_genus(spec)?;
                let text: Vec<String> = poles.iter().map(|p| p.to_string()).collect();
                Ok((true, text.join(", ")))
            });
        }
    }
    if r.wants("l_polynomial") && r.opts.specs.is_none() {
        r.record("l_polynomial", "l_polynomial q=5 L=1-2t+5t^2".into(), || {
            let from_l = FunctionFieldSpec::from_json(E5_LPOLY)?;
            let e5 = bundled::bundled("e5").expect("bundled e5").spec()?;
            let count = oracle::elliptic_point_count(5, 1, 0)?;
            let ok = from_l == e5 && from_l.class_number() == count;
            Ok((ok, format!("h = {} (point count {count})", from_l.class_number())))
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(family: &str) -> VerifyOptions {
        VerifyOptions {
            only: Some(vec![family.to_string()]),
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn involution_grid_size() {
        let opts = VerifyOptions {
            qs: Some(vec![2, 3]),
            depths: Some(vec![1, 2, 3]),
            ..only("involution")
        };
        let report = run(&opts).unwrap();
        assert_eq!(report.checks.len(), 6);
        assert!(report.passed());
    }

    #[test]
    fn fault_is_detected() {
        let opts = VerifyOptions {
            qs: Some(vec![2]),
            depths: Some(vec![1]),
            trunc: Some(3),
            fault: Some("poly_series".into()),
            ..only("poly_series")
        };
        let report = run(&opts).unwrap();
        assert!(!report.passed());
        assert_eq!(report.failures().next().unwrap().name, "poly_series q=2 d=1 N=3");
    }

    #[test]
    fn unknown_family_is_a_usage_error() {
        assert!(matches!(run(&only("nope")), Err(Error::Usage(_))));
    }

    #[test]
    fn residue_and_convergence() {
        assert!(residue_outcome(3).unwrap().0);
        assert!(convergence_error(2, 3.0, 3.0, 40).unwrap() < 1e-6);
        assert!(residue_probe_error(3, 3.0, 1e-6).unwrap() < 1e-4);
    }

    #[test]
    fn every_family_has_an_anchor() {
        for f in FAULTABLE {
            assert!(!anchor(f).is_empty());
        }
    }
}
