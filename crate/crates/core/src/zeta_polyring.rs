//! The multiple zeta function of `F_q[T]`: closed form, factorization, completed function,
//! functional equations, Euler product and residues.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coords::{y_exponent, Subvariety};
use crate::error::{Error, Result};
use crate::exactalg::rational::{q_pow, Rational};
use crate::exactalg::{
    ExponentVector, FactoredRational, LaurentPolynomial, MonomialImage, QPowerFactor,
    TruncatedSeries,
};
use crate::oracle::{is_prime, IrreducibleSieve};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyZetaContext {
    q: u64,
    depth: usize,
}

impl PolyZetaContext {
    pub fn new(q: u64, depth: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::Usage(format!("q must be at least 2, got {q}")));
        }
        if depth == 0 {
            return Err(Error::Usage("depth must be at least 1".into()));
        }
        Ok(PolyZetaContext { q, depth })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

fn geometric(q: u64, a: i64, e: ExponentVector) -> FactoredRational {
    FactoredRational::geometric(q, a, e).expect("valid q and exponent")
}

/// `prod_k 1 / (1 - q^{d-k+1} y_k)`.
pub fn closed_form_poly(ctx: &PolyZetaContext) -> FactoredRational {
    let d = ctx.depth;
    (0..d).fold(FactoredRational::one(ctx.q, d).unwrap(), |acc, k| {
        acc.mul(&geometric(ctx.q, (d - k) as i64, y_exponent(d, k)))
            .unwrap()
    })
}

/// Argument `s_start + ... + s_d + shift` of a one-variable zeta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftedArgument {
    pub start: usize,
    pub depth: usize,
    pub shift: i64,
}

impl fmt::Display for ShiftedArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (self.start..=self.depth).map(|k| format!("s{k}")).collect();
        write!(f, "{}", vars.join("+"))?;
        match self.shift {
            0 => Ok(()),
            s if s > 0 => write!(f, "+{s}"),
            s => write!(f, "{s}"),
        }
    }
}

/// The arguments `s_k + ... + s_d - (d - k)` of the one-variable factors.
pub fn factorization_list(ctx: &PolyZetaContext) -> Vec<ShiftedArgument> {
    let d = ctx.depth;
    (1..=d)
        .map(|k| ShiftedArgument {
            start: k,
            depth: d,
            shift: -((d - k) as i64),
        })
        .collect()
}

/// `Z(F_q[T], s) = 1/(1 - q t)` in one variable `t = q^{-s}`.
pub fn one_var_poly_zeta(q: u64) -> FactoredRational {
    geometric(q, 1, ExponentVector::new(vec![1]))
}

/// `Z(F_q[T], arg)` in the `x` coordinates of depth `arg.depth`, via `t -> q^{-shift} y_start`.
pub fn shifted_one_var(q: u64, arg: &ShiftedArgument) -> FactoredRational {
    let image = MonomialImage::new(1, -arg.shift, y_exponent(arg.depth, arg.start - 1))
        .expect("unit sign");
    one_var_poly_zeta(q)
        .map_variables(&[image], arg.depth)
        .expect("valid image")
}

/// Product of the mapped one-variable zeta functions.
pub fn factorization_product(ctx: &PolyZetaContext) -> FactoredRational {
    factorization_list(ctx)
        .iter()
        .fold(FactoredRational::one(ctx.q, ctx.depth).unwrap(), |acc, arg| {
            acc.mul(&shifted_one_var(ctx.q, arg)).unwrap()
        })
}

/// `xi_d = prod_k [q^{d-k} y_k / (1 - q^{d-k} y_k)] * Z_d`.
pub fn completed_xi(ctx: &PolyZetaContext) -> FactoredRational {
    let d = ctx.depth;
    let q = ctx.q;
    let mut xi = closed_form_poly(ctx);
    for k in 0..d {
        let c = q_pow(q, (d - 1 - k) as i64);
        let e = y_exponent(d, k);
        let factor = geometric(q, (d - 1 - k) as i64, e.clone())
            .mul_poly(&LaurentPolynomial::monomial(c, e))
            .unwrap();
        xi = xi.mul(&factor).unwrap();
    }
    xi
}

/// `s_1 -> 2d - 1 - 2(s_2 + ... + s_d) - s_1`, i.e. `x_1 -> q^{-(2d-1)} x_1^{-1} (x_2...x_d)^{-2}`.
pub fn involution_image(ctx: &PolyZetaContext) -> MonomialImage {
    let d = ctx.depth;
    let e: Vec<i64> = (0..d).map(|j| if j == 0 { -1 } else { -2 }).collect();
    MonomialImage::new(1, -(2 * d as i64 - 1), e).expect("unit sign")
}

pub fn check_involution(ctx: &PolyZetaContext) -> Result<bool> {
    let xi = completed_xi(ctx);
    let image = xi.substitute(0, &involution_image(ctx))?;
    image.equals(&xi)
}

/// `xi_2(s, 1 - w) = xi_2(s - 2w + 1, w)`.
pub fn mixed_relation_d2(q: u64) -> Result<bool> {
    let ctx = PolyZetaContext::new(q, 2)?;
    let xi = completed_xi(&ctx);
    let left = xi.substitute(1, &MonomialImage::new(1, -1, [0, -1])?)?;
    let right = xi.substitute(0, &MonomialImage::new(1, -1, [1, -2])?)?;
    left.equals(&right)
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Euler product over monic irreducibles of degree `<= max_degree`, expanded in the `y`
/// coordinates (variable `k` is `y_k`), exact on the box `[0, max_degree]^d`.
pub fn euler_truncation(ctx: &PolyZetaContext, max_degree: usize) -> Result<TruncatedSeries> {
    if !is_prime(ctx.q) {
        return Err(Error::Unsupported(format!(
            "Euler product needs irreducible counts, available for prime q only (q = {})",
            ctx.q
        )));
    }
    let sieve = IrreducibleSieve::new(ctx.q, max_degree)?;
    let d = ctx.depth;
    let top = max_degree;
    // univariate factor in y_k: prod_n (1 - q^{n(d-k)} y^n)^{-I_n}
    let mut per_var: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for k in 0..d {
        let mut acc = vec![Rational::zero(); top + 1];
        acc[0] = Rational::one();
        for n in 1..=max_degree {
            let count = sieve.count(n);
            let c = q_pow(ctx.q, (n * (d - 1 - k)) as i64);
            // (1 - c z^n)^{-I} = sum_j C(I + j - 1, j) c^j z^{nj}
            let mut factor = vec![Rational::zero(); top + 1];
            for j in 0..=top / n {
                let coef = if count == 0 {
                    if j == 0 { BigInt::one() } else { BigInt::zero() }
                } else {
                    binomial(count + j as u64 - 1, j as u64)
                };
                factor[n * j] = Rational::from_integer(coef) * num_traits::pow(c.clone(), j);
            }
            let mut next = vec![Rational::zero(); top + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in factor.iter().enumerate().take(top + 1 - i) {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        per_var.push(acc);
    }
    let mut out = TruncatedSeries::new(d, top);
    let side = top + 1;
    for lin in 0..side.pow(d as u32) {
        let mut rest = lin;
        let mut e = vec![0i64; d];
        for slot in e.iter_mut().rev() {
            *slot = (rest % side) as i64;
            rest /= side;
        }
        let c = e
            .iter()
            .enumerate()
            .fold(Rational::one(), |acc, (k, &a)| acc * &per_var[k][a as usize]);
        out.set(ExponentVector::new(e), c);
    }
    Ok(out)
}

/// Comparison of the truncated Euler product with the closed form on the `y`-box.
#[derive(Clone, Debug)]
pub struct EulerAgreement {
    pub compared: usize,
    pub mismatches: Vec<(ExponentVector, Rational, Rational)>,
}

impl EulerAgreement {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks [`euler_truncation`] against the series of [`closed_form_poly`] on every monomial
/// whose `y_k`-degrees are all `<= max_degree`, mapped to `x` via `y_k = x_k ... x_d`.
pub fn euler_agreement(ctx: &PolyZetaContext, max_degree: usize) -> Result<EulerAgreement> {
    let d = ctx.depth;
    let euler = euler_truncation(ctx, max_degree)?;
    let closed = closed_form_poly(ctx).series_expand(d * max_degree)?;
    let side = max_degree + 1;
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for lin in 0..side.pow(d as u32) {
        let mut rest = lin;
        let mut a = vec![0i64; d];
        for slot in a.iter_mut().rev() {
            *slot = (rest % side) as i64;
            rest /= side;
        }
        // x_j exponent = a_1 + ... + a_j
        let x: Vec<i64> = a
            .iter()
            .scan(0, |acc, &v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        let lhs = euler.get(&a);
        let rhs = closed.get(&x);
        compared += 1;
        if lhs != rhs {
            mismatches.push((ExponentVector::new(a), lhs, rhs));
        }
    }
    Ok(EulerAgreement {
        compared,
        mismatches,
    })
}

/// Residue of a rational function at the simple pole `factor = 0`, taken in `s_var`,
/// multiplied by `log q`. The pole relation eliminates `x_var`.
pub fn scaled_residue(
    f: &FactoredRational,
    factor: &QPowerFactor,
    var: usize,
) -> Result<FactoredRational> {
    match f.multiplicity(factor) {
        0 => {
            return Err(Error::Unsupported(format!(
                "{} is not a pole of the function",
                factor.render_with(f.q(), &crate::exactalg::default_names(f.arity()))
            )))
        }
        1 => {}
        m => {
            return Err(Error::Unsupported(format!(
                "pole of order {m}; only simple poles are supported"
            )))
        }
    }
    let e = factor.exponent();
    if e[var] != 1 {
        return Err(Error::Unsupported(format!(
            "variable x{} enters the pole factor with exponent {}, expected 1",
            var + 1,
            e[var]
        )));
    }
    let rest = f.without_factor(factor).expect("multiplicity checked");
    // x^e = q^{-a}  =>  x_var = q^{-a} prod_{i != var} x_i^{-e_i}
    let image: Vec<i64> = e
        .iter()
        .enumerate()
        .map(|(i, &k)| if i == var { 0 } else { -k })
        .collect();
    let sub = rest.substitute(var, &MonomialImage::new(1, -factor.qpow(), image)?)?;
    Ok(sub.reduce())
}

/// The three simple poles of the double zeta function of `F_q[T]`, variables `(s, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoublePole {
    /// `w = 1`, residue in `w`.
    WIsOne,
    /// `s + w = 2`, residue in `s`.
    SumIsTwoInS,
    /// `s + w = 2`, residue in `w`.
    SumIsTwoInW,
}

impl DoublePole {
    pub const ALL: [DoublePole; 3] = [
        DoublePole::WIsOne,
        DoublePole::SumIsTwoInS,
        DoublePole::SumIsTwoInW,
    ];

    /// Parses a CLI-style pole (`w=1`, `s+w=2`) with the residue variable (`s` or `w`).
    pub fn parse(pole: &str, var: Option<&str>) -> Result<Self> {
        let pole: String = pole.chars().filter(|c| !c.is_whitespace()).collect();
        match (pole.as_str(), var) {
            ("w=1", None | Some("w")) => Ok(DoublePole::WIsOne),
            ("s+w=2" | "w+s=2", Some("s")) => Ok(DoublePole::SumIsTwoInS),
            ("s+w=2" | "w+s=2", Some("w")) => Ok(DoublePole::SumIsTwoInW),
            ("s+w=2" | "w+s=2", None) => Err(Error::Usage(
                "pole s+w=2 needs a residue variable (s or w)".into(),
            )),
            _ => Err(Error::Unsupported(format!(
                "pole {pole:?} (in {}) is not one of w=1, s+w=2",
                var.unwrap_or("-")
            ))),
        }
    }

    fn factor_and_var(&self) -> (QPowerFactor, usize) {
        match self {
            DoublePole::WIsOne => (QPowerFactor::new(1, [0, 1]).unwrap(), 1),
            DoublePole::SumIsTwoInS => (QPowerFactor::new(2, [1, 1]).unwrap(), 0),
            DoublePole::SumIsTwoInW => (QPowerFactor::new(2, [1, 1]).unwrap(), 1),
        }
    }

    /// The residue in the `(s, w)` coordinates, e.g. `1/(1 - 3^(1-s))`.
    pub fn s_form(&self, q: u64) -> String {
        match self {
            DoublePole::WIsOne => format!("1/(1 - {q}^(1-s))"),
            DoublePole::SumIsTwoInS => format!("1/(1 - {q}^(1-w))"),
            DoublePole::SumIsTwoInW => format!("1/(1 - {q}^(s-1))"),
        }
    }
}

impl fmt::Display for DoublePole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DoublePole::WIsOne => "w=1 (in w)",
            DoublePole::SumIsTwoInS => "s+w=2 (in s)",
            DoublePole::SumIsTwoInW => "s+w=2 (in w)",
        })
    }
}

impl FromStr for DoublePole {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((pole, var)) => DoublePole::parse(pole, Some(var)),
            None => DoublePole::parse(s, None),
        }
    }
}

/// `log(q)` times a residue: an exact rational function in the surviving variable.
#[derive(Clone, Debug)]
pub struct ScaledResidue {
    pub pole: DoublePole,
    pub subvariety: Subvariety,
    pub value: FactoredRational,
    pub s_form: String,
}

pub fn scaled_residue_d2(q: u64, pole: DoublePole) -> Result<ScaledResidue> {
    let ctx = PolyZetaContext::new(q, 2)?;
    let z = closed_form_poly(&ctx);
    let (factor, var) = pole.factor_and_var();
    let value = scaled_residue(&z, &factor, var)?;
    Ok(ScaledResidue {
        pole,
        subvariety: Subvariety::from_factor(&factor).expect("y-factor"),
        value,
        s_form: pole.s_form(q),
    })
}

/// True when the reduced numerator of the closed form is a nonzero monomial.
pub fn zero_free_check(ctx: &PolyZetaContext) -> bool {
    closed_form_poly(ctx).reduce().numerator().as_monomial().is_some()
}

/// Subvarieties carrying the denominator factors of the closed form.
pub fn pole_subvarieties_poly(ctx: &PolyZetaContext) -> Vec<Subvariety> {
    closed_form_poly(ctx)
        .reduce()
        .factors()
        .filter_map(|(f, _)| Subvariety::from_factor(f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{rat, rat_frac};
    use crate::oracle::truncated_series_poly_weights;

    fn ctx(q: u64, d: usize) -> PolyZetaContext {
        PolyZetaContext::new(q, d).unwrap()
    }

    #[test]
    fn closed_forms_render() {
        assert_eq!(closed_form_poly(&ctx(2, 1)).to_string(), "1/(1 - 2*x1)");
        assert_eq!(
            closed_form_poly(&ctx(2, 2)).to_string(),
            "1/((1 - 4*x1*x2)(1 - 2*x2))"
        );
        assert_eq!(
            closed_form_poly(&ctx(3, 3)).to_string(),
            "1/((1 - 27*x1*x2*x3)(1 - 9*x2*x3)(1 - 3*x3))"
        );
    }

    #[test]
    fn closed_form_series_matches_monic_weights() {
        for q in [2, 3, 5] {
            for d in 1..=3 {
                let s = closed_form_poly(&ctx(q, d)).series_expand(5).unwrap();
                assert_eq!(s, truncated_series_poly_weights(q, d, 5), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn factorization() {
        let names: Vec<String> = factorization_list(&ctx(2, 2))
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(names, ["s1+s2-1", "s2"]);
        assert_eq!(factorization_list(&ctx(2, 1))[0].to_string(), "s1");
        for d in 1..=3 {
            let c = ctx(3, d);
            assert!(factorization_product(&c).equals(&closed_form_poly(&c)).unwrap());
        }
    }

    #[test]
    fn completed_function_shapes() {
        let xi1 = completed_xi(&ctx(2, 1)).reduce();
        assert_eq!(xi1.to_string(), "x1/((1 - x1)(1 - 2*x1))");
        let xi2 = completed_xi(&ctx(2, 2));
        let expected = FactoredRational::new(
            2,
            LaurentPolynomial::monomial(rat(2), [1, 2].into()),
            [
                QPowerFactor::new(2, [1, 1]).unwrap(),
                QPowerFactor::new(1, [1, 1]).unwrap(),
                QPowerFactor::new(1, [0, 1]).unwrap(),
                QPowerFactor::new(0, [0, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(xi2, expected);
        for d in 1..=4 {
            let ratio = completed_xi(&ctx(3, d));
            assert!(ratio.numerator().as_monomial().is_some());
        }
    }

    #[test]
    fn involution_holds() {
        for (q, d) in [(2, 1), (3, 2), (2, 3), (5, 3)] {
            assert!(check_involution(&ctx(q, d)).unwrap(), "q={q} d={d}");
        }
    }

    #[test]
    fn involution_squares_to_identity() {
        for d in 1..=3 {
            let c = ctx(3, d);
            let xi = completed_xi(&c);
            let img = involution_image(&c);
            let twice = xi.substitute(0, &img).unwrap().substitute(0, &img).unwrap();
            assert!(twice.equals(&xi).unwrap());
        }
    }

    #[test]
    fn involution_breaks_without_completion() {
        // Z_d itself is not invariant; the completing factors are needed.
        let c = ctx(2, 2);
        let z = closed_form_poly(&c);
        let img = z.substitute(0, &involution_image(&c)).unwrap();
        assert!(!img.equals(&z).unwrap());
    }

    #[test]
    fn mixed_relation() {
        for q in [2, 3, 5] {
            assert!(mixed_relation_d2(q).unwrap());
        }
    }

    #[test]
    fn euler_small_cases() {
        // d=1, q=2, D=2: 1, 2, 4
        let e = euler_truncation(&ctx(2, 1), 2).unwrap();
        assert_eq!((e.get(&[0]), e.get(&[1]), e.get(&[2])), (rat(1), rat(2), rat(4)));
        let e = euler_truncation(&ctx(3, 1), 1).unwrap();
        assert_eq!(e.get(&[1]), rat(3));
        for d in 1..=2 {
            for big_d in 1..=4 {
                assert!(euler_agreement(&ctx(2, d), big_d).unwrap().agrees());
            }
        }
        assert!(euler_agreement(&ctx(2, 2), 3).unwrap().agrees());
        assert!(matches!(
            euler_truncation(&ctx(4, 1), 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn euler_truncation_is_not_exact_beyond_the_box() {
        // Only irreducibles of degree <= 1 at q = 2: the t^2 coefficient is C(3,2) = 3, not 4.
        let c = ctx(2, 1);
        let e = euler_truncation(&c, 1).unwrap();
        assert_eq!(e.get(&[1]), rat(2));
        let e2 = euler_truncation(&c, 2).unwrap();
        assert_eq!(e2.get(&[2]), rat(4));
    }

    #[test]
    fn residues() {
        let r = scaled_residue_d2(3, DoublePole::WIsOne).unwrap();
        assert_eq!(r.value.to_string(), "1/(1 - 3*x1)");
        let r = scaled_residue_d2(3, DoublePole::SumIsTwoInS).unwrap();
        assert_eq!(r.value.to_string(), "1/(1 - 3*x2)");
        let r = scaled_residue_d2(3, DoublePole::SumIsTwoInW).unwrap();
        assert_eq!(r.s_form, "1/(1 - 3^(s-1))");
        // 1/(1 - q^{s-1}) = 1/(1 - q^{-1} x1^{-1}) = -q x1/(1 - q x1)
        let expected = FactoredRational::new(
            3,
            LaurentPolynomial::monomial(rat(-3), [1, 0].into()),
            [QPowerFactor::new(1, [1, 0]).unwrap()],
        )
        .unwrap();
        assert!(r.value.equals(&expected).unwrap());
        // numerically at s = 2: 1/(1 - 3) = -1/2
        let x1 = rat_frac(1, 9);
        let v = -rat(3) * &x1 / (rat(1) - rat(3) * &x1);
        assert_eq!(v, rat_frac(-1, 2));
    }

    #[test]
    fn pole_parsing() {
        assert_eq!(DoublePole::parse("w=1", None).unwrap(), DoublePole::WIsOne);
        assert_eq!(
            DoublePole::parse("s + w = 2", Some("w")).unwrap(),
            DoublePole::SumIsTwoInW
        );
        assert!(matches!(
            DoublePole::parse("w=0", None),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn zero_free() {
        for (q, d) in [(2, 1), (2, 2), (3, 4)] {
            assert!(zero_free_check(&ctx(q, d)));
        }
    }

    #[test]
    fn poles_sit_on_predicted_subvarieties() {
        for d in 1..=3 {
            let mut got = pole_subvarieties_poly(&ctx(2, d));
            got.sort();
            let expected: Vec<Subvariety> = (1..=d)
                .map(|k| Subvariety {
                    start: k,
                    value: (d - k + 1) as i64,
                    depth: d,
                })
                .collect();
            assert_eq!(got, expected);
        }
    }
}
