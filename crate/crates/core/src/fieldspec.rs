//! Function-field data: `(q, g, h, b_0..b_{2g-2})` and the one-variable zeta function.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::exactalg::rational::{big, q_pow, rat};
use crate::exactalg::{ExponentVector, FactoredRational, LaurentPolynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionFieldSpec {
    q: u64,
    genus: u32,
    class_number: u64,
    b_initial: Vec<u64>,
}

/// Integer polynomial `L(t)` with `L(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    coeffs: Vec<i64>,
}

impl LPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.first() != Some(&1) {
            return Err(Error::spec("L", "L(0) must equal 1"));
        }
        Ok(LPolynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

fn big_pow(q: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), n as usize)
}

impl FunctionFieldSpec {
    pub fn new(q: u64, genus: u32, class_number: u64, b_initial: Vec<u64>) -> Result<Self> {
        if q < 2 {
            return Err(Error::spec("q", format!("q must be at least 2, got {q}")));
        }
        let expected = (2 * genus as usize).saturating_sub(1);
        if b_initial.len() != expected {
            return Err(Error::spec(
                "b",
                format!(
                    "genus {genus} needs b_0..b_{{2g-2}} ({expected} values), got {}",
                    b_initial.len()
                ),
            ));
        }
        if let Some(&b0) = b_initial.first() {
            if b0 != 1 {
                return Err(Error::spec("b", format!("b_0 must be 1, got {b0}")));
            }
        }
        if class_number == 0 {
            return Err(Error::spec("class_number", "class number must be at least 1"));
        }
        if genus == 0 && class_number != 1 {
            return Err(Error::spec(
                "class_number",
                "the rational function field (genus 0) has class number 1",
            ));
        }
        Ok(FunctionFieldSpec {
            q,
            genus,
            class_number,
            b_initial,
        })
    }

    /// The rational function field `F_q(T)`.
    pub fn rational(q: u64) -> Result<Self> {
        Self::new(q, 0, 1, Vec::new())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn class_number(&self) -> u64 {
        self.class_number
    }

    pub fn b_initial(&self) -> &[u64] {
        &self.b_initial
    }

    /// Number of effective divisors of degree `n`.
    pub fn effective_count(&self, n: u32) -> BigInt {
        if let Some(&b) = self.b_initial.get(n as usize) {
            return BigInt::from(b);
        }
        // n > 2g - 2, so n - g + 1 >= 1
        let m = n + 1 - self.genus;
        let numer = BigInt::from(self.class_number) * (big_pow(self.q, m) - BigInt::one());
        let (quot, rem) = numer.div_rem(&BigInt::from(self.q - 1));
        debug_assert!(rem.is_zero());
        quot
    }

    /// `Z(K, t) = sum_n b_n t^n` as a rational function in one variable `t`.
    pub fn one_var_zeta(&self) -> FactoredRational {
        let q = self.q;
        let g = self.genus as i64;
        let head = LaurentPolynomial::from_terms(
            1,
            self.b_initial
                .iter()
                .enumerate()
                .map(|(n, &b)| (rat(b as i64), ExponentVector::new(vec![n as i64]))),
        )
        .expect("arity 1");
        let shift = LaurentPolynomial::monomial(rat(1), ExponentVector::new(vec![2 * g - 1]));
        let geo = |a: i64| FactoredRational::geometric(q, a, [1]).expect("valid factor");
        let bracket = geo(1)
            .scale(&q_pow(q, g))
            .sub(&geo(0))
            .expect("same q and arity")
            .mul_poly(&shift)
            .expect("arity 1")
            .scale(&(rat(self.class_number as i64) / rat(q as i64 - 1)));
        FactoredRational::from_poly(q, head)
            .expect("q >= 2")
            .add(&bracket)
            .expect("same q and arity")
    }

    /// Builds a spec from `L(t)`, where `Z(K, t) = L(t) / ((1 - t)(1 - q t))`.
    pub fn from_l_polynomial(q: u64, l: &LPolynomial) -> Result<Self> {
        if q < 2 {
            return Err(Error::spec("q", format!("q must be at least 2, got {q}")));
        }
        if l.degree() % 2 != 0 {
            return Err(Error::spec(
                "L",
                format!("degree {} is odd; L(t) has degree 2g", l.degree()),
            ));
        }
        let g = (l.degree() / 2) as u32;
        let top = 2 * g as usize + 2;
        // coefficient of t^m in 1/((1-t)(1-qt)) is (q^{m+1} - 1)/(q - 1)
        let geo = |m: usize| (big_pow(q, m as u32 + 1) - BigInt::one()) / BigInt::from(q - 1);
        let series: Vec<BigInt> = (0..=top)
            .map(|n| {
                l.coefficients()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i <= n)
                    .map(|(i, &c)| BigInt::from(c) * geo(n - i))
                    .sum()
            })
            .collect();
        let h_from_l = l.at_one();
        let h = if g == 0 {
            BigInt::from(h_from_l)
        } else {
            let c = &series[2 * g as usize - 1];
            let denom = big_pow(q, g) - BigInt::one();
            let numer = c * BigInt::from(q - 1);
            let (h, rem) = numer.div_rem(&denom);
            if !rem.is_zero() {
                return Err(Error::spec(
                    "L",
                    format!("class number {numer}/{denom} is not an integer"),
                ));
            }
            h
        };
        if !h.is_positive() {
            return Err(Error::spec("L", format!("class number {h} is not positive")));
        }
        if h != BigInt::from(h_from_l) {
            return Err(Error::spec(
                "L",
                format!("class number {h} disagrees with L(1) = {h_from_l}"),
            ));
        }
        let h = h
            .to_u64()
            .ok_or_else(|| Error::spec("L", "class number out of range"))?;
        let mut b = Vec::new();
        for c in series.iter().take((2 * g as usize).saturating_sub(1)) {
            b.push(
                c.to_u64()
                    .ok_or_else(|| Error::spec("L", format!("b_n = {c} is negative")))?,
            );
        }
        let spec = Self::new(q, g, h, b)?;
        for n in 2 * g as usize..=top {
            if spec.effective_count(n as u32) != series[n] {
                return Err(Error::spec(
                    "L",
                    format!(
                        "series coefficient {} at t^{n} disagrees with h(q^(n-g+1)-1)/(q-1) = {}",
                        series[n],
                        spec.effective_count(n as u32)
                    ),
                ));
            }
        }
        Ok(spec)
    }

    /// `L(t) / ((1 - t)(1 - q t))` as a rational function in `t`.
    pub fn l_quotient(q: u64, l: &LPolynomial) -> Result<FactoredRational> {
        let num = LaurentPolynomial::from_terms(
            1,
            l.coefficients()
                .iter()
                .enumerate()
                .map(|(i, &c)| (rat(c), ExponentVector::new(vec![i as i64]))),
        )?;
        FactoredRational::geometric(q, 0, [1])?
            .mul(&FactoredRational::geometric(q, 1, [1])?)?
            .mul_poly(&num)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::spec("document", e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::spec("document", "expected a JSON object"))?;
        let q = get_u64(obj, "q")?;
        if obj.contains_key("L") {
            let coeffs = get_array(obj, "L")?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::spec("L", format!("{x} is not an integer")))
                })
                .collect::<Result<Vec<i64>>>()?;
            return Self::from_l_polynomial(q, &LPolynomial::new(coeffs)?);
        }
        let genus = get_u64(obj, "genus")?;
        let genus = u32::try_from(genus).map_err(|_| Error::spec("genus", "out of range"))?;
        let h = get_u64(obj, "class_number")?;
        let b = get_array(obj, "b")?
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| Error::spec("b", format!("{x} is not a nonnegative integer")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Self::new(q, genus, h, b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "genus": self.genus,
            "class_number": self.class_number,
            "b": self.b_initial,
        })
    }

    pub fn b_rational(&self, n: u32) -> crate::exactalg::Rational {
        big(&self.effective_count(n))
    }
}

fn get_u64(obj: &Map<String, Value>, field: &str) -> Result<u64> {
    obj.get(field)
        .ok_or_else(|| Error::spec(field, "missing"))?
        .as_u64()
        .ok_or_else(|| Error::spec(field, "expected a nonnegative integer"))
}

fn get_array<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a Vec<Value>> {
    obj.get(field)
        .ok_or_else(|| Error::spec(field, "missing"))?
        .as_array()
        .ok_or_else(|| Error::spec(field, "expected an array"))
}

pub fn effective_count(spec: &FunctionFieldSpec, n: u32) -> BigInt {
    spec.effective_count(n)
}

pub fn one_var_zeta(spec: &FunctionFieldSpec) -> FactoredRational {
    spec.one_var_zeta()
}

pub fn from_l_polynomial(q: u64, l: &LPolynomial) -> Result<FunctionFieldSpec> {
    FunctionFieldSpec::from_l_polynomial(q, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e5() -> FunctionFieldSpec {
        FunctionFieldSpec::new(5, 1, 4, vec![1]).unwrap()
    }

    #[test]
    fn effective_counts() {
        let p1 = FunctionFieldSpec::rational(5).unwrap();
        assert_eq!(p1.effective_count(1), BigInt::from(6));
        assert_eq!(e5().effective_count(0), BigInt::from(1));
        assert_eq!(e5().effective_count(2), BigInt::from(24));
    }

    #[test]
    fn from_l_polynomial_examples() {
        let l = LPolynomial::new(vec![1, -2, 5]).unwrap();
        assert_eq!(FunctionFieldSpec::from_l_polynomial(5, &l).unwrap(), e5());
        let one = LPolynomial::new(vec![1]).unwrap();
        assert_eq!(
            FunctionFieldSpec::from_l_polynomial(7, &one).unwrap(),
            FunctionFieldSpec::rational(7).unwrap()
        );
        let odd = LPolynomial::new(vec![1, 1]).unwrap();
        assert!(matches!(
            FunctionFieldSpec::from_l_polynomial(2, &odd),
            Err(Error::InvalidSpec { field, .. }) if field == "L"
        ));
        assert!(LPolynomial::new(vec![2, 1]).is_err());
    }

    #[test]
    fn from_l_polynomial_rejects_non_integral_class_number() {
        // series of (1 - t + t^2)/((1-t)(1-5t)): t^1 coefficient 5, h = 5*4/4 = 5, but L(1) = 1
        let l = LPolynomial::new(vec![1, -1, 1]).unwrap();
        assert!(FunctionFieldSpec::from_l_polynomial(5, &l).is_err());
    }

    #[test]
    fn one_var_zeta_closed_forms() {
        let z = FunctionFieldSpec::rational(3).unwrap().one_var_zeta().reduce();
        assert_eq!(z.to_string(), "1/((1 - x1)(1 - 3*x1))");
        let l = LPolynomial::new(vec![1, -2, 5]).unwrap();
        let expected = FunctionFieldSpec::l_quotient(5, &l).unwrap();
        assert!(e5().one_var_zeta().equals(&expected).unwrap());
    }

    #[test]
    fn one_var_zeta_series_matches_counts() {
        for spec in [
            e5(),
            FunctionFieldSpec::rational(4).unwrap(),
            FunctionFieldSpec::new(2, 2, 1, vec![1, 3, 9]).unwrap(),
        ] {
            let s = spec.one_var_zeta().series_expand(12).unwrap();
            for n in 0..=12u32 {
                assert_eq!(s.get(&[n as i64]), spec.b_rational(n), "n = {n}");
            }
        }
    }

    #[test]
    fn validation_names_the_field() {
        let err = FunctionFieldSpec::new(5, 1, 4, vec![2]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { ref field, .. } if field == "b"));
        let err = FunctionFieldSpec::new(5, 0, 2, vec![]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { ref field, .. } if field == "class_number"));
        let err = FunctionFieldSpec::from_json(r#"{"q": 5, "genus": 1, "b": [1]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { ref field, .. } if field == "class_number"));
    }

    #[test]
    fn json_forms() {
        let a = FunctionFieldSpec::from_json(r#"{"q":5,"genus":1,"class_number":4,"b":[1]}"#)
            .unwrap();
        let b = FunctionFieldSpec::from_json(r#"{"q":5,"L":[1,-2,5]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            FunctionFieldSpec::from_json(&a.to_json().to_string()).unwrap(),
            a
        );
    }
}
