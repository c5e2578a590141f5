use super::monic::require_prime;
use crate::error::{Error, Result};
use crate::fieldspec::FunctionFieldSpec;

/// `#E(F_p)` for `y^2 = x^3 + a x + b`, counting the point at infinity, by full enumeration.
pub fn elliptic_point_count(p: u64, a: u64, b: u64) -> Result<u64> {
    require_prime(p)?;
    if p <= 3 {
        return Err(Error::Unsupported(format!(
            "short Weierstrass form needs p > 3, got {p}"
        )));
    }
    let (a, b) = (a % p, b % p);
    let disc = (4 * a % p * a % p * a + 27 * b % p * b) % p;
    if disc == 0 {
        return Err(Error::SingularCurve { p, a, b });
    }
    let mut count = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + a * x + b) % p;
        count += (0..p).filter(|y| y * y % p == rhs).count() as u64;
    }
    Ok(count)
}

/// Genus-1 spec of the function field of the curve: `h = #E(F_p)`, `b_0 = 1`.
pub fn elliptic_spec(p: u64, a: u64, b: u64) -> Result<FunctionFieldSpec> {
    let h = elliptic_point_count(p, a, b)?;
    FunctionFieldSpec::new(p, 1, h, vec![1])
}
