//! Brute-force ground truth, computed without any closed form.

mod elliptic;
mod monic;

pub use elliptic::{elliptic_point_count, elliptic_spec};
pub use monic::{
    enumerate_monic, irreducible_count, is_prime, necklace_count, IrreducibleSieve,
    PrimeFieldPoly,
};

use crate::error::{Error, Result};
use crate::exactalg::rational::big;
use crate::exactalg::{ExponentVector, Rational, TruncatedSeries};
use crate::fieldspec::FunctionFieldSpec;

/// Default cap on the number of monic tuples a literal enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 20_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "MZVFF_BUDGET";

pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Calls `visit` on every nondecreasing sequence `0 <= m_1 <= ... <= m_d <= bound`.
fn for_each_chain(d: usize, bound: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(m: &mut Vec<usize>, d: usize, lo: usize, bound: usize, visit: &mut dyn FnMut(&[usize])) {
        if m.len() == d {
            visit(m);
            return;
        }
        for k in lo..=bound {
            m.push(k);
            go(m, d, k, bound, visit);
            m.pop();
        }
    }
    go(&mut Vec::with_capacity(d), d, 0, bound, visit);
}

fn chain_exponent(m: &[usize]) -> ExponentVector {
    ExponentVector::new(m.iter().map(|&k| k as i64).collect())
}

/// The defining nested sum: coefficient of `prod x_k^{m_k}` is `prod b_{m_k}` when
/// `m_1 <= ... <= m_d`, zero otherwise.
pub fn truncated_series_b(spec: &FunctionFieldSpec, d: usize, bound: usize) -> TruncatedSeries {
    let b: Vec<Rational> = (0..=bound as u32).map(|n| big(&spec.effective_count(n))).collect();
    let mut out = TruncatedSeries::new(d, bound);
    for_each_chain(d, bound, &mut |m| {
        let c = m.iter().fold(Rational::from_integer(1.into()), |acc, &k| acc * &b[k]);
        out.set(chain_exponent(m), c);
    });
    out
}

/// Same as [`truncated_series_b`] with weights `b_n = q^n`, the monic counts of `F_q[T]`.
pub fn truncated_series_poly_weights(q: u64, d: usize, bound: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::new(d, bound);
    for_each_chain(d, bound, &mut |m| {
        let total: usize = m.iter().sum();
        out.set(
            chain_exponent(m),
            crate::exactalg::rational::q_pow(q, total as i64),
        );
    });
    out
}

/// Counts tuples `(f_1, ..., f_d)` of monic polynomials over `F_p` with nondecreasing degrees
/// `m_k <= bound`, one tuple at a time.
pub fn truncated_series_enum(
    p: u64,
    d: usize,
    bound: usize,
    budget: u128,
) -> Result<TruncatedSeries> {
    monic::require_prime(p)?;
    let mut needed: u128 = 0;
    for_each_chain(d, bound, &mut |m| {
        let tuples = m
            .iter()
            .fold(1u128, |acc, &k| acc.saturating_mul((p as u128).saturating_pow(k as u32)));
        needed = needed.saturating_add(tuples);
    });
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let monics: Vec<Vec<PrimeFieldPoly>> = (0..=bound)
        .map(|n| enumerate_monic(p, n))
        .collect::<Result<_>>()?;
    let mut out = TruncatedSeries::new(d, bound);
    for_each_chain(d, bound, &mut |m| {
        let lists: Vec<&[PrimeFieldPoly]> = m.iter().map(|&k| monics[k].as_slice()).collect();
        let count = count_tuples(&lists);
        out.set(chain_exponent(m), Rational::from_integer(count.into()));
    });
    Ok(out)
}

fn count_tuples(lists: &[&[PrimeFieldPoly]]) -> u64 {
    let Some((first, rest)) = lists.split_first() else {
        return 1;
    };
    let mut n = 0;
    for f in first.iter() {
        debug_assert!(f.is_monic());
        n += count_tuples(rest);
    }
    n
}
