//! Summation of monotonically decaying series with a ratio-based tail bound.

use super::{NumericResult, Tolerance};
use crate::error::{Error, Result};

const CONSECUTIVE: usize = 3;

/// Estimated remainder after the term `cur`, given the previous term `prev`.
///
/// With `r = |cur/prev| < 1` the remainder of a series whose ratio does not
/// increase is at most `|cur|·r/(1 − r)`; power-law tails give
/// `r ≈ 1 − p/m`, reproducing the integral estimate `m·|cur|/p`.
fn tail_bound(prev: f64, cur: f64) -> f64 {
    if cur == 0.0 {
        return 0.0;
    }
    if prev == 0.0 {
        return f64::INFINITY;
    }
    let r = (cur / prev).abs();
    if r >= 1.0 {
        f64::INFINITY
    } else {
        cur.abs() * r / (1.0 - r)
    }
}

/// Sums `term(start) + term(start + 1) + …` for a fallible summand.
///
/// Stops once the estimated tail is below both `tol.abs` and
/// `tol.rel·|partial sum|` for three consecutive terms. `err_estimate` is
/// the tail bound from the last included term. Exhausting `tol.max_iter`
/// terms returns `converged = false`.
pub fn try_sum_series<F>(mut term: F, start: u64, tol: &Tolerance) -> Result<NumericResult>
where
    F: FnMut(u64) -> Result<f64>,
{
    tol.validate()?;
    let mut sum = 0.0;
    // Neumaier compensation
    let mut comp = 0.0;
    let mut prev = f64::NAN;
    let mut streak = 0;
    let mut err = f64::INFINITY;

    for i in 0..tol.max_iter {
        let m = start + i as u64;
        let t = term(m)?;
        if !t.is_finite() {
            return Err(Error::NonFinite { at: m as f64 });
        }
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
        let partial = sum + comp;

        err = if i == 0 { f64::INFINITY } else { tail_bound(prev, t) };
        prev = t;
        if err <= tol.abs && err <= tol.rel * partial.abs() {
            streak += 1;
            if streak >= CONSECUTIVE {
                return Ok(NumericResult {
                    value: partial,
                    err_estimate: err,
                    evaluations: i + 1,
                    converged: true,
                });
            }
        } else {
            streak = 0;
        }
    }

    Ok(NumericResult {
        value: sum + comp,
        err_estimate: err,
        evaluations: tol.max_iter,
        converged: false,
    })
}

/// Infallible convenience wrapper around [`try_sum_series`].
pub fn sum_series<F>(mut term: F, start: u64, tol: &Tolerance) -> Result<NumericResult>
where
    F: FnMut(u64) -> f64,
{
    try_sum_series(|m| Ok(term(m)), start, tol)
}
