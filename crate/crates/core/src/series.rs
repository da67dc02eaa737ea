//! Half-power binomial series: exact rational coefficients for
//! sqrt(1 + x) = sum_n c_n x^n and a truncated evaluator.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Orders past this are refused; nothing in the workbench needs them and the
/// factorials get silly.
pub const MAX_SERIES_ORDER: usize = 4096;

/// Default truncation order used by callers that do not pick one.
pub const DEFAULT_SERIES_ORDER: usize = 12;

/// Exact coefficient c_n = (-1)^n (2n)! / (2^{2n} (1 - 2n) (n!)^2).
pub fn binomial_half(n: usize) -> Result<BigRational> {
    if n > MAX_SERIES_ORDER {
        return Err(Error::SeriesOrder(n));
    }
    let two_n_fact = factorial(2 * n);
    let n_fact = factorial(n);
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let num = sign * two_n_fact;
    let den = (BigInt::one() << (2 * n)) * (BigInt::from(1) - BigInt::from(2 * n as i64))
        * (&n_fact * &n_fact);
    Ok(BigRational::new(num, den))
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// All coefficients through `order`, as exact rationals.
pub fn binomial_half_table(order: usize) -> Result<Vec<BigRational>> {
    (0..=order).map(binomial_half).collect()
}

/// Truncated series for sqrt(1 + x); |x| must be inside the radius of
/// convergence.
pub fn sqrt_series_eval(x: f64, order: usize) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "series argument |{x}| outside the unit radius of convergence"
        )));
    }
    let coeffs = binomial_half_table(order)?;
    let mut acc = 0.0;
    let mut xn = 1.0;
    for c in &coeffs {
        acc += rational_to_f64(c) * xn;
        xn *= x;
    }
    Ok(acc)
}

/// Magnitude of the first omitted term, handy as a truncation-error scale.
pub fn first_omitted_term(x: f64, order: usize) -> Result<f64> {
    let c = binomial_half(order + 1)?;
    Ok((rational_to_f64(&c) * x.powi(order as i32 + 1)).abs())
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // extremely large terms cancel in the ratio; fall back via string in
        // the (unreachable for our orders) overflow case
        let num = r.numer().to_f64().unwrap_or(f64::MAX);
        let den = r.denom().to_f64().unwrap_or(f64::MAX);
        num / den
    })
}

/// Signed rational as (numerator, denominator) strings, for reports.
pub fn rational_parts(r: &BigRational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

/// True when the series terms alternate in sign from n = 1 on, which is what
/// makes the first omitted term an error bound for positive arguments.
pub fn alternates_from_one(order: usize) -> Result<bool> {
    let mut prev: Option<bool> = None;
    for n in 1..=order {
        let c = binomial_half(n)?;
        let pos = c.is_positive();
        if let Some(p) = prev {
            if p == pos {
                return Ok(false);
            }
        }
        prev = Some(pos);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::FromPrimitive;

    /// Independent oracle: Taylor recurrence c_n = c_{n-1} (3/2 - n)/n from
    /// the binomial exponent 1/2.
    fn recurrence_table(order: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::one()];
        for n in 1..=order {
            let n_big = BigRational::from_i64(n as i64).unwrap();
            let factor = (BigRational::new(3.into(), 2.into()) - &n_big) / &n_big;
            let prev = out.last().unwrap().clone();
            out.push(prev * factor);
        }
        out
    }

    #[test]
    fn closed_form_matches_recurrence_exactly() {
        let closed = binomial_half_table(30).unwrap();
        let rec = recurrence_table(30);
        assert_eq!(closed, rec);
    }

    #[test]
    fn first_coefficients() {
        assert_eq!(binomial_half(0).unwrap(), BigRational::one());
        assert_eq!(binomial_half(1).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(binomial_half(2).unwrap(), BigRational::new((-1).into(), 8.into()));
        assert_eq!(binomial_half(3).unwrap(), BigRational::new(1.into(), 16.into()));
    }

    #[test]
    fn truncated_series_approaches_sqrt() {
        let x = 0.21;
        let exact = (1.0 + x).sqrt();
        let v = sqrt_series_eval(x, DEFAULT_SERIES_ORDER).unwrap();
        assert_relative_eq!(v, exact, max_relative = 1e-12);
        // error bounded by first omitted term for positive x
        let err = (v - exact).abs();
        assert!(err <= first_omitted_term(x, DEFAULT_SERIES_ORDER).unwrap());
    }

    #[test]
    fn error_shrinks_monotonically_with_order() {
        for &x in &[0.6, -0.4, 0.15, -0.75] {
            let exact = (1.0 + x).sqrt();
            let mut prev = f64::INFINITY;
            for order in [2usize, 4, 8, 16, 32] {
                let err = (sqrt_series_eval(x, order).unwrap() - exact).abs();
                assert!(
                    err <= prev * (1.0 + 1e-12) + 1e-16,
                    "x={x} order={order} err={err} prev={prev}"
                );
                prev = err;
            }
        }
    }

    #[test]
    fn arguments_on_or_past_the_radius_are_rejected() {
        assert!(sqrt_series_eval(1.0, 4).is_err());
        assert!(sqrt_series_eval(-1.0, 4).is_err());
        assert!(sqrt_series_eval(2.5, 4).is_err());
        assert!(matches!(
            binomial_half(MAX_SERIES_ORDER + 1),
            Err(Error::SeriesOrder(_))
        ));
    }

    #[test]
    fn signs_alternate_from_n_equals_one() {
        assert!(alternates_from_one(25).unwrap());
    }
}
