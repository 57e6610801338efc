//! Zeros of the local factor `f(x, p) = 1 + (2p + 2)x + p x²` of the
//! triple-product series, taken at `x = p^{-s}`.
//!
//! Both roots in `x` are real and negative. The one inside the unit disc,
//! `α⁺`, gives a vertical line of zeros at `Re(s) = -log|α⁺| / log p`
//! spaced `2π / log p` apart; as `p` grows these lines approach `Re(s) = 1`.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_complex::Complex64;
use thiserror::Error;

use crate::seqcore::FactoredInteger;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundaryError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("no zero within range; nearest at distance {distance}")]
    NotFoundInRange { distance: f64, nearest: Option<EulerFactorZero> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerFactorZero {
    pub p: u64,
    pub k: i64,
    pub s: Complex64,
    pub alpha: f64,
}

fn check_prime(p: u64) -> Result<(), BoundaryError> {
    match FactoredInteger::new(p) {
        Ok(f) if f.factors() == [(p, 1)] => Ok(()),
        _ => Err(BoundaryError::NotPrime(p)),
    }
}

/// `(α⁺, α⁻)`, the roots of `p x² + (2p + 2)x + 1`, with `α⁻ < -1 < α⁺ < 0`.
pub fn alpha_roots(p: u64) -> Result<(f64, f64), BoundaryError> {
    check_prime(p)?;
    let inv = 1.0 / p as f64;
    let b = 1.0 + inv;
    let minus = -b - libm::sqrt(b * b - inv);
    // product of the roots is 1/p; avoids cancellation in -b + sqrt(..)
    Ok((inv / minus, minus))
}

/// `f(p^{-s}, p)`.
pub fn triple_factor(p: u64, s: Complex64) -> Complex64 {
    let pf = p as f64;
    let x = (-s * libm::log(pf)).exp();
    Complex64::new(1.0, 0.0) + x * (2.0 * pf + 2.0) + x * x * pf
}

/// `Re(s)` of the zeros coming from `p`.
pub fn zero_abscissa(p: u64) -> Result<f64, BoundaryError> {
    let (plus, _) = alpha_roots(p)?;
    Ok(-libm::log(-plus) / libm::log(p as f64))
}

fn zero_at(p: u64, k: i64, alpha: f64, re: f64) -> EulerFactorZero {
    let im = (2 * k + 1) as f64 * core::f64::consts::PI / libm::log(p as f64);
    EulerFactorZero {
        p,
        k,
        s: Complex64::new(re, im),
        alpha,
    }
}

/// Zeros `s` with `p^{-s} = α⁺`, one per branch `k`.
pub fn zero_lattice(p: u64, k_range: RangeInclusive<i64>) -> Result<Vec<EulerFactorZero>, BoundaryError> {
    let (alpha, _) = alpha_roots(p)?;
    let re = zero_abscissa(p)?;
    Ok(k_range.map(|k| zero_at(p, k, alpha, re)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproachReport {
    pub nearest: EulerFactorZero,
    pub distance: f64,
}

/// Zero nearest to `target` over the given primes, checking the branches
/// whose imaginary part brackets `Im(target)`.
pub fn nearest_zero(target: Complex64, primes: &[u64]) -> Result<Option<ApproachReport>, BoundaryError> {
    let mut best: Option<ApproachReport> = None;
    for &p in primes {
        let (alpha, _) = alpha_roots(p)?;
        let re = zero_abscissa(p)?;
        let lp = libm::log(p as f64);
        let k0 = libm::floor((target.im * lp / core::f64::consts::PI - 1.0) / 2.0) as i64;
        for k in k0..=k0 + 1 {
            let zero = zero_at(p, k, alpha, re);
            let distance = (zero.s - target).norm();
            if best.is_none_or(|b| distance < b.distance) {
                best = Some(ApproachReport { nearest: zero, distance });
            }
        }
    }
    Ok(best)
}

/// Nearest zero to a point on `Re(s) = 1`, failing with the achieved
/// distance when none lies within `epsilon`.
pub fn approach_boundary(target: Complex64, epsilon: f64, primes: &[u64]) -> Result<ApproachReport, BoundaryError> {
    if (target.re - 1.0).abs() > 1e-12 {
        return Err(BoundaryError::InvalidParameter("target must lie on Re(s) = 1"));
    }
    if !(epsilon > 0.0) {
        return Err(BoundaryError::InvalidParameter("epsilon must be positive"));
    }
    match nearest_zero(target, primes)? {
        Some(report) if report.distance < epsilon => Ok(report),
        Some(report) => Err(BoundaryError::NotFoundInRange {
            distance: report.distance,
            nearest: Some(report.nearest),
        }),
        None => Err(BoundaryError::NotFoundInRange {
            distance: f64::INFINITY,
            nearest: None,
        }),
    }
}

/// One row per prime bound: the nearest zero using primes up to that bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccumulationRow {
    pub prime_bound: u64,
    pub report: Option<ApproachReport>,
}

/// `primes` must be sorted.
pub fn accumulation_table(
    target: Complex64,
    primes: &[u64],
    bounds: &[u64],
) -> Result<Vec<AccumulationRow>, BoundaryError> {
    bounds
        .iter()
        .map(|&bound| {
            let end = primes.partition_point(|&p| p <= bound);
            Ok(AccumulationRow {
                prime_bound: bound,
                report: nearest_zero(target, &primes[..end])?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::Sieve;

    #[test]
    fn roots_at_two() {
        let (plus, minus) = alpha_roots(2).unwrap();
        let sqrt7 = libm::sqrt(7.0);
        assert!((plus - (-3.0 + sqrt7) / 2.0).abs() < 1e-15);
        assert!((minus - (-3.0 - sqrt7) / 2.0).abs() < 1e-15);
        assert_eq!(alpha_roots(4), Err(BoundaryError::NotPrime(4)));
    }

    #[test]
    fn roots_at_larger_primes() {
        let (plus, _) = alpha_roots(101).unwrap();
        assert!((plus + 0.004914).abs() < 1e-6, "{plus}");
        let (plus, _) = alpha_roots(9973).unwrap();
        assert!((plus + 1.0 / (2.0 * 9973.0)).abs() < 1e-5);
        let lower = (-3.0 + libm::sqrt(7.0)) / 2.0;
        for &p in Sieve::new(10_000).primes().iter().skip(1) {
            let (plus, _) = alpha_roots(p).unwrap();
            assert!(lower < plus && plus < 0.0);
        }
    }

    #[test]
    fn vieta() {
        for &p in Sieve::new(10_000).primes() {
            let (a, b) = alpha_roots(p).unwrap();
            let pf = p as f64;
            assert!((a * b - 1.0 / pf).abs() < 1e-12);
            assert!((a + b + (2.0 * pf + 2.0) / pf).abs() < 1e-12);
        }
    }

    #[test]
    fn lattice_at_two() {
        let zeros = zero_lattice(2, -1..=0).unwrap();
        let (lo, hi) = (zeros[0].s, zeros[1].s);
        assert!((hi.re - 2.497166).abs() < 1e-6 && (hi.im - 4.532360).abs() < 1e-6, "{hi}");
        assert!((lo - hi.conj()).norm() < 1e-12);
        let re = zero_abscissa(99_991).unwrap();
        assert!(re > 1.0 && re - 1.0 < 0.08);
    }

    #[test]
    fn every_zero_is_a_zero() {
        let sieve = Sieve::new(10_000);
        let mut previous = f64::INFINITY;
        for &p in sieve.primes() {
            for zero in zero_lattice(p, -10..=10).unwrap() {
                assert!(triple_factor(p, zero.s).norm() < 1e-9, "p={p} k={}", zero.k);
                assert!(zero.s.re > 1.0);
            }
            let re = zero_abscissa(p).unwrap();
            assert!(re < previous, "p={p}");
            previous = re;
        }
    }

    #[test]
    fn real_target_reports_distance() {
        let sieve = Sieve::new(1000);
        let err = approach_boundary(Complex64::new(1.0, 0.0), 0.05, sieve.primes()).unwrap_err();
        match err {
            BoundaryError::NotFoundInRange { distance, nearest } => {
                let zero = nearest.unwrap();
                assert!(distance >= zero.s.re - 1.0 && zero.s.im != 0.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(approach_boundary(Complex64::new(2.0, 0.0), 0.05, sieve.primes()).is_err());
    }

    #[test]
    fn table_is_monotone() {
        let sieve = Sieve::new(10_000);
        let target = Complex64::new(1.0, 2.0);
        let rows = accumulation_table(target, sieve.primes(), &[100, 1000, 10_000]).unwrap();
        let d: Vec<f64> = rows.iter().map(|r| r.report.unwrap().distance).collect();
        assert!(d.windows(2).all(|w| w[1] <= w[0]), "{d:?}");
    }
}
