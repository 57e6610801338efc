//! Riemann zeta function by Euler–Maclaurin summation with an explicit
//! remainder bound.
//!
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{k=1}^{K} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + R,
//!
//! with |R| bounded by the first omitted term times |s+2K+1|/(σ+2K+1).
//! Valid for every `s ≠ 1` with `σ > -2K-1`, which covers the strip used
//! for continuation.

use num_complex::Complex64;

use super::DirserError;

/// `B_{2k}/(2k)!` for `k = 1..=21`.
const BERNOULLI_OVER_FACTORIAL: [f64; 21] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
];

/// Number of correction terms kept; one more table entry feeds the remainder bound.
const TERMS: usize = 20;
const MAX_CUTOFF: u64 = 1 << 22;

pub const DEFAULT_PRECISION: f64 = 1e-14;

/// ζ(s) together with the remainder bound that was achieved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    pub error_bound: f64,
}

/// ζ(s) to within `precision` (absolute).
pub fn zeta(s: Complex64, precision: f64) -> Result<Complex64, DirserError> {
    zeta_with_bound(s, precision).map(|z| z.value)
}

pub fn zeta_real(s: f64, precision: f64) -> Result<f64, DirserError> {
    zeta(Complex64::new(s, 0.0), precision).map(|z| z.re)
}

pub fn zeta_with_bound(s: Complex64, precision: f64) -> Result<ZetaValue, DirserError> {
    if (s - 1.0).norm() < 1e-15 {
        return Err(DirserError::PoleAt1);
    }
    if !(precision > 0.0) || s.re <= -(2.0 * TERMS as f64 + 1.0) {
        return Err(DirserError::PrecisionUnreachable { achieved: f64::INFINITY });
    }
    // Correction terms shrink roughly like (|s + 2k| / 2πN)^{2k}.
    let reach = (s + 2.0 * TERMS as f64).norm();
    let mut cutoff = (reach / core::f64::consts::PI).ceil() as u64 + 8;
    let mut last_bound = f64::INFINITY;
    while cutoff <= MAX_CUTOFF {
        let (value, bound) = euler_maclaurin(s, cutoff);
        if bound <= precision {
            return Ok(ZetaValue {
                value,
                error_bound: bound,
            });
        }
        last_bound = bound;
        cutoff *= 2;
    }
    Err(DirserError::PrecisionUnreachable { achieved: last_bound })
}

fn euler_maclaurin(s: Complex64, cutoff: u64) -> (Complex64, f64) {
    let mut head = Complex64::new(0.0, 0.0);
    for n in 1..cutoff {
        head += pow_neg(n as f64, s);
    }
    let n = cutoff as f64;
    let n_pow = pow_neg(n, s);
    let mut value = head + n_pow * n / (s - 1.0) + n_pow * 0.5;

    // rising = s(s+1)…(s+2k-2), scale = N^{-s-2k+1}
    let mut rising = s;
    let mut scale = n_pow / n;
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate().take(TERMS) {
        value += rising * scale * *c;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        scale /= n * n;
    }
    // first omitted term, k = TERMS + 1
    let omitted = (rising * scale * BERNOULLI_OVER_FACTORIAL[TERMS]).norm();
    let tail_factor = 2.0 * TERMS as f64 + 1.0;
    let bound = omitted * (s + tail_factor).norm() / (s.re + tail_factor);
    (value, bound)
}

fn pow_neg(n: f64, s: Complex64) -> Complex64 {
    if s.im == 0.0 {
        Complex64::new(libm::pow(n, -s.re), 0.0)
    } else {
        (-s * libm::log(n)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    // Independent route for real s > 1: partial sum plus the integral tail
    // bracket ∫_{N+1}^∞ x^{-s} ≤ Σ_{n>N} n^{-s} ≤ ∫_N^∞ x^{-s}, midpoint.
    fn direct_oracle(s: f64, cutoff: u64) -> f64 {
        let head: f64 = (1..=cutoff).map(|n| (n as f64).powf(-s)).sum();
        let lo = ((cutoff + 1) as f64).powf(1.0 - s) / (s - 1.0);
        let hi = (cutoff as f64).powf(1.0 - s) / (s - 1.0);
        head + 0.5 * (lo + hi)
    }

    #[test]
    fn even_values_match_closed_forms() {
        let z2 = zeta_real(2.0, 1e-15).unwrap();
        assert!((z2 - PI * PI / 6.0).abs() < 1e-14, "{z2}");
        let z4 = zeta_real(4.0, 1e-15).unwrap();
        assert!((z4 - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((z2 * z2 / z4 - 2.5).abs() < 1e-13);
    }

    #[test]
    fn agrees_with_direct_summation() {
        for s in [1.5, 2.5, 3.0, 4.0, 7.25] {
            let want = direct_oracle(s, 200_000);
            let got = zeta_real(s, 1e-14).unwrap();
            assert!((got - want).abs() < 1e-6, "s={s}: {got} vs {want}");
        }
    }

    #[test]
    fn large_argument_tends_to_one() {
        assert!((zeta_real(50.0, 1e-15).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pole_and_precision_errors() {
        assert_eq!(zeta_real(1.0, 1e-10), Err(DirserError::PoleAt1));
        assert!(matches!(
            zeta_real(2.0, 0.0),
            Err(DirserError::PrecisionUnreachable { .. })
        ));
    }

    #[test]
    fn continuation_values() {
        // ζ(1/2), ζ(-1) and the first non-trivial zero
        let half = zeta_real(0.5, 1e-13).unwrap();
        assert!((half + 1.4603545088095868).abs() < 1e-12);
        let minus_one = zeta_real(-1.0, 1e-13).unwrap();
        assert!((minus_one + 1.0 / 12.0).abs() < 1e-12);
        let rho = zeta(Complex64::new(0.5, 14.134725141734693), 1e-13).unwrap();
        assert!(rho.norm() < 1e-10, "{rho}");
        let z3 = zeta_real(3.0, 1e-15).unwrap();
        assert!((z3 - 1.2020569031595942).abs() < 1e-15);
    }

    #[test]
    fn complex_values_respect_conjugation() {
        let s = Complex64::new(1.3, 7.0);
        let a = zeta(s, 1e-13).unwrap();
        let b = zeta(s.conj(), 1e-13).unwrap();
        assert!((a - b.conj()).norm() < 1e-13);
    }
}
