//! Symbolic Dirichlet series `Π ζ(m·s - t)^e · Π_p h(p^{-s}, p)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::zeta::zeta;
use super::DirserError;
use crate::seqcore::{FactoredInteger, OrbitSeq};

/// One factor `ζ(scale·s - shift)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZetaFactor {
    pub scale: u32,
    pub shift: i64,
    pub exponent: i32,
}

impl ZetaFactor {
    pub fn new(scale: u32, shift: i64, exponent: i32) -> Self {
        Self { scale, shift, exponent }
    }

    /// Real part of `s` beyond which the factor's Dirichlet series converges.
    pub fn abscissa(&self) -> f64 {
        (self.shift as f64 + 1.0) / f64::from(self.scale)
    }
}

/// Polynomial in `p` with integer coefficients, lowest degree first.
pub type PPoly = Vec<BigInt>;

/// Local factor `h(x, p) = Σ_i P_i(p) x^i` with `P_0 = 1`, evaluated at `x = p^{-s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactor {
    coeffs: Vec<PPoly>,
}

impl EulerFactor {
    pub fn new(coeffs: Vec<PPoly>) -> Result<Self, DirserError> {
        let mut coeffs = coeffs;
        for c in &mut coeffs {
            trim(c);
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        if coeffs.first() != Some(&vec![BigInt::one()]) {
            return Err(DirserError::InvalidParameter("Euler factor must have constant term 1"));
        }
        Ok(Self { coeffs })
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![vec![BigInt::one()]],
        }
    }

    /// `coeffs()[i][j]` is the coefficient of `x^i p^j`.
    pub fn coeffs(&self) -> &[PPoly] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Integer coefficient of `x^i` at a given prime.
    pub fn coefficient_at(&self, i: usize, p: u64) -> BigInt {
        let Some(poly) = self.coeffs.get(i) else {
            return BigInt::zero();
        };
        let p = BigInt::from(p);
        poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * &p + c)
    }

    /// `h(p^{-s}, p)`, computed monomial by monomial as `c·p^{j - i·s}` so
    /// large powers of `p` never appear on their own.
    pub fn eval(&self, p: u64, s: Complex64) -> Complex64 {
        let lp = libm::log(p as f64);
        let mut total = Complex64::new(1.0, 0.0);
        for (i, poly) in self.coeffs.iter().enumerate().skip(1) {
            for (j, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let c = c.to_f64().unwrap_or(f64::NAN);
                total += ((Complex64::new(j as f64, 0.0) - s * i as f64) * lp).exp() * c;
            }
        }
        total
    }

    /// Bound on `Σ_{p > bound} |h(p^{-s}, p) - 1|`, using `π(x) < 1.2551 x / log x`
    /// to compare each monomial with `∫ x^{-d} / log x`; infinite when some
    /// monomial is not summable.
    pub fn tail_sum_bound(&self, sigma: f64, bound: u64) -> f64 {
        let edge = (bound as f64).max(2.0);
        let mut total = 0.0;
        for (i, poly) in self.coeffs.iter().enumerate().skip(1) {
            for (j, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let decay = i as f64 * sigma - j as f64;
                if decay <= 1.0 {
                    return f64::INFINITY;
                }
                total += c.abs().to_f64().unwrap_or(f64::INFINITY) * prime_tail(decay, edge);
            }
        }
        total
    }

    /// Largest `(j + 1)/i` over monomials `x^i p^j`: the product over primes
    /// converges absolutely to the right of this.
    pub fn abscissa(&self) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for (i, poly) in self.coeffs.iter().enumerate().skip(1) {
            for (j, c) in poly.iter().enumerate() {
                if !c.is_zero() {
                    worst = worst.max((j as f64 + 1.0) / i as f64);
                }
            }
        }
        worst
    }
}

/// Upper bound for `Σ_{p > edge} p^{-d}`, `d > 1`.
pub(crate) fn prime_tail(d: f64, edge: f64) -> f64 {
    1.2551 * d / ((d - 1.0) * libm::log(edge)) * libm::pow(edge, 1.0 - d)
}

pub(crate) fn trim(p: &mut PPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Finite Euler product with a multiplicative tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerProduct {
    pub value: Complex64,
    /// Bound on `|value_∞ - value|`.
    pub tail_bound: f64,
}

/// `Π_{p ∈ primes} h(p^{-s}, p)`, plus a bound for the primes beyond the last one.
pub fn euler_product(factor: &EulerFactor, s: Complex64, primes: &[u64]) -> EulerProduct {
    let mut value = Complex64::new(1.0, 0.0);
    for &p in primes {
        value *= factor.eval(p, s);
    }
    let last = primes.last().copied().unwrap_or(1);
    let tail = factor.tail_sum_bound(s.re, last);
    // |log h| <= 2|h - 1| once |h - 1| <= 1/2
    let tail_bound = if tail <= 0.5 {
        value.norm() * (libm::exp(2.0 * tail) - 1.0)
    } else {
        f64::INFINITY
    };
    EulerProduct { value, tail_bound }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormValue {
    pub value: Complex64,
    /// Bound from truncating the Euler product (zeta factors are evaluated to `precision`).
    pub tail_bound: f64,
}

/// A Dirichlet series written as a product of shifted zeta factors and an
/// Euler product of a polynomial family.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletForm {
    pub zeta_factors: Vec<ZetaFactor>,
    pub euler_factor: Option<EulerFactor>,
    pub abscissa: f64,
}

impl DirichletForm {
    pub fn zeta_part(&self, s: Complex64, precision: f64) -> Result<Complex64, DirserError> {
        let mut total = Complex64::new(1.0, 0.0);
        for f in &self.zeta_factors {
            let z = zeta(s * f64::from(f.scale) - f.shift as f64, precision)?;
            total *= z.powi(f.exponent);
        }
        Ok(total)
    }

    pub fn eval(&self, s: Complex64, primes: &[u64], precision: f64) -> Result<FormValue, DirserError> {
        let zeta_part = self.zeta_part(s, precision)?;
        let euler = match &self.euler_factor {
            Some(f) if !f.is_one() => euler_product(f, s, primes),
            _ => EulerProduct {
                value: Complex64::new(1.0, 0.0),
                tail_bound: 0.0,
            },
        };
        Ok(FormValue {
            value: zeta_part * euler.value,
            tail_bound: zeta_part.norm() * euler.tail_bound,
        })
    }

    /// Dirichlet coefficients `a(1..=limit)` obtained by expanding every
    /// factor and convolving; index 0 is unused.
    pub fn coefficients(&self, limit: usize) -> Vec<BigInt> {
        let mut acc = unit(limit);
        for f in &self.zeta_factors {
            let base = zeta_factor_series(f.scale, f.shift, f.exponent.is_negative(), limit);
            for _ in 0..f.exponent.unsigned_abs() {
                acc = convolve(&acc, &base);
            }
        }
        if let Some(h) = &self.euler_factor {
            acc = convolve(&acc, &euler_factor_series(h, limit));
        }
        acc
    }
}

fn unit(limit: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); limit + 1];
    if limit >= 1 {
        v[1] = BigInt::one();
    }
    v
}

/// Coefficients of `ζ(scale·s - shift)` (or its reciprocal): `k^shift` at `n = k^scale`.
fn zeta_factor_series(scale: u32, shift: i64, inverse: bool, limit: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); limit + 1];
    let mut k = 1u64;
    loop {
        let Some(n) = k.checked_pow(scale) else { break };
        if n as usize > limit {
            break;
        }
        let weight = if inverse {
            BigInt::from(FactoredInteger::new(k).expect("k >= 1").mobius())
        } else {
            BigInt::one()
        };
        // shifts are non-negative for every form built here
        v[n as usize] = weight * BigInt::from(k).pow(shift.unsigned_abs() as u32);
        k += 1;
    }
    v
}

/// Coefficients of `Π_p h(p^{-s}, p)`: multiplicative with `a(p^i) = P_i(p)`.
fn euler_factor_series(h: &EulerFactor, limit: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); limit + 1];
    for n in 1..=limit {
        let f = FactoredInteger::new(n as u64).expect("n >= 1");
        v[n] = f
            .factors()
            .iter()
            .map(|&(p, a)| h.coefficient_at(a as usize, p))
            .fold(BigInt::one(), |x, y| x * y);
    }
    v
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let limit = a.len() - 1;
    let mut out = vec![BigInt::zero(); limit + 1];
    for i in 1..=limit {
        if a[i].is_zero() {
            continue;
        }
        for j in 1..=limit / i {
            if !b[j].is_zero() {
                out[i * j] += &a[i] * &b[j];
            }
        }
    }
    out
}

/// `ζ(s-a)ζ(s-b)ζ(s-a-b-1)/ζ(2s-a-b)`: orbit Dirichlet series of the
/// product of maps with `n^a` and `n^b` orbits of length `n`.
pub fn ramanujan_product_form(a: u32, b: u32) -> DirichletForm {
    let (a, b) = (i64::from(a), i64::from(b));
    DirichletForm {
        zeta_factors: vec![
            ZetaFactor::new(1, a, 1),
            ZetaFactor::new(1, b, 1),
            ZetaFactor::new(1, a + b + 1, 1),
            ZetaFactor::new(2, a + b, -1),
        ],
        euler_factor: None,
        abscissa: (a + b + 2) as f64,
    }
}

/// Truncated orbit Dirichlet series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSum {
    pub value: Complex64,
    /// Present when a polynomial bound on the coefficients was supplied and
    /// the tail converges at `Re(s)`.
    pub tail_bound: Option<f64>,
}

/// `|O(n)| <= constant · n^degree` for all `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyGrowth {
    pub constant: f64,
    pub degree: f64,
}

/// `Σ_{n<=limit} O(n) n^{-s}` with an integral-comparison tail estimate.
pub fn truncated_eval(
    orbits: &OrbitSeq,
    s: Complex64,
    limit: u64,
    growth: Option<PolyGrowth>,
) -> Result<TruncatedSum, DirserError> {
    if limit == 0 {
        return Err(DirserError::InvalidParameter("truncation point must be at least 1"));
    }
    let mut value = Complex64::new(0.0, 0.0);
    for n in 1..=limit {
        let c = orbits.at(n)?;
        if c.is_zero() {
            continue;
        }
        let c = c.to_f64().unwrap_or(f64::INFINITY);
        value += (-s * libm::log(n as f64)).exp() * c;
    }
    let tail_bound = growth.and_then(|g| {
        let excess = s.re - g.degree - 1.0;
        (excess > 0.0).then(|| g.constant * libm::pow(limit as f64, -excess) / excess)
    });
    Ok(TruncatedSum { value, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirser::zeta::zeta_real;
    use crate::seqcore::{product_orbits, Sieve};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ramanujan_coefficients_match_product_orbits() {
        for (a, b) in [(0u32, 0u32), (1, 0), (1, 1), (2, 1)] {
            let form = ramanujan_product_form(a, b);
            let coeffs = form.coefficients(300);
            let (x, y) = (OrbitSeq::power(a), OrbitSeq::power(b));
            for n in 1..=300u64 {
                let want = BigInt::from(product_orbits(&x, &y, n).unwrap());
                assert_eq!(coeffs[n as usize], want, "a={a} b={b} n={n}");
            }
        }
    }

    #[test]
    fn ramanujan_abscissae() {
        assert_eq!(ramanujan_product_form(0, 0).abscissa, 2.0);
        assert_eq!(ramanujan_product_form(1, 0).abscissa, 3.0);
    }

    #[test]
    fn ramanujan_numeric_cross_check() {
        let form = ramanujan_product_form(0, 0);
        let closed = form.eval(c(4.0), &[], 1e-15).unwrap().value.re;
        assert!((closed - 1.40240).abs() < 1e-5, "{closed}");
        let ones = OrbitSeq::power(0);
        let square = ones.product(&ones);
        let sum = truncated_eval(&square, c(4.0), 10_000, None).unwrap();
        assert!((sum.value.re - closed).abs() < 1e-4);
    }

    #[test]
    fn truncated_examples() {
        let f = OrbitSeq::feigenbaum();
        let s = truncated_eval(&f, c(1.0), 1 << 20, None).unwrap();
        let want = 2.0 * (1.0 - libm::pow(2.0, -21.0));
        assert!((s.value.re - want).abs() < 1e-12);

        let ones = OrbitSeq::power(0);
        let growth = PolyGrowth { constant: 1.0, degree: 0.0 };
        let s = truncated_eval(&ones, c(4.0), 10_000, Some(growth)).unwrap();
        let z4 = zeta_real(4.0, 1e-15).unwrap();
        assert!((s.value.re - z4).abs() < 1e-6);
        assert!(s.tail_bound.unwrap() >= z4 - s.value.re);

        let id = OrbitSeq::identity();
        for sv in [0.5, 2.0, 10.0] {
            assert_eq!(truncated_eval(&id, c(sv), 50, None).unwrap().value, c(1.0));
        }
        // divergent tail: no bound
        assert!(truncated_eval(&ones, c(0.5), 10, Some(growth)).unwrap().tail_bound.is_none());
    }

    #[test]
    fn euler_factor_evaluation_and_tail() {
        // h = 1 + x: Π_p (1 + p^{-s}) = ζ(s)/ζ(2s)
        let h = EulerFactor::new(vec![vec![BigInt::one()], vec![BigInt::one()]]).unwrap();
        let primes = Sieve::new(100_000);
        let prod = euler_product(&h, c(3.0), primes.primes());
        let want = zeta_real(3.0, 1e-15).unwrap() / zeta_real(6.0, 1e-15).unwrap();
        assert!((prod.value.re - want).abs() <= prod.tail_bound + 1e-12);
        assert!(prod.tail_bound < 1e-9);
        assert_eq!(h.abscissa(), 1.0);
        assert!(EulerFactor::new(vec![vec![BigInt::from(2)]]).is_err());
    }

    #[test]
    fn coefficient_at_evaluates_p_polynomial() {
        // 1 + (2p + 2)x + p x^2
        let h = EulerFactor::new(vec![
            vec![BigInt::one()],
            vec![BigInt::from(2), BigInt::from(2)],
            vec![BigInt::zero(), BigInt::one()],
        ])
        .unwrap();
        assert_eq!(h.coefficient_at(1, 5), BigInt::from(12));
        assert_eq!(h.coefficient_at(2, 5), BigInt::from(5));
        assert_eq!(h.coefficient_at(3, 5), BigInt::zero());
    }
}
