//! Ghost decomposition `f(x, y) = Π (1 - x^m y^n)^{c(m,n)}` of an integer
//! polynomial with constant term 1, and the continuation of
//! `Π_p f(p^{-s}, p)` it yields:
//!
//! Π_p f(p^{-s}, p) = Π_{m≤M} ζ(ms - n)^{-c(m,n)} · Π_p f_M(p^{-s}, p),
//!
//! where `f_M = f / Π_{m≤M}(1 - x^m y^n)^{c(m,n)} = 1 + O(x^{M+1})`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::dirser::{euler_product, zeta, DirserError, EulerFactor};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GhostError {
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("term y^{n} without x cannot be absorbed")]
    PureYTerm { n: u32 },
    #[error("Re(s) must exceed {required} for the remainder product to converge")]
    OutsideRegion { required: f64 },
    #[error("pole: ζ({m}s - {n}) has its pole at this s")]
    PoleHit { m: u32, n: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Dirser(#[from] DirserError),
}

type Terms = BTreeMap<(u32, u32), BigInt>;

/// Integer polynomial in `x`, `y`, keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: Terms,
}

impl BivariatePoly {
    pub fn one() -> Self {
        Self::from_terms([((0, 0), 1)])
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::default();
        for (key, c) in terms {
            *out.terms.entry(key).or_default() += c.into();
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// `1 + 2x + 2xy + x²y`, the local factor of the triple product at `x = p^{-s}`, `y = p`.
    pub fn triple_product() -> Self {
        Self::from_terms([((0, 0), 1), ((1, 0), 2), ((1, 1), 2), ((2, 1), 1)])
    }

    pub fn coefficient(&self, m: u32, n: u32) -> BigInt {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Terms of x-degree at most `order`.
    pub fn truncate(&self, order: u32) -> Self {
        Self {
            terms: self.terms.range(..(order + 1, 0)).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn mul_truncated(&self, other: &Self, order: u32) -> Self {
        let mut terms = Terms::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in other.terms.range(..(order.saturating_sub(a) + 1, 0)) {
                if a + c <= order {
                    *terms.entry((a + c, b + d)).or_default() += x * y;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| x.powu(a) * y.powu(b) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

/// `(1 - x^m y^n)^c` up to x-degree `order`, by the generalised binomial series.
fn binomial_factor(m: u32, n: u32, c: &BigInt, order: u32) -> BivariatePoly {
    let mut terms = Terms::new();
    let mut coeff = BigInt::one();
    let mut j = 0u32;
    while j * m <= order {
        if coeff.is_zero() {
            break;
        }
        terms.insert((j * m, j * n), coeff.clone());
        // C(c, j+1)(-1)^{j+1} from C(c, j)(-1)^j
        coeff = -coeff * (c - BigInt::from(j)) / BigInt::from(j + 1);
        j += 1;
    }
    BivariatePoly { terms }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostLedger {
    /// Exponents are fixed for `m ≤ order`.
    pub order: u32,
    /// x-degree to which the remainder is tracked.
    pub margin: u32,
    pub exponents: BTreeMap<(u32, u32), BigInt>,
    /// `f - Π_{m≤order}(1 - x^m y^n)^{c(m,n)}` for `order < m ≤ margin`.
    pub remainder: BTreeMap<(u32, u32), BigInt>,
}

impl GhostLedger {
    pub fn exponent(&self, m: u32, n: u32) -> BigInt {
        self.exponents.get(&(m, n)).cloned().unwrap_or_default()
    }

    /// Whether every non-zero exponent and remainder term has `n ≤ m`.
    pub fn support_holds(&self) -> bool {
        self.exponents.keys().chain(self.remainder.keys()).all(|&(m, n)| n <= m)
    }

    /// `max (n + 1)/m` over remainder terms: `Π_p f_M(p^{-s}, p)` converges to its right.
    pub fn region_bound(&self) -> f64 {
        self.remainder
            .keys()
            .map(|&(m, n)| f64::from(n + 1) / f64::from(m))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Ledger of order `M` with the default margin `2M`.
pub fn decompose(f: &BivariatePoly, order: u32) -> Result<GhostLedger, GhostError> {
    decompose_with_margin(f, order, 2 * order)
}

pub fn decompose_with_margin(f: &BivariatePoly, order: u32, margin: u32) -> Result<GhostLedger, GhostError> {
    if order == 0 || margin < order {
        return Err(GhostError::InvalidParameter("need 1 ≤ order ≤ margin"));
    }
    if f.coefficient(0, 0) != BigInt::one() {
        return Err(GhostError::ConstantTermNotOne);
    }
    if let Some((&(_, n), _)) = f.terms.range((0, 1)..(1, 0)).next() {
        return Err(GhostError::PureYTerm { n });
    }
    let target = f.truncate(margin);
    let mut product = BivariatePoly::one();
    let mut exponents = BTreeMap::new();
    for m in 1..=order {
        // Multiplying by (1 - x^m y^n)^c moves only the (m, n) coefficient
        // among x-degree m, since the product has no pure y terms.
        let mut ys: Vec<u32> = target
            .terms
            .range((m, 0)..(m + 1, 0))
            .chain(product.terms.range((m, 0)..(m + 1, 0)))
            .map(|(&(_, n), _)| n)
            .collect();
        ys.sort_unstable();
        ys.dedup();
        for n in ys {
            let c = product.coefficient(m, n) - target.coefficient(m, n);
            if c.is_zero() {
                continue;
            }
            product = product.mul_truncated(&binomial_factor(m, n, &c, margin), margin);
            exponents.insert((m, n), c);
        }
    }
    let mut remainder = BTreeMap::new();
    for m in order + 1..=margin {
        let ys = target
            .terms
            .range((m, 0)..(m + 1, 0))
            .chain(product.terms.range((m, 0)..(m + 1, 0)))
            .map(|(&(_, n), _)| n);
        for n in ys {
            let e = target.coefficient(m, n) - product.coefficient(m, n);
            if !e.is_zero() {
                remainder.insert((m, n), e);
            }
        }
    }
    Ok(GhostLedger {
        order,
        margin,
        exponents,
        remainder,
    })
}

/// `Π_{m≤order} (1 - x^m y^n)^{c(m,n)}` expanded to x-degree `order`.
pub fn reconstruct(ledger: &GhostLedger, order: u32) -> Result<BivariatePoly, GhostError> {
    if order > ledger.order {
        return Err(GhostError::InvalidParameter("order exceeds the ledger's order"));
    }
    Ok(ledger
        .exponents
        .range(..(order + 1, 0))
        .fold(BivariatePoly::one(), |acc, (&(m, n), c)| {
            acc.mul_truncated(&binomial_factor(m, n, c, order), order)
        }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationValue {
    /// `Π ζ(ms - n)^{-c(m,n)} · Π_{p ≤ P} f_M(p^{-s}, p)`.
    pub value: Complex64,
    /// Bound from primes beyond the list in the `f_M` product, using its
    /// series to the ledger margin.
    pub tail_bound: f64,
    /// `Π_{p ≤ P} f(p^{-s}, p)` and its tail bound, where that product converges.
    pub direct: Option<(Complex64, f64)>,
}

fn exponent_i32(c: &BigInt) -> Result<i32, GhostError> {
    c.to_i32().ok_or(GhostError::InvalidParameter("exponent too large to evaluate"))
}

fn to_euler_factor(series: &BivariatePoly) -> Result<EulerFactor, GhostError> {
    let width = series.x_degree() as usize + 1;
    let mut coeffs = alloc::vec![Vec::new(); width];
    for (&(m, n), c) in series.terms() {
        let row = &mut coeffs[m as usize];
        if row.len() <= n as usize {
            row.resize(n as usize + 1, BigInt::zero());
        }
        row[n as usize] = c.clone();
    }
    Ok(EulerFactor::new(coeffs)?)
}

/// Continued value of `Π_p f(p^{-s}, p)` at `s`, using the ledger of order `M`.
pub fn continuation_eval(
    f: &BivariatePoly,
    s: Complex64,
    order: u32,
    primes: &[u64],
    precision: f64,
) -> Result<ContinuationValue, GhostError> {
    let ledger = decompose(f, order)?;
    let required = ledger.region_bound();
    if s.re <= required {
        return Err(GhostError::OutsideRegion { required });
    }
    let mut zeta_part = Complex64::new(1.0, 0.0);
    for (&(m, n), c) in &ledger.exponents {
        let arg = s * f64::from(m) - f64::from(n);
        if (arg - 1.0).norm() < 1e-12 {
            return Err(GhostError::PoleHit { m, n });
        }
        zeta_part *= zeta(arg, precision)?.powi(-exponent_i32(c)?);
    }

    // f_M as a series: f · Π (1 - x^m y^n)^{-c(m,n)} to the margin
    let margin = ledger.margin;
    let inverse = ledger
        .exponents
        .iter()
        .fold(BivariatePoly::one(), |acc, (&(m, n), c)| {
            acc.mul_truncated(&binomial_factor(m, n, &-c, margin), margin)
        });
    let f_m = f.mul_truncated(&inverse, margin);

    let mut local = Complex64::new(1.0, 0.0);
    for &p in primes {
        let pf = p as f64;
        let x = (-s * libm::log(pf)).exp();
        let y = Complex64::new(pf, 0.0);
        let mut q = f.eval(x, y);
        for (&(m, n), c) in &ledger.exponents {
            q *= (Complex64::new(1.0, 0.0) - x.powu(m) * y.powu(n)).powi(-exponent_i32(c)?);
        }
        local *= q;
    }
    let last = primes.last().copied().unwrap_or(1);
    let tail = to_euler_factor(&f_m)?.tail_sum_bound(s.re, last);
    let value = zeta_part * local;
    let tail_bound = if tail <= 0.5 {
        value.norm() * (libm::exp(2.0 * tail) - 1.0)
    } else {
        f64::INFINITY
    };

    let direct_factor = to_euler_factor(f)?;
    let direct = (s.re > direct_factor.abscissa()).then(|| {
        let prod = euler_product(&direct_factor, s, primes);
        (prod.value, prod.tail_bound)
    });
    Ok(ContinuationValue {
        value,
        tail_bound,
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::Sieve;

    fn key_values(ledger: &GhostLedger, max_m: u32) -> Vec<((u32, u32), i64)> {
        ledger
            .exponents
            .range(..(max_m + 1, 0))
            .map(|(k, c)| (*k, c.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn triple_product_first_exponents() {
        let ledger = decompose(&BivariatePoly::triple_product(), 2).unwrap();
        assert_eq!(
            key_values(&ledger, 2),
            [((1, 0), -2), ((1, 1), -2), ((2, 0), 3), ((2, 1), 3), ((2, 2), 3)]
        );
        assert!(ledger.support_holds());
    }

    #[test]
    fn product_form_inputs() {
        let f = BivariatePoly::from_terms([((0, 0), 1), ((1, 1), -1)]);
        let ledger = decompose(&f, 6).unwrap();
        assert_eq!(key_values(&ledger, 6), [((1, 1), 1)]);
        assert!(ledger.remainder.is_empty());

        // 1 + x = (1 - x²)/(1 - x) exactly, nothing beyond x-degree 2
        let g = BivariatePoly::from_terms([((0, 0), 1), ((1, 0), 1)]);
        let ledger = decompose(&g, 8).unwrap();
        assert_eq!(key_values(&ledger, 8), [((1, 0), -1), ((2, 0), 1)]);
        assert!(ledger.remainder.is_empty());
    }

    #[test]
    fn errors() {
        let bad = BivariatePoly::from_terms([((0, 0), 2), ((1, 0), 1)]);
        assert_eq!(decompose(&bad, 3), Err(GhostError::ConstantTermNotOne));
        let pure = BivariatePoly::from_terms([((0, 0), 1), ((0, 2), 1)]);
        assert_eq!(decompose(&pure, 3), Err(GhostError::PureYTerm { n: 2 }));
    }

    #[test]
    fn reconstruction() {
        let f = BivariatePoly::triple_product();
        let ledger = decompose(&f, 12).unwrap();
        assert_eq!(reconstruct(&ledger, 12).unwrap(), f.truncate(12));
        assert_eq!(reconstruct(&ledger, 2).unwrap(), f);
        let empty = decompose(&BivariatePoly::one(), 4).unwrap();
        assert_eq!(reconstruct(&empty, 4).unwrap(), BivariatePoly::one());
    }

    #[test]
    fn margin_does_not_change_exponents() {
        let f = BivariatePoly::triple_product();
        for order in 1..=12 {
            let base = decompose(&f, order).unwrap();
            assert!(base.support_holds(), "order {order}");
            for margin in [order, order + 3, 3 * order] {
                let other = decompose_with_margin(&f, order, margin).unwrap();
                assert_eq!(other.exponents, base.exponents);
            }
        }
    }

    #[test]
    fn continuation_matches_m_fold_factor() {
        use crate::dirser::{m_fold_form, MFoldSpec};
        let primes = Sieve::new(100_000);
        let form = m_fold_form(MFoldSpec::new(0, 3).unwrap()).unwrap();
        let f = BivariatePoly::triple_product();
        for s in [3.5, 4.0, 5.0] {
            let s = Complex64::new(s, 0.0);
            let r = continuation_eval(&f, s, 8, primes.primes(), 1e-15).unwrap();
            let full = form.eval(s, primes.primes(), 1e-15).unwrap().value;
            let zetas = form.zeta_part(s, 1e-15).unwrap();
            assert!((r.value - full / zetas).norm() < 1e-7);
        }
    }

    #[test]
    fn continuation_region_and_poles() {
        let primes = Sieve::new(1000);
        let f = BivariatePoly::triple_product();
        let err = continuation_eval(&f, Complex64::new(1.0, 0.0), 4, primes.primes(), 1e-12).unwrap_err();
        assert!(matches!(err, GhostError::OutsideRegion { .. }));
        // c(2,2) = 3 puts a pole at 2s - 2 = 1
        let err = continuation_eval(&f, Complex64::new(1.5, 0.0), 4, primes.primes(), 1e-12).unwrap_err();
        assert_eq!(err, GhostError::PoleHit { m: 2, n: 2 });
        // past the direct abscissa the continuation still evaluates
        let r = continuation_eval(&f, Complex64::new(1.5, 2.0), 12, primes.primes(), 1e-12).unwrap();
        assert!(r.value.norm().is_finite() && r.direct.is_none());
    }

    #[test]
    fn continuation_matches_direct_product() {
        let primes = Sieve::new(100_000);
        let f = BivariatePoly::triple_product();
        for s in [3.5, 4.0, 5.0] {
            let r = continuation_eval(&f, Complex64::new(s, 0.0), 8, primes.primes(), 1e-15).unwrap();
            let (direct, _) = r.direct.unwrap();
            assert!((r.value - direct).norm() < 1e-7, "s={s}: {} vs {direct}", r.value);
        }
        let one = continuation_eval(&BivariatePoly::one(), Complex64::new(0.7, 3.0), 4, primes.primes(), 1e-12)
            .unwrap();
        assert_eq!(one.value, Complex64::new(1.0, 0.0));
    }
}
