//! `m`-fold Cartesian powers of a map with `n^a` orbits of length `n`.
//!
//! Fixed points multiply under products, so at prime powers
//! `O(p^k) = p^{-k} [S_{k+1}^m - S_k^m]` with `S_k = (q^k - 1)/(q - 1)`,
//! `q = p^{a+1}`, and the sequence is multiplicative. Summing the geometric
//! series gives the local factor
//!
//! E_p = (q-1)^{-m} Σ_{r=1}^{m} C(m,r) (-1)^{m-r} (q^r - 1) / (1 - p^{c_r} x),
//!
//! with `c_r = r(a+1) - 1` and `x = p^{-s}`, so that
//! `M_p = E_p · Π_r (1 - p^{c_r} x)` is a polynomial in `x` and `p`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::form::{euler_product, trim, DirichletForm, EulerFactor, PPoly, ZetaFactor};
use super::zeta::zeta_real;
use super::DirserError;
use crate::seqcore::{FactoredInteger, OrbitSeq, SeqTags};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MFoldSpec {
    /// Orbit growth exponent: the base map has `n^a` orbits of length `n`.
    pub a: u32,
    /// Number of Cartesian factors.
    pub m: u32,
}

impl MFoldSpec {
    pub fn new(a: u32, m: u32) -> Result<Self, DirserError> {
        if m == 0 {
            return Err(DirserError::InvalidParameter("need at least one Cartesian factor"));
        }
        Ok(Self { a, m })
    }

    /// Abscissa of convergence `m·a + m`.
    pub fn abscissa(&self) -> u32 {
        self.m * (self.a + 1)
    }

    /// Exponents `c_r = r(a+1) - 1` of the zeta shifts, `r = 1..=m`.
    pub fn shifts(&self) -> Vec<i64> {
        (1..=self.m)
            .map(|r| i64::from(r) * (i64::from(self.a) + 1) - 1)
            .collect()
    }

    pub fn base(&self) -> OrbitSeq {
        OrbitSeq::power(self.a)
    }
}

/// `O_{T×…×T}(p^k)`, exact.
pub fn ppower_orbit_count(spec: MFoldSpec, p: u64, k: u32) -> Result<BigUint, DirserError> {
    let f = FactoredInteger::new(p)?;
    if f.factors() != [(p, 1)] {
        return Err(DirserError::NotPrime(p));
    }
    if k == 0 {
        return Err(DirserError::InvalidParameter("prime power exponent must be at least 1"));
    }
    Ok(ppower_unchecked(spec, p, k)?)
}

fn ppower_unchecked(spec: MFoldSpec, p: u64, k: u32) -> Result<BigUint, DirserError> {
    let q = BigUint::from(p).pow(spec.a + 1);
    let qm1 = &q - 1u32;
    let s = |j: u32| (q.pow(j) - 1u32) / &qm1;
    let diff = s(k + 1).pow(spec.m) - s(k).pow(spec.m);
    let pk = BigUint::from(p).pow(k);
    let (quot, rem) = diff.div_rem(&pk);
    if !rem.is_zero() {
        return Err(DirserError::NonIntegral);
    }
    Ok(quot)
}

/// `O_{T×…×T}(n)` from the prime-power values and multiplicativity.
pub fn m_fold_orbit_count(spec: MFoldSpec, n: u64) -> Result<BigUint, DirserError> {
    let f = FactoredInteger::new(n)?;
    f.factors()
        .iter()
        .try_fold(BigUint::one(), |acc, &(p, k)| Ok(acc * ppower_unchecked(spec, p, k)?))
}

/// [`m_fold_orbit_count`] as a memoised sequence.
pub fn m_fold_orbit_seq(spec: MFoldSpec) -> OrbitSeq {
    let tags = SeqTags {
        multiplicative: true,
        finite_support: false,
        closed_form: Some("m-fold"),
    };
    OrbitSeq::from_fn(tags, move |n| {
        m_fold_orbit_count(spec, n).expect("prime-power counts are integral")
    })
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_assign(acc: &mut PPoly, b: &[BigInt]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), BigInt::zero());
    }
    for (x, y) in acc.iter_mut().zip(b) {
        *x += y;
    }
}

/// `p^e` as a polynomial in `p`.
fn monomial(e: u32, c: BigInt) -> PPoly {
    let mut v = vec![BigInt::zero(); e as usize + 1];
    v[e as usize] = c;
    v
}

/// Exact division by a monic polynomial; `None` if the remainder is non-zero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<PPoly> {
    let mut rem: PPoly = num.to_vec();
    trim(&mut rem);
    let d = den.len() - 1;
    debug_assert!(den[d].is_one());
    if rem.len() <= d {
        return rem.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (0..quot.len()).rev() {
        let c = rem[i + d].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// The polynomial local factor `M_p(x)` of the `m`-fold product.
pub fn m_fold_euler_factor(spec: MFoldSpec) -> Result<EulerFactor, DirserError> {
    let m = spec.m as usize;
    let e = spec.a + 1;
    let shifts = spec.shifts();
    // (q - 1)^m with q = p^e
    let q_minus_one = {
        let mut v = monomial(e, BigInt::one());
        v[0] -= 1;
        v
    };
    let mut denom: PPoly = vec![BigInt::one()];
    for _ in 0..m {
        denom = poly_mul(&denom, &q_minus_one);
    }

    // numerator: coefficient of x^i is a polynomial in p
    let mut numer: Vec<PPoly> = vec![Vec::new(); m];
    let mut binom = BigInt::one();
    for r in 1..=m {
        binom = binom * BigInt::from(m - r + 1) / BigInt::from(r);
        let sign = if (m - r) % 2 == 0 { 1 } else { -1 };
        // C(m,r)(-1)^{m-r}(q^r - 1)
        let mut lead = monomial(e * r as u32, &binom * sign);
        lead[0] -= &binom * sign;
        // Π_{j≠r} (1 - p^{c_j} x)
        let mut prod: Vec<PPoly> = vec![vec![BigInt::one()]];
        for (j, &c) in shifts.iter().enumerate() {
            if j + 1 == r {
                continue;
            }
            let mut next: Vec<PPoly> = vec![Vec::new(); prod.len() + 1];
            for (i, coef) in prod.iter().enumerate() {
                poly_add_assign(&mut next[i], coef);
                let shifted = poly_mul(coef, &monomial(c as u32, -BigInt::one()));
                poly_add_assign(&mut next[i + 1], &shifted);
            }
            prod = next;
        }
        for (i, coef) in prod.iter().enumerate() {
            poly_add_assign(&mut numer[i], &poly_mul(&lead, coef));
        }
    }

    let coeffs = numer
        .iter()
        .map(|c| poly_div_exact(c, &denom).ok_or(DirserError::NonIntegral))
        .collect::<Result<Vec<_>, _>>()?;
    EulerFactor::new(coeffs)
}

/// `Π_{r=1}^{m} ζ(s - c_r) · Π_p M_p(s)` with abscissa `m·a + m`.
pub fn m_fold_form(spec: MFoldSpec) -> Result<DirichletForm, DirserError> {
    Ok(DirichletForm {
        zeta_factors: spec
            .shifts()
            .into_iter()
            .map(|c| ZetaFactor::new(1, c, 1))
            .collect(),
        euler_factor: Some(m_fold_euler_factor(spec)?),
        abscissa: f64::from(spec.abscissa()),
    })
}

/// `C = Π_p M_p(m·a + m)` with its truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronConstant {
    pub value: f64,
    pub tail_bound: f64,
}

/// Euler product over the given primes at `s = m·a + m`; fails if the
/// tail bound is not below `precision`.
pub fn perron_constant(spec: MFoldSpec, primes: &[u64], precision: f64) -> Result<PerronConstant, DirserError> {
    let factor = m_fold_euler_factor(spec)?;
    if factor.is_one() {
        return Ok(PerronConstant {
            value: 1.0,
            tail_bound: 0.0,
        });
    }
    let s = Complex64::new(f64::from(spec.abscissa()), 0.0);
    let prod = euler_product(&factor, s, primes);
    if !(prod.tail_bound <= precision) {
        return Err(DirserError::PrecisionUnreachable {
            achieved: prod.tail_bound,
        });
    }
    Ok(PerronConstant {
        value: prod.value.re,
        tail_bound: prod.tail_bound,
    })
}

/// `π(N) ~ constant · N^exponent`, from the residue at the rightmost pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronAsymptote {
    pub constant: f64,
    pub exponent: u32,
    pub euler_constant: f64,
    /// Error bound on `constant` inherited from the Euler product truncation.
    pub error_bound: f64,
}

/// Residue of `d(s) N^s / s` at `s = m·a + m`:
/// `C · Π_{r<m} ζ(m(a+1) - c_r) / (m(a+1))`.
pub fn perron_asymptote(spec: MFoldSpec, primes: &[u64], precision: f64) -> Result<PerronAsymptote, DirserError> {
    let c = perron_constant(spec, primes, precision)?;
    let top = spec.abscissa();
    let shifts = spec.shifts();
    let mut zetas = 1.0;
    for &shift in &shifts[..shifts.len() - 1] {
        zetas *= zeta_real(f64::from(top) - shift as f64, 1e-15)?;
    }
    let scale = zetas / f64::from(top);
    Ok(PerronAsymptote {
        constant: c.value * scale,
        exponent: top,
        euler_constant: c.value,
        error_bound: c.tail_bound * scale,
    })
}
