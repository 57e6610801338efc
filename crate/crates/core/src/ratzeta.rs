//! Rational dynamical zeta functions given by their reciprocal zeros and poles.
//!
//! A rational zeta function `ζ(z) = Π(1 - α_i z) / Π(1 - β_j z)` has
//! fixed-point counts `F(n) = Σ β_j^n - Σ α_i^n`. The radius of convergence
//! is `1/max|β_j|` for non-degenerate realizable data, and the product of two
//! maps has zeros `α·β'`, `α'·β` and poles `α·α'`, `β·β'`, so radii multiply.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bigfloat::ln_biguint;
use crate::seqcore::{FactoredInteger, FixSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("zero/pole parameters must be non-zero")]
    ZeroParameter,
    #[error("not realizable: fixed-point or orbit count at n = {n} is negative or non-integral")]
    NotRealizable { n: u64 },
    #[error("degenerate: a ratio of distinct parameters is a root of unity")]
    DegenerateInput,
    #[error("largest zero parameter exceeds largest pole parameter in modulus")]
    LemmaViolated,
    #[error("no poles: the radius of convergence is infinite")]
    EmptyPoles,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Radius of convergence of a rational zeta function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Radius {
    Finite(BigRational),
    /// No poles left after cancellation.
    Infinite,
}

impl Radius {
    pub fn to_f64(&self) -> f64 {
        match self {
            Radius::Finite(r) => num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN),
            Radius::Infinite => f64::INFINITY,
        }
    }
}

/// Zeta function `Π(1 - α_i z) / Π(1 - β_j z)` with exact rational parameters.
///
/// Coinciding zero/pole pairs are cancelled on construction and both
/// multisets are kept sorted, so equal functions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalZeta {
    zeros: Vec<BigRational>,
    poles: Vec<BigRational>,
}

impl RationalZeta {
    pub fn new(poles: Vec<BigRational>, zeros: Vec<BigRational>) -> Result<Self, ZetaError> {
        if poles.iter().chain(&zeros).any(Zero::is_zero) {
            return Err(ZetaError::ZeroParameter);
        }
        let mut poles = poles;
        let mut zeros = zeros;
        poles.sort();
        zeros.sort();
        // sorted multiset difference
        let (mut p, mut z) = (Vec::new(), Vec::new());
        let (mut i, mut j) = (0, 0);
        while i < poles.len() && j < zeros.len() {
            match poles[i].cmp(&zeros[j]) {
                Ordering::Less => {
                    p.push(poles[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    z.push(zeros[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        p.extend_from_slice(&poles[i..]);
        z.extend_from_slice(&zeros[j..]);
        Ok(Self { zeros: z, poles: p })
    }

    pub fn from_integers(poles: &[i64], zeros: &[i64]) -> Result<Self, ZetaError> {
        let conv = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        Self::new(conv(poles), conv(zeros))
    }

    /// `ζ(z) = 1/(1 - a z)`.
    pub fn full_shift(symbols: u64) -> Result<Self, ZetaError> {
        if symbols == 0 {
            return Err(ZetaError::ZeroParameter);
        }
        Ok(Self {
            zeros: Vec::new(),
            poles: alloc::vec![BigRational::from_integer(symbols.into())],
        })
    }

    /// `ζ(z) = 1/(1 - z)`: one fixed point.
    pub fn identity() -> Self {
        Self {
            zeros: Vec::new(),
            poles: alloc::vec![BigRational::one()],
        }
    }

    pub fn zeros(&self) -> &[BigRational] {
        &self.zeros
    }

    pub fn poles(&self) -> &[BigRational] {
        &self.poles
    }

    /// `Σ β^n - Σ α^n` with no realizability check.
    pub fn fix_signed(&self, n: u64) -> BigRational {
        let pow = |x: &BigRational| num_traits::pow::pow(x.clone(), n as usize);
        let poles: BigRational = self.poles.iter().map(pow).sum();
        let zeros: BigRational = self.zeros.iter().map(pow).sum();
        poles - zeros
    }

    /// Fixed-point count `F(n)`, failing when it is negative or fractional.
    pub fn fix(&self, n: u64) -> Result<BigUint, ZetaError> {
        if n == 0 {
            return Err(ZetaError::InvalidParameter("n must be at least 1"));
        }
        let v = self.fix_signed(n);
        if !v.is_integer() || v.is_negative() {
            return Err(ZetaError::NotRealizable { n });
        }
        Ok(v.to_integer().into_parts().1)
    }

    /// Check that `F(n)` and the Möbius-inverted orbit counts are
    /// non-negative integers for every `n <= prefix`.
    pub fn check_realizable(&self, prefix: u64) -> Result<(), ZetaError> {
        let fix: Vec<BigInt> = (1..=prefix)
            .map(|n| self.fix(n).map(BigInt::from))
            .collect::<Result<_, _>>()?;
        for n in 1..=prefix {
            let f = FactoredInteger::new(n).expect("n >= 1");
            let sum: BigInt = f
                .divisors()
                .into_iter()
                .map(|d| {
                    let mu = FactoredInteger::new(n / d).expect("divisor").mobius();
                    &fix[(d - 1) as usize] * i32::from(mu)
                })
                .sum();
            if sum.is_negative() || !(sum % BigInt::from(n)).is_zero() {
                return Err(ZetaError::NotRealizable { n });
            }
        }
        Ok(())
    }

    /// True iff no ratio of two distinct parameters is a root of unity of
    /// order `<= order_bound`. For rationals the only candidate is `-1`.
    pub fn is_nondegenerate(&self, order_bound: u32) -> bool {
        if order_bound < 2 {
            return true;
        }
        let all: Vec<&BigRational> = self.poles.iter().chain(&self.zeros).collect();
        !all.iter().any(|a| all.iter().any(|b| **a == -(*b).clone()))
    }

    fn max_modulus(values: &[BigRational]) -> Option<BigRational> {
        values.iter().map(|v| v.abs()).max()
    }

    /// `1/max|β|`, after checking non-degeneracy and that the poles dominate the zeros.
    pub fn radius(&self) -> Result<Radius, ZetaError> {
        if !self.is_nondegenerate(2) {
            return Err(ZetaError::DegenerateInput);
        }
        let top_zero = Self::max_modulus(&self.zeros);
        let Some(top_pole) = Self::max_modulus(&self.poles) else {
            return if top_zero.is_some() {
                Err(ZetaError::LemmaViolated)
            } else {
                Ok(Radius::Infinite)
            };
        };
        if top_zero.is_some_and(|z| z > top_pole) {
            return Err(ZetaError::LemmaViolated);
        }
        Ok(Radius::Finite(top_pole.recip()))
    }

    /// Zeta function of the Cartesian product of the two maps.
    pub fn product(&self, other: &RationalZeta) -> RationalZeta {
        let cross = |xs: &[BigRational], ys: &[BigRational]| -> Vec<BigRational> {
            xs.iter().flat_map(|x| ys.iter().map(move |y| x * y)).collect()
        };
        let mut zeros = cross(&self.zeros, &other.poles);
        zeros.extend(cross(&other.zeros, &self.poles));
        let mut poles = cross(&self.zeros, &other.zeros);
        poles.extend(cross(&self.poles, &other.poles));
        Self::new(poles, zeros).expect("products of non-zero parameters are non-zero")
    }

    /// Zeta function of the `k`-th iterate: every parameter raised to the `k`-th power.
    pub fn iterate(&self, k: u32) -> RationalZeta {
        let pow = |v: &[BigRational]| v.iter().map(|x| num_traits::pow::pow(x.clone(), k as usize)).collect();
        Self::new(pow(&self.poles), pow(&self.zeros)).expect("non-zero parameters")
    }
}

/// Outcome of comparing `ρ(ζ1 × ζ2)` with `ρ(ζ1)·ρ(ζ2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusReport {
    pub first: BigRational,
    pub second: BigRational,
    pub product: BigRational,
    pub equal: bool,
}

pub fn radius_product_check(
    first: &RationalZeta,
    second: &RationalZeta,
) -> Result<RadiusReport, ZetaError> {
    let finite = |r: Radius| match r {
        Radius::Finite(r) => Ok(r),
        Radius::Infinite => Err(ZetaError::EmptyPoles),
    };
    let r1 = finite(first.radius()?)?;
    let r2 = finite(second.radius()?)?;
    let r12 = finite(first.product(second).radius()?)?;
    let equal = r12 == &r1 * &r2;
    Ok(RadiusReport {
        first: r1,
        second: r2,
        product: r12,
        equal,
    })
}

/// Floating-point counterpart of [`RationalZeta`] for complex parameters.
///
/// Root-of-unity detection here is only up to a stated order bound and a
/// tolerance; it is meant for experiments, not as a decision procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexZeta {
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub tolerance: f64,
}

impl ComplexZeta {
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;

    pub fn new(poles: Vec<Complex64>, zeros: Vec<Complex64>) -> Result<Self, ZetaError> {
        if poles.iter().chain(&zeros).any(|z| z.norm() == 0.0) {
            return Err(ZetaError::ZeroParameter);
        }
        Ok(Self {
            zeros,
            poles,
            tolerance: Self::DEFAULT_TOLERANCE,
        })
    }

    /// `Σ β^n - Σ α^n`; errors when the value is not (numerically) a
    /// non-negative real.
    pub fn fix(&self, n: u64) -> Result<f64, ZetaError> {
        let sum = |v: &[Complex64]| v.iter().map(|x| x.powu(n as u32)).sum::<Complex64>();
        let v = sum(&self.poles) - sum(&self.zeros);
        let scale = self
            .poles
            .iter()
            .chain(&self.zeros)
            .map(|x| x.norm().powi(n as i32))
            .fold(1.0, f64::max);
        if v.im.abs() > self.tolerance * scale || v.re < -self.tolerance * scale {
            return Err(ZetaError::NotRealizable { n });
        }
        Ok(v.re)
    }

    pub fn is_nondegenerate(&self, order_bound: u32) -> bool {
        let all: Vec<Complex64> = self.poles.iter().chain(&self.zeros).copied().collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                let scale = a.norm().max(b.norm());
                if (a - b).norm() <= self.tolerance * scale {
                    continue;
                }
                let r = a / b;
                if (r.norm() - 1.0).abs() > self.tolerance {
                    continue;
                }
                if (1..=order_bound).any(|k| (r.powu(k) - 1.0).norm() <= self.tolerance * f64::from(k)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn radius(&self, order_bound: u32) -> Result<f64, ZetaError> {
        if !self.is_nondegenerate(order_bound) {
            return Err(ZetaError::DegenerateInput);
        }
        let top = |v: &[Complex64]| v.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let (tz, tp) = (top(&self.zeros), top(&self.poles));
        if tz > tp * (1.0 + self.tolerance) {
            return Err(ZetaError::LemmaViolated);
        }
        Ok(if tp == 0.0 { f64::INFINITY } else { 1.0 / tp })
    }
}

/// Largest `F(n)^{1/n}` over a finite range, and where it occurs.
///
/// A finite-range witness for `limsup F(n)^{1/n}`, not a bound on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthEstimate {
    pub max_root: f64,
    pub argmax: u64,
}

pub fn growth_rate_estimate(fix: &FixSeq, limit: u64) -> Result<GrowthEstimate, ZetaError> {
    if limit < 2 {
        return Err(ZetaError::InvalidParameter("growth estimate needs N >= 2"));
    }
    growth_rate_window(fix, 1..=limit)
}

/// [`growth_rate_estimate`] restricted to `n` in `window`.
pub fn growth_rate_window(fix: &FixSeq, window: RangeInclusive<u64>) -> Result<GrowthEstimate, ZetaError> {
    if *window.start() == 0 {
        return Err(ZetaError::InvalidParameter("window must start at n >= 1"));
    }
    let mut best = GrowthEstimate {
        max_root: 0.0,
        argmax: *window.start(),
    };
    for n in window {
        let v = fix.at(n).expect("n >= 1");
        if v.is_zero() {
            continue;
        }
        let root = libm::exp(ln_biguint(&v) / n as f64);
        if root > best.max_root {
            best = GrowthEstimate { max_root: root, argmax: n };
        }
    }
    Ok(best)
}
