//! Transforms, products and iterates at the level of single values.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::FactoredInteger;
use super::seq::{FixSeq, OrbitSeq, PrimeClass};
use super::SeqError;

/// `F(n) = Σ_{d|n} d·O(d)`.
pub fn fix_from_orbit(orbits: &OrbitSeq, n: u64) -> Result<BigUint, SeqError> {
    let f = FactoredInteger::new(n)?;
    Ok(f.divisors()
        .into_iter()
        .map(|d| orbits.eval(d) * d)
        .fold(BigUint::zero(), |acc, x| acc + x))
}

/// `O(n) = (1/n) Σ_{d|n} μ(n/d) F(d)`, failing when the fixed-point counts
/// cannot come from a map.
pub fn orbit_from_fix(fix: &FixSeq, n: u64) -> Result<BigUint, SeqError> {
    let f = FactoredInteger::new(n)?;
    let mut sum = BigInt::zero();
    // μ(n/d) ≠ 0 only for n/d squarefree: walk subsets of the prime support.
    let primes = f.prime_support();
    for mask in 0u32..(1 << primes.len()) {
        let mut q = 1u64;
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                q *= p;
            }
        }
        let term = BigInt::from(fix.eval(n / q));
        if mask.count_ones() % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(n));
    if !rem.is_zero() {
        return Err(SeqError::NonIntegral { n });
    }
    match quot.into_parts() {
        (Sign::Minus, _) => Err(SeqError::Negative { n }),
        (_, mag) => Ok(mag),
    }
}

/// Orbit counts of a Cartesian product:
/// `Σ_{lcm(d1,d2)=n} gcd(d1,d2)·O1(d1)·O2(d2)` over ordered divisor pairs.
pub fn product_orbits(first: &OrbitSeq, second: &OrbitSeq, n: u64) -> Result<BigUint, SeqError> {
    let f = FactoredInteger::new(n)?;
    // For each prime p^a || n the pair of exponents (e1, e2) has max(e1, e2) = a.
    let local: Vec<Vec<(u64, u64, u64)>> = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let top = p.pow(a);
            let mut opts = Vec::with_capacity(2 * a as usize + 1);
            let mut pe = 1u64;
            for _ in 0..a {
                opts.push((top, pe, pe));
                opts.push((pe, top, pe));
                pe *= p;
            }
            opts.push((top, top, top));
            opts
        })
        .collect();

    let mut total = BigUint::zero();
    let mut idx = vec![0usize; local.len()];
    loop {
        let (mut d1, mut d2, mut g) = (1u64, 1u64, 1u64);
        for (opts, &i) in local.iter().zip(&idx) {
            let (x, y, z) = opts[i];
            d1 *= x;
            d2 *= y;
            g *= z;
        }
        let a = first.eval(d1);
        if !a.is_zero() {
            let b = second.eval(d2);
            if !b.is_zero() {
                total += a * b * g;
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(total);
            }
            idx[pos] += 1;
            if idx[pos] < local[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `F1(n)·F2(n)`.
pub fn product_fix(first: &FixSeq, second: &FixSeq, n: u64) -> Result<BigUint, SeqError> {
    Ok(first.at(n)? * second.at(n)?)
}

/// `F(k·n)`: fixed points of the `k`-th iterate.
pub fn iterate_fix(fix: &FixSeq, k: u64, n: u64) -> Result<BigUint, SeqError> {
    if k == 0 || n == 0 {
        return Err(SeqError::ZeroIndex);
    }
    fix.at(k.checked_mul(n).ok_or(SeqError::Overflow)?)
}

/// Orbit counts of the `m`-th iterate.
///
/// With `J` the primes of `m` not dividing `n`, this is
/// `Σ_{d | p_J^{a_J}} (m/d)·O(mn/d)`; when `J` is empty only `d = 1` contributes.
pub fn iterate_orbits(orbits: &OrbitSeq, m: u64, n: u64) -> Result<BigUint, SeqError> {
    if n == 0 {
        return Err(SeqError::ZeroIndex);
    }
    let fm = FactoredInteger::new(m)?;
    let mn = m.checked_mul(n).ok_or(SeqError::Overflow)?;
    let j: Vec<u64> = fm
        .prime_support()
        .into_iter()
        .filter(|p| n % p != 0)
        .collect();
    let pj = FactoredInteger::new(fm.restricted_product(&j))?;
    Ok(pj
        .divisors()
        .into_iter()
        .map(|d| orbits.eval(mn / d) * (m / d))
        .fold(BigUint::zero(), |acc, x| acc + x))
}

/// `π(N) = Σ_{n<=N} O(n)`, the number of closed orbits of length at most `N`.
pub fn pi_count(orbits: &OrbitSeq, limit: u64) -> Result<BigUint, SeqError> {
    if limit == 0 {
        return Err(SeqError::ZeroIndex);
    }
    Ok((1..=limit).fold(BigUint::zero(), |acc, n| acc + orbits.eval(n)))
}

/// `O(n) = base^n` when `n` is a prime of the given index class, zero otherwise.
pub fn sparse_prime_orbit_seq(class: PrimeClass, base: u64) -> Result<OrbitSeq, SeqError> {
    if base < 2 {
        return Err(SeqError::InvalidParameter("sparse prime sequences need base >= 2"));
    }
    Ok(OrbitSeq::sparse_prime(class, base))
}

/// Coefficients `z^0..=z^degree` of the product form
/// `ζ(z) = Π_{n>=1} (1 - z^n)^{-O(n)}`.
pub fn euler_transform_series(orbits: &OrbitSeq, degree: usize) -> Vec<BigUint> {
    let mut series = vec![BigUint::zero(); degree + 1];
    series[0] = BigUint::one();
    for len in 1..=degree {
        let count = orbits.eval(len as u64);
        if count.is_zero() {
            continue;
        }
        // (1 - z^len)^{-count} = Σ_j C(count + j - 1, j) z^{len·j}
        let mut binom = vec![BigUint::one()];
        for j in 1..=degree / len {
            let next = &binom[j - 1] * (&count + (j as u64 - 1)) / (j as u64);
            binom.push(next);
        }
        let mut next = vec![BigUint::zero(); degree + 1];
        for (i, c) in series.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in binom.iter().enumerate() {
                let k = i + j * len;
                if k > degree {
                    break;
                }
                next[k] += c * b;
            }
        }
        series = next;
    }
    series
}

/// Coefficients of `ζ(z) = exp Σ F(n) z^n / n` via `n·c_n = Σ_{k=1}^n F(k) c_{n-k}`.
pub fn zeta_series_from_fix(fix: &FixSeq, degree: usize) -> Result<Vec<BigUint>, SeqError> {
    let mut coeffs = vec![BigUint::one()];
    for n in 1..=degree {
        let mut acc = BigUint::zero();
        for k in 1..=n {
            acc += fix.eval(k as u64) * &coeffs[n - k];
        }
        let (q, r) = acc.div_rem(&BigUint::from(n));
        if !r.is_zero() {
            return Err(SeqError::NonIntegral { n: n as u64 });
        }
        coeffs.push(q);
    }
    Ok(coeffs)
}
