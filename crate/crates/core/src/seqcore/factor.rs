//! Prime factorisations and the arithmetic functions read off them.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::SeqError;

/// A positive integer together with its prime factorisation.
///
/// Factors are stored with strictly increasing primes and exponents `>= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// Factor `n` by trial division.
    pub fn new(n: u64) -> Result<Self, SeqError> {
        if n == 0 {
            return Err(SeqError::ZeroIndex);
        }
        let mut factors = Vec::new();
        let mut rest = n;
        for p in [2u64, 3, 5] {
            push_power(&mut rest, p, &mut factors);
        }
        // 2·3·5 wheel
        const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
        let mut d = 7u64;
        let mut i = 0;
        while d.saturating_mul(d) <= rest {
            push_power(&mut rest, d, &mut factors);
            d += STEPS[i];
            i = (i + 1) % STEPS.len();
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self { value: n, factors })
    }

    /// Build from an explicit factor list. Primes must be strictly increasing
    /// and exponents positive; primality of the entries is the caller's claim.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self, SeqError> {
        let mut value = 1u64;
        let mut last = 1u64;
        for &(p, a) in &factors {
            if p <= last || a == 0 {
                return Err(SeqError::InvalidParameter("factor list must have increasing primes and positive exponents"));
            }
            last = p;
            let pa = p.checked_pow(a).ok_or(SeqError::Overflow)?;
            value = value.checked_mul(pa).ok_or(SeqError::Overflow)?;
        }
        Ok(Self { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// μ(n).
    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, a)| a > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// σ_a(n) = Σ_{d|n} d^a.
    pub fn sigma(&self, a: u32) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, &(p, e)| {
            let pa = BigUint::from(p).pow(a);
            let mut term = BigUint::one();
            let mut local = BigUint::one();
            for _ in 0..e {
                term *= &pa;
                local += &term;
            }
            acc * local
        })
    }

    /// Exponent of `p` in n (zero when `p` does not divide n).
    pub fn ord(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, a)| a)
    }

    /// `1/|n|_2 = 2^{ord_2(n)}`.
    pub fn two_adic_inverse(&self) -> u64 {
        1u64 << self.ord(2)
    }

    /// `|n|_2` as a float.
    pub fn two_adic_abs(&self) -> f64 {
        1.0 / self.two_adic_inverse() as f64
    }

    /// D(n), the set of prime divisors, in increasing order.
    pub fn prime_support(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    /// `p_J^{a_J}`: the part of n supported on the primes in `subset`.
    /// Primes outside D(n) contribute nothing.
    pub fn restricted_product(&self, subset: &[u64]) -> u64 {
        self.factors
            .iter()
            .filter(|(p, _)| subset.contains(p))
            .map(|&(p, a)| p.pow(a))
            .product()
    }

    /// All divisors of n in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, a) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..a {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn num_divisors(&self) -> u64 {
        self.factors.iter().map(|&(_, a)| u64::from(a) + 1).product()
    }
}

fn push_power(rest: &mut u64, p: u64, factors: &mut Vec<(u64, u32)>) {
    if *rest % p != 0 {
        return;
    }
    let mut a = 0;
    while *rest % p == 0 {
        *rest /= p;
        a += 1;
    }
    factors.push((p, a));
}

/// Prime table from a sieve of Eratosthenes, reused for prime iteration and
/// for fast factorisation of integers up to the square of its bound.
#[derive(Debug, Clone)]
pub struct Sieve {
    bound: u64,
    primes: Vec<u64>,
}

impl Sieve {
    pub const DEFAULT_BOUND: u64 = 1_000_000;

    pub fn new(bound: u64) -> Self {
        let n = bound as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        Self { bound, primes }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `<= limit` (clipped to the sieve bound).
    pub fn primes_up_to(&self, limit: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= limit);
        &self.primes[..end]
    }

    pub fn is_prime(&self, n: u64) -> Option<bool> {
        (n <= self.bound).then(|| self.primes.binary_search(&n).is_ok())
    }

    /// 1-based index of `p` in the ordered list of primes, if `p` is a prime
    /// within the sieve bound.
    pub fn prime_index(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    /// Factor `n` by trial division over the cached primes, falling back to
    /// plain trial division when `n` exceeds the square of the bound.
    pub fn factor(&self, n: u64) -> Result<FactoredInteger, SeqError> {
        if n == 0 {
            return Err(SeqError::ZeroIndex);
        }
        if self.bound.saturating_mul(self.bound) < n {
            return FactoredInteger::new(n);
        }
        let mut rest = n;
        let mut factors = Vec::new();
        for &p in &self.primes {
            if p * p > rest {
                break;
            }
            push_power(&mut rest, p, &mut factors);
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(FactoredInteger { value: n, factors })
    }
}

impl Default for Sieve {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BOUND)
    }
}

/// Brute-force `σ_a` used as a cross-check in tests and callers that already
/// hold a divisor list.
pub fn sigma_from_divisors(divisors: &[u64], a: u32) -> BigUint {
    divisors
        .iter()
        .map(|&d| BigUint::from(d).pow(a))
        .fold(BigUint::zero(), |acc, x| acc + x)
}
