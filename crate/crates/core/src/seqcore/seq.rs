//! Lazily evaluated, memoised orbit-count and fixed-point-count sequences.
//!
//! Both sequence types are cheap handles (`Rc`) around an evaluation rule and
//! a memo table. The memo sits behind a `RefCell`, so a sequence stays on the
//! thread that built it; build one per thread for parallel scans.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::factor::{FactoredInteger, Sieve};
use super::ops;
use super::SeqError;

/// Parity class of a prime's position in the ordered list `2, 3, 5, 7, …`
/// (so 2 is odd-index, 3 is even-index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeClass {
    EvenIndex,
    OddIndex,
}

impl PrimeClass {
    pub fn contains_index(self, index: usize) -> bool {
        match self {
            PrimeClass::EvenIndex => index % 2 == 0,
            PrimeClass::OddIndex => index % 2 == 1,
        }
    }
}

/// Structural facts about a sequence that callers may exploit or spot-check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeqTags {
    pub multiplicative: bool,
    pub finite_support: bool,
    pub closed_form: Option<&'static str>,
}

type Rule = Box<dyn Fn(u64) -> BigUint>;

enum OrbitRule {
    Power(u32),
    Feigenbaum,
    Identity,
    FullShift(BigUint),
    SparsePrime {
        class: PrimeClass,
        base: BigUint,
        sieve: RefCell<Sieve>,
    },
    List(Vec<BigUint>),
    Product(OrbitSeq, OrbitSeq),
    Iterate(OrbitSeq, u64),
    Custom(Rule),
}

struct OrbitInner {
    rule: OrbitRule,
    tags: SeqTags,
    memo: RefCell<BTreeMap<u64, BigUint>>,
}

/// Orbit counts `n ↦ O(n)`: the number of closed orbits of length `n`.
#[derive(Clone)]
pub struct OrbitSeq(Rc<OrbitInner>);

impl OrbitSeq {
    fn from_rule(rule: OrbitRule, tags: SeqTags) -> Self {
        Self(Rc::new(OrbitInner {
            rule,
            tags,
            memo: RefCell::new(BTreeMap::new()),
        }))
    }

    /// `O(n) = n^a`; `a = 0` is the map with one orbit of each length.
    pub fn power(a: u32) -> Self {
        Self::from_rule(
            OrbitRule::Power(a),
            SeqTags {
                multiplicative: true,
                finite_support: false,
                closed_form: Some("power"),
            },
        )
    }

    /// One orbit of each length `2^k`, as for the quadratic map at the
    /// Feigenbaum parameter.
    pub fn feigenbaum() -> Self {
        Self::from_rule(
            OrbitRule::Feigenbaum,
            SeqTags {
                multiplicative: true,
                finite_support: false,
                closed_form: Some("feigenbaum"),
            },
        )
    }

    /// A single fixed point and nothing else: `O(n) = [n = 1]`.
    pub fn identity() -> Self {
        Self::from_rule(
            OrbitRule::Identity,
            SeqTags {
                multiplicative: true,
                finite_support: true,
                closed_form: Some("identity"),
            },
        )
    }

    /// Full shift on `symbols` symbols: `F(n) = symbols^n`, `O(n)` the
    /// number of primitive necklaces.
    pub fn full_shift(symbols: u64) -> Result<Self, SeqError> {
        if symbols == 0 {
            return Err(SeqError::InvalidParameter("full shift needs at least one symbol"));
        }
        Ok(Self::from_rule(
            OrbitRule::FullShift(BigUint::from(symbols)),
            SeqTags {
                multiplicative: false,
                finite_support: symbols == 1,
                closed_form: Some("full-shift"),
            },
        ))
    }

    /// `O(n) = base^n` on primes of the given index class, zero elsewhere.
    pub(crate) fn sparse_prime(class: PrimeClass, base: u64) -> Self {
        Self::from_rule(
            OrbitRule::SparsePrime {
                class,
                base: BigUint::from(base),
                sieve: RefCell::new(Sieve::new(1024)),
            },
            SeqTags {
                multiplicative: false,
                finite_support: false,
                closed_form: Some("sparse-prime"),
            },
        )
    }

    /// `O(n) = values[n-1]`, zero past the end of the list.
    pub fn from_list(values: Vec<BigUint>) -> Self {
        Self::from_rule(
            OrbitRule::List(values),
            SeqTags {
                multiplicative: false,
                finite_support: true,
                closed_form: None,
            },
        )
    }

    pub fn from_fn(tags: SeqTags, rule: impl Fn(u64) -> BigUint + 'static) -> Self {
        Self::from_rule(OrbitRule::Custom(Box::new(rule)), tags)
    }

    /// Orbit counts of the Cartesian product of the two maps.
    pub fn product(&self, other: &OrbitSeq) -> Self {
        let tags = SeqTags {
            multiplicative: self.tags().multiplicative && other.tags().multiplicative,
            finite_support: self.tags().finite_support && other.tags().finite_support,
            closed_form: None,
        };
        Self::from_rule(OrbitRule::Product(self.clone(), other.clone()), tags)
    }

    /// Orbit counts of the `m`-th iterate.
    pub fn iterate(&self, m: u64) -> Result<Self, SeqError> {
        if m == 0 {
            return Err(SeqError::ZeroIndex);
        }
        let tags = SeqTags {
            multiplicative: false,
            finite_support: self.tags().finite_support,
            closed_form: None,
        };
        Ok(Self::from_rule(OrbitRule::Iterate(self.clone(), m), tags))
    }

    pub fn tags(&self) -> &SeqTags {
        &self.0.tags
    }

    /// `O(n)` for `n >= 1`.
    pub fn at(&self, n: u64) -> Result<BigUint, SeqError> {
        if n == 0 {
            return Err(SeqError::ZeroIndex);
        }
        Ok(self.eval(n))
    }

    pub(crate) fn eval(&self, n: u64) -> BigUint {
        debug_assert!(n >= 1);
        if let Some(v) = self.0.memo.borrow().get(&n) {
            return v.clone();
        }
        let v = self.compute(n);
        self.0.memo.borrow_mut().insert(n, v.clone());
        v
    }

    fn compute(&self, n: u64) -> BigUint {
        match &self.0.rule {
            OrbitRule::Power(a) => BigUint::from(n).pow(*a),
            OrbitRule::Feigenbaum => {
                if n.is_power_of_two() {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            }
            OrbitRule::Identity => {
                if n == 1 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            }
            OrbitRule::FullShift(symbols) => {
                let symbols = symbols.clone();
                let fix = FixSeq::from_fn(move |k| symbols.pow(k as u32));
                ops::orbit_from_fix(&fix, n).expect("necklace counts are realizable")
            }
            OrbitRule::SparsePrime { class, base, sieve } => {
                if sieve.borrow().bound() < n {
                    let bound = n.max(2 * sieve.borrow().bound());
                    *sieve.borrow_mut() = Sieve::new(bound);
                }
                match sieve.borrow().prime_index(n) {
                    Some(i) if class.contains_index(i) => base.pow(n as u32),
                    _ => BigUint::zero(),
                }
            }
            OrbitRule::List(values) => values
                .get((n - 1) as usize)
                .cloned()
                .unwrap_or_default(),
            OrbitRule::Product(a, b) => ops::product_orbits(a, b, n).expect("n >= 1"),
            OrbitRule::Iterate(base, m) => ops::iterate_orbits(base, *m, n).expect("n >= 1"),
            OrbitRule::Custom(rule) => rule(n),
        }
    }

    /// The fixed-point counts `F(n) = Σ_{d|n} d·O(d)` as a sequence.
    pub fn fix(&self) -> FixSeq {
        FixSeq::from_rule(FixRule::FromOrbit(self.clone()))
    }

    /// Spot-check `O(mn) = O(m)O(n)` over coprime pairs with `m, n <= limit`.
    pub fn check_multiplicative(&self, limit: u64) -> Result<(), (u64, u64)> {
        for m in 2..=limit {
            for n in (m + 1)..=limit {
                if num_integer::gcd(m, n) == 1 && self.eval(m * n) != self.eval(m) * self.eval(n) {
                    return Err((m, n));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrbitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrbitSeq").field("tags", self.tags()).finish_non_exhaustive()
    }
}

enum FixRule {
    FromOrbit(OrbitSeq),
    Product(FixSeq, FixSeq),
    Iterate(FixSeq, u64),
    Custom(Rule),
}

struct FixInner {
    rule: FixRule,
    memo: RefCell<BTreeMap<u64, BigUint>>,
}

/// Fixed-point counts `n ↦ F(n)`: the number of points fixed by the `n`-th iterate.
#[derive(Clone)]
pub struct FixSeq(Rc<FixInner>);

impl FixSeq {
    fn from_rule(rule: FixRule) -> Self {
        Self(Rc::new(FixInner {
            rule,
            memo: RefCell::new(BTreeMap::new()),
        }))
    }

    pub fn from_fn(rule: impl Fn(u64) -> BigUint + 'static) -> Self {
        Self::from_rule(FixRule::Custom(Box::new(rule)))
    }

    /// `F(n) = base^n`.
    pub fn geometric(base: u64) -> Self {
        let base = BigUint::from(base);
        Self::from_fn(move |n| base.pow(n as u32))
    }

    /// `F(n) = σ_a(n)`, the fixed-point counts of `O(n) = n^{a-1}`.
    pub fn sigma(a: u32) -> Self {
        Self::from_fn(move |n| FactoredInteger::new(n).expect("n >= 1").sigma(a))
    }

    /// Pointwise product: fixed points of the Cartesian product.
    pub fn product(&self, other: &FixSeq) -> Self {
        Self::from_rule(FixRule::Product(self.clone(), other.clone()))
    }

    /// `n ↦ F(kn)`: fixed points of the `k`-th iterate.
    pub fn iterate(&self, k: u64) -> Result<Self, SeqError> {
        if k == 0 {
            return Err(SeqError::ZeroIndex);
        }
        Ok(Self::from_rule(FixRule::Iterate(self.clone(), k)))
    }

    pub fn at(&self, n: u64) -> Result<BigUint, SeqError> {
        if n == 0 {
            return Err(SeqError::ZeroIndex);
        }
        Ok(self.eval(n))
    }

    pub(crate) fn eval(&self, n: u64) -> BigUint {
        debug_assert!(n >= 1);
        if let Some(v) = self.0.memo.borrow().get(&n) {
            return v.clone();
        }
        let v = match &self.0.rule {
            FixRule::FromOrbit(o) => ops::fix_from_orbit(o, n).expect("n >= 1"),
            FixRule::Product(a, b) => a.eval(n) * b.eval(n),
            FixRule::Iterate(base, k) => base.eval(k * n),
            FixRule::Custom(rule) => rule(n),
        };
        self.0.memo.borrow_mut().insert(n, v.clone());
        v
    }

    /// Möbius-inverted orbit counts as a sequence. Evaluation panics if the
    /// counts turn out not to be realizable; use [`ops::orbit_from_fix`] to
    /// get the error instead.
    pub fn orbits(&self) -> OrbitSeq {
        let fix = self.clone();
        OrbitSeq::from_fn(SeqTags::default(), move |n| {
            ops::orbit_from_fix(&fix, n).expect("realizable fixed-point counts")
        })
    }

    /// Check `n | Σ_{d|n} μ(n/d) F(d)` with a non-negative quotient for all `n <= limit`.
    pub fn check_realizable(&self, limit: u64) -> Result<(), SeqError> {
        (1..=limit).try_for_each(|n| ops::orbit_from_fix(self, n).map(drop))
    }
}

impl fmt::Debug for FixSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FixSeq").finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn builtin_values() {
        let f = OrbitSeq::feigenbaum();
        let got: Vec<_> = (1..=9).map(|n| f.at(n).unwrap()).collect();
        assert_eq!(got, [1u64, 1, 0, 1, 0, 0, 0, 1, 0].map(big));
        assert_eq!(OrbitSeq::power(2).at(7).unwrap(), big(49));
        assert_eq!(OrbitSeq::identity().at(1).unwrap(), big(1));
        assert_eq!(OrbitSeq::identity().at(5).unwrap(), big(0));
        // binary necklaces: 2, 1, 2, 3, 6, 9
        let shift = OrbitSeq::full_shift(2).unwrap();
        let got: Vec<_> = (1..=6).map(|n| shift.at(n).unwrap()).collect();
        assert_eq!(got, [2u64, 1, 2, 3, 6, 9].map(big));
    }

    #[test]
    fn list_is_zero_past_the_end() {
        let s = OrbitSeq::from_list(vec![big(3), big(1)]);
        assert_eq!(s.at(2).unwrap(), big(1));
        assert_eq!(s.at(3).unwrap(), big(0));
        assert!(s.tags().finite_support);
    }

    #[test]
    fn zero_index_rejected() {
        assert_eq!(OrbitSeq::power(0).at(0), Err(SeqError::ZeroIndex));
        assert_eq!(FixSeq::geometric(2).at(0), Err(SeqError::ZeroIndex));
        assert!(OrbitSeq::power(0).iterate(0).is_err());
        assert!(FixSeq::geometric(2).iterate(0).is_err());
    }

    #[test]
    fn sparse_prime_grows_its_sieve() {
        let s = OrbitSeq::sparse_prime(PrimeClass::EvenIndex, 2);
        // p_2 = 3, p_4 = 7, p_1000 = 7919 (even index)
        assert_eq!(s.at(3).unwrap(), big(8));
        assert_eq!(s.at(7).unwrap(), big(128));
        assert_eq!(s.at(5).unwrap(), big(0));
        assert_eq!(s.at(7919).unwrap(), BigUint::from(2u32).pow(7919));
    }

    #[test]
    fn multiplicative_tag_spot_check() {
        assert!(OrbitSeq::power(1).check_multiplicative(40).is_ok());
        assert!(OrbitSeq::feigenbaum().check_multiplicative(40).is_ok());
        assert_eq!(OrbitSeq::full_shift(2).unwrap().check_multiplicative(40), Err((2, 3)));
    }

    #[test]
    fn memo_is_shared_between_clones() {
        let s = OrbitSeq::power(3);
        let t = s.clone();
        s.at(10).unwrap();
        assert!(t.0.memo.borrow().contains_key(&10));
    }
}
