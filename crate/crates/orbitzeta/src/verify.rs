//! The verification suite: twelve finite checks, each with its own
//! tolerance and time limit.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use orbitzeta_core::boundary::{accumulation_table, approach_boundary, triple_factor, zero_lattice, BoundaryError};
use orbitzeta_core::dirser::{
    m_fold_orbit_count, m_fold_orbit_seq, perron_asymptote, perron_constant, ramanujan_product_form,
    truncated_eval, zeta_functional_equation, FeigenbaumKind, MFoldSpec,
};
use orbitzeta_core::ghost::{continuation_eval, decompose, reconstruct, BivariatePoly};
use orbitzeta_core::ratzeta::{growth_rate_estimate, radius_product_check, RationalZeta, ZetaError};
use orbitzeta_core::seqcore::{
    fix_from_orbit, iterate_orbits, orbit_from_fix, pi_count, product_orbits, sparse_prime_orbit_seq,
};
use orbitzeta_core::{FixSeq, OrbitSeq, PrimeClass, Sieve};

pub const DEFAULT_SEED: u64 = 20_240_611;

/// Published value of `C_3`.
pub const PUBLISHED_C3: f64 = 2.835979;
/// Published `π_{T×T}(N) ~ (π²/12) N²` constant, which disagrees with the residue.
pub const PUBLISHED_SQUARE_CONSTANT: f64 = std::f64::consts::PI * std::f64::consts::PI / 12.0;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({:.2}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self, id: u8, title: &'static str, started: Instant, limit: Option<Duration>) -> CriterionResult {
        let elapsed = started.elapsed();
        let mut failures = self.failures;
        if let Some(limit) = limit {
            if elapsed > limit {
                failures.push(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        let mut detail = self.notes.join("; ");
        if !failures.is_empty() {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str("failed: ");
            detail.push_str(&failures.join("; "));
        }
        CriterionResult {
            id,
            title,
            passed: failures.is_empty(),
            detail,
            seconds: elapsed.as_secs_f64(),
        }
    }
}

fn fix_of(orbits: &OrbitSeq) -> FixSeq {
    let orbits = orbits.clone();
    FixSeq::from_fn(move |n| fix_from_orbit(&orbits, n).expect("n >= 1"))
}

fn random_list(rng: &mut ChaCha8Rng, len: usize, max: u32) -> OrbitSeq {
    OrbitSeq::from_list((0..len).map(|_| BigUint::from(rng.random_range(0..=max))).collect())
}

/// Built-in families plus one random list.
pub fn builtin_families(seed: u64) -> Vec<(String, OrbitSeq)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        ("power:0".into(), OrbitSeq::power(0)),
        ("power:1".into(), OrbitSeq::power(1)),
        ("power:2".into(), OrbitSeq::power(2)),
        ("feigenbaum".into(), OrbitSeq::feigenbaum()),
        ("identity".into(), OrbitSeq::identity()),
        ("full-shift:2".into(), OrbitSeq::full_shift(2).expect("two symbols")),
        (
            "sparse-even:2".into(),
            sparse_prime_orbit_seq(PrimeClass::EvenIndex, 2).expect("base 2"),
        ),
        (
            "sparse-odd:3".into(),
            sparse_prime_orbit_seq(PrimeClass::OddIndex, 3).expect("base 3"),
        ),
        ("list:random".into(), random_list(&mut rng, 10_000, 9)),
    ]
}

pub fn criterion_1(seed: u64) -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let families = builtin_families(seed);
    for (name, orbits) in &families {
        let fix = fix_of(orbits);
        let bad = (1..=10_000u64).find(|&n| orbit_from_fix(&fix, n).ok() != orbits.at(n).ok());
        check.require(bad.is_none(), format!("{name} differs at n = {}", bad.unwrap_or(0)));
    }
    check.note(format!("{} families, n ≤ 10^4", families.len()));
    check.finish(1, "Möbius round trip", started, Some(Duration::from_secs(5)))
}

pub fn criterion_2(seed: u64) -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
    for pair in 0..100 {
        let (x, y) = (random_list(&mut rng, 2000, 9), random_list(&mut rng, 2000, 9));
        let fixed = fix_of(&x).product(&fix_of(&y));
        let bad = (1..=2000u64).find(|&n| product_orbits(&x, &y, n).ok() != orbit_from_fix(&fixed, n).ok());
        check.require(bad.is_none(), format!("pair {pair} differs at n = {}", bad.unwrap_or(0)));
    }
    check.note("100 random pairs, n ≤ 2000");
    check.finish(2, "product orbit formula vs Möbius path", started, Some(Duration::from_secs(30)))
}

pub fn criterion_3() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    for a in 0..=1 {
        let base = OrbitSeq::power(a);
        let square = base.product(&base);
        let cube = square.product(&base);
        for (m, iterated) in [(2, &square), (3, &cube)] {
            let spec = MFoldSpec::new(a, m).expect("m ≥ 1");
            let bad = (1..=500u64).find(|&n| m_fold_orbit_count(spec, n).ok() != iterated.at(n).ok());
            check.require(bad.is_none(), format!("(a={a}, m={m}) differs at n = {}", bad.unwrap_or(0)));
        }
    }
    check.note("(a, m) ∈ {0,1}×{2,3}, n ≤ 500");
    check.finish(3, "m-fold prime-power formula", started, None)
}

pub fn criterion_4() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let ones = OrbitSeq::power(0);
    let s = Complex64::new(4.0, 0.0);
    let truncated = truncated_eval(&ones.product(&ones), s, 10_000, None);
    let closed = ramanujan_product_form(0, 0).eval(s, &[], 1e-15);
    match (truncated, closed) {
        (Ok(t), Ok(c)) => {
            let diff = (t.value - c.value).norm();
            check.note(format!("truncated {:.10}, closed form {:.10}, diff {diff:.2e}", t.value.re, c.value.re));
            check.require(diff < 1e-4, "difference ≥ 1e-4");
        }
        (t, c) => check.require(false, format!("{t:?} / {c:?}")),
    }
    check.finish(4, "product closed form at s = 4", started, None)
}

pub fn criterion_5() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let sieve = Sieve::new(1_000_000);
    let spec = MFoldSpec::new(0, 3).expect("m ≥ 1");
    match perron_constant(spec, sieve.primes(), 1e-5) {
        Ok(c) => {
            let diff = (c.value - PUBLISHED_C3).abs();
            check.note(format!(
                "C_3 = {:.8} ± {:.1e}, |C_3 - {PUBLISHED_C3}| = {diff:.1e}",
                c.value, c.tail_bound
            ));
            check.require(diff < 1e-5, "outside 1e-5");
        }
        Err(e) => check.require(false, format!("{e}")),
    }
    check.finish(5, "C_3 over primes ≤ 10^6", started, Some(Duration::from_secs(60)))
}

pub fn criterion_6() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let spec = MFoldSpec::new(0, 2).expect("m ≥ 1");
    let n = 100_000u64;
    let count = pi_count(&m_fold_orbit_seq(spec), n).expect("n ≥ 1");
    let ratio = count.to_f64().unwrap_or(f64::NAN) / (n as f64 * n as f64);
    let residue = 1.25;
    let rel = (ratio / residue - 1.0).abs();
    check.note(format!(
        "π(10^5)/10^10 = {ratio:.6}, residue constant {residue}, relative error {rel:.4}; published π²/12 = {:.6} is off by {:.1}%",
        PUBLISHED_SQUARE_CONSTANT,
        100.0 * (ratio / PUBLISHED_SQUARE_CONSTANT - 1.0).abs()
    ));
    check.require(rel <= 0.02, "outside 2%");
    let sieve = Sieve::new(100_000);
    match perron_asymptote(spec, sieve.primes(), 1e-4) {
        Ok(a) => check.require((a.constant - residue).abs() < 1e-4, format!("residue formula gives {}", a.constant)),
        Err(e) => check.require(false, format!("{e}")),
    }
    check.finish(6, "Perron asymptote for m = 2", started, None)
}

pub fn criterion_7() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let (_, holds) = zeta_functional_equation(128);
    check.require(holds, "ζ_T(z²) ≠ (1 - z)ζ_T(z) below degree 128");
    let base = OrbitSeq::feigenbaum();
    for k in [2u64, 3, 4, 6, 12] {
        let kind = FeigenbaumKind::Iterate(k);
        let bad = (1..=512u64).find(|&n| kind.coefficient(n).ok() != iterate_orbits(&base, k, n).ok());
        check.require(bad.is_none(), format!("iterate k={k} differs at n = {}", bad.unwrap_or(0)));
    }
    for j in 1..=16u32 {
        let n = 1u64 << j;
        let want = BigUint::from(3 * n - 2);
        let got = product_orbits(&base, &base, n).ok();
        let closed = FeigenbaumKind::Square.coefficient(n).ok();
        check.require(
            got.as_ref() == Some(&want) && closed.as_ref() == Some(&want),
            format!("square differs at 2^{j}"),
        );
    }
    check.note("functional equation to degree 128; iterates k ∈ {2,3,4,6,12}; square to 2^16");
    check.finish(7, "Feigenbaum closed forms", started, None)
}

pub fn criterion_8() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let f = BivariatePoly::triple_product();
    match decompose(&f, 12) {
        Ok(ledger) => {
            let rebuilt = reconstruct(&ledger, 12);
            check.require(rebuilt.as_ref().ok() == Some(&f.truncate(12)), "reconstruction differs mod x^13");
            check.require(ledger.support_holds(), "support n ≤ m violated");
            let expected = [((1, 0), -2), ((1, 1), -2), ((2, 0), 3), ((2, 1), 3), ((2, 2), 3)];
            let first: Vec<((u32, u32), i64)> = ledger
                .exponents
                .range(..(3, 0))
                .map(|(k, c)| (*k, c.to_i64().unwrap_or(i64::MAX)))
                .collect();
            check.require(first == expected, format!("first exponents {first:?}"));
            check.note(format!(
                "{} exponents, {} remainder terms",
                ledger.exponents.len(),
                ledger.remainder.len()
            ));
        }
        Err(e) => check.require(false, format!("{e}")),
    }
    check.finish(8, "ghost decomposition to order 12", started, None)
}

pub fn criterion_9() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let sieve = Sieve::new(100_000);
    let f = BivariatePoly::triple_product();
    for s in [3.5, 4.0, 5.0] {
        match continuation_eval(&f, Complex64::new(s, 0.0), 8, sieve.primes(), 1e-15) {
            Ok(r) => match r.direct {
                Some((direct, _)) => {
                    let diff = (r.value - direct).norm();
                    check.note(format!("s={s}: diff {diff:.1e}"));
                    check.require(diff < 1e-7, format!("s={s} differs by {diff:e}"));
                }
                None => check.require(false, format!("s={s}: no direct product")),
            },
            Err(e) => check.require(false, format!("s={s}: {e}")),
        }
    }
    check.finish(9, "continuation vs direct Euler product", started, None)
}

pub fn criterion_10() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let sieve = Sieve::new(100_000);
    let mut worst = 0.0f64;
    let mut emitted = 0usize;
    for &p in sieve.primes_up_to(10_000) {
        match zero_lattice(p, -10..=10) {
            Ok(zeros) => {
                for z in zeros {
                    worst = worst.max(triple_factor(p, z.s).norm());
                    check.require(z.s.re > 1.0, format!("Re(s) ≤ 1 at p={p}"));
                    emitted += 1;
                }
            }
            Err(e) => check.require(false, format!("{e}")),
        }
    }
    check.note(format!("{emitted} zeros, max residual {worst:.1e}"));
    check.require(worst < 1e-9, "residual ≥ 1e-9");

    let target = Complex64::new(1.0, 2.0);
    match approach_boundary(target, 0.05, sieve.primes()) {
        Ok(r) => check.note(format!("nearest zero p={} distance {:.4}", r.nearest.p, r.distance)),
        Err(BoundaryError::NotFoundInRange { distance, nearest }) => {
            let p = nearest.map(|z| z.p).unwrap_or(0);
            check.require(false, format!("nearest zero to 1+2i is at distance {distance:.4} (p={p}), not < 0.05"));
        }
        Err(e) => check.require(false, format!("{e}")),
    }
    let bounds = [100u64, 1000, 10_000, 100_000];
    match accumulation_table(target, sieve.primes(), &bounds) {
        Ok(rows) => {
            let d: Vec<f64> = rows.iter().map(|r| r.report.map_or(f64::INFINITY, |x| x.distance)).collect();
            check.note(format!("distances {d:.4?}"));
            check.require(d.windows(2).all(|w| w[1] <= w[0]), "distance increases with the prime bound");
        }
        Err(e) => check.require(false, format!("{e}")),
    }
    check.finish(10, "Euler factor zeros approach Re(s) = 1", started, None)
}

/// A realizable non-degenerate rational zeta function with integer parameters in `[-5, 6]`.
fn sample_zeta(rng: &mut ChaCha8Rng) -> RationalZeta {
    loop {
        let poles_len = rng.random_range(1..=2);
        let zeros_len = rng.random_range(0..=1);
        let mut draw = |count: usize| -> Vec<BigRational> {
            (0..count)
                .map(|_| {
                    let v: i64 = rng.random_range(-5..=5);
                    BigRational::from_integer((if v >= 0 { v + 1 } else { v }).into())
                })
                .collect()
        };
        let poles = draw(poles_len);
        let zeros = draw(zeros_len);
        let Ok(z) = RationalZeta::new(poles, zeros) else { continue };
        if z.poles().is_empty() || !z.is_nondegenerate(2) || z.check_realizable(30).is_err() {
            continue;
        }
        if z.radius().is_ok() {
            return z;
        }
    }
}

pub fn criterion_11(seed: u64) -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 11);
    let mut tested = 0;
    let mut attempts = 0;
    while tested < 50 && attempts < 10_000 {
        attempts += 1;
        let (a, b) = (sample_zeta(&mut rng), sample_zeta(&mut rng));
        if !a.product(&b).is_nondegenerate(2) {
            continue;
        }
        match radius_product_check(&a, &b) {
            Ok(report) => {
                check.require(report.equal, format!("{a:?} × {b:?}: {report:?}"));
                tested += 1;
            }
            Err(e) => check.require(false, format!("{a:?} × {b:?}: {e}")),
        }
    }
    check.require(tested == 50, format!("only {tested} pairs sampled"));
    for (x, y) in [(2u64, 3u64), (2, 2), (5, 7), (1, 4)] {
        let ok = match (RationalZeta::full_shift(x), RationalZeta::full_shift(y)) {
            (Ok(a), Ok(b)) => radius_product_check(&a, &b)
                .map(|r| r.equal && r.product == BigRational::new(1.into(), (x * y).into()))
                .unwrap_or(false),
            _ => false,
        };
        check.require(ok, format!("full shifts {x}, {y}"));
    }
    check.note(format!("{tested} random pairs, 4 full-shift pairs"));
    check.finish(11, "radius product law", started, None)
}

pub fn criterion_12() -> CriterionResult {
    let started = Instant::now();
    let mut check = Check::new();
    let first = sparse_prime_orbit_seq(PrimeClass::EvenIndex, 2).expect("base 2").fix();
    let second = sparse_prime_orbit_seq(PrimeClass::OddIndex, 3).expect("base 3").fix();
    let both = first.product(&second);
    let estimates: Result<Vec<_>, ZetaError> = [&first, &second, &both]
        .into_iter()
        .map(|f| growth_rate_estimate(f, 2000))
        .collect();
    match estimates {
        Ok(e) => {
            check.note(format!(
                "max F^(1/n): first {:.4} (n={}), second {:.4} (n={}), product {:.4} (n={})",
                e[0].max_root, e[0].argmax, e[1].max_root, e[1].argmax, e[2].max_root, e[2].argmax
            ));
            check.require(e[2].max_root < 6.0, "product maximum ≥ 6");
            check.require(e[0].max_root > 1.9, "first maximum ≤ 1.9");
            check.require(e[1].max_root > 2.9, "second maximum ≤ 2.9");
        }
        Err(e) => check.require(false, format!("{e}")),
    }
    check.finish(12, "growth of a product of sparse maps", started, None)
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_1(seed),
        criterion_2(seed),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(seed),
        criterion_12(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_zetas_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let z = sample_zeta(&mut rng);
            assert!(z.check_realizable(30).is_ok() && z.is_nondegenerate(2));
        }
    }

    #[test]
    fn builtin_families_are_deterministic() {
        let a = builtin_families(5);
        let b = builtin_families(5);
        let (x, y) = (&a.last().unwrap().1, &b.last().unwrap().1);
        assert!((1..=100).all(|n| x.at(n) == y.at(n)));
    }
}
