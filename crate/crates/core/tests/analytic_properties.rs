use num_bigint::BigInt;
use num_complex::Complex64;
use orbitzeta_core::boundary::{alpha_roots, triple_factor, zero_lattice};
use orbitzeta_core::dirser::{
    m_fold_form, m_fold_orbit_count, ppower_orbit_count, zeta, zeta_real, MFoldSpec,
};
use orbitzeta_core::ghost::{decompose, reconstruct, BivariatePoly};
use orbitzeta_core::seqcore::product_orbits;
use orbitzeta_core::{OrbitSeq, Sieve};
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u64> {
    let primes = Sieve::new(20_000).primes().to_vec();
    prop::sample::select(primes)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_conjugate_symmetry(re in -3.0f64..6.0, im in 0.5f64..30.0) {
        let s = Complex64::new(re, im);
        let a = zeta(s, 1e-12).unwrap();
        let b = zeta(s.conj(), 1e-12).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-11);
    }

    #[test]
    fn zeta_matches_euler_product(s in 2.0f64..8.0) {
        // Π_{p ≤ 10^4} (1 - p^{-s})^{-1} within the prime tail
        let primes = Sieve::new(10_000);
        let prod: f64 = primes.primes().iter().map(|&p| 1.0 / (1.0 - (p as f64).powf(-s))).product();
        let z = zeta_real(s, 1e-14).unwrap();
        prop_assert!(z >= prod - 1e-12);
        prop_assert!(z - prod < 2.0 * 10_000f64.powf(1.0 - s));
    }

    #[test]
    fn ppower_matches_products(a in 0u32..3, p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..4) {
        let base = OrbitSeq::power(a);
        let n = p.pow(k);
        let square = ppower_orbit_count(MFoldSpec::new(a, 2).unwrap(), p, k).unwrap();
        prop_assert_eq!(square, product_orbits(&base, &base, n).unwrap());
        let cube = ppower_orbit_count(MFoldSpec::new(a, 3).unwrap(), p, k).unwrap();
        prop_assert_eq!(cube, base.product(&base).product(&base).at(n).unwrap());
    }

    #[test]
    fn m_fold_form_coefficients(a in 0u32..3, m in 1u32..5) {
        let spec = MFoldSpec::new(a, m).unwrap();
        let form = m_fold_form(spec).unwrap();
        prop_assert_eq!(form.abscissa, f64::from(m * a + m));
        let coeffs = form.coefficients(120);
        for n in 1..=120u64 {
            prop_assert_eq!(&coeffs[n as usize], &BigInt::from(m_fold_orbit_count(spec, n).unwrap()));
        }
    }

    #[test]
    fn boundary_zeros(p in small_prime(), k in -10i64..=10) {
        let (plus, minus) = alpha_roots(p).unwrap();
        let pf = p as f64;
        prop_assert!((plus * minus - 1.0 / pf).abs() < 1e-12);
        prop_assert!((plus + minus + (2.0 * pf + 2.0) / pf).abs() < 1e-12);
        let zero = zero_lattice(p, k..=k).unwrap()[0];
        prop_assert!(triple_factor(p, zero.s).norm() < 1e-9);
        prop_assert!(zero.s.re > 1.0);
        let im = (2 * k + 1) as f64 * std::f64::consts::PI / pf.ln();
        prop_assert!((zero.s.im - im).abs() < 1e-12);
    }

    #[test]
    fn ghost_round_trip(
        terms in prop::collection::btree_map((1u32..5, 0u32..5), -3i64..4, 0..6),
        order in 1u32..7,
    ) {
        // keep n ≤ m so the support property applies
        let f = BivariatePoly::from_terms(
            std::iter::once(((0, 0), 1i64))
                .chain(terms.into_iter().filter(|&((m, n), _)| n <= m)),
        );
        let ledger = decompose(&f, order).unwrap();
        prop_assert_eq!(reconstruct(&ledger, order).unwrap(), f.truncate(order));
        prop_assert!(ledger.support_holds());
    }
}

#[test]
fn perron_ratio_near_one() {
    use orbitzeta_core::dirser::{m_fold_orbit_seq, perron_asymptote};
    use orbitzeta_core::seqcore::pi_count;
    use num_traits::ToPrimitive;
    let primes = Sieve::new(100_000);
    for (m, n) in [(2u32, 100_000u64), (3, 3000)] {
        let spec = MFoldSpec::new(0, m).unwrap();
        let c = perron_asymptote(spec, primes.primes(), 1e-4).unwrap();
        let count = pi_count(&m_fold_orbit_seq(spec), n).unwrap().to_f64().unwrap();
        let ratio = count / (c.constant * (n as f64).powi(m as i32));
        assert!((ratio - 1.0).abs() <= 0.02, "m={m}: {ratio}");
    }
}

#[test]
fn square_forms_agree_numerically() {
    use orbitzeta_core::dirser::ramanujan_product_form;
    let primes = Sieve::new(100_000);
    let s = Complex64::new(4.0, 0.0);
    let a = m_fold_form(MFoldSpec::new(0, 2).unwrap()).unwrap().eval(s, primes.primes(), 1e-15).unwrap();
    let b = ramanujan_product_form(0, 0).eval(s, &[], 1e-15).unwrap();
    assert!((a.value - b.value).norm() < 1e-8);
}
