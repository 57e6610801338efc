use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use orbitzeta_core::ratzeta::{radius_product_check, RationalZeta, ZetaError};
use orbitzeta_core::seqcore::{
    fix_from_orbit, iterate_fix, iterate_orbits, orbit_from_fix, product_fix, product_orbits,
};
use orbitzeta_core::{FixSeq, OrbitSeq};
use proptest::prelude::*;

fn list(values: &[u8]) -> OrbitSeq {
    OrbitSeq::from_list(values.iter().map(|&v| BigUint::from(v)).collect())
}

fn fix_of(orbits: &OrbitSeq) -> FixSeq {
    let orbits = orbits.clone();
    FixSeq::from_fn(move |n| fix_from_orbit(&orbits, n).unwrap())
}

fn rational_zeta(poles: &[(i64, i64)], zeros: &[(i64, i64)]) -> Option<RationalZeta> {
    let conv = |v: &[(i64, i64)]| -> Vec<BigRational> {
        v.iter()
            .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect()
    };
    RationalZeta::new(conv(poles), conv(zeros)).ok()
}

fn param() -> impl Strategy<Value = (i64, i64)> {
    // rationals in [-5, 6]
    (1i64..=4).prop_flat_map(|den| ((-5 * den)..=(6 * den), Just(den)))
}

fn integer_param() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..=6).prop_map(|a| (a, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_round_trip(values in prop::collection::vec(0u8..10, 1..120)) {
        let orbits = list(&values);
        let fix = fix_of(&orbits);
        for n in 1..=values.len() as u64 + 20 {
            prop_assert_eq!(orbit_from_fix(&fix, n).unwrap(), orbits.at(n).unwrap());
        }
    }

    #[test]
    fn product_matches_mobius_path(
        a in prop::collection::vec(0u8..10, 1..60),
        b in prop::collection::vec(0u8..10, 1..60),
    ) {
        let (x, y) = (list(&a), list(&b));
        let fx = fix_of(&x).product(&fix_of(&y));
        for n in 1..=240u64 {
            prop_assert_eq!(product_orbits(&x, &y, n).unwrap(), orbit_from_fix(&fx, n).unwrap());
            prop_assert_eq!(fx.at(n).unwrap(), product_fix(&fix_of(&x), &fix_of(&y), n).unwrap());
        }
    }

    #[test]
    fn iterate_matches_mobius_path(values in prop::collection::vec(0u8..10, 1..40), m in 1u64..=36) {
        let orbits = list(&values);
        let iterated = fix_of(&orbits).iterate(m).unwrap();
        for n in 1..=120u64 {
            let direct = iterate_orbits(&orbits, m, n).unwrap();
            prop_assert_eq!(&direct, &orbit_from_fix(&iterated, n).unwrap());
            prop_assert_eq!(iterated.at(n).unwrap(), iterate_fix(&fix_of(&orbits), m, n).unwrap());
        }
    }

    #[test]
    fn power_products_are_multiplicative(a in 0u32..3, b in 0u32..3, m in 1u64..300, n in 1u64..300) {
        prop_assume!(m.gcd(&n) == 1);
        let (x, y) = (OrbitSeq::power(a), OrbitSeq::power(b));
        let p = |k| product_orbits(&x, &y, k).unwrap();
        prop_assert_eq!(p(m * n), p(m) * p(n));
    }

    #[test]
    fn rational_fix_is_multiplicative_under_products(
        p1 in prop::collection::vec(param(), 0..3),
        z1 in prop::collection::vec(param(), 0..3),
        p2 in prop::collection::vec(param(), 0..3),
        z2 in prop::collection::vec(param(), 0..3),
    ) {
        let (Some(a), Some(b)) = (rational_zeta(&p1, &z1), rational_zeta(&p2, &z2)) else {
            return Ok(());
        };
        let prod = a.product(&b);
        for n in 1..=100 {
            prop_assert_eq!(prod.fix_signed(n), a.fix_signed(n) * b.fix_signed(n));
        }
    }

    #[test]
    fn radius_product_law(
        p1 in prop::collection::vec(integer_param(), 1..3),
        z1 in prop::collection::vec(integer_param(), 0..2),
        p2 in prop::collection::vec(integer_param(), 1..3),
        z2 in prop::collection::vec(integer_param(), 0..2),
    ) {
        let (Some(a), Some(b)) = (rational_zeta(&p1, &z1), rational_zeta(&p2, &z2)) else {
            return Ok(());
        };
        prop_assume!(a.check_realizable(24).is_ok() && b.check_realizable(24).is_ok());
        prop_assume!(a.is_nondegenerate(2) && b.is_nondegenerate(2));
        // realizable non-degenerate instances never violate the pole dominance lemma
        prop_assert!(a.radius().is_ok() && b.radius().is_ok());
        match radius_product_check(&a, &b) {
            Ok(report) => prop_assert!(report.equal, "{:?}", report),
            Err(ZetaError::EmptyPoles) | Err(ZetaError::DegenerateInput) => {}
            Err(e) => prop_assert!(false, "{:?}", e),
        }
    }
}

#[test]
fn lemma_violation_is_reported() {
    let bad = RationalZeta::from_integers(&[2], &[5]).unwrap();
    assert_eq!(bad.radius(), Err(ZetaError::LemmaViolated));
}

#[test]
fn built_in_families_round_trip() {
    let families = [
        OrbitSeq::power(0),
        OrbitSeq::power(2),
        OrbitSeq::feigenbaum(),
        OrbitSeq::identity(),
        OrbitSeq::full_shift(3).unwrap(),
    ];
    for orbits in families {
        let fix = fix_of(&orbits);
        for n in 1..=600 {
            assert_eq!(orbit_from_fix(&fix, n).unwrap(), orbits.at(n).unwrap());
        }
    }
}
