use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Natural logarithm of a big unsigned integer; `-inf` for zero.
///
/// Values beyond the `f64` range are handled by shifting off low bits first.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// Natural logarithm of `|q|`.
pub fn ln_rational(q: &BigRational) -> f64 {
    ln_biguint(q.numer().magnitude()) - ln_biguint(q.denom().magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ln_of_huge_power_of_two() {
        let x = BigUint::one() << 5000u32;
        let got = ln_biguint(&x);
        assert!((got - 5000.0 * core::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn ln_of_small_values() {
        assert!((ln_biguint(&BigUint::from(7u32)) - libm::log(7.0)).abs() < 1e-15);
        assert_eq!(ln_biguint(&BigUint::from(0u32)), f64::NEG_INFINITY);
    }
}
