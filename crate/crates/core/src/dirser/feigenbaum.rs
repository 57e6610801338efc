//! Closed forms for the Feigenbaum map: one orbit of each length `2^j`.
//!
//! d_T(s)      = 1/(1 - 2^{-s})
//! d_{T^k}(s)  = w - 1 + w·d_T(s),          w = |k|_2^{-1}
//! d_{T×T}(s)  = 3/(1 - 2^{1-s}) - 2/(1 - 2^{-s})

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::DirserError;
use crate::seqcore::{euler_transform_series, OrbitSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeigenbaumKind {
    Base,
    Iterate(u64),
    Square,
}

impl FeigenbaumKind {
    pub fn validate(self) -> Result<Self, DirserError> {
        match self {
            Self::Iterate(0) => Err(DirserError::InvalidParameter("iterate k must be at least 1")),
            other => Ok(other),
        }
    }

    /// `|k|_2^{-1}` for iterates, 1 otherwise.
    fn weight(self) -> u64 {
        match self {
            Self::Iterate(k) => 1 << k.trailing_zeros(),
            _ => 1,
        }
    }

    pub fn abscissa(self) -> f64 {
        match self {
            Self::Square => 1.0,
            _ => 0.0,
        }
    }

    /// Dirichlet series value; poles where `2^{-s} = 1` (or `2^{1-s} = 1`).
    pub fn eval(self, s: Complex64) -> Result<Complex64, DirserError> {
        self.validate()?;
        let ln2 = core::f64::consts::LN_2;
        let geometric = |shift: f64| -> Result<Complex64, DirserError> {
            let denom = Complex64::new(1.0, 0.0) - ((Complex64::new(shift, 0.0) - s) * ln2).exp();
            if denom.norm() < 1e-300 {
                return Err(DirserError::PoleAt1);
            }
            Ok(denom.inv())
        };
        Ok(match self {
            Self::Base => geometric(0.0)?,
            Self::Iterate(_) => {
                let w = self.weight() as f64;
                geometric(0.0)? * w + (w - 1.0)
            }
            Self::Square => geometric(1.0)? * 3.0 - geometric(0.0)? * 2.0,
        })
    }

    /// Exact coefficient of `n^{-s}`.
    pub fn coefficient(self, n: u64) -> Result<BigUint, DirserError> {
        self.validate()?;
        if n == 0 {
            return Err(DirserError::InvalidParameter("index must be at least 1"));
        }
        if !n.is_power_of_two() {
            return Ok(BigUint::zero());
        }
        let j = n.trailing_zeros();
        Ok(match self {
            Self::Base => BigUint::one(),
            Self::Iterate(_) => {
                let w = BigUint::from(self.weight());
                if j == 0 {
                    w * 2u32 - 1u32
                } else {
                    w
                }
            }
            Self::Square => {
                if j == 0 {
                    BigUint::one()
                } else {
                    BigUint::from(3u32) * BigUint::from(n) - 2u32
                }
            }
        })
    }

    /// The same sequence built from the seqcore operators.
    pub fn orbit_seq(self) -> Result<OrbitSeq, DirserError> {
        let base = OrbitSeq::feigenbaum();
        Ok(match self.validate()? {
            Self::Base => base,
            Self::Iterate(k) => base.iterate(k)?,
            Self::Square => base.product(&base),
        })
    }
}

/// Coefficients of `ζ_T(z) = Π_{j≥0} (1 - z^{2^j})^{-1}` to `degree`, and
/// whether `ζ_T(z²) = (1 - z)·ζ_T(z)` holds for all of them.
pub fn zeta_functional_equation(degree: usize) -> (Vec<BigUint>, bool) {
    let series = euler_transform_series(&OrbitSeq::feigenbaum(), degree);
    let mut lhs = vec![BigUint::zero(); degree + 1];
    for (i, c) in series.iter().enumerate() {
        if 2 * i <= degree {
            lhs[2 * i] = c.clone();
        }
    }
    // (1 - z)ζ_T(z) has non-negative coefficients iff ζ_T is non-decreasing
    let holds = (0..=degree).all(|i| {
        let prev = if i == 0 { BigUint::zero() } else { series[i - 1].clone() };
        series[i] >= prev && lhs[i] == &series[i] - prev
    });
    (series, holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_match_seqcore() {
        let kinds = [
            FeigenbaumKind::Base,
            FeigenbaumKind::Square,
            FeigenbaumKind::Iterate(1),
            FeigenbaumKind::Iterate(2),
            FeigenbaumKind::Iterate(3),
            FeigenbaumKind::Iterate(12),
        ];
        for kind in kinds {
            let seq = kind.orbit_seq().unwrap();
            for n in 1..=512 {
                assert_eq!(kind.coefficient(n).unwrap(), seq.at(n).unwrap(), "{kind:?} n={n}");
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(FeigenbaumKind::Iterate(12).coefficient(1).unwrap(), BigUint::from(7u32));
        assert_eq!(FeigenbaumKind::Square.coefficient(1 << 10).unwrap(), BigUint::from(3070u32));
        for n in 1..200 {
            assert_eq!(
                FeigenbaumKind::Iterate(7).coefficient(n).unwrap(),
                FeigenbaumKind::Base.coefficient(n).unwrap()
            );
        }
        assert!(FeigenbaumKind::Iterate(0).coefficient(1).is_err());
    }

    #[test]
    fn eval_matches_partial_sums() {
        let s = Complex64::new(2.5, 1.0);
        for kind in [FeigenbaumKind::Base, FeigenbaumKind::Iterate(4), FeigenbaumKind::Square] {
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..60u32 {
                let n = 1u64 << j;
                let c = kind.coefficient(n).unwrap().to_u64_digits().first().copied().unwrap_or(0);
                sum += (-s * libm::log(n as f64)).exp() * c as f64;
            }
            assert!((kind.eval(s).unwrap() - sum).norm() < 1e-12, "{kind:?}");
        }
        assert_eq!(FeigenbaumKind::Base.eval(Complex64::new(1.0, 0.0)).unwrap().re, 2.0);
    }

    #[test]
    fn functional_equation() {
        let (series, holds) = zeta_functional_equation(128);
        assert!(holds);
        // binary partitions: 1, 1, 2, 2, 4, 4, 6, 6, 10
        let head: Vec<u32> = series[..9].iter().map(|c| c.to_u32_digits().first().copied().unwrap_or(0)).collect();
        assert_eq!(head, [1, 1, 2, 2, 4, 4, 6, 6, 10]);
    }
}
