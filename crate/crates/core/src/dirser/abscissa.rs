//! Finite-range evidence for the abscissa of an orbit Dirichlet series.
//!
//! Partial sums are grouped into dyadic blocks `B_j = Σ_{2^j ≤ n < 2^{j+1}} O(n) n^{-s}`.
//! A convergent series has blocks shrinking geometrically; at the abscissa
//! of a series with polynomially regular coefficients they stay roughly constant.

use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use super::DirserError;
use crate::seqcore::OrbitSeq;

/// Blocks whose geometric-mean decay ratio is below this count as converging.
pub const DECAY_THRESHOLD: f64 = 0.95;
/// Number of trailing blocks averaged.
pub const WINDOW: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockEvidence {
    pub s: f64,
    pub blocks: Vec<f64>,
    /// `(B_last / B_{last-WINDOW})^{1/WINDOW}`.
    pub decay_ratio: f64,
    pub converges: bool,
}

/// Dyadic block sums of `Σ O(n) n^{-s}` over complete blocks below `limit`.
pub fn block_evidence(orbits: &OrbitSeq, s: f64, limit: u64) -> Result<BlockEvidence, DirserError> {
    let mut blocks = Vec::new();
    let mut start = 1u64;
    while start.checked_mul(2).is_some_and(|end| end - 1 <= limit) {
        let end = start * 2;
        let mut total = 0.0;
        for n in start..end {
            let c = orbits.at(n)?;
            if !c.is_zero() {
                total += c.to_f64().unwrap_or(f64::INFINITY) * libm::pow(n as f64, -s);
            }
        }
        blocks.push(total);
        start = end;
    }
    if blocks.len() <= WINDOW {
        return Err(DirserError::InvalidParameter("range too short for block evidence"));
    }
    let last = blocks[blocks.len() - 1];
    let earlier = blocks[blocks.len() - 1 - WINDOW];
    let decay_ratio = match (earlier == 0.0, last == 0.0) {
        (_, true) => 0.0,
        (true, false) => f64::INFINITY,
        _ => libm::pow(last / earlier, 1.0 / WINDOW as f64),
    };
    Ok(BlockEvidence {
        s,
        blocks,
        decay_ratio,
        converges: decay_ratio < DECAY_THRESHOLD,
    })
}

/// Checks that the product series converges at `s > σ1 + σ2 + 1` on `n ≤ limit`.
pub fn abscissa_bound_check(
    first: &OrbitSeq,
    sigma1: f64,
    second: &OrbitSeq,
    sigma2: f64,
    s: f64,
    limit: u64,
) -> Result<bool, DirserError> {
    if s <= sigma1 + sigma2 + 1.0 {
        return Err(DirserError::InvalidParameter("s must exceed σ1 + σ2 + 1"));
    }
    Ok(block_evidence(&first.product(second), s, limit)?.converges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirser::mfold::{m_fold_orbit_seq, MFoldSpec};

    #[test]
    fn product_bound_examples() {
        let ones = OrbitSeq::power(0);
        assert!(abscissa_bound_check(&ones, 1.0, &ones, 1.0, 3.5, 100_000).unwrap());
        let f = OrbitSeq::feigenbaum();
        assert!(abscissa_bound_check(&f, 0.0, &f, 0.0, 1.5, 100_000).unwrap());
        assert!(abscissa_bound_check(&f, 0.0, &f, 0.0, 0.5, 1000).is_err());
        // identity factor leaves the other series unchanged
        let id = OrbitSeq::identity();
        let alone = block_evidence(&f, 1.5, 100_000).unwrap();
        let paired = block_evidence(&f.product(&id), 1.5, 100_000).unwrap();
        assert_eq!(alone, paired);
    }

    #[test]
    fn feigenbaum_square_sits_on_its_abscissa() {
        let f = OrbitSeq::feigenbaum();
        let sq = f.product(&f);
        assert!(!block_evidence(&sq, 1.0, 1 << 16).unwrap().converges);
        assert!(block_evidence(&sq, 1.25, 1 << 16).unwrap().converges);
    }

    #[test]
    fn m_fold_abscissa() {
        for m in 2..=3 {
            let seq = m_fold_orbit_seq(MFoldSpec::new(0, m).unwrap());
            let at = block_evidence(&seq, f64::from(m), 20_000).unwrap();
            let past = block_evidence(&seq, f64::from(m) + 0.25, 20_000).unwrap();
            assert!(!at.converges, "{at:?}");
            assert!(past.converges, "{past:?}");
        }
    }
}
