//! Orbit Dirichlet series `d(s) = Σ O(n) n^{-s}`: the Riemann zeta function,
//! closed forms for products of maps with polynomial orbit growth, the
//! Euler-product factorisation of `m`-fold powers and Perron asymptotics.

pub mod abscissa;
pub mod feigenbaum;
pub mod form;
pub mod mfold;
pub mod zeta;

use thiserror::Error;

use crate::seqcore::SeqError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DirserError {
    #[error("zeta has a pole at s = 1")]
    PoleAt1,
    #[error("requested precision not reached (best bound {achieved:e})")]
    PrecisionUnreachable { achieved: f64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime-power orbit count is not an integer")]
    NonIntegral,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

pub use abscissa::{abscissa_bound_check, block_evidence, BlockEvidence};
pub use feigenbaum::{zeta_functional_equation, FeigenbaumKind};
pub use form::{
    euler_product, ramanujan_product_form, truncated_eval, DirichletForm, EulerFactor, EulerProduct,
    FormValue, PolyGrowth, TruncatedSum, ZetaFactor,
};
pub use mfold::{
    m_fold_euler_factor, m_fold_form, m_fold_orbit_count, m_fold_orbit_seq, perron_asymptote,
    perron_constant, ppower_orbit_count, MFoldSpec, PerronAsymptote, PerronConstant,
};
pub use zeta::{zeta, zeta_real, zeta_with_bound, ZetaValue};
