//! Special functions: gamma family, complex log-gamma and the Prabhakar
//! Mittag-Leffler function.

mod complex;
mod gamma;
mod mittag_leffler;

pub use complex::{gamma_complex, ln_gamma_complex, ln_reciprocal_gamma_complex};
pub use gamma::{
    cos_pi, digamma, gamma, ln_gamma, ln_gamma_sign, ln_reciprocal_gamma_sign, reciprocal_gamma,
    reciprocal_gamma_deriv, sin_pi, GAMMA_MAX_ARG,
};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler_scaled, mittag_leffler_with, MittagLefflerParams,
};
