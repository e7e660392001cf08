//! Scalar special functions: gamma ratios, Laguerre and hypergeometric sums,
//! Bessel J, incomplete gamma, real and complex Hermite polynomials.

mod bessel;
mod gamma;
mod incgamma;
mod poly;
pub mod sum;

pub use bessel::{bessel_j, BESSEL_SWITCH};
pub use gamma::{
    binomial, factorial, falling_gamma_ratio, gamma, ln_gamma, pochhammer, SignedLogValue,
};
pub use incgamma::{lower_incomplete_gamma, upper_incomplete_gamma, IncompleteGamma};
pub use poly::{
    hyp0f1, hyp1f1_series, hyp2f0_terminating, ito_hermite, kummer_1f1_terminating,
    kummer_laguerre_factor, laguerre, laguerre_coefficients, laguerre_complex, real_hermite,
};
