//! Independent numerical oracles built on double-exponential quadrature.

pub mod quadrature;
pub mod special;

pub use quadrature::{integrate_half_line, QuadValue, Quadrature, QuadratureConfig};
pub use special::{
    bessel_chf_identity, cexp, cpowi, csqrt, divisor_count, gn_oracle, i_n_via_bessel, i_n_via_chf,
    k_bessel_1, mellin_check, u_chf, u_chf_scaled,
};
