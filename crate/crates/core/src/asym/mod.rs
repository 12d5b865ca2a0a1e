//! The asymptotic expansion of `g_n − 1/n`: exact weights ([`coeffs`]) and
//! numeric evaluation of truncations and residuals ([`eval`]).

pub mod coeffs;

pub use coeffs::{
    c_tilde, c_tilde_complex, c_tilde_constant_law, c_tilde_in_span, c_tilde_top_law,
    complex_to_pi_squared, hankel, lambda_coeff, p_leading_law, p_parity_holds, p_poly,
    p_poly_composition, CTilde, COMPOSITION_MAX_K,
};
pub mod eval;

pub use eval::{
    expansion_sum, figure_dataset, figure_digits, figure_prediction, figure_quantity,
    figure_quantity_with, odd_power_terms, residual, residual_digits, residual_with,
    scaled_residual, ExpansionResult, FigureRow,
};
