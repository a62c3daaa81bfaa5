//! Special functions: log-gamma and the Jacobi family.

mod gamma;
mod jacobi;
mod rodrigues;

pub use gamma::{ln_gamma, ln_gamma_ratio, log_gamma};
pub use jacobi::{
    jacobi_deriv, jacobi_eval, jacobi_eval_all, jacobi_norm_sq, ode_residual,
    ode_residual_scale, orthonormal_eval_all, recurrence_coefficients, total_mass, JacobiParams,
    OrthonormalIter,
};
pub use rodrigues::{rodrigues_exact, rodrigues_exact_from_params, ExactPolynomial};
