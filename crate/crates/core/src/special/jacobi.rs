//! Jacobi polynomials `P_ℓ^{(α,β)}` on `[-1, 1]`.
//!
//! Plain values come from the classical three-term recurrence in the degree.
//! The orthonormal family `p̃_ℓ = P_ℓ / √h_ℓ` is generated by its own
//! symmetric recurrence so that it never passes through the (possibly huge)
//! unnormalised values.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

use super::gamma::{ln_gamma, ln_gamma_ratio};

/// Jacobi weight exponents: the weight is `(1 - x)^alpha (1 + x)^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0 {
            Ok(Self { alpha, beta })
        } else {
            Err(Error::InvalidParams { alpha, beta })
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The pair with `alpha` and `beta` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// Parameters of the derivative family, `(α + k, β + k)`.
    fn shifted(&self, k: f64) -> Self {
        Self {
            alpha: self.alpha + k,
            beta: self.beta + k,
        }
    }

    fn sum(&self) -> f64 {
        self.alpha + self.beta
    }
}

/// `P_ℓ^{(α,β)}(x)`. Any real `x` is accepted.
pub fn jacobi_eval(params: &JacobiParams, ell: usize, x: f64) -> f64 {
    let mut it = PlainRecurrence::new(params, x);
    for _ in 0..ell {
        it.step();
    }
    it.current
}

/// `[P_0(x), …, P_m(x)]`.
pub fn jacobi_eval_all(params: &JacobiParams, m: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let mut it = PlainRecurrence::new(params, x);
    out.push(it.current);
    for _ in 0..m {
        it.step();
        out.push(it.current);
    }
    out
}

struct PlainRecurrence {
    alpha: f64,
    beta: f64,
    x: f64,
    degree: usize,
    previous: f64,
    current: f64,
}

impl PlainRecurrence {
    fn new(params: &JacobiParams, x: f64) -> Self {
        Self {
            alpha: params.alpha,
            beta: params.beta,
            x,
            degree: 0,
            previous: 0.0,
            current: 1.0,
        }
    }

    fn step(&mut self) {
        let (a, b, x) = (self.alpha, self.beta, self.x);
        let next = if self.degree == 0 {
            0.5 * ((a + b + 2.0) * x + (a - b))
        } else {
            let n = (self.degree + 1) as f64;
            let s = 2.0 * n + a + b;
            let lead = 2.0 * n * (n + a + b) * (s - 2.0);
            let lin = (s - 1.0) * (s * (s - 2.0) * x + (a * a - b * b));
            let back = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
            (lin * self.current - back * self.previous) / lead
        };
        self.previous = self.current;
        self.current = next;
        self.degree += 1;
    }
}

/// Total mass of the weight, `∫ (1-x)^α (1+x)^β dx = 2^{α+β+1} B(α+1, β+1)`.
pub fn total_mass(params: &JacobiParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    ((a + b + 1.0) * LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp()
}

/// Squared weighted norm `h_ℓ = ∫ (1-x)^α (1+x)^β P_ℓ(x)^2 dx`.
///
/// At `ℓ = 0` the factor `(α+β+1) Γ(α+β+1)` is taken as `Γ(α+β+2)`, which is
/// the only finite reading when `α + β + 1 = 0`.
pub fn jacobi_norm_sq(params: &JacobiParams, ell: usize) -> f64 {
    if ell == 0 {
        return total_mass(params);
    }
    let (a, b) = (params.alpha, params.beta);
    let l = ell as f64;
    let log_h = (a + b + 1.0) * LN_2 - (2.0 * l + a + b + 1.0).ln()
        + ln_gamma_ratio(l, a + 1.0, 1.0)
        + ln_gamma_ratio(l, b + 1.0, a + b + 1.0);
    log_h.exp()
}

/// Coefficients of the orthonormal recurrence
/// `x p̃_n = b_{n+1} p̃_{n+1} + a_n p̃_n + b_n p̃_{n-1}`.
///
/// Returns `(a_n, b_n)`; `b_0` is reported as zero.
pub fn recurrence_coefficients(params: &JacobiParams, n: usize) -> (f64, f64) {
    let (a, b) = (params.alpha, params.beta);
    let ab = params.sum();
    if n == 0 {
        return ((b - a) / (ab + 2.0), 0.0);
    }
    let k = n as f64;
    let s = 2.0 * k + ab;
    let diag = (b * b - a * a) / (s * (s + 2.0));
    let off = if n == 1 {
        // (s - 1) = α + β + 1 cancels against (n + α + β); keep it out of the
        // formula so the circle case α + β = -1 stays finite.
        2.0 / s * ((1.0 + a) * (1.0 + b) / (s + 1.0)).sqrt()
    } else {
        2.0 / s * (k * (k + a) * (k + b) * (k + ab) / ((s + 1.0) * (s - 1.0))).sqrt()
    };
    (diag, off)
}

/// Streaming generator of `p̃_0(x), p̃_1(x), …`.
///
/// Values stay `O(1)` in the interior of `(-1, 1)` for every degree, so the
/// iterator can be run to millions of terms without rescaling.
#[derive(Debug, Clone)]
pub struct OrthonormalIter {
    params: JacobiParams,
    x: f64,
    degree: usize,
    previous: f64,
    current: f64,
    /// `b_degree`
    off: f64,
}

impl OrthonormalIter {
    pub fn new(params: &JacobiParams, x: f64) -> Self {
        Self {
            params: *params,
            x,
            degree: 0,
            previous: 0.0,
            current: total_mass(params).sqrt().recip(),
            off: 0.0,
        }
    }
}

impl Iterator for OrthonormalIter {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.current;
        let (diag, _) = recurrence_coefficients(&self.params, self.degree);
        let (_, next_off) = recurrence_coefficients(&self.params, self.degree + 1);
        let next = ((self.x - diag) * self.current - self.off * self.previous) / next_off;
        self.previous = self.current;
        self.current = next;
        self.off = next_off;
        self.degree += 1;
        Some(out)
    }
}

/// `[p̃_0(x), …, p̃_m(x)]` with `p̃_ℓ = P_ℓ / √h_ℓ`.
pub fn orthonormal_eval_all(params: &JacobiParams, m: usize, x: f64) -> Vec<f64> {
    OrthonormalIter::new(params, x).take(m + 1).collect()
}

/// `d/dx P_ℓ^{(α,β)}(x) = (ℓ+α+β+1)/2 · P_{ℓ-1}^{(α+1,β+1)}(x)`.
pub fn jacobi_deriv(params: &JacobiParams, ell: usize, x: f64) -> f64 {
    if ell == 0 {
        return 0.0;
    }
    let l = ell as f64;
    0.5 * (l + params.sum() + 1.0) * jacobi_eval(&params.shifted(1.0), ell - 1, x)
}

fn jacobi_second_deriv(params: &JacobiParams, ell: usize, x: f64) -> f64 {
    if ell < 2 {
        return 0.0;
    }
    let l = ell as f64;
    let ab = params.sum();
    0.25 * (l + ab + 1.0) * (l + ab + 2.0) * jacobi_eval(&params.shifted(2.0), ell - 2, x)
}

/// Residual of the Jacobi differential equation at `y = P_ℓ^{(α,β)}`:
/// `(1-x²) y'' + (β - α - (α+β+2) x) y' + ℓ(ℓ+α+β+1) y`.
///
/// Requires `|x| < 1`.
pub fn ode_residual(params: &JacobiParams, ell: usize, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("ode_residual requires |x| < 1, got {x}")));
    }
    let (a, b) = (params.alpha, params.beta);
    let l = ell as f64;
    let y = jacobi_eval(params, ell, x);
    let dy = jacobi_deriv(params, ell, x);
    let d2y = jacobi_second_deriv(params, ell, x);
    Ok((1.0 - x * x) * d2y + (b - a - (a + b + 2.0) * x) * dy + l * (l + a + b + 1.0) * y)
}

/// Natural size of the residual terms: `max(1, |ℓ(ℓ+α+β+1) P_ℓ(x)|)`.
pub fn ode_residual_scale(params: &JacobiParams, ell: usize, x: f64) -> f64 {
    let l = ell as f64;
    (l * (l + params.sum() + 1.0) * jacobi_eval(params, ell, x))
        .abs()
        .max(1.0)
}
