//! Exact rational expansion of Rodrigues' formula.
//!
//! Expanding the ℓ-th derivative of `(1-x)^{ℓ+α} (1+x)^{ℓ+β}` with the
//! Leibniz rule and dividing by the weight gives
//!
//! ```text
//! P_ℓ(x) = 1/(2^ℓ ℓ!) Σ_k C(ℓ,k) (-1)^{ℓ+k} (ℓ+α)_{↓k} (ℓ+β)_{↓(ℓ-k)} (1-x)^{ℓ-k} (1+x)^k
//! ```
//!
//! where `(y)_{↓j}` is the falling factorial. Every step is carried out in
//! arbitrary-precision rationals, so the result is exact for rational α, β.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::jacobi::JacobiParams;

/// Highest degree the exact expansion is offered for.
pub const MAX_EXACT_DEGREE: usize = 12;

/// Polynomial with exact rational coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPolynomial {
    coefficients: Vec<BigRational>,
}

impl ExactPolynomial {
    fn from_coefficients(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(BigRational::zero());
        }
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Exact value at a rational point (Horner).
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation rounded once to `f64`.
    pub fn eval_f64(&self, x: &BigRational) -> f64 {
        rational_to_f64(&self.eval_exact(x))
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigRational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coefficients(out)
    }

    fn scale(&self, s: &BigRational) -> Self {
        Self::from_coefficients(self.coefficients.iter().map(|c| c * s).collect())
    }

    fn add_assign(&mut self, other: &Self) {
        if other.coefficients.len() > self.coefficients.len() {
            self.coefficients
                .resize(other.coefficients.len(), BigRational::zero());
        }
        for (a, b) in self.coefficients.iter_mut().zip(&other.coefficients) {
            *a += b;
        }
        let trimmed = Self::from_coefficients(std::mem::take(&mut self.coefficients));
        *self = trimmed;
    }

    /// `(c0 + c1 x)^k`
    fn linear_power(c0: i64, c1: i64, k: usize) -> Self {
        let base = Self::from_coefficients(vec![int(c0), int(c1)]);
        let mut out = Self::from_coefficients(vec![BigRational::one()]);
        for _ in 0..k {
            out = out.mul(&base);
        }
        out
    }
}

/// Correctly rounded conversion for the magnitudes that occur here.
fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    // Scale numerator so the integer quotient carries > 64 significant bits.
    let numer = r.numer().abs();
    let denom = r.denom().clone();
    let shift = (denom.bits() as i64 - numer.bits() as i64 + 80).max(0) as u64;
    let q: BigInt = (numer << shift) / denom;
    let mag = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(shift as i32));
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn falling(y: &BigRational, j: usize) -> BigRational {
    let mut out = BigRational::one();
    for i in 0..j {
        out *= y - int(i as i64);
    }
    out
}

fn binomial(n: usize, k: usize) -> BigRational {
    let mut out = BigRational::one();
    for i in 0..k {
        out = out * int((n - i) as i64) / int((i + 1) as i64);
    }
    out
}

/// Exact coefficients of `P_ℓ^{(α,β)}` for rational `α, β > -1` and
/// `ℓ <= 12`.
pub fn rodrigues_exact(alpha: &BigRational, beta: &BigRational, ell: usize) -> Result<ExactPolynomial> {
    if ell > MAX_EXACT_DEGREE {
        return Err(Error::unsupported(format!(
            "exact Rodrigues expansion is limited to degree {MAX_EXACT_DEGREE}, got {ell}"
        )));
    }
    let minus_one = -BigRational::one();
    if *alpha <= minus_one || *beta <= minus_one {
        return Err(Error::InvalidParams {
            alpha: rational_to_f64(alpha),
            beta: rational_to_f64(beta),
        });
    }
    let l = int(ell as i64);
    let top_a = &l + alpha;
    let top_b = &l + beta;

    let mut sum = ExactPolynomial::from_coefficients(vec![BigRational::zero()]);
    for k in 0..=ell {
        let sign = if (ell + k) % 2 == 0 { int(1) } else { int(-1) };
        let coeff = sign * binomial(ell, k) * falling(&top_a, k) * falling(&top_b, ell - k);
        let term = ExactPolynomial::linear_power(1, -1, ell - k).mul(&ExactPolynomial::linear_power(1, 1, k));
        sum.add_assign(&term.scale(&coeff));
    }

    let mut norm = BigRational::one();
    for i in 1..=ell {
        norm *= int(2 * i as i64);
    }
    Ok(sum.scale(&(BigRational::one() / norm)))
}

/// [`rodrigues_exact`] for the exact binary values stored in `params`.
pub fn rodrigues_exact_from_params(params: &JacobiParams, ell: usize) -> Result<ExactPolynomial> {
    let to_rational = |v: f64| {
        BigRational::from_float(v)
            .ok_or_else(|| Error::unsupported(format!("parameter {v} has no exact rational value")))
    };
    rodrigues_exact(&to_rational(params.alpha())?, &to_rational(params.beta())?, ell)
}
