//! Partial sums behind the Jacobi asymptotic identities and their
//! convergence reports.
//!
//! * Cesàro means `(1/m) Σ_{ℓ=0}^m coeff_ℓ P_ℓ(x)²` against the closed-form
//!   limit `2^{α+β+1} / (π (1-x)^{α+1/2} (1+x)^{β+1/2})`.
//! * Cut-locus sums `(1/m^k) Σ_{ℓ=0}^m …` against `2/k` for the projective
//!   families.
//! * Kuznecov sums `Σ_{λ_ℓ<T} c_ℓ² P_ℓ(x_N)²` for distance spheres and cut
//!   loci against `T^{k/2} / ((4π)^{k/2} Γ(k/2+1) ν(N))`.
//!
//! Long sums accumulate in increasing `ℓ` with compensated summation; the
//! independent-term sums go through [`block_sum`], whose result does not
//! depend on the rayon pool size.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::geometry::SymmetricSpace;
use crate::special::{ln_gamma, ln_gamma_ratio, JacobiParams, OrthonormalIter};
use crate::summation::{block_sum, CompensatedSum};

/// One row of a [`ConvergenceReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportEntry {
    pub m: usize,
    pub lhs: f64,
    pub target: f64,
    pub rel_err: f64,
}

impl ReportEntry {
    pub fn new(m: usize, lhs: f64, target: f64) -> Self {
        Self {
            m,
            lhs,
            target,
            rel_err: relative_error(lhs, target),
        }
    }
}

/// Partial sums along a schedule of `m` values with their relative errors.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub entries: Vec<ReportEntry>,
    /// Least-squares slope of `ln rel_err` against `ln m`; `None` when fewer
    /// than three entries have a nonzero error.
    pub fitted_rate: Option<f64>,
    pub tol: f64,
    /// Whether the last entry's relative error is within `tol`.
    pub passed: bool,
}

impl ConvergenceReport {
    pub fn from_entries(entries: Vec<ReportEntry>, tol: f64) -> Self {
        let fitted_rate = fit_rate(&entries).ok();
        let passed = entries.last().is_some_and(|e| e.rel_err <= tol);
        Self {
            entries,
            fitted_rate,
            tol,
            passed,
        }
    }

    pub fn final_rel_err(&self) -> f64 {
        self.entries.last().map_or(f64::NAN, |e| e.rel_err)
    }
}

pub fn relative_error(lhs: f64, target: f64) -> f64 {
    ((lhs - target) / target).abs()
}

/// Least-squares slope of `ln rel_err` against `ln m` over entries with a
/// finite nonzero error.
pub fn fit_rate(entries: &[ReportEntry]) -> Result<f64> {
    let points: Vec<(f64, f64)> = entries
        .iter()
        .filter(|e| e.m > 0 && e.rel_err > 0.0 && e.rel_err.is_finite())
        .map(|e| ((e.m as f64).ln(), e.rel_err.ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::unsupported(format!(
            "rate fitting needs at least 3 entries with nonzero error, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(x, y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    if sxx == 0.0 {
        return Err(Error::unsupported("rate fitting needs at least two distinct m values"));
    }
    Ok(sxy / sxx)
}

fn check_schedule(schedule: &[usize]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::domain("schedule must not be empty"));
    }
    if schedule[0] == 0 {
        return Err(Error::domain("schedule entries must be positive"));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("schedule must be strictly increasing"));
    }
    Ok(())
}

fn check_open_interval(x: f64) -> Result<()> {
    if x.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("x must lie in (-1, 1), got {x}")))
    }
}

/// Coefficient `(2ℓ+α+β+1) Γ(ℓ+1) Γ(ℓ+α+β+1) / (Γ(ℓ+α+1) Γ(ℓ+β+1))` of the
/// Cesàro mean, from log-gamma differences. At `ℓ = 0` the factor
/// `(α+β+1) Γ(α+β+1)` is read as `Γ(α+β+2)`.
pub fn identity_coefficient(params: &JacobiParams, ell: usize) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    if ell == 0 {
        return (ln_gamma(a + b + 2.0) - ln_gamma(a + 1.0) - ln_gamma(b + 1.0)).exp();
    }
    let l = ell as f64;
    ((2.0 * l + a + b + 1.0).ln() + ln_gamma_ratio(l, 1.0, a + 1.0) + ln_gamma_ratio(l, a + b + 1.0, b + 1.0)).exp()
}

/// Cesàro means at every `m` of a strictly increasing schedule, from one pass
/// of the orthonormal recurrence.
pub fn identity_lhs_schedule(params: &JacobiParams, schedule: &[usize], x: f64) -> Result<Vec<f64>> {
    check_open_interval(x)?;
    check_schedule(schedule)?;
    let scale = ((params.alpha() + params.beta() + 1.0) * LN_2).exp();
    let mut out = Vec::with_capacity(schedule.len());
    let mut acc = CompensatedSum::new();
    let mut next = schedule.iter().copied().peekable();
    for (ell, p) in OrthonormalIter::new(params, x).enumerate() {
        acc.add(p * p);
        while next.peek() == Some(&ell) {
            out.push(scale * acc.value() / ell as f64);
            next.next();
        }
        if next.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// `(1/m) Σ_{ℓ=0}^m coeff_ℓ P_ℓ(x)²`, evaluated as `(1/m) Σ 2^{α+β+1} p̃_ℓ(x)²`.
pub fn identity_lhs(params: &JacobiParams, m: usize, x: f64) -> Result<f64> {
    Ok(identity_lhs_schedule(params, &[m], x)?[0])
}

/// `2^{α+β+1} / (π (1-x)^{(2α+1)/2} (1+x)^{(2β+1)/2})`.
pub fn identity_rhs(params: &JacobiParams, x: f64) -> Result<f64> {
    check_open_interval(x)?;
    let (a, b) = (params.alpha(), params.beta());
    Ok(((a + b + 1.0) * LN_2).exp() / (PI * (1.0 - x).powf(a + 0.5) * (1.0 + x).powf(b + 0.5)))
}

pub fn verify_identity(params: &JacobiParams, x: f64, schedule: &[usize], tol: f64) -> Result<ConvergenceReport> {
    check_tol(tol)?;
    let target = identity_rhs(params, x)?;
    let lhs = identity_lhs_schedule(params, schedule, x)?;
    let entries = schedule
        .iter()
        .zip(lhs)
        .map(|(&m, v)| ReportEntry::new(m, v, target))
        .collect();
    Ok(ConvergenceReport::from_entries(entries, tol))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance must be positive, got {tol}")))
    }
}

fn cut_codim(space: &SymmetricSpace) -> Result<u32> {
    space
        .params()
        .cut_locus
        .map(|c| c.codim)
        .ok_or_else(|| Error::unsupported(format!("{space} is a sphere; the cut-locus sums apply only to projective spaces")))
}

/// `ln` of the cut-locus summand
/// `(2ℓ+α+β+1) Γ(ℓ+α+β+1) Γ(ℓ+β+1) / (Γ(ℓ+α+1) Γ(ℓ+1))`.
fn ln_cutlocus_term(a: f64, b: f64, ell: usize) -> f64 {
    if ell == 0 {
        return ln_gamma(a + b + 2.0) + ln_gamma(b + 1.0) - ln_gamma(a + 1.0);
    }
    let l = ell as f64;
    (2.0 * l + a + b + 1.0).ln() + ln_gamma_ratio(l, a + b + 1.0, a + 1.0) + ln_gamma_ratio(l, b + 1.0, 1.0)
}

/// Single cut-locus summand for `space`'s Jacobi parameters.
pub fn cutlocus_term(space: &SymmetricSpace, ell: usize) -> f64 {
    let sp = space.params();
    ln_cutlocus_term(sp.alpha, sp.beta, ell).exp()
}

/// `Σ_{ℓ=0}^m` of the cut-locus summands, unnormalised.
fn cutlocus_raw_sum(space: &SymmetricSpace, m: usize) -> f64 {
    let sp = space.params();
    let (a, b) = (sp.alpha, sp.beta);
    block_sum(0..m + 1, move |ell| ln_cutlocus_term(a, b, ell).exp())
}

/// `(1/m^k) Σ_{ℓ=0}^m` of the cut-locus summands; spheres are rejected.
pub fn cutlocus_sum(space: &SymmetricSpace, m: usize) -> Result<f64> {
    let k = cut_codim(space)?;
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    Ok(cutlocus_raw_sum(space, m) / (m as f64).powi(k as i32))
}

/// Limit `2/k` of [`cutlocus_sum`].
pub fn cutlocus_target(space: &SymmetricSpace) -> Result<f64> {
    Ok(2.0 / f64::from(cut_codim(space)?))
}

pub fn verify_cutlocus(space: &SymmetricSpace, schedule: &[usize], tol: f64) -> Result<ConvergenceReport> {
    check_tol(tol)?;
    check_schedule(schedule)?;
    let target = cutlocus_target(space)?;
    let entries = schedule
        .iter()
        .map(|&m| cutlocus_sum(space, m).map(|v| ReportEntry::new(m, v, target)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::from_entries(entries, tol))
}

/// Submanifold whose Riemannian measure is tested against the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SumTarget {
    /// Distance sphere of radius `r` about the base point, `0 < r < L`.
    DistanceSphere(f64),
    /// Cut locus of the base point (non-sphere spaces only).
    CutLocus,
}

/// Empirical and predicted Kuznecov sums at one spectral cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KuznecovSum {
    pub empirical: f64,
    pub predicted: f64,
    /// Largest degree included, `max { ℓ : λ_ℓ < T }`.
    pub max_degree: usize,
}

impl KuznecovSum {
    pub fn ratio(&self) -> f64 {
        self.empirical / self.predicted
    }
}

/// `(4π)^{k/2} Γ(k/2 + 1)`
pub fn submanifold_constant(codim: u32) -> f64 {
    let h = f64::from(codim) / 2.0;
    (h * (4.0 * PI).ln() + ln_gamma(h + 1.0)).exp()
}

/// `Σ_{λ_ℓ<T} c_ℓ² P_ℓ(x_N)²` next to its leading-order prediction
/// `T^{k/2} / ((4π)^{k/2} Γ(k/2+1) ν(N))`.
pub fn kuznecov_sum(space: &SymmetricSpace, target: SumTarget, t: f64) -> Result<KuznecovSum> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("spectral cutoff T must be positive, got {t}")));
    }
    let sp = space.params();
    let jacobi = sp.jacobi();
    let m = space.max_degree_below(t).expect("T > 0 admits λ_0 = 0");
    let k_const = space.kuznecov_constant();

    match target {
        SumTarget::DistanceSphere(r) => {
            let area = space.area(r)?;
            let x = (2.0 * sp.omega * r).cos();
            let acc: CompensatedSum = OrthonormalIter::new(&jacobi, x).take(m + 1).map(|p| p * p).collect();
            let scale = k_const * ((sp.alpha + sp.beta + 1.0) * LN_2).exp();
            Ok(KuznecovSum {
                empirical: scale * acc.value(),
                predicted: t.sqrt() / (submanifold_constant(1) * area),
                max_degree: m,
            })
        }
        SumTarget::CutLocus => {
            let cut = sp
                .cut_locus
                .ok_or_else(|| Error::unsupported(format!("{space} is a sphere and has no cut-locus submanifold here")))?;
            // c_ℓ² P_ℓ(-1)² = K / Γ(β+1)² · cut-locus summand
            let scale = (k_const.ln() - 2.0 * ln_gamma(sp.beta + 1.0)).exp();
            let k = cut.codim;
            Ok(KuznecovSum {
                empirical: scale * cutlocus_raw_sum(space, m),
                predicted: t.powf(f64::from(k) / 2.0) / (submanifold_constant(k) * cut.measure),
                max_degree: m,
            })
        }
    }
}

/// Distance-sphere prediction written through the Cesàro constant:
/// `K √T / (2ωπ sin^{p+q}(ωr) cos^q(ωr))`.
///
/// Algebraically equal to `√T / (π A(r))`.
pub fn kuznecov_prediction_via_identity(space: &SymmetricSpace, r: f64, t: f64) -> Result<f64> {
    let sp = space.params();
    if !(r > 0.0 && r < sp.diameter) {
        return Err(Error::domain(format!("radius must lie in (0, {}), got {r}", sp.diameter)));
    }
    let s = (sp.omega * r).sin().powi((sp.p + sp.q) as i32);
    let c = (sp.omega * r).cos().powi(sp.q as i32);
    Ok(space.kuznecov_constant() * t.sqrt() / (2.0 * sp.omega * PI * s * c))
}
