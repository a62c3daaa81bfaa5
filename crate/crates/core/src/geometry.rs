//! Compact rank-one symmetric spaces and their radial spectral data.
//!
//! Every space is normalised to minimum sectional curvature 1. All quantities
//! here depend only on the distance `r` to a fixed base point, or on
//! `x = cos 2ωr`, so the base point itself never appears.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special::{jacobi_eval, ln_gamma, ln_gamma_ratio, JacobiParams};

/// Which family a space belongs to, with its dimension index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// Round sphere `Σ_n`, `n >= 1`.
    Sphere(u32),
    /// `ℂPⁿ`, `n >= 2`.
    ComplexProjective(u32),
    /// `ℍPⁿ`, `n >= 2`.
    QuaternionicProjective(u32),
    /// `CaP²`.
    CayleyPlane,
}

/// A validated compact rank-one symmetric space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetricSpace {
    kind: SpaceKind,
}

/// Codimension and Riemannian measure of the cut locus of the base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutLocus {
    pub codim: u32,
    pub measure: f64,
}

/// Derived constants of a space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    /// Real dimension `d`.
    pub dim: u32,
    pub p: u32,
    pub q: u32,
    /// Diameter `L`.
    pub diameter: f64,
    /// `ω = π / (2L)`.
    pub omega: f64,
    /// `(p + q - 1) / 2`
    pub alpha: f64,
    /// `(q - 1) / 2`
    pub beta: f64,
    /// Absent for spheres.
    pub cut_locus: Option<CutLocus>,
}

impl SpaceParams {
    pub fn jacobi(&self) -> JacobiParams {
        JacobiParams::new(self.alpha, self.beta).expect("alpha, beta >= -1/2 for every family")
    }
}

impl SymmetricSpace {
    pub fn sphere(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("sphere dimension must be at least 1"));
        }
        Ok(Self {
            kind: SpaceKind::Sphere(n),
        })
    }

    pub fn complex_projective(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("complex projective space needs n >= 2"));
        }
        Ok(Self {
            kind: SpaceKind::ComplexProjective(n),
        })
    }

    pub fn quaternionic_projective(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("quaternionic projective space needs n >= 2"));
        }
        Ok(Self {
            kind: SpaceKind::QuaternionicProjective(n),
        })
    }

    pub fn cayley_plane() -> Self {
        Self {
            kind: SpaceKind::CayleyPlane,
        }
    }

    pub fn from_kind(kind: SpaceKind) -> Result<Self> {
        match kind {
            SpaceKind::Sphere(n) => Self::sphere(n),
            SpaceKind::ComplexProjective(n) => Self::complex_projective(n),
            SpaceKind::QuaternionicProjective(n) => Self::quaternionic_projective(n),
            SpaceKind::CayleyPlane => Ok(Self::cayley_plane()),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self.kind, SpaceKind::Sphere(_))
    }

    pub fn params(&self) -> SpaceParams {
        let (dim, p, q, diameter, cut_locus) = match self.kind {
            SpaceKind::Sphere(n) => (n, 0, n - 1, PI, None),
            SpaceKind::ComplexProjective(n) => {
                let nf = f64::from(n);
                let measure = ((nf - 1.0) * PI.ln() - ln_gamma(nf)).exp();
                (2 * n, 2 * n - 2, 1, PI / 2.0, Some(CutLocus { codim: 2, measure }))
            }
            SpaceKind::QuaternionicProjective(n) => {
                let nf = f64::from(n);
                let measure = (2.0 * (nf - 1.0) * PI.ln() - ln_gamma(2.0 * nf)).exp();
                (4 * n, 4 * n - 4, 3, PI / 2.0, Some(CutLocus { codim: 4, measure }))
            }
            SpaceKind::CayleyPlane => {
                let measure = (4.0 * PI.ln() + ln_gamma(4.0) - ln_gamma(8.0)).exp();
                (16, 8, 7, PI / 2.0, Some(CutLocus { codim: 8, measure }))
            }
        };
        SpaceParams {
            dim,
            p,
            q,
            diameter,
            omega: PI / (2.0 * diameter),
            alpha: (f64::from(p + q) - 1.0) / 2.0,
            beta: (f64::from(q) - 1.0) / 2.0,
            cut_locus,
        }
    }

    pub fn jacobi_params(&self) -> JacobiParams {
        self.params().jacobi()
    }

    /// `ln` of the prefactor `2π^{(p+q+1)/2} / (Γ((p+q+1)/2) ω^{p+q})` of `A(r)`.
    fn ln_area_prefactor(sp: &SpaceParams) -> f64 {
        let h = f64::from(sp.p + sp.q + 1) / 2.0;
        LN_2 + h * PI.ln() - ln_gamma(h) - f64::from(sp.p + sp.q) * sp.omega.ln()
    }

    /// Area of the distance sphere of radius `r`, `0 < r < L`.
    pub fn area(&self, r: f64) -> Result<f64> {
        let sp = self.params();
        if !(r > 0.0 && r < sp.diameter) {
            return Err(Error::domain(format!(
                "radius must lie in (0, {}) for {self}, got {r}",
                sp.diameter
            )));
        }
        let t = sp.omega * r;
        Ok(Self::ln_area_prefactor(&sp).exp() * t.sin().powi((sp.p + sp.q) as i32) * t.cos().powi(sp.q as i32))
    }

    /// `∫_0^L A(r) dr`, through the Beta integral of `sin^{p+q} cos^q`.
    pub fn volume(&self) -> f64 {
        let sp = self.params();
        let a = f64::from(sp.p + sp.q + 1) / 2.0;
        let b = f64::from(sp.q + 1) / 2.0;
        let ln_beta = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
        (Self::ln_area_prefactor(&sp) - (2.0 * sp.omega).ln() + ln_beta).exp()
    }

    /// `λ_ℓ = 4ω² ℓ (ℓ + α + β + 1)`.
    pub fn eigenvalue(&self, ell: usize) -> f64 {
        let sp = self.params();
        let l = ell as f64;
        4.0 * sp.omega * sp.omega * l * (l + sp.alpha + sp.beta + 1.0)
    }

    /// Largest `m` with `λ_m < t`, or `None` when `t <= 0`.
    pub fn max_degree_below(&self, t: f64) -> Option<usize> {
        if !(t > 0.0) {
            return None;
        }
        let sp = self.params();
        let s = sp.alpha + sp.beta + 1.0;
        let root = 0.5 * ((s * s + t / (sp.omega * sp.omega)).sqrt() - s);
        let mut m = root.floor().max(0.0) as usize;
        while m > 0 && self.eigenvalue(m) >= t {
            m -= 1;
        }
        while self.eigenvalue(m + 1) < t {
            m += 1;
        }
        Some(m)
    }

    /// `K = ω^{p+q+1} Γ((p+q+1)/2) / π^{(p+q+1)/2}`, the constant linking the
    /// pushforward density to the Jacobi weight: `dΠ_*σ = w(x) dx / (K 2^{α+β+1})`.
    pub fn kuznecov_constant(&self) -> f64 {
        let sp = self.params();
        let h = f64::from(sp.p + sp.q + 1) / 2.0;
        (2.0 * h * sp.omega.ln() + ln_gamma(h) - h * PI.ln()).exp()
    }

    /// `ln c_ℓ²`
    pub(crate) fn ln_normalizing_constant_sq(&self, ell: usize) -> f64 {
        let sp = self.params();
        let h = f64::from(sp.p + sp.q + 1) / 2.0;
        let (a, b) = (sp.alpha, sp.beta);
        let l = ell as f64;
        let base = 2.0 * h * sp.omega.ln() + ln_gamma(h) - h * PI.ln();
        // (2ℓ+α+β+1) Γ(ℓ+α+β+1) Γ(ℓ+1) / (Γ(ℓ+α+1) Γ(ℓ+β+1))
        let ratio = if ell == 0 {
            ln_gamma(a + b + 2.0) - ln_gamma(a + 1.0) - ln_gamma(b + 1.0)
        } else {
            (2.0 * l + a + b + 1.0).ln() + ln_gamma_ratio(l, a + b + 1.0, a + 1.0) + ln_gamma_ratio(l, 1.0, b + 1.0)
        };
        base + ratio
    }

    /// Normalising constant `c_ℓ > 0` of the zonal eigenfunction.
    pub fn normalizing_constant(&self, ell: usize) -> f64 {
        (0.5 * self.ln_normalizing_constant_sq(ell)).exp()
    }

    /// `φ_ℓ(r) = c_ℓ P_ℓ^{(α,β)}(cos 2ωr)` for `0 <= r <= L`.
    pub fn radial_eigenfunction(&self, ell: usize, r: f64) -> Result<f64> {
        let sp = self.params();
        if !(r >= 0.0 && r <= sp.diameter) {
            return Err(Error::domain(format!(
                "radius must lie in [0, {}] for {self}, got {r}",
                sp.diameter
            )));
        }
        let x = (2.0 * sp.omega * r).cos();
        Ok(self.normalizing_constant(ell) * jacobi_eval(&sp.jacobi(), ell, x))
    }

    /// Density of the Riemannian measure pushed forward by `u ↦ cos 2ωρ(u, e)`.
    pub fn pushforward_density(&self, x: f64) -> Result<f64> {
        if !(x.abs() < 1.0) {
            return Err(Error::domain(format!(
                "pushforward density is defined on (-1, 1), got {x}"
            )));
        }
        let sp = self.params();
        let h = f64::from(sp.p + sp.q + 1) / 2.0;
        let ln_c = h * PI.ln() - ln_gamma(h) - 2.0 * h * sp.omega.ln() - f64::from(sp.p + 2 * sp.q) / 2.0 * LN_2;
        Ok(ln_c.exp() * (1.0 - x).powf(sp.alpha) * (1.0 + x).powf(sp.beta))
    }
}

impl fmt::Display for SymmetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::Sphere(n) => write!(f, "sphere:{n}"),
            SpaceKind::ComplexProjective(n) => write!(f, "cp:{n}"),
            SpaceKind::QuaternionicProjective(n) => write!(f, "hp:{n}"),
            SpaceKind::CayleyPlane => write!(f, "cap2"),
        }
    }
}

impl FromStr for SymmetricSpace {
    type Err = Error;

    /// Parses `sphere:n`, `cp:n`, `hp:n` or `cap2`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "cap2" {
            return Ok(Self::cayley_plane());
        }
        let bad = || Error::domain(format!("unknown space '{s}' (expected sphere:n, cp:n, hp:n or cap2)"));
        let (family, n) = s.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        match family {
            "sphere" => Self::sphere(n),
            "cp" => Self::complex_projective(n),
            "hp" => Self::quaternionic_projective(n),
            _ => Err(bad()),
        }
    }
}
