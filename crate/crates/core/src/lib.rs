//! Jacobi polynomials and the radial spectral geometry of compact rank-one
//! symmetric spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`] evaluates log-gamma, Jacobi polynomials (plain and
//!   orthonormal), their derivatives and ODE residuals, and carries an exact
//!   rational Rodrigues expansion used as a test oracle.
//! * [`quadrature`] builds Gauss-Jacobi rules from the symmetric recurrence
//!   matrix and provides an adaptive Gauss-Kronrod integrator.
//! * [`geometry`] catalogues the spheres, projective spaces and the Cayley
//!   plane together with their areas, volumes, eigenvalues and normalised
//!   zonal eigenfunctions.
//! * [`asymptotics`] forms the Cesàro means, cut-locus sums and Kuznecov sums
//!   and packages them into [`asymptotics::ConvergenceReport`]s.
//! * [`summation`] holds the compensated, block-deterministic accumulators the
//!   long sums run on.

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod special;
pub mod summation;

pub use error::{Error, Result};
pub use geometry::{SpaceKind, SpaceParams, SymmetricSpace};
pub use special::JacobiParams;
