//! Numerical toolkit for a family of multivariate hypergeometric series and the
//! completely integrable Hamiltonian systems attached to them.
//!
//! The central object is the series
//!
//! ```text
//! F(alpha; beta; gamma; x) =
//!   sum over m in Z^N_{>=0} of
//!     prod_k (alpha_k)_{|m|} prod_i (beta_i)_{m_i}
//!     ----------------------------------------------  x_1^{m_1} ... x_N^{m_N}
//!     prod_k (gamma_k)_{|m|} prod_i (1)_{m_i}
//! ```
//!
//! with `L - 1` upper parameters `alpha`, `N` parameters `beta`, and `L - 1`
//! lower parameters `gamma`, convergent on the unit polydisc.  Specializations
//! include the Gauss function (L = 2, N = 1), the one-variable generalized
//! hypergeometric function of type (L, L - 1), and Lauricella's F_D (L = 2).
//!
//! Around this sit:
//!
//! * [`series`]: truncated power series on total-degree shells, coefficient
//!   recurrences, Euler-operator checks of the defining PDE system, and an
//!   Euler-type integral representation evaluated by Gauss-Jacobi quadrature;
//! * [`pfaffian`]: the rank `N(L-1) + 1` integrable connection satisfied by the
//!   vector of contiguous series, and analytic continuation along paths;
//! * [`hamiltonian`]: the polynomial Hamiltonians generating the isomonodromic
//!   flow of an `L x L` Fuchsian system with `N + 3` singular points, with
//!   exact forward-mode derivatives of the canonical vector fields;
//! * [`lax`]: residue matrices of the Fuchsian system, the deformation
//!   equations on the locus where one exponent family degenerates, and the
//!   zero-curvature check tying them together;
//! * [`hgsolution`]: verification that hypergeometric data furnishes exact
//!   particular solutions of the Hamiltonian system;
//! * [`contiguity`]: shift operators relating neighbouring parameter values.
//!
//! Everything is plain `f64`/`Complex64` arithmetic, deterministic for a fixed
//! seed, and sized for desk-scale experiments rather than bulk computation.

pub mod contiguity;
pub mod eigen;
pub mod error;
pub mod gamma;
pub mod hamiltonian;
pub mod hgsolution;
pub mod lax;
pub mod params;
pub mod pfaffian;
pub mod quad;
pub mod series;

pub(crate) mod dual;
pub(crate) mod ode;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub use num_complex::Complex64;
