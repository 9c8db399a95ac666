use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A lower parameter gamma_n sits on (or within tolerance of) a
    /// nonpositive integer, so the series coefficients are undefined.
    #[error("lower parameter gamma[{index}] = {value} is within {tol} of a nonpositive integer")]
    ResonantGamma { index: usize, value: String, tol: f64 },

    /// Input violates a documented precondition (dimension mismatch,
    /// parameter constraint, convergence domain, ...).
    #[error("domain error: {0}")]
    DomainError(String),

    /// An evaluation point lies on or too close to the singular locus
    /// `x_i = 0`, `x_i = 1`, `x_i = x_j`.
    #[error("point too close to the singular locus: {0}")]
    SingularPoint(String),

    /// A continuation path passes closer to the singular locus than the
    /// requested clearance.
    #[error("path segment {segment} comes within {distance:.3e} of the singular locus (clearance {clearance:.3e})")]
    PathTooClose { segment: usize, distance: f64, clearance: f64 },

    /// The adaptive integrator could not meet the tolerance without the
    /// step size underflowing.
    #[error("step size underflow during integration: {0}")]
    StepUnderflow(String),

    /// A gauge factor that must be invertible is zero.
    #[error("zero gauge factor at index {0}")]
    ZeroGauge(usize),

    /// Data violates an algebraic constraint it is required to satisfy.
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    /// The spectral variable z coincides with a pole of the connection.
    #[error("z = {0} hits a pole of the connection")]
    PoleHit(String),

    /// An exponent theta_i that must be nonzero vanishes.
    #[error("theta[{0}] = 0, conversion undefined")]
    ZeroTheta(usize),

    /// System parameters do not satisfy the reducibility constraint
    /// kappa_0 = sum_i theta_i.
    #[error("parameters are not reducible: |kappa_0 - sum theta_i| = {0:.3e}")]
    NotReducible(f64),

    /// A denominator that must be nonzero vanishes (for example y_0 = 0
    /// when forming ratios of solution components).
    #[error("vanishing denominator: {0}")]
    ZeroDenominator(String),

    /// A parameter shift would land on a resonant (undefined) parameter set.
    #[error("shifted parameters are resonant: {0}")]
    ResonantShift(String),

    /// A scalar prefactor of a contiguity relation is too close to zero for
    /// the relation to be inverted.
    #[error("vanishing denominator in contiguity relation: {0}")]
    VanishingDenominator(String),
}
