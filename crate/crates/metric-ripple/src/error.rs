use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive, got {value:e}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("amplitude entries must be real (nonzero imaginary part at [{row}][{col}])")]
    ComplexAmplitude { row: usize, col: usize },

    #[error("tensor is not symmetric at [{row}][{col}]")]
    NotSymmetric { row: usize, col: usize },

    #[error("perturbation entry [{row}][{col}] has |value| = {magnitude:e}, outside the perturbative regime (< 1)")]
    NonPerturbative {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("propagation direction is not a unit vector: |n| = {norm}")]
    NonUnitPropagation { norm: f64 },

    #[error("amplitude fails the transverse-traceless constraints (max residual {residual:e})")]
    GaugeViolation { residual: f64 },

    #[error(
        "step dt = {dt:e} does not divide t_end = {t_end:e} (fractional remainder {remainder:e})"
    )]
    StepMismatch { dt: f64, t_end: f64, remainder: f64 },

    #[error("cannot superpose an empty list of fields")]
    EmptySuperposition,

    #[error("packet wavenumber {packet:e} does not match 2*pi/lambda = {expected:e}")]
    WavenumberMismatch { packet: f64, expected: f64 },

    #[error("displacement requires a polarization with A_31 = A_32 = A_33 = 0")]
    Polarization,

    #[error("invalid sample range: {reason}")]
    InvalidRange { reason: &'static str },

    #[error("alpha = {re:e} + {im:e}i is outside the convergent domain (need alpha != 0 and Re(alpha) >= 0)")]
    InvalidAlpha { re: f64, im: f64 },

    #[error("quadrature parameters rejected: {reason}")]
    Quadrature { reason: &'static str },

    #[error("fixed-point iteration did not converge within {max_iter} steps")]
    NoConvergence { max_iter: usize },

    #[error("fixed point is not attracting: |f'(x*)| = {derivative}")]
    NotAttracting { derivative: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
