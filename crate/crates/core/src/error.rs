use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix handed to a Hermitian-only routine failed the Hermiticity
    /// check, or an expectation value carried an imaginary residue above
    /// tolerance.
    #[error("non-Hermitian input (residual {residual:.3e})")]
    NonHermitianInput { residual: f64 },

    /// Gauss-Hermite order outside the supported 1..=64 range.
    #[error("quadrature order {0} outside 1..=64")]
    OrderOutOfRange(usize),

    /// Mass must be strictly positive.
    #[error("mass must be > 0")]
    InvalidMass,

    /// Spin quantum number j must satisfy 2j ∈ {1, 2, 3, ...}.
    #[error("2j must be a positive integer")]
    InvalidSpin,

    /// Zero vector cannot be normalized into a direction.
    #[error("direction vector has (near-)zero norm")]
    ZeroDirection,

    /// Speed parameter outside [0, 1].
    #[error("beta must lie in [0, 1]")]
    InvalidBeta,

    /// The spin spectrum along the requested direction has collapsed to
    /// zero (β = 1 with the direction perpendicular to the momentum), so a
    /// ±1-valued observable cannot be formed.
    #[error("degenerate observable: the spin spectrum along this direction collapses to zero at beta = 1 with the axis perpendicular to the momentum")]
    DegenerateObservable,

    /// Monte Carlo sample count below the minimum of 100.
    #[error("sample count {0} below minimum of 100")]
    InvalidSampleCount(u64),

    /// Packet specification failed validation.
    #[error("invalid packet spec: {0}")]
    InvalidPacketSpec(String),
}
