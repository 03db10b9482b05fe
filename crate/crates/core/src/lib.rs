//! Relativistic center-of-mass spin observables for massive spin-1/2
//! particles, the EPR-Bohm singlet correlation they induce, and CHSH
//! optimization over measurement settings.
//!
//! The crate is organized as four layers:
//!
//! * [`mathcore`] — a self-contained numeric substrate: fixed-size complex
//!   matrices, Kronecker products, a closed-form Hermitian 2×2 eigensolver,
//!   a deterministic seeded PRNG, Gauss-Hermite quadrature, and a
//!   derivative-free simplex minimizer.
//! * [`relspin`] — kinematics and the boost-dependent spin observable: the
//!   α-direction map, spin-projection matrices, their spectra, and the
//!   spin-component commutator algebra (so(3) → e(2) contraction).
//! * [`epr`] — the two-particle singlet, binary ±1 observables, the
//!   correlation in closed form and via an independent matrix route, Monte
//!   Carlo outcome sampling, and incoherent wave-packet averaging.
//! * [`chsh`] — the CHSH functional, multi-start maximization at fixed β,
//!   and β-scans for CSV emission.
//!
//! All physics is in natural units (ħ = c = 1). Core math is generic over
//! the scalar type via [`mathcore::Real`]; the aliases at the crate root fix
//! `f64`, which is what the command-line tool and the verification suites
//! use.

pub mod chsh;
pub mod check;
pub mod epr;
pub mod fmt;
pub mod mathcore;
pub mod relspin;

mod error;

pub use error::Error;
pub use mathcore::Real;

/// Concrete `f64` aliases for the generic core types.
pub type Mat2 = mathcore::ComplexMat2<f64>;
pub type Mat4 = mathcore::ComplexMat4<f64>;
pub type State4 = mathcore::StateVector4<f64>;
pub type Dir = relspin::Direction<f64>;
pub type Kin = relspin::Kinematics<f64>;
pub type Angles = chsh::AngleSet<f64>;
