//! Numeric substrate: fixed-size complex matrices, deterministic RNG,
//! Gauss-Hermite quadrature, and a Nelder-Mead simplex minimizer.
//!
//! Nothing in this module knows about spin; it is the plumbing the physics
//! layers are built on. Everything is generic over [`Real`] (`f32` or
//! `f64`).

mod matrix;
mod optimize;
mod quadrature;
mod rng;

pub use matrix::{eig2_hermitian, expectation, kron2, ComplexMat2, ComplexMat4, StateVector4};
pub use optimize::{minimize, MinimizeResult};
pub use quadrature::{gauss_hermite, QuadratureRule};
pub use rng::RngStream;

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

/// Scalar type the whole crate is generic over: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::NumAssign
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand conversion from an `f64` literal into the generic scalar.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 -> Real conversion")
}

/// Strict comparison tolerance: 1e-12 for f64, scaled up for f32.
#[inline]
pub fn tol_strict<T: Real>() -> T {
    real::<T>(1e-12).max(T::epsilon() * real(100.0))
}
