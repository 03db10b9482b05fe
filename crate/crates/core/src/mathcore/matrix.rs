//! Fixed-size complex matrices and state vectors.
//!
//! The problem never exceeds two qubits, so only 2×2 and 4×4 matrices
//! exist; there is no general dense solver.

use num_complex::Complex;

use super::{real, tol_strict, Real};
use crate::Error;

/// Dense complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat2<T> {
    pub e: [[Complex<T>; 2]; 2],
}

/// Dense complex 4×4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat4<T> {
    pub e: [[Complex<T>; 4]; 4],
}

/// Normalized complex 4-vector over the product basis
/// (|+,+⟩, |+,−⟩, |−,+⟩, |−,−⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector4<T> {
    pub amp: [Complex<T>; 4],
}

impl<T: Real> ComplexMat2<T> {
    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { e: [[z; 2]; 2] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.e[0][0] = Complex::new(T::one(), T::zero());
        m.e[1][1] = Complex::new(T::one(), T::zero());
        m
    }

    pub fn pauli_x() -> Self {
        let mut m = Self::zero();
        m.e[0][1] = Complex::new(T::one(), T::zero());
        m.e[1][0] = Complex::new(T::one(), T::zero());
        m
    }

    pub fn pauli_y() -> Self {
        let mut m = Self::zero();
        m.e[0][1] = Complex::new(T::zero(), -T::one());
        m.e[1][0] = Complex::new(T::zero(), T::one());
        m
    }

    pub fn pauli_z() -> Self {
        let mut m = Self::zero();
        m.e[0][0] = Complex::new(T::one(), T::zero());
        m.e[1][1] = Complex::new(-T::one(), T::zero());
        m
    }

    /// c·σ for a real 3-vector c: c_x σx + c_y σy + c_z σz.
    pub fn from_pauli_vector(c: [T; 3]) -> Self {
        let mut m = Self::zero();
        m.e[0][0] = Complex::new(c[2], T::zero());
        m.e[1][1] = Complex::new(-c[2], T::zero());
        m.e[0][1] = Complex::new(c[0], -c[1]);
        m.e[1][0] = Complex::new(c[0], c[1]);
        m
    }

    pub fn scale(&self, s: T) -> Self {
        self.scale_complex(Complex::new(s, T::zero()))
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        let mut m = *self;
        for row in m.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] += other.e[i][j];
            }
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] -= other.e[i][j];
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..2 {
                    acc += self.e[i][k] * other.e[k][j];
                }
                m.e[i][j] = acc;
            }
        }
        m
    }

    /// [A, B] = AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] = self.e[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex<T> {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Elementwise max modulus.
    pub fn inf_norm(&self) -> T {
        let mut best = T::zero();
        for row in &self.e {
            for v in row {
                best = best.max(v.norm());
            }
        }
        best
    }

    /// Elementwise max |M − M†|.
    pub fn hermiticity_residual(&self) -> T {
        self.sub(&self.adjoint()).inf_norm()
    }
}

impl<T: Real> ComplexMat4<T> {
    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { e: [[z; 4]; 4] }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] += other.e[i][j];
            }
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] -= other.e[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: T) -> Self {
        let mut m = *self;
        for row in m.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] = self.e[j][i].conj();
            }
        }
        m
    }

    pub fn inf_norm(&self) -> T {
        let mut best = T::zero();
        for row in &self.e {
            for v in row {
                best = best.max(v.norm());
            }
        }
        best
    }

    pub fn hermiticity_residual(&self) -> T {
        self.sub(&self.adjoint()).inf_norm()
    }

    /// M|v⟩.
    pub fn apply(&self, v: &StateVector4<T>) -> StateVector4<T> {
        let mut out = [Complex::new(T::zero(), T::zero()); 4];
        for (slot, row) in out.iter_mut().zip(&self.e) {
            for (m, amp) in row.iter().zip(&v.amp) {
                *slot += *m * *amp;
            }
        }
        StateVector4 { amp: out }
    }
}

impl<T: Real> StateVector4<T> {
    pub fn new(amp: [Complex<T>; 4]) -> Self {
        Self { amp }
    }

    pub fn norm_sq(&self) -> T {
        self.amp.iter().fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..4 {
            acc += self.amp[i].conj() * other.amp[i];
        }
        acc
    }
}

/// Kronecker product: block structure [A00·B, A01·B; A10·B, A11·B].
pub fn kron2<T: Real>(a: &ComplexMat2<T>, b: &ComplexMat2<T>) -> ComplexMat4<T> {
    let mut m = ComplexMat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.e[2 * i + k][2 * j + l] = a.e[i][j] * b.e[k][l];
                }
            }
        }
    }
    m
}

/// ⟨ψ|M|ψ⟩ for Hermitian M; the imaginary residue is checked against
/// tolerance before being discarded.
pub fn expectation<T: Real>(psi: &StateVector4<T>, m: &ComplexMat4<T>) -> Result<T, Error> {
    let val = psi.inner(&m.apply(psi));
    let tol = tol_strict::<T>();
    if val.im.abs() > tol {
        return Err(Error::NonHermitianInput {
            residual: val.im.abs().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(val.re)
}

/// Eigenvalues of a Hermitian 2×2 matrix, ascending, via the closed
/// trace/determinant form.
pub fn eig2_hermitian<T: Real>(m: &ComplexMat2<T>) -> Result<(T, T), Error> {
    let res = m.hermiticity_residual();
    if res > tol_strict::<T>() {
        return Err(Error::NonHermitianInput {
            residual: res.to_f64().unwrap_or(f64::NAN),
        });
    }
    let half = real::<T>(0.5);
    let mean = (m.e[0][0].re + m.e[1][1].re) * half;
    let d = (m.e[0][0].re - m.e[1][1].re) * half;
    let disc = (d * d + m.e[0][1].norm_sqr()).sqrt();
    Ok((mean - disc, mean + disc))
}

#[cfg(test)]
mod tests {
    use super::*;
    type M2 = ComplexMat2<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn kron_identity() {
        let m = kron2(&M2::identity(), &M2::identity());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(m.e[i][j], c(want, 0.0));
            }
        }
    }

    #[test]
    fn kron_zz_diagonal() {
        let m = kron2(&M2::pauli_z(), &M2::pauli_z());
        let diag = [1.0, -1.0, -1.0, 1.0];
        for (i, d) in diag.iter().enumerate() {
            for j in 0..4 {
                let want = if i == j { *d } else { 0.0 };
                assert_eq!(m.e[i][j], c(want, 0.0));
            }
        }
    }

    #[test]
    fn kron_xx_antidiagonal() {
        let m = kron2(&M2::pauli_x(), &M2::pauli_x());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(m.e[i][j], c(want, 0.0));
            }
        }
    }

    fn singlet() -> StateVector4<f64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        StateVector4::new([c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)])
    }

    #[test]
    fn singlet_expectations() {
        let psi = singlet();
        let zz = kron2(&M2::pauli_z(), &M2::pauli_z());
        assert!((expectation(&psi, &zz).unwrap() + 1.0).abs() < 1e-15);
        let xy = kron2(&M2::pauli_x(), &M2::pauli_y());
        assert!(expectation(&psi, &xy).unwrap().abs() < 1e-15);
        let xx = kron2(&M2::pauli_x(), &M2::pauli_x());
        assert!((expectation(&psi, &xx).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_rejects_imaginary_residue() {
        let psi = singlet();
        // Break Hermiticity inside the block where the singlet has support.
        let mut m = kron2(&M2::pauli_x(), &M2::identity());
        m.e[1][2] = c(0.0, 1.0);
        m.e[2][1] = c(0.0, 1.0); // (M†)₁₂ would be −i
        let err = expectation(&psi, &m);
        assert!(matches!(err, Err(Error::NonHermitianInput { .. })));
    }

    #[test]
    fn eig_pauli_z() {
        let (lo, hi) = eig2_hermitian(&M2::pauli_z()).unwrap();
        assert_eq!((lo, hi), (-1.0, 1.0));
    }

    #[test]
    fn eig_identity_degenerate() {
        let (lo, hi) = eig2_hermitian(&M2::identity()).unwrap();
        assert_eq!((lo, hi), (1.0, 1.0));
    }

    #[test]
    fn eig_scaled_pauli_x() {
        let m = M2::pauli_x().scale(0.4);
        let (lo, hi) = eig2_hermitian(&m).unwrap();
        assert!((lo + 0.4).abs() < 1e-15);
        assert!((hi - 0.4).abs() < 1e-15);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = M2::identity();
        m.e[0][1] = c(0.5, 0.0);
        assert!(matches!(
            eig2_hermitian(&m),
            Err(Error::NonHermitianInput { .. })
        ));
    }
}
