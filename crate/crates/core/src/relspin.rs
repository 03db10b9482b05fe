//! Kinematics and the center-of-mass spin observable.
//!
//! A particle moving with speed β along n carries a spin operator whose
//! projection on a lab direction a is α(a)·s, where the α-map keeps the
//! longitudinal component of a and shrinks the transverse part by the
//! Lorentz factor √(1−β²):
//!
//! ```text
//! α(a) = √(1−β²)·a + (1−√(1−β²))·(n·a)·n
//! |α|  = √(1 + β²((n·a)² − 1))
//! ```
//!
//! The projection spectrum is j₃·|α|, so transverse spin flattens away as
//! β → 1 while the helicity (a = n) keeps its full ±1/2 spectrum. The
//! component algebra deforms from so(3) at rest to e(2) at β = 1, with
//! [S1,S2] = i(1−β²)S3 carrying the contraction. Natural units ħ = c = 1.

use crate::mathcore::{real, ComplexMat2, Real};
use crate::Error;

/// Unit 3-vector (measurement axis or momentum direction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Real> Direction<T> {
    /// Normalize (x, y, z) into a unit vector; rejects near-zero input.
    pub fn new(x: T, y: T, z: T) -> Result<Self, Error> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n < real(1e-12) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    pub fn x_axis() -> Self {
        Self {
            x: T::one(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn y_axis() -> Self {
        Self {
            x: T::zero(),
            y: T::one(),
            z: T::zero(),
        }
    }

    pub fn z_axis() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
            z: T::one(),
        }
    }

    pub fn components(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn neg(&self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// Momentum direction and speed; optionally carries the (mass, |p|) pair
/// the speed was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics<T> {
    pub n: Direction<T>,
    pub beta: T,
    pub provenance: Option<(T, T)>,
}

impl<T: Real> Kinematics<T> {
    /// β given directly; β = 1 is admitted as the massless closed limit.
    pub fn from_beta(n: Direction<T>, beta: T) -> Result<Self, Error> {
        if !beta.is_finite() || beta < T::zero() || beta > T::one() {
            return Err(Error::InvalidBeta);
        }
        Ok(Self {
            n,
            beta,
            provenance: None,
        })
    }

    /// β derived from mass and momentum magnitude (natural units).
    pub fn from_momentum(n: Direction<T>, mass: T, p_mag: T) -> Result<Self, Error> {
        let beta = beta_from_momentum(mass, p_mag)?;
        Ok(Self {
            n,
            beta,
            provenance: Some((mass, p_mag)),
        })
    }
}

/// β = |p| / √(p² + m²), the positive-energy dispersion branch.
pub fn beta_from_momentum<T: Real>(mass: T, p_mag: T) -> Result<T, Error> {
    if !mass.is_finite() || mass <= T::zero() {
        return Err(Error::InvalidMass);
    }
    if !p_mag.is_finite() || p_mag < T::zero() {
        return Err(Error::InvalidBeta);
    }
    Ok(p_mag / (p_mag * p_mag + mass * mass).sqrt())
}

/// The α-map: longitudinal part of a kept, transverse part scaled by
/// √(1−β²). World-frame components.
pub fn alpha_vector<T: Real>(a: &Direction<T>, kin: &Kinematics<T>) -> [T; 3] {
    // (1−β)(1+β) avoids the cancellation in 1−β² as β → 1.
    let gamma_inv = ((T::one() - kin.beta) * (T::one() + kin.beta)).sqrt();
    let na = kin.n.dot(a);
    let [ax, ay, az] = a.components();
    let [nx, ny, nz] = kin.n.components();
    let c = (T::one() - gamma_inv) * na;
    [
        gamma_inv * ax + c * nx,
        gamma_inv * ay + c * ny,
        gamma_inv * az + c * nz,
    ]
}

/// |α| = √(1 + β²((n·a)² − 1)), evaluated in closed form.
pub fn alpha_norm<T: Real>(a: &Direction<T>, kin: &Kinematics<T>) -> T {
    let na = kin.n.dot(a);
    let b2 = kin.beta * kin.beta;
    // 1 + β²((n·a)² − 1) rewritten as (1−β)(1+β) + β²(n·a)².
    let g2 = (T::one() - kin.beta) * (T::one() + kin.beta);
    (g2 + b2 * na * na).max(T::zero()).sqrt()
}

/// Orthonormal triad (e1, e2, n) adapted to the momentum direction.
/// For n = ±ẑ the triad is (x̂, ŷ, n); otherwise e1 = normalize(ẑ×n),
/// e2 = n×e1.
pub fn adapted_triad<T: Real>(n: &Direction<T>) -> ([T; 3], [T; 3], [T; 3]) {
    let [nx, ny, nz] = n.components();
    let cross = (nx * nx + ny * ny).sqrt();
    if cross < real(1e-12) {
        return (
            [T::one(), T::zero(), T::zero()],
            [T::zero(), T::one(), T::zero()],
            [nx, ny, nz],
        );
    }
    // ẑ × n = (−ny, nx, 0)
    let e1 = [-ny / cross, nx / cross, T::zero()];
    // n × e1
    let e2 = [
        ny * e1[2] - nz * e1[1],
        nz * e1[0] - nx * e1[2],
        nx * e1[1] - ny * e1[0],
    ];
    (e1, e2, [nx, ny, nz])
}

/// Spin projection along a as a Hermitian 2×2 matrix (α·σ/2) in the
/// helicity basis quantized along n, together with the α-vector it came
/// from.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinObservable<T> {
    pub direction_a: Direction<T>,
    pub kin: Kinematics<T>,
    /// World-frame α components.
    pub alpha: [T; 3],
    pub matrix: ComplexMat2<T>,
}

pub fn spin_projection_matrix<T: Real>(a: &Direction<T>, kin: &Kinematics<T>) -> SpinObservable<T> {
    let alpha = alpha_vector(a, kin);
    let (e1, e2, e3) = adapted_triad(&kin.n);
    let dot = |u: &[T; 3], v: &[T; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let comps = [dot(&alpha, &e1), dot(&alpha, &e2), dot(&alpha, &e3)];
    let matrix = ComplexMat2::from_pauli_vector(comps).scale(real(0.5));
    SpinObservable {
        direction_a: *a,
        kin: *kin,
        alpha,
        matrix,
    }
}

/// Spin-projection spectrum for total spin j: the 2j+1 values j₃·|α| in
/// ascending order, j₃ = −j..+j.
pub fn spin_eigenvalues<T: Real>(
    j: T,
    a: &Direction<T>,
    kin: &Kinematics<T>,
) -> Result<Vec<T>, Error> {
    let two_j = j * real(2.0);
    let rounded = two_j.round();
    if (two_j - rounded).abs() > real(1e-9) {
        return Err(Error::InvalidSpin);
    }
    let count = rounded.to_usize().filter(|&c| c >= 1).ok_or(Error::InvalidSpin)?;
    let norm = alpha_norm(a, kin);
    let mut out = Vec::with_capacity(count + 1);
    for k in 0..=count {
        let j3 = real::<T>(k as f64) - j;
        out.push(j3 * norm);
    }
    Ok(out)
}

/// The three spin-component matrices along the adapted triad:
/// transverse components scale by √(1−β²), the longitudinal one is the
/// helicity operator σz/2.
pub fn spin_component_matrices<T: Real>(
    kin: &Kinematics<T>,
) -> (ComplexMat2<T>, ComplexMat2<T>, ComplexMat2<T>) {
    let half = real::<T>(0.5);
    let gamma_inv = (T::one() - kin.beta * kin.beta).sqrt();
    let s1 = ComplexMat2::pauli_x().scale(half * gamma_inv);
    let s2 = ComplexMat2::pauli_y().scale(half * gamma_inv);
    let s3 = ComplexMat2::pauli_z().scale(half);
    (s1, s2, s3)
}

/// Deviation of the component algebra from the contracted bracket:
/// d12 = ‖[S1,S2] − i(1−β²)S3‖∞, d23 = ‖[S2,S3] − iS1‖∞,
/// d31 = ‖[S3,S1] − iS2‖∞. All three vanish identically; d12 carries
/// the (1−β²) contraction factor.
pub fn commutator_defect<T: Real>(kin: &Kinematics<T>) -> (T, T, T) {
    use num_complex::Complex;
    let (s1, s2, s3) = spin_component_matrices(kin);
    let i = Complex::new(T::zero(), T::one());
    let contraction = T::one() - kin.beta * kin.beta;
    let d12 = s1
        .commutator(&s2)
        .sub(&s3.scale_complex(i).scale(contraction))
        .inf_norm();
    let d23 = s2.commutator(&s3).sub(&s1.scale_complex(i)).inf_norm();
    let d31 = s3.commutator(&s1).sub(&s2.scale_complex(i)).inf_norm();
    (d12, d23, d31)
}
