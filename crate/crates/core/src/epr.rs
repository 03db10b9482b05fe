//! Two-particle singlet correlations for boosted measurement axes.
//!
//! Both particles move along the same n with the same β. Normalizing each
//! spin projection by its top eigenvalue gives ±1-valued observables whose
//! singlet correlation is
//!
//! ```text
//! E(a, b) = −(a·b − β²·a⊥·b⊥) / (|α(a)|·|α(b)|)
//! ```
//!
//! equivalently −α̂(a)·α̂(b). Three regimes follow: axes in the plane
//! perpendicular to n reproduce the nonrelativistic −a·b for every β; at
//! β = 1 every non-degenerate correlation collapses to
//! −sign(n·a)·sign(n·b); and the orthogonal configuration with
//! n·a = n·b = 1/√2 interpolates as −β²/(2−β²).
//!
//! The same number is computed two independent ways: `correlation_analytic`
//! evaluates the closed form, `correlation_oracle` builds the 4×4 operator
//! and takes the expectation in the explicit singlet vector.

use num_complex::Complex;

use crate::mathcore::{
    expectation, gauss_hermite, kron2, real, ComplexMat2, Real, RngStream, StateVector4,
};
use crate::relspin::{alpha_norm, alpha_vector, beta_from_momentum, Direction, Kinematics};
use crate::Error;

/// |α| below this is treated as a collapsed spectrum (β = 1, a ⊥ n).
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Antisymmetric two-particle state with total helicity zero:
/// (|+,−⟩ − |−,+⟩)/√2 in the product helicity basis.
pub fn singlet_state<T: Real>() -> StateVector4<T> {
    let s = real::<T>(std::f64::consts::FRAC_1_SQRT_2);
    let zero = Complex::new(T::zero(), T::zero());
    StateVector4::new([
        zero,
        Complex::new(s, T::zero()),
        Complex::new(-s, T::zero()),
        zero,
    ])
}

/// ±1-valued spin observable along a: (α̂·σ), the spin projection
/// normalized by its top eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryObservable<T> {
    pub direction: Direction<T>,
    pub kin: Kinematics<T>,
    /// α/|α|.
    pub unit_alpha: Direction<T>,
    /// (α̂·σ) in the adapted triad basis; involutive and traceless.
    pub matrix: ComplexMat2<T>,
}

pub fn binary_observable<T: Real>(
    a: &Direction<T>,
    kin: &Kinematics<T>,
) -> Result<BinaryObservable<T>, Error> {
    let norm = alpha_norm(a, kin);
    if norm <= real(DEGENERACY_EPS) {
        return Err(Error::DegenerateObservable);
    }
    let alpha = alpha_vector(a, kin);
    let unit_alpha = Direction::new(alpha[0], alpha[1], alpha[2])
        .map_err(|_| Error::DegenerateObservable)?;
    let (e1, e2, e3) = crate::relspin::adapted_triad(&kin.n);
    let u = unit_alpha.components();
    let dot = |v: &[T; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let matrix = ComplexMat2::from_pauli_vector([dot(&e1), dot(&e2), dot(&e3)]);
    Ok(BinaryObservable {
        direction: *a,
        kin: *kin,
        unit_alpha,
        matrix,
    })
}

fn check_nondegenerate<T: Real>(d: &Direction<T>, kin: &Kinematics<T>) -> Result<(), Error> {
    if alpha_norm(d, kin) <= real(DEGENERACY_EPS) {
        Err(Error::DegenerateObservable)
    } else {
        Ok(())
    }
}

/// Closed-form singlet correlation of the two ±1 observables.
///
/// At β = 1 the non-degenerate value is exactly −sign(n·a)·sign(n·b) and
/// is computed as such, keeping the ultrarelativistic limit free of
/// rounding.
pub fn correlation_analytic<T: Real>(
    a: &Direction<T>,
    b: &Direction<T>,
    kin: &Kinematics<T>,
) -> Result<T, Error> {
    check_nondegenerate(a, kin)?;
    check_nondegenerate(b, kin)?;
    let na = kin.n.dot(a);
    let nb = kin.n.dot(b);
    if kin.beta == T::one() {
        return Ok(-na.signum() * nb.signum());
    }
    let b2 = kin.beta * kin.beta;
    // a⊥·b⊥ = a·b − (n·a)(n·b). The numerator a·b − β²·a⊥·b⊥ equals
    // (1−β²)·a⊥·b⊥ + (n·a)(n·b); with 1−β² factored as (1−β)(1+β) the
    // form stays accurate as β → 1.
    let ab = a.dot(b);
    let perp = ab - na * nb;
    let g2 = (T::one() - kin.beta) * (T::one() + kin.beta);
    let num = g2 * perp + na * nb;
    let den = ((g2 + b2 * na * na) * (g2 + b2 * nb * nb)).sqrt();
    let e = -num / den;
    Ok(e.max(-T::one()).min(T::one()))
}

/// Independent route: ⟨ψ| â ⊗ b̂ |ψ⟩ with explicit 4×4 matrices.
pub fn correlation_oracle<T: Real>(
    a: &Direction<T>,
    b: &Direction<T>,
    kin: &Kinematics<T>,
) -> Result<T, Error> {
    let oa = binary_observable(a, kin)?;
    let ob = binary_observable(b, kin)?;
    let op = kron2(&oa.matrix, &ob.matrix);
    expectation(&singlet_state(), &op)
}

/// Born probabilities over joint outcomes, ordered
/// [(+,+), (+,−), (−,+), (−,−)]: P(r,s) = (1 + r·s·E)/4.
pub fn joint_distribution<T: Real>(
    a: &Direction<T>,
    b: &Direction<T>,
    kin: &Kinematics<T>,
) -> Result<[T; 4], Error> {
    let e = correlation_analytic(a, b, kin)?;
    let q = real::<T>(0.25);
    let same = q * (T::one() + e);
    let diff = q * (T::one() - e);
    Ok([same, diff, diff, same])
}

/// Monte Carlo estimate of the correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate<T> {
    pub e_hat: T,
    pub stderr: T,
    pub samples: u64,
    pub seed: u64,
}

/// Samples joint outcomes i.i.d. from the Born distribution with the
/// seeded stream; deterministic per seed.
pub fn mc_estimate<T: Real>(
    a: &Direction<T>,
    b: &Direction<T>,
    kin: &Kinematics<T>,
    samples: u64,
    seed: u64,
) -> Result<McEstimate<T>, Error> {
    if samples < 100 {
        return Err(Error::InvalidSampleCount(samples));
    }
    let p = joint_distribution(a, b, kin)?;
    // Cumulative thresholds over [(+,+), (+,−), (−,+), (−,−)].
    let c0 = p[0];
    let c2 = c0 + p[1] + p[2];
    let mut rng = RngStream::new(seed);
    let mut sum: i64 = 0;
    for _ in 0..samples {
        let u: T = rng.next_real();
        // r·s is +1 for the outer outcomes, −1 for the middle two.
        let product = if u < c0 || u >= c2 { 1 } else { -1 };
        sum += product;
    }
    let e_hat = real::<T>(sum as f64) / real(samples as f64);
    let var = (T::one() - e_hat * e_hat).max(T::zero());
    let stderr = (var / real(samples as f64)).sqrt();
    Ok(McEstimate {
        e_hat,
        stderr,
        samples,
        seed,
    })
}

/// Momentum-space packet: Gaussian in |p| around `p_mean` with width
/// `p_sigma`, moving along n.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketSpec<T> {
    pub mass: T,
    pub p_mean: T,
    pub p_sigma: T,
    pub n: Direction<T>,
    pub quadrature_order: usize,
    /// Set when p_sigma ≥ p_mean/3 with p_mean > 0: the packet is wide
    /// enough that the narrow-packet approximation is questionable.
    pub wide: bool,
}

impl<T: Real> PacketSpec<T> {
    pub fn new(
        mass: T,
        p_mean: T,
        p_sigma: T,
        n: Direction<T>,
        quadrature_order: usize,
    ) -> Result<Self, Error> {
        if mass <= T::zero() || !mass.is_finite() {
            return Err(Error::InvalidMass);
        }
        if p_mean < T::zero() || !p_mean.is_finite() {
            return Err(Error::InvalidPacketSpec("p_mean must be >= 0".into()));
        }
        if p_sigma <= T::zero() || !p_sigma.is_finite() {
            return Err(Error::InvalidPacketSpec("p_sigma must be > 0".into()));
        }
        if quadrature_order == 0 || quadrature_order > 64 {
            return Err(Error::OrderOutOfRange(quadrature_order));
        }
        let wide = p_mean > T::zero() && p_sigma >= p_mean / real(3.0);
        Ok(Self {
            mass,
            p_mean,
            p_sigma,
            n,
            quadrature_order,
            wide,
        })
    }
}

/// Packet-averaged correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketAverage<T> {
    pub value: T,
    /// Number of quadrature nodes whose momentum went negative and was
    /// clamped to zero.
    pub clamped_nodes: usize,
}

/// Incoherent Gaussian-weighted average of the fixed-β correlation over
/// the packet's momentum distribution: Σᵢ (wᵢ/√π)·E(β(pᵢ)) with
/// pᵢ = p_mean + √2·p_sigma·xᵢ over Gauss-Hermite nodes.
pub fn packet_average<T: Real>(
    a: &Direction<T>,
    b: &Direction<T>,
    spec: &PacketSpec<T>,
) -> Result<PacketAverage<T>, Error> {
    let rule = gauss_hermite::<T>(spec.quadrature_order)?;
    let sqrt_pi = real::<T>(std::f64::consts::PI).sqrt();
    let sqrt2 = real::<T>(2.0).sqrt();
    let mut value = T::zero();
    let mut clamped = 0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let mut p = spec.p_mean + sqrt2 * spec.p_sigma * x;
        if p < T::zero() {
            p = T::zero();
            clamped += 1;
        }
        let beta = beta_from_momentum(spec.mass, p)?;
        let kin = Kinematics::from_beta(spec.n, beta)?;
        value += (w / sqrt_pi) * correlation_analytic(a, b, &kin)?;
    }
    Ok(PacketAverage {
        value,
        clamped_nodes: clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathcore::eig2_hermitian;

    type D = Direction<f64>;
    type K = Kinematics<f64>;

    fn kin(beta: f64) -> K {
        K::from_beta(D::z_axis(), beta).unwrap()
    }

    fn eq16_dirs() -> (D, D) {
        let a = D::new(1.0, 0.0, 1.0).unwrap();
        let b = D::new(-1.0, 0.0, 1.0).unwrap();
        (a, b)
    }

    const EQ16_AT_06: f64 = -0.36 / 1.64;

    #[test]
    fn singlet_is_normalized_and_antisymmetric() {
        let psi = singlet_state::<f64>();
        assert!((psi.norm_sq() - 1.0).abs() < 1e-15);
        // Swapping the tensor factors permutes amplitudes (0,2,1,3).
        let swapped = StateVector4::new([psi.amp[0], psi.amp[2], psi.amp[1], psi.amp[3]]);
        for i in 0..4 {
            assert_eq!(swapped.amp[i], -psi.amp[i]);
        }
    }

    #[test]
    fn singlet_zz_anticorrelated() {
        let psi = singlet_state::<f64>();
        let zz = kron2(&ComplexMat2::pauli_z(), &ComplexMat2::pauli_z());
        assert!((expectation(&psi, &zz).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn binary_observable_shapes() {
        // Along n: the helicity sign operator σz in the adapted basis.
        let ob = binary_observable(&D::z_axis(), &kin(0.77)).unwrap();
        assert!(ob.matrix.sub(&ComplexMat2::pauli_z()).inf_norm() < 1e-14);

        // Transverse at β < 1: unit_alpha = a itself.
        let ob = binary_observable(&D::x_axis(), &kin(0.6)).unwrap();
        let [ux, uy, uz] = ob.unit_alpha.components();
        assert!((ux - 1.0).abs() < 1e-14 && uy.abs() < 1e-14 && uz.abs() < 1e-14);

        // Transverse at β = 1: spectrum collapses.
        assert!(matches!(
            binary_observable(&D::x_axis(), &kin(1.0)),
            Err(Error::DegenerateObservable)
        ));
    }

    #[test]
    fn binary_observable_involutive_traceless() {
        let mut rng = RngStream::new(31);
        for _ in 0..1000 {
            let a = random_direction(&mut rng);
            let n = random_direction(&mut rng);
            let beta = rng.next_uniform() * (1.0 - 1e-6);
            let k = K::from_beta(n, beta).unwrap();
            let ob = binary_observable(&a, &k).unwrap();
            let sq = ob.matrix.matmul(&ob.matrix);
            assert!(sq.sub(&ComplexMat2::identity()).inf_norm() < 1e-12);
            assert!(ob.matrix.trace().norm() < 1e-12);
            let (lo, hi) = eig2_hermitian(&ob.matrix).unwrap();
            assert!((lo + 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        }
    }

    fn random_direction(rng: &mut RngStream) -> D {
        let z = 2.0 * rng.next_uniform() - 1.0;
        let phi = 2.0 * std::f64::consts::PI * rng.next_uniform();
        let r = (1.0 - z * z).sqrt();
        D::new(r * phi.cos(), r * phi.sin(), z).unwrap()
    }

    #[test]
    fn perfect_anticorrelation_same_axis() {
        for beta in [0.0, 0.4, 0.95] {
            let a = D::new(0.2, -0.4, 0.6).unwrap();
            let e = correlation_analytic(&a, &a, &kin(beta)).unwrap();
            assert!((e + 1.0).abs() < 1e-14, "beta {beta}: {e}");
        }
    }

    #[test]
    fn ultrarelativistic_signs() {
        let k = kin(1.0);
        let a = D::new(0.3, 0.1, 0.5).unwrap();
        let b = D::new(-0.2, 0.4, 0.7).unwrap();
        assert_eq!(correlation_analytic(&a, &b, &k).unwrap(), -1.0);
        let b_flipped = D::new(-0.2, 0.4, -0.7).unwrap();
        assert_eq!(correlation_analytic(&a, &b_flipped, &k).unwrap(), 1.0);
    }

    #[test]
    fn orthogonal_configuration_interpolation() {
        let (a, b) = eq16_dirs();
        let e = correlation_analytic(&a, &b, &kin(0.6)).unwrap();
        assert!((e - EQ16_AT_06).abs() < 1e-14);
        assert!(correlation_analytic(&a, &b, &kin(0.0)).unwrap().abs() < 1e-14);
        assert_eq!(correlation_analytic(&a, &b, &kin(1.0)).unwrap(), -1.0);
    }

    #[test]
    fn oracle_matches_analytic() {
        let mut rng = RngStream::new(12);
        for _ in 0..5000 {
            let a = random_direction(&mut rng);
            let b = random_direction(&mut rng);
            let n = random_direction(&mut rng);
            let beta = rng.next_uniform() * (1.0 - 1e-6);
            let k = K::from_beta(n, beta).unwrap();
            let ea = correlation_analytic(&a, &b, &k).unwrap();
            let eo = correlation_oracle(&a, &b, &k).unwrap();
            assert!((ea - eo).abs() < 1e-12, "{ea} vs {eo}");
        }
    }

    #[test]
    fn analytic_equals_negative_unit_alpha_dot() {
        let mut rng = RngStream::new(13);
        for _ in 0..2000 {
            let a = random_direction(&mut rng);
            let b = random_direction(&mut rng);
            let n = random_direction(&mut rng);
            let beta = rng.next_uniform() * (1.0 - 1e-6);
            let k = K::from_beta(n, beta).unwrap();
            let oa = binary_observable(&a, &k).unwrap();
            let ob = binary_observable(&b, &k).unwrap();
            let e = correlation_analytic(&a, &b, &k).unwrap();
            assert!((e + oa.unit_alpha.dot(&ob.unit_alpha)).abs() < 1e-12);
        }
    }

    #[test]
    fn joint_distribution_shapes() {
        let a = D::x_axis();
        let k = kin(0.0);
        // E = −1 for b = a
        let p = joint_distribution(&a, &a, &k).unwrap();
        assert!(p[0].abs() < 1e-14 && p[3].abs() < 1e-14);
        assert!((p[1] - 0.5).abs() < 1e-14 && (p[2] - 0.5).abs() < 1e-14);

        // E = 0 for orthogonal axes at rest
        let p = joint_distribution(&D::x_axis(), &D::y_axis(), &k).unwrap();
        for v in p {
            assert!((v - 0.25).abs() < 1e-14);
        }

        // Interpolated case
        let (a, b) = eq16_dirs();
        let p = joint_distribution(&a, &b, &kin(0.6)).unwrap();
        assert!((p[0] - (1.0 + EQ16_AT_06) / 4.0).abs() < 1e-14);
        let total: f64 = p.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
        // Uniform marginals
        assert!((p[0] + p[1] - 0.5).abs() < 1e-14);
        assert!((p[0] + p[2] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn joint_distribution_matches_projector_oracle() {
        // Independent route: P(r,s) = ⟨ψ|(I + r·â)/2 ⊗ (I + s·b̂)/2|ψ⟩
        let (a, b) = eq16_dirs();
        let k = kin(0.6);
        let oa = binary_observable(&a, &k).unwrap();
        let ob = binary_observable(&b, &k).unwrap();
        let psi = singlet_state::<f64>();
        let p = joint_distribution(&a, &b, &k).unwrap();
        let outcomes = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
        for (idx, (r, s)) in outcomes.iter().enumerate() {
            let pa = ComplexMat2::identity().add(&oa.matrix.scale(*r)).scale(0.5);
            let pb = ComplexMat2::identity().add(&ob.matrix.scale(*s)).scale(0.5);
            let prob = expectation(&psi, &kron2(&pa, &pb)).unwrap();
            assert!((prob - p[idx]).abs() < 1e-13, "outcome {idx}");
        }
    }

    #[test]
    fn mc_perfect_anticorrelation() {
        let a = D::x_axis();
        let r = mc_estimate(&a, &a, &kin(0.0), 1000, 5).unwrap();
        assert_eq!(r.e_hat, -1.0);
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn mc_converges_and_is_deterministic() {
        let (a, b) = eq16_dirs();
        let k = kin(0.6);
        let r1 = mc_estimate(&a, &b, &k, 1_000_000, 7).unwrap();
        assert!((r1.e_hat - EQ16_AT_06).abs() <= 0.004, "{}", r1.e_hat);
        let r2 = mc_estimate(&a, &b, &k, 1_000_000, 7).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn mc_rejects_small_samples() {
        let a = D::x_axis();
        assert!(matches!(
            mc_estimate(&a, &a, &kin(0.0), 99, 1),
            Err(Error::InvalidSampleCount(99))
        ));
    }

    #[test]
    fn packet_single_node_is_plane_wave() {
        let (a, b) = eq16_dirs();
        let spec = PacketSpec::new(1.0, 0.75, 0.05, D::z_axis(), 1).unwrap();
        let avg = packet_average(&a, &b, &spec).unwrap();
        let plane = correlation_analytic(&a, &b, &kin(0.6)).unwrap();
        assert!((avg.value - plane).abs() < 1e-14);
        assert_eq!(avg.clamped_nodes, 0);
    }

    #[test]
    fn packet_narrow_width_recovers_plane_wave() {
        let (a, b) = eq16_dirs();
        let spec = PacketSpec::new(1.0, 0.75, 0.75e-9, D::z_axis(), 16).unwrap();
        let avg = packet_average(&a, &b, &spec).unwrap();
        let plane = correlation_analytic(&a, &b, &kin(0.6)).unwrap();
        assert!((avg.value - plane).abs() < 1e-9);
    }

    #[test]
    fn packet_matches_trapezoid_oracle() {
        // Brute-force oracle: 10⁵-point trapezoid over ±8σ.
        let (a, b) = eq16_dirs();
        let spec = PacketSpec::new(1.0, 0.75, 0.05, D::z_axis(), 16).unwrap();
        let avg = packet_average(&a, &b, &spec).unwrap();

        let m = 100_000;
        let lo = spec.p_mean - 8.0 * spec.p_sigma;
        let hi = spec.p_mean + 8.0 * spec.p_sigma;
        let h = (hi - lo) / m as f64;
        let integrand = |p: f64| {
            let p = p.max(0.0);
            let beta = beta_from_momentum(spec.mass, p).unwrap();
            let k = K::from_beta(spec.n, beta).unwrap();
            let g = (-(p - spec.p_mean).powi(2) / (2.0 * spec.p_sigma.powi(2))).exp();
            g * correlation_analytic(&a, &b, &k).unwrap()
        };
        let mut num = 0.5 * (integrand(lo) + integrand(hi));
        let mut den = (-(lo - spec.p_mean).powi(2) / (2.0 * spec.p_sigma.powi(2))).exp() * 0.5
            + (-(hi - spec.p_mean).powi(2) / (2.0 * spec.p_sigma.powi(2))).exp() * 0.5;
        for i in 1..m {
            let p = lo + i as f64 * h;
            num += integrand(p);
            den += (-(p - spec.p_mean).powi(2) / (2.0 * spec.p_sigma.powi(2))).exp();
        }
        let oracle = num / den;
        assert!((avg.value - oracle).abs() < 0.002, "{} vs {oracle}", avg.value);
        assert!((avg.value - EQ16_AT_06).abs() < 0.002);
    }

    #[test]
    fn packet_clamps_negative_momenta() {
        let (a, b) = eq16_dirs();
        let spec = PacketSpec::new(1.0, 0.1, 0.5, D::z_axis(), 16).unwrap();
        assert!(spec.wide);
        let avg = packet_average(&a, &b, &spec).unwrap();
        assert!(avg.clamped_nodes > 0);
        assert!(avg.value.is_finite());
    }

    #[test]
    fn packet_spec_validation() {
        let n = D::z_axis();
        assert!(matches!(
            PacketSpec::new(0.0, 1.0, 0.1, n, 8),
            Err(Error::InvalidMass)
        ));
        assert!(matches!(
            PacketSpec::new(1.0, 1.0, 0.0, n, 8),
            Err(Error::InvalidPacketSpec(_))
        ));
        assert!(matches!(
            PacketSpec::new(1.0, 1.0, 0.1, n, 65),
            Err(Error::OrderOutOfRange(65))
        ));
    }
}
