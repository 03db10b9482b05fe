//! Self-verification suites: closed-form limits and cross-route
//! equivalences, each reporting its worst observed error against a pinned
//! threshold. The CLI `check` subcommand and the acceptance tests both run
//! these.

use crate::epr::{correlation_analytic, correlation_oracle};
use crate::mathcore::{eig2_hermitian, RngStream};
use crate::relspin::{
    adapted_triad, alpha_norm, commutator_defect, spin_component_matrices,
    spin_projection_matrix, Direction, Kinematics,
};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub max_err: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn new(name: &'static str, max_err: f64, threshold: f64) -> Self {
        Self {
            name,
            max_err,
            threshold,
            passed: max_err <= threshold,
        }
    }
}

type D = Direction<f64>;
type K = Kinematics<f64>;

fn random_direction(rng: &mut RngStream) -> D {
    let z = 2.0 * rng.next_uniform() - 1.0;
    let phi = 2.0 * std::f64::consts::PI * rng.next_uniform();
    let r = (1.0 - z * z).sqrt();
    D::new(r * phi.cos(), r * phi.sin(), z).unwrap()
}

fn in_plane_direction(n: &D, rng: &mut RngStream) -> D {
    let (e1, e2, _) = adapted_triad(n);
    let phi = 2.0 * std::f64::consts::PI * rng.next_uniform();
    let (c, s) = (phi.cos(), phi.sin());
    D::new(
        c * e1[0] + s * e2[0],
        c * e1[1] + s * e2[1],
        c * e1[2] + s * e2[2],
    )
    .unwrap()
}

/// Closed form vs. explicit 4×4 matrix route over random configurations.
pub fn suite_oracle_equivalence(samples: usize) -> SuiteResult {
    let mut rng = RngStream::new(0x0A11CE);
    let mut max_err: f64 = 0.0;
    for _ in 0..samples {
        let a = random_direction(&mut rng);
        let b = random_direction(&mut rng);
        let n = random_direction(&mut rng);
        let beta = rng.next_uniform() * (1.0 - 1e-6);
        let kin = K::from_beta(n, beta).unwrap();
        let ea = correlation_analytic(&a, &b, &kin).unwrap();
        let eo = correlation_oracle(&a, &b, &kin).unwrap();
        max_err = max_err.max((ea - eo).abs());
    }
    SuiteResult::new("oracle_equivalence", max_err, 1e-12)
}

/// Axes in the plane perpendicular to the momentum reproduce −a·b for
/// every β.
pub fn suite_perpendicular_plane(pairs: usize, beta_points: usize) -> SuiteResult {
    let mut rng = RngStream::new(0xB0B);
    let mut max_err: f64 = 0.0;
    for _ in 0..pairs {
        let n = random_direction(&mut rng);
        let a = in_plane_direction(&n, &mut rng);
        let b = in_plane_direction(&n, &mut rng);
        for i in 0..beta_points {
            let beta = i as f64 / beta_points as f64;
            let kin = K::from_beta(n, beta).unwrap();
            let e = correlation_analytic(&a, &b, &kin).unwrap();
            max_err = max_err.max((e + a.dot(&b)).abs());
        }
    }
    SuiteResult::new("perpendicular_plane", max_err, 1e-12)
}

/// At β = 1 every non-degenerate correlation is exactly
/// −sign(n·a)·sign(n·b).
pub fn suite_lightlike_signs(pairs: usize) -> SuiteResult {
    let mut rng = RngStream::new(0x515);
    let mut max_err: f64 = 0.0;
    for _ in 0..pairs {
        let n = random_direction(&mut rng);
        let a = random_direction(&mut rng);
        let b = random_direction(&mut rng);
        if n.dot(&a).abs() < 1e-6 || n.dot(&b).abs() < 1e-6 {
            continue;
        }
        let kin = K::from_beta(n, 1.0).unwrap();
        let e = correlation_analytic(&a, &b, &kin).unwrap();
        let want = -n.dot(&a).signum() * n.dot(&b).signum();
        max_err = max_err.max((e - want).abs());
    }
    SuiteResult::new("lightlike_signs", max_err, 0.0)
}

/// The orthogonal configuration (a·b = 0, n·a = n·b = 1/√2) interpolates
/// as −β²/(2−β²), from 0 at rest to −1 at β = 1.
pub fn suite_orthogonal_interpolation(grid_points: usize) -> SuiteResult {
    let n = D::z_axis();
    let (a, b) = crate::chsh::orthogonal_pair(&n);
    let mut max_err: f64 = 0.0;
    for i in 0..grid_points {
        let beta = i as f64 / (grid_points - 1) as f64;
        let kin = K::from_beta(n, beta).unwrap();
        let e = correlation_analytic(&a, &b, &kin).unwrap();
        let want = -beta * beta / (2.0 - beta * beta);
        max_err = max_err.max((e - want).abs());
    }
    // Endpoints and the β = 0.6 reference value.
    let e0 = correlation_analytic(&a, &b, &K::from_beta(n, 0.0).unwrap()).unwrap();
    let e1 = correlation_analytic(&a, &b, &K::from_beta(n, 1.0).unwrap()).unwrap();
    max_err = max_err.max(e0.abs()).max((e1 + 1.0).abs());
    let e06 = correlation_analytic(&a, &b, &K::from_beta(n, 0.6).unwrap()).unwrap();
    max_err = max_err.max((e06 + 0.2195121951219512).abs());
    SuiteResult::new("orthogonal_interpolation", max_err, 1e-12)
}

/// Spin-projection spectra are ±|α|/2; the transverse spectrum collapses
/// at β = 1.
pub fn suite_spectrum(samples: usize) -> SuiteResult {
    let mut rng = RngStream::new(0x5EC);
    let mut max_err: f64 = 0.0;
    for _ in 0..samples {
        let a = random_direction(&mut rng);
        let n = random_direction(&mut rng);
        let beta = rng.next_uniform();
        let kin = K::from_beta(n, beta).unwrap();
        let obs = spin_projection_matrix(&a, &kin);
        let (lo, hi) = eig2_hermitian(&obs.matrix).unwrap();
        let half_norm = 0.5 * alpha_norm(&a, &kin);
        max_err = max_err.max((lo + half_norm).abs()).max((hi - half_norm).abs());
    }
    // β = 1 with a ⊥ n: both eigenvalues vanish.
    for _ in 0..100 {
        let n = random_direction(&mut rng);
        let a = in_plane_direction(&n, &mut rng);
        let kin = K::from_beta(n, 1.0).unwrap();
        let (lo, hi) = eig2_hermitian(&spin_projection_matrix(&a, &kin).matrix).unwrap();
        max_err = max_err.max(lo.abs()).max(hi.abs());
    }
    SuiteResult::new("spectrum", max_err, 1e-12)
}

/// Commutator algebra: [S2,S3] = iS1, [S3,S1] = iS2, and [S1,S2] =
/// i(1−β²)S3 with ‖[S1,S2]‖∞ = (1−β²)/2, exactly 0 at β = 1.
pub fn suite_contraction(grid_points: usize) -> SuiteResult {
    let mut max_err: f64 = 0.0;
    for i in 0..grid_points {
        let beta = i as f64 / (grid_points - 1) as f64;
        let kin = K::from_beta(D::z_axis(), beta).unwrap();
        let (d12, d23, d31) = commutator_defect(&kin);
        max_err = max_err.max(d12).max(d23).max(d31);
        let (s1, s2, _) = spin_component_matrices(&kin);
        let norm = s1.commutator(&s2).inf_norm();
        max_err = max_err.max((norm - (1.0 - beta * beta) / 2.0).abs());
    }
    let kin = K::from_beta(D::z_axis(), 1.0).unwrap();
    let (s1, s2, _) = spin_component_matrices(&kin);
    max_err = max_err.max(s1.commutator(&s2).inf_norm());
    SuiteResult::new("contraction", max_err, 1e-13)
}

/// Correlations are invariant under n → −n.
pub fn suite_n_parity(samples: usize) -> SuiteResult {
    let mut rng = RngStream::new(0xAB);
    let mut max_err: f64 = 0.0;
    for _ in 0..samples {
        let a = random_direction(&mut rng);
        let b = random_direction(&mut rng);
        let n = random_direction(&mut rng);
        let beta = rng.next_uniform() * (1.0 - 1e-6);
        let k1 = K::from_beta(n, beta).unwrap();
        let k2 = K::from_beta(n.neg(), beta).unwrap();
        let e1 = correlation_analytic(&a, &b, &k1).unwrap();
        let e2 = correlation_analytic(&a, &b, &k2).unwrap();
        max_err = max_err.max((e1 - e2).abs());
    }
    SuiteResult::new("n_parity", max_err, 1e-15)
}

/// The full suite at the scales the acceptance thresholds are pinned at.
pub fn run_all() -> Vec<SuiteResult> {
    vec![
        suite_oracle_equivalence(100_000),
        suite_perpendicular_plane(1000, 100),
        suite_lightlike_signs(1000),
        suite_orthogonal_interpolation(1000),
        suite_spectrum(10_000),
        suite_contraction(101),
        suite_n_parity(10_000),
    ]
}
