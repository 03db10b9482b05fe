//! CHSH functional over the relativistic singlet correlations, multi-start
//! maximization at fixed β, and β-scans.
//!
//! The functional is |E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)|. Measurement
//! directions live on the sphere as (θ, φ) pairs; the maximizer runs a
//! Nelder-Mead descent over all 8 angles from one deterministic
//! perpendicular-plane warm start plus seeded random restarts.

use crate::epr::correlation_analytic;
use crate::mathcore::{minimize, real, Real, RngStream};
use crate::relspin::{adapted_triad, Direction, Kinematics};
use crate::Error;

/// Four measurement settings (θ, φ) in radians, ordered (a, a′, b, b′).
/// θ ∈ [0, π], φ ∈ [−π, π] after canonicalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSet<T> {
    pub pairs: [(T, T); 4],
}

/// Unit vector (sinθcosφ, sinθsinφ, cosθ). Any finite angles are
/// accepted; the map itself range-reduces.
pub fn direction_from_angles<T: Real>(theta: T, phi: T) -> Direction<T> {
    let (st, ct) = (theta.sin(), theta.cos());
    Direction::new(st * phi.cos(), st * phi.sin(), ct)
        .expect("angle map always yields a unit vector")
}

impl<T: Real> AngleSet<T> {
    pub fn directions(&self) -> [Direction<T>; 4] {
        let d = |i: usize| direction_from_angles(self.pairs[i].0, self.pairs[i].1);
        [d(0), d(1), d(2), d(3)]
    }

    pub fn from_flat(x: &[T]) -> Self {
        Self {
            pairs: [(x[0], x[1]), (x[2], x[3]), (x[4], x[5]), (x[6], x[7])],
        }
    }

    pub fn to_flat(&self) -> [T; 8] {
        let p = &self.pairs;
        [
            p[0].0, p[0].1, p[1].0, p[1].1, p[2].0, p[2].1, p[3].0, p[3].1,
        ]
    }

    /// Map every pair to the fundamental domain θ ∈ [0, π], φ ∈ (−π, π]
    /// by round-tripping through the unit vector it denotes.
    pub fn canonicalize(&self) -> Self {
        let mut pairs = self.pairs;
        for p in pairs.iter_mut() {
            let [x, y, z] = direction_from_angles(p.0, p.1).components();
            let theta = z.min(T::one()).max(-T::one()).acos();
            let phi = y.atan2(x);
            *p = (theta, phi);
        }
        Self { pairs }
    }
}

/// |E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)| at fixed kinematics.
pub fn chsh_value<T: Real>(angles: &AngleSet<T>, kin: &Kinematics<T>) -> Result<T, Error> {
    let [a, ap, b, bp] = angles.directions();
    let e_ab = correlation_analytic(&a, &b, kin)?;
    let e_abp = correlation_analytic(&a, &bp, kin)?;
    let e_apb = correlation_analytic(&ap, &b, kin)?;
    let e_apbp = correlation_analytic(&ap, &bp, kin)?;
    Ok((e_ab + e_abp + e_apb - e_apbp).abs())
}

/// Outcome of a multi-start CHSH maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChshResult<T> {
    pub value: T,
    pub angles: AngleSet<T>,
    pub restarts_used: usize,
    pub converged: bool,
}

/// Spherical angles of a world-frame vector.
fn vector_to_angles<T: Real>(v: [T; 3]) -> (T, T) {
    let theta = v[2].min(T::one()).max(-T::one()).acos();
    let phi = v[1].atan2(v[0]);
    (theta, phi)
}

/// Deterministic warm start: the CHSH-optimal settings embedded in the
/// plane perpendicular to n (in-plane angles 0, π/2 for a, a′ and 5π/4,
/// 3π/4 for b, b′). At β = 1 that plane is degenerate, so all four
/// settings start on n instead.
fn warm_start<T: Real>(kin: &Kinematics<T>) -> AngleSet<T> {
    let (e1, e2, n) = adapted_triad(&kin.n);
    if kin.beta == T::one() {
        let p = vector_to_angles(n);
        return AngleSet {
            pairs: [p, p, p, p],
        };
    }
    let in_plane = |phi: f64| {
        let (c, s) = (real::<T>(phi.cos()), real::<T>(phi.sin()));
        vector_to_angles([
            c * e1[0] + s * e2[0],
            c * e1[1] + s * e2[1],
            c * e1[2] + s * e2[2],
        ])
    };
    use std::f64::consts::PI;
    AngleSet {
        pairs: [
            in_plane(0.0),
            in_plane(PI / 2.0),
            in_plane(5.0 * PI / 4.0),
            in_plane(3.0 * PI / 4.0),
        ],
    }
}

/// Directions too close to the β = 1 degenerate cone are rejected with
/// this penalty objective value (the maximizer sees it as a very bad S).
const LIGHTLIKE_MIN_PROJECTION: f64 = 0.1;

/// Multi-start maximization of the CHSH functional over all 8 angles.
///
/// The first start is the deterministic warm start, the remaining
/// `restarts − 1` are drawn from the seeded stream; ties on the maximal
/// value are broken by the lexicographically smallest canonicalized
/// angles. Deterministic per (kin, restarts, seed).
pub fn max_chsh<T: Real>(
    kin: &Kinematics<T>,
    restarts: usize,
    seed: u64,
    tol: T,
) -> Result<ChshResult<T>, Error> {
    assert!(restarts >= 1, "restarts must be >= 1");
    let lightlike = kin.beta == T::one();
    let objective = |x: &[T]| -> T {
        let angles = AngleSet::from_flat(x);
        if lightlike {
            for d in angles.directions() {
                if kin.n.dot(&d).abs() < real(LIGHTLIKE_MIN_PROJECTION) {
                    return real(10.0);
                }
            }
        }
        match chsh_value(&angles, kin) {
            Ok(v) => -v,
            Err(_) => real(10.0),
        }
    };

    let mut rng = RngStream::new(seed);
    let mut best: Option<(T, AngleSet<T>)> = None;
    let mut any_converged = false;

    for start_idx in 0..restarts {
        let start = if start_idx == 0 {
            warm_start(kin)
        } else {
            let mut pairs = [(T::zero(), T::zero()); 4];
            for p in pairs.iter_mut() {
                let u: T = rng.next_real();
                let v: T = rng.next_real();
                let theta = (real::<T>(2.0) * u - T::one()).min(T::one()).max(-T::one()).acos();
                let phi = real::<T>(std::f64::consts::PI) * (real::<T>(2.0) * v - T::one());
                *p = (theta, phi);
            }
            AngleSet { pairs }
        };
        let r = minimize(objective, &start.to_flat(), tol, 4000);
        any_converged |= r.converged;
        let value = -r.f;
        if value < T::zero() {
            // Start never left the penalty region; discard.
            continue;
        }
        let angles = AngleSet::from_flat(&r.x).canonicalize();
        let replace = match &best {
            None => true,
            Some((bv, ba)) => {
                value > *bv || (value == *bv && flat_lt(&angles.to_flat(), &ba.to_flat()))
            }
        };
        if replace {
            best = Some((value, angles));
        }
    }

    let (value, angles) = best.ok_or(Error::DegenerateObservable)?;
    Ok(ChshResult {
        value,
        angles,
        restarts_used: restarts,
        converged: any_converged,
    })
}

fn flat_lt<T: Real>(a: &[T; 8], b: &[T; 8]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// What a β-scan computes per row.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanCase<T> {
    /// Orthogonal-configuration correlation −β²/(2−β²), both routes.
    OrthogonalPair,
    /// CHSH value and the four correlations at fixed settings.
    FixedAngles(AngleSet<T>),
    /// Maximized CHSH value and the optimal angles.
    ChshMax,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions<T> {
    pub n: Direction<T>,
    pub restarts: usize,
    pub seed: u64,
    pub tol: T,
}

/// One scan row: either the payload values or the error that flagged it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow<T> {
    pub beta: T,
    pub values: Result<Vec<T>, Error>,
}

/// Ordered scan output with a declared column schema; `beta` is always
/// the first column.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable<T> {
    pub columns: Vec<String>,
    pub rows: Vec<ScanRow<T>>,
}

/// The orthogonal test pair: a·b = 0 with n·a = n·b = 1/√2, built on the
/// triad adapted to n.
pub fn orthogonal_pair<T: Real>(n: &Direction<T>) -> (Direction<T>, Direction<T>) {
    let (e1, _, nv) = adapted_triad(n);
    let a = Direction::new(e1[0] + nv[0], e1[1] + nv[1], e1[2] + nv[2]).unwrap();
    let b = Direction::new(nv[0] - e1[0], nv[1] - e1[1], nv[2] - e1[2]).unwrap();
    (a, b)
}

/// Run `case` over a strictly increasing β grid. Per-row errors flag the
/// row and the scan continues.
pub fn scan_beta<T: Real>(
    case: &ScanCase<T>,
    beta_grid: &[T],
    options: &ScanOptions<T>,
) -> Result<ScanTable<T>, Error> {
    for w in beta_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidBeta);
        }
    }
    let columns: Vec<String> = match case {
        ScanCase::OrthogonalPair => vec!["E_analytic".into(), "E_oracle".into()],
        ScanCase::FixedAngles(_) => vec![
            "S".into(),
            "E_ab".into(),
            "E_abp".into(),
            "E_apb".into(),
            "E_apbp".into(),
        ],
        ScanCase::ChshMax => {
            let mut c = vec!["S_max".into()];
            for name in ["a", "ap", "b", "bp"] {
                c.push(format!("theta_{name}"));
                c.push(format!("phi_{name}"));
            }
            c.push("converged".into());
            c
        }
    };

    let mut rows = Vec::with_capacity(beta_grid.len());
    for &beta in beta_grid {
        let kin = Kinematics::from_beta(options.n, beta)?;
        let values: Result<Vec<T>, Error> = match case {
            ScanCase::OrthogonalPair => {
                let (a, b) = orthogonal_pair(&options.n);
                correlation_analytic(&a, &b, &kin).and_then(|ea| {
                    crate::epr::correlation_oracle(&a, &b, &kin).map(|eo| vec![ea, eo])
                })
            }
            ScanCase::FixedAngles(angles) => {
                let [a, ap, b, bp] = angles.directions();
                (|| {
                    let e_ab = correlation_analytic(&a, &b, &kin)?;
                    let e_abp = correlation_analytic(&a, &bp, &kin)?;
                    let e_apb = correlation_analytic(&ap, &b, &kin)?;
                    let e_apbp = correlation_analytic(&ap, &bp, &kin)?;
                    Ok(vec![
                        (e_ab + e_abp + e_apb - e_apbp).abs(),
                        e_ab,
                        e_abp,
                        e_apb,
                        e_apbp,
                    ])
                })()
            }
            ScanCase::ChshMax => max_chsh(&kin, options.restarts, options.seed, options.tol)
                .map(|r| {
                    let mut v = vec![r.value];
                    v.extend_from_slice(&r.angles.to_flat());
                    v.push(if r.converged { T::one() } else { T::zero() });
                    v
                }),
        };
        rows.push(ScanRow { beta, values });
    }
    Ok(ScanTable { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    type D = Direction<f64>;
    type K = Kinematics<f64>;

    fn kin(beta: f64) -> K {
        K::from_beta(D::z_axis(), beta).unwrap()
    }

    #[test]
    fn angle_map_cases() {
        let d = direction_from_angles(0.0, 1.7);
        assert!(d.components()[2] - 1.0 == 0.0);
        let d = direction_from_angles(FRAC_PI_2, 0.0);
        let [x, y, z] = d.components();
        assert!((x - 1.0).abs() < 1e-15 && y.abs() < 1e-15 && z.abs() < 1e-15);
        let d = direction_from_angles(FRAC_PI_4, 0.0);
        let [x, _, z] = d.components();
        assert!((x - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((z - 1.0 / SQRT_2).abs() < 1e-15);
        let [x, y, z] = d.components();
        assert!((x * x + y * y + z * z - 1.0).abs() < 1e-15);
    }

    /// Optimal settings in the plane perpendicular to ẑ.
    fn textbook_angles() -> AngleSet<f64> {
        AngleSet {
            pairs: [
                (FRAC_PI_2, 0.0),
                (FRAC_PI_2, FRAC_PI_2),
                (FRAC_PI_2, 5.0 * PI / 4.0),
                (FRAC_PI_2, 3.0 * PI / 4.0),
            ],
        }
    }

    #[test]
    fn chsh_optimum_at_rest() {
        let s = chsh_value(&textbook_angles(), &kin(0.0)).unwrap();
        assert!((s - 2.0 * SQRT_2).abs() < 1e-12, "{s}");
    }

    #[test]
    fn chsh_perpendicular_plane_is_beta_independent() {
        let s = chsh_value(&textbook_angles(), &kin(0.9)).unwrap();
        assert!((s - 2.0 * SQRT_2).abs() < 1e-12, "{s}");
        for beta in [0.1, 0.5, 0.99, 1.0 - 1e-9] {
            let s = chsh_value(&textbook_angles(), &kin(beta)).unwrap();
            assert!((s - 2.0 * SQRT_2).abs() < 1e-12, "beta {beta}: {s}");
        }
    }

    #[test]
    fn chsh_equal_settings() {
        let a = (FRAC_PI_2, 0.0);
        let angles = AngleSet {
            pairs: [a, a, a, a],
        };
        let s = chsh_value(&angles, &kin(0.0)).unwrap();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn tsirelson_bound_randomized() {
        let mut rng = RngStream::new(99);
        for _ in 0..5000 {
            let mut pairs = [(0.0, 0.0); 4];
            for p in pairs.iter_mut() {
                let theta = (2.0 * rng.next_uniform() - 1.0).acos();
                let phi = PI * (2.0 * rng.next_uniform() - 1.0);
                *p = (theta, phi);
            }
            let beta = rng.next_uniform() * (1.0 - 1e-6);
            let s = chsh_value(&AngleSet { pairs }, &kin(beta)).unwrap();
            assert!(s <= 2.0 * SQRT_2 + 1e-9, "{s}");
        }
    }

    #[test]
    fn max_chsh_rest_frame() {
        let r = max_chsh(&kin(0.0), 8, 1, 1e-10).unwrap();
        assert!((r.value - 2.0 * SQRT_2).abs() < 1e-6, "{}", r.value);
        assert!(r.converged);
    }

    #[test]
    fn max_chsh_lightlike_collapses_to_two() {
        let r = max_chsh(&kin(1.0), 16, 1, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn max_chsh_deterministic() {
        let a = max_chsh(&kin(0.3), 8, 7, 1e-10).unwrap();
        let b = max_chsh(&kin(0.3), 8, 7, 1e-10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn max_chsh_dominates_any_fixed_setting() {
        let r = max_chsh(&kin(0.5), 8, 3, 1e-10).unwrap();
        let s = chsh_value(&textbook_angles(), &kin(0.5)).unwrap();
        assert!(r.value >= s - 1e-8);
    }

    #[test]
    fn canonicalize_fundamental_domain() {
        let raw = AngleSet {
            pairs: [(-0.4, 7.0), (4.0, -9.0), (0.1, 0.2), (3.3, 3.3)],
        };
        let canon = raw.canonicalize();
        for (i, (theta, phi)) in canon.pairs.iter().enumerate() {
            assert!((0.0..=PI).contains(theta), "pair {i}");
            assert!((-PI..=PI).contains(phi), "pair {i}");
            // Same direction before and after.
            let d0 = direction_from_angles(raw.pairs[i].0, raw.pairs[i].1);
            let d1 = direction_from_angles(*theta, *phi);
            assert!((d0.dot(&d1) - 1.0).abs() < 1e-12, "pair {i}");
        }
    }

    #[test]
    fn scan_orthogonal_pair() {
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let opts = ScanOptions {
            n: D::z_axis(),
            restarts: 4,
            seed: 1,
            tol: 1e-10,
        };
        let table = scan_beta(&ScanCase::OrthogonalPair, &grid, &opts).unwrap();
        assert_eq!(table.columns, vec!["E_analytic", "E_oracle"]);
        assert_eq!(table.rows.len(), 11);
        for row in &table.rows {
            let v = row.values.as_ref().unwrap();
            let want = -row.beta * row.beta / (2.0 - row.beta * row.beta);
            assert!((v[0] - want).abs() < 1e-12, "beta {}", row.beta);
            assert!((v[0] - v[1]).abs() < 1e-12);
        }
        let first = table.rows.first().unwrap().values.as_ref().unwrap();
        assert!(first[0].abs() < 1e-15);
        let last = table.rows.last().unwrap().values.as_ref().unwrap();
        assert_eq!(last[0], -1.0);
    }

    #[test]
    fn scan_rejects_non_increasing_grid() {
        let opts = ScanOptions {
            n: D::z_axis(),
            restarts: 1,
            seed: 1,
            tol: 1e-10,
        };
        assert!(scan_beta(&ScanCase::OrthogonalPair, &[0.5, 0.5], &opts).is_err());
    }

    #[test]
    fn scan_chsh_max_small_grid() {
        let opts = ScanOptions {
            n: D::z_axis(),
            restarts: 4,
            seed: 1,
            tol: 1e-9,
        };
        let table = scan_beta(&ScanCase::ChshMax, &[0.0, 0.5], &opts).unwrap();
        for row in &table.rows {
            let v = row.values.as_ref().unwrap();
            assert!((v[0] - 2.0 * SQRT_2).abs() < 1e-6, "beta {}", row.beta);
        }
    }
}
