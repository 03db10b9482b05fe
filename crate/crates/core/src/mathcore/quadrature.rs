//! Gauss-Hermite quadrature for the weight function exp(−x²).
//!
//! Nodes are roots of the order-n Hermite polynomial, located by Newton
//! iteration on the orthonormal three-term recurrence; weights come from
//! the Christoffel sum 1/Σ pₖ(x)². No tables are shipped.

use super::{real, Real};
use crate::Error;

/// Nodes and weights of an n-point Gauss-Hermite rule.
///
/// Exact for polynomials up to degree 2n−1 under exp(−x²);
/// Σ wᵢ = √π.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Orthonormal Hermite values (p₀..p_n) and p_n' at x.
fn hermite_eval<T: Real>(order: usize, x: T) -> (Vec<T>, T) {
    let mut p = Vec::with_capacity(order + 1);
    // p₀ = π^(−1/4)
    p.push(real::<T>(std::f64::consts::PI.powf(-0.25)));
    if order == 0 {
        return (p, T::zero());
    }
    for k in 0..order {
        let kf = real::<T>(k as f64);
        let k1 = real::<T>((k + 1) as f64);
        let a = (real::<T>(2.0) / k1).sqrt();
        let prev = if k == 0 { T::zero() } else { p[k - 1] };
        let next = x * a * p[k] - (kf / k1).sqrt() * prev;
        p.push(next);
    }
    let deriv = (real::<T>(2.0) * real::<T>(order as f64)).sqrt() * p[order - 1];
    (p, deriv)
}

/// Build the n-point rule. Supported orders: 1..=64.
pub fn gauss_hermite<T: Real>(order: usize) -> Result<QuadratureRule<T>, Error> {
    if order == 0 || order > 64 {
        return Err(Error::OrderOutOfRange(order));
    }
    let n = order;
    let nf = n as f64;
    let tol = real::<T>(1e-14).max(T::epsilon() * real(10.0));
    let half = n.div_ceil(2);
    let mut roots: Vec<T> = Vec::with_capacity(half);
    let mut weights_half: Vec<T> = Vec::with_capacity(half);

    for i in 0..half {
        // Initial guesses, largest root first (standard asymptotic seeds).
        let mut z: T = match i {
            0 => real((2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0)),
            1 => roots[0] - real::<T>(1.14 * nf.powf(0.426)) / roots[0],
            2 => real::<T>(1.86) * roots[1] - real::<T>(0.86) * roots[0],
            3 => real::<T>(1.91) * roots[2] - real::<T>(0.91) * roots[1],
            _ => real::<T>(2.0) * roots[i - 1] - roots[i - 2],
        };
        // Newton on p_n.
        let mut converged = false;
        for _ in 0..200 {
            let (p, dp) = hermite_eval(n, z);
            let step = p[n] / dp;
            z -= step;
            if step.abs() <= tol * z.abs().max(T::one()) {
                converged = true;
                break;
            }
        }
        debug_assert!(converged, "Newton failed for order {n}");
        // Odd orders have a root pinned at 0 by symmetry.
        if n % 2 == 1 && i == half - 1 {
            z = T::zero();
        }
        let (p, _) = hermite_eval(n, z);
        let chris: T = p[..n].iter().fold(T::zero(), |s, &v| s + v * v);
        roots.push(z);
        weights_half.push(T::one() / chris);
    }

    // roots[] holds the non-negative roots in descending order; mirror
    // them into the full symmetric, ascending node list.
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n / 2 {
        nodes.push(-roots[i]);
        weights.push(weights_half[i]);
    }
    if n % 2 == 1 {
        nodes.push(T::zero());
        weights.push(weights_half[half - 1]);
    }
    for i in (0..n / 2).rev() {
        nodes.push(roots[i]);
        weights.push(weights_half[i]);
    }

    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(
            gauss_hermite::<f64>(0),
            Err(Error::OrderOutOfRange(0))
        ));
        assert!(matches!(
            gauss_hermite::<f64>(65),
            Err(Error::OrderOutOfRange(65))
        ));
    }

    #[test]
    fn order_one() {
        let r = gauss_hermite::<f64>(1).unwrap();
        assert_eq!(r.nodes.len(), 1);
        assert!(r.nodes[0].abs() < 1e-15);
        assert!((r.weights[0] - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn order_two_matches_tables() {
        let r = gauss_hermite::<f64>(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.nodes[0] + s).abs() < 1e-14);
        assert!((r.nodes[1] - s).abs() < 1e-14);
        assert!((r.weights[0] - PI.sqrt() / 2.0).abs() < 1e-14);
        assert!((r.weights[1] - PI.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn fourth_moment_order_five() {
        // ∫ x⁴ e^(−x²) dx = (3/4)√π
        let r = gauss_hermite::<f64>(5).unwrap();
        let m4: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(&x, &w)| w * x.powi(4))
            .sum();
        assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-12, "m4 {m4}");
    }

    #[test]
    fn structure_all_orders() {
        for n in 1..=64 {
            let r = gauss_hermite::<f64>(n).unwrap();
            assert_eq!(r.nodes.len(), n);
            let sum_w: f64 = r.weights.iter().sum();
            assert!((sum_w - PI.sqrt()).abs() < 1e-10, "order {n}: Σw {sum_w}");
            for i in 1..n {
                assert!(r.nodes[i] > r.nodes[i - 1], "order {n}: nodes not increasing");
            }
            for i in 0..n {
                let mirrored = r.nodes[n - 1 - i];
                assert!(
                    (r.nodes[i] + mirrored).abs() < 1e-13,
                    "order {n}: asymmetric nodes"
                );
                assert!((r.weights[i] - r.weights[n - 1 - i]).abs() < 1e-13);
            }
        }
    }

    fn hermite_phys(m: usize, x: f64) -> f64 {
        // Physicists' Hermite via recurrence.
        let mut h0 = 1.0;
        if m == 0 {
            return h0;
        }
        let mut h1 = 2.0 * x;
        for k in 1..m {
            let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
            h0 = h1;
            h1 = h2;
        }
        h1
    }

    #[test]
    fn hermite_orthogonality_under_rule() {
        let order = 12;
        let r = gauss_hermite::<f64>(order).unwrap();
        for m in 0..6 {
            for n in 0..6 {
                if m + n >= 2 * order {
                    continue;
                }
                let s: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(&x, &w)| w * hermite_phys(m, x) * hermite_phys(n, x))
                    .sum();
                // ⟨H_m, H_n⟩ = δ_mn · 2^m m! √π
                let want = if m == n {
                    2f64.powi(m as i32) * (1..=m).product::<usize>().max(1) as f64 * PI.sqrt()
                } else {
                    0.0
                };
                let scale = want.abs().max(1.0);
                assert!((s - want).abs() / scale < 1e-9, "m={m} n={n}: {s} vs {want}");
            }
        }
    }
}
