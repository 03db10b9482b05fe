//! Derivative-free simplex (Nelder-Mead) minimizer for small dimensions
//! (k ≤ 8). Deterministic given the starting point.

use super::{real, Real};

/// Outcome of a simplex descent.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeResult<T> {
    pub x: Vec<T>,
    pub f: T,
    pub iters: usize,
    /// False when the iteration budget ran out before the simplex
    /// f-spread dropped below tolerance (best-so-far is still returned).
    pub converged: bool,
}

/// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
/// contract 1/2, shrink 1/2). Terminates when the simplex f-spread falls
/// below `tol` or after `max_iter` iterations.
pub fn minimize<T, F>(f: F, x0: &[T], tol: T, max_iter: usize) -> MinimizeResult<T>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    let k = x0.len();
    assert!((1..=8).contains(&k), "dimension must be 1..=8");
    let alpha = T::one();
    let gamma = real::<T>(2.0);
    let rho = real::<T>(0.5);
    let sigma = real::<T>(0.5);

    // Initial simplex: x0 plus axis steps.
    let mut simplex: Vec<Vec<T>> = Vec::with_capacity(k + 1);
    simplex.push(x0.to_vec());
    for i in 0..k {
        let mut v = x0.to_vec();
        let step = if v[i] == T::zero() {
            real::<T>(0.25)
        } else {
            v[i].abs() * real::<T>(0.1)
        };
        v[i] += step;
        simplex.push(v);
    }
    let mut fvals: Vec<T> = simplex.iter().map(|v| f(v)).collect();

    let mut iters = 0;
    let mut converged = false;
    while iters < max_iter {
        iters += 1;
        // Order ascending by f; stable to keep determinism on ties.
        let mut order: Vec<usize> = (0..=k).collect();
        order.sort_by(|&a, &b| fvals[a].partial_cmp(&fvals[b]).unwrap_or(std::cmp::Ordering::Equal));
        let simplex_sorted: Vec<Vec<T>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let fvals_sorted: Vec<T> = order.iter().map(|&i| fvals[i]).collect();
        simplex = simplex_sorted;
        fvals = fvals_sorted;

        if fvals[k] - fvals[0] < tol {
            converged = true;
            break;
        }

        // Centroid of all but the worst.
        let mut centroid = vec![T::zero(); k];
        for v in &simplex[..k] {
            for (c, &x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        let inv = T::one() / real::<T>(k as f64);
        for c in centroid.iter_mut() {
            *c *= inv;
        }

        let lerp = |from: &[T], to: &[T], t: T| -> Vec<T> {
            from.iter()
                .zip(to)
                .map(|(&a, &b)| a + t * (b - a))
                .collect()
        };

        let worst = simplex[k].clone();
        let reflected = lerp(&worst, &centroid, T::one() + alpha);
        let fr = f(&reflected);

        if fr < fvals[0] {
            let expanded = lerp(&worst, &centroid, T::one() + gamma);
            let fe = f(&expanded);
            if fe < fr {
                simplex[k] = expanded;
                fvals[k] = fe;
            } else {
                simplex[k] = reflected;
                fvals[k] = fr;
            }
        } else if fr < fvals[k - 1] {
            simplex[k] = reflected;
            fvals[k] = fr;
        } else {
            // Contract toward the better of (worst, reflected).
            let (base, fb) = if fr < fvals[k] {
                (reflected.clone(), fr)
            } else {
                (worst.clone(), fvals[k])
            };
            let contracted = lerp(&centroid, &base, rho);
            let fc = f(&contracted);
            if fc < fb {
                simplex[k] = contracted;
                fvals[k] = fc;
            } else {
                // Shrink toward the best vertex.
                for i in 1..=k {
                    simplex[i] = lerp(&simplex[0].clone(), &simplex[i], sigma);
                    fvals[i] = f(&simplex[i]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=k {
        if fvals[i] < fvals[best] {
            best = i;
        }
    }
    MinimizeResult {
        x: simplex[best].clone(),
        f: fvals[best],
        iters,
        converged,
    }
}
