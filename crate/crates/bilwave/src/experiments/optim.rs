//! A small derivative-free simplex (Nelder–Mead) maximiser with a hard
//! evaluation budget, for the low-dimensional extremiser search. The
//! objective involves nested quadrature, so gradients are unavailable and
//! the dimension is tiny; a simplex method is the standard tool here.

/// Outcome of a budgeted simplex run.
#[derive(Debug, Clone)]
pub struct SimplexOutcome {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    /// True when the simplex collapsed below tolerance before the budget
    /// ran out.
    pub converged: bool,
    /// Largest objective value seen at any evaluation during the run.
    pub max_seen: f64,
}

/// Maximise `f` from `start` with initial step `step`, spending at most
/// `budget` objective evaluations. Convergence: relative value spread of the
/// simplex below `tol`.
pub fn nelder_mead_max(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    budget: usize,
    tol: f64,
) -> SimplexOutcome {
    let n = start.len();
    let mut evals = 0usize;
    let mut max_seen = f64::NEG_INFINITY;
    // internally minimise -f
    let eval = |x: &[f64], evals: &mut usize, max_seen: &mut f64| -> f64 {
        *evals += 1;
        let v = f(x);
        if v > *max_seen {
            *max_seen = v;
        }
        if v.is_finite() {
            -v
        } else {
            f64::INFINITY
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(start, &mut evals, &mut max_seen);
    simplex.push((start.to_vec(), v0));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        let v = eval(&p, &mut evals, &mut max_seen);
        simplex.push((p, v));
    }

    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut converged = false;
    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        if (worst - best).abs() <= tol * (1.0 + best.abs()) {
            converged = true;
            break;
        }
        // centroid of all but the worst
        let mut cen = vec![0.0; n];
        for (p, _) in simplex.iter().take(n) {
            for (c, x) in cen.iter_mut().zip(p) {
                *c += x / n as f64;
            }
        }
        let at = |t: f64| -> Vec<f64> {
            cen.iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = at(alpha);
        let fr = eval(&xr, &mut evals, &mut max_seen);
        if fr < simplex[0].1 {
            // try expansion
            if evals >= budget {
                if fr < simplex[n].1 {
                    simplex[n] = (xr, fr);
                }
                break;
            }
            let xe = at(gamma);
            let fe = eval(&xe, &mut evals, &mut max_seen);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            if evals >= budget {
                break;
            }
            let xc = at(-rho);
            let fc = eval(&xc, &mut evals, &mut max_seen);
            if fc < simplex[n].1 {
                simplex[n] = (xc, fc);
            } else {
                // shrink toward the best vertex
                let best_p = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    for (x, b) in entry.0.iter_mut().zip(&best_p) {
                        *x = b + sigma * (*x - b);
                    }
                    if evals >= budget {
                        break;
                    }
                    entry.1 = eval(&entry.0.clone(), &mut evals, &mut max_seen);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    SimplexOutcome {
        best_point: simplex[0].0.clone(),
        best_value: -simplex[0].1,
        evaluations: evals,
        converged,
        max_seen,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximises_a_quadratic() {
        let f = |x: &[f64]| -((x[0] - 1.5).powi(2) + 2.0 * (x[1] + 0.5).powi(2));
        let out = nelder_mead_max(f, &[0.0, 0.0], 0.5, 400, 1e-12);
        assert!(out.converged);
        assert!((out.best_point[0] - 1.5).abs() <= 1e-4, "{:?}", out.best_point);
        assert!((out.best_point[1] + 0.5).abs() <= 1e-4);
        assert!(out.best_value >= -1e-7);
    }

    #[test]
    fn respects_budget() {
        let f = |x: &[f64]| -x.iter().map(|v| v * v).sum::<f64>();
        let out = nelder_mead_max(f, &[5.0, 5.0, 5.0, 5.0], 1.0, 30, 1e-16);
        assert!(out.evaluations <= 30 + 4);
        assert!(!out.converged);
    }

    #[test]
    fn start_at_optimum_stays() {
        let f = |x: &[f64]| -(x[0] * x[0]);
        let out = nelder_mead_max(f, &[0.0], 0.1, 100, 1e-10);
        assert!(out.best_value >= -1e-8);
    }
}
