//! Derivative-free simplex minimization (Nelder-Mead).
//!
//! Deterministic: no internal randomness, ties broken by vertex order.
//! Callers provide the starting point; multi-start logic lives with them.

/// Outcome of one simplex run.
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evaluations: u64,
}

/// Minimize `f` from `x0` with an axis-aligned initial simplex of the given
/// edge length. Stops when the simplex's value spread falls below `ftol` or
/// the evaluation budget is exhausted, returning best-so-far.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    simplex_size: f64,
    ftol: f64,
    max_evals: u64,
) -> SimplexResult {
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let d = x0.len();
    assert!(d > 0, "cannot optimize over zero dimensions");

    let mut evals: u64 = 0;
    let eval = |f: &mut dyn FnMut(&[f64]) -> f64, x: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        f(x)
    };

    // Vertices with cached values, kept sorted ascending by value.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let fx0 = eval(&mut f, x0, &mut evals);
    simplex.push((x0.to_vec(), fx0));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += simplex_size;
        let fx = eval(&mut f, &x, &mut evals);
        simplex.push((x, fx));
    }
    sort_simplex(&mut simplex);

    while evals < max_evals {
        let spread = simplex[d].1 - simplex[0].1;
        if spread <= ftol {
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi;
            }
        }
        for c in &mut centroid {
            *c /= d as f64;
        }

        let worst = simplex[d].clone();
        let reflected: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| c + ALPHA * (c - w))
            .collect();
        let f_r = eval(&mut f, &reflected, &mut evals);

        if f_r < simplex[0].1 {
            // Try to expand past the reflection.
            let expanded: Vec<f64> = centroid
                .iter()
                .zip(&reflected)
                .map(|(c, r)| c + GAMMA * (r - c))
                .collect();
            let f_e = eval(&mut f, &expanded, &mut evals);
            simplex[d] = if f_e < f_r {
                (expanded, f_e)
            } else {
                (reflected, f_r)
            };
        } else if f_r < simplex[d - 1].1 {
            simplex[d] = (reflected, f_r);
        } else {
            // Contract toward the better of worst/reflected.
            let (outside, pivot, f_pivot) = if f_r < worst.1 {
                (true, &reflected, f_r)
            } else {
                (false, &worst.0, worst.1)
            };
            let contracted: Vec<f64> = centroid
                .iter()
                .zip(pivot)
                .map(|(c, p)| c + RHO * (p - c))
                .collect();
            let f_c = eval(&mut f, &contracted, &mut evals);
            if f_c < f_pivot {
                simplex[d] = (contracted, f_c);
            } else if outside {
                simplex[d] = (reflected, f_r);
                shrink(&mut simplex, &mut f, &mut evals, SIGMA, max_evals);
            } else {
                shrink(&mut simplex, &mut f, &mut evals, SIGMA, max_evals);
            }
        }
        sort_simplex(&mut simplex);
    }

    let (x, fx) = simplex.swap_remove(0);
    SimplexResult {
        x,
        fx,
        evaluations: evals,
    }
}

fn shrink(
    simplex: &mut [(Vec<f64>, f64)],
    f: &mut impl FnMut(&[f64]) -> f64,
    evals: &mut u64,
    sigma: f64,
    max_evals: u64,
) {
    let best = simplex[0].0.clone();
    for vertex in simplex.iter_mut().skip(1) {
        for (x, b) in vertex.0.iter_mut().zip(&best) {
            *x = b + sigma * (*x - b);
        }
        if *evals >= max_evals {
            // Budget exhausted mid-shrink: mark stale vertices as bad so the
            // best vertex is still reported.
            vertex.1 = f64::INFINITY;
            continue;
        }
        *evals += 1;
        vertex.1 = f(&vertex.0);
    }
}

fn sort_simplex(simplex: &mut [(Vec<f64>, f64)]) {
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
}
