//! Downhill simplex minimization with dimension-adaptive coefficients
//! (Gao & Han), which keeps the method effective in 10–30 dimensions.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadOptions {
    pub max_evals: usize,
    /// Stop when every vertex is within `xatol` of the best one (max norm)...
    pub xatol: f64,
    /// ...and every vertex value is within `fatol` of the best value.
    pub fatol: f64,
    /// Relative size of the initial simplex; zero coordinates get `zero_step`.
    pub rel_step: f64,
    pub zero_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { max_evals: 40_000, xatol: 1e-12, fatol: 1e-15, rel_step: 0.05, zero_step: 2.5e-4 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult {
    let n = x0.len();
    assert!(n > 0, "empty parameter vector");
    let nf = n as f64;
    let (rho, chi, psi, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] = if v[i] != 0.0 { v[i] * (1.0 + opts.rel_step) } else { opts.zero_step };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evals = n + 1;
    let mut order: Vec<usize> = (0..=n).collect();
    let mut converged = false;

    let combine =
        |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + t * (x - y)).collect() };

    loop {
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let best = order[0];
        let worst = order[n];
        let x_spread =
            simplex.iter().flat_map(|v| v.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs())).fold(0.0, f64::max);
        let f_spread = values.iter().map(|v| (v - values[best]).abs()).fold(0.0, f64::max);
        if x_spread <= opts.xatol && f_spread <= opts.fatol {
            converged = true;
            break;
        }
        if evals >= opts.max_evals {
            break;
        }

        let mut centroid = vec![0.0; n];
        for &k in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&simplex[k]) {
                *c += x / nf;
            }
        }

        let xr = combine(&centroid, &simplex[worst], rho);
        let fr = f(&xr);
        evals += 1;
        let second_worst = values[order[n - 1]];

        if fr < values[best] {
            let xe = combine(&centroid, &simplex[worst], rho * chi);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
            continue;
        }
        if fr < second_worst {
            simplex[worst] = xr;
            values[worst] = fr;
            continue;
        }
        let (xc, fc, accept) = if fr < values[worst] {
            let xc = combine(&centroid, &simplex[worst], psi * rho);
            let fc = f(&xc);
            (xc, fc, fc <= fr)
        } else {
            let xc = combine(&centroid, &simplex[worst], -psi);
            let fc = f(&xc);
            (xc, fc, fc < values[worst])
        };
        evals += 1;
        if accept {
            simplex[worst] = xc;
            values[worst] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        let xb = simplex[best].clone();
        for &k in &order[1..] {
            let v: Vec<f64> = xb.iter().zip(&simplex[k]).map(|(b, x)| b + sigma * (x - b)).collect();
            values[k] = f(&v);
            simplex[k] = v;
        }
        evals += n;
    }

    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    NelderMeadResult { x: simplex[order[0]].clone(), f: values[order[0]], evals, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let r =
            minimize(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2), &[0.0, 0.0], &NelderMeadOptions::default());
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-8 && (r.x[1] + 2.0).abs() < 1e-8);
    }

    #[test]
    fn rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = minimize(rosen, &[-1.2, 1.0], &NelderMeadOptions::default());
        assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn higher_dimension_sphere() {
        let x0: Vec<f64> = (0..12).map(|i| i as f64 * 0.3 - 1.0).collect();
        let r = minimize(|x| x.iter().map(|v| (v - 0.5) * (v - 0.5)).sum(), &x0, &NelderMeadOptions::default());
        assert!(r.x.iter().all(|v| (v - 0.5).abs() < 1e-6), "{r:?}");
    }

    #[test]
    fn respects_evaluation_budget() {
        let opts = NelderMeadOptions { max_evals: 50, ..Default::default() };
        let r = minimize(|x| x[0].powi(2) + x[1].powi(2), &[3.0, 4.0], &opts);
        assert!(!r.converged);
        // One iteration can overshoot by a reflection, a contraction and a shrink.
        assert!(r.evals <= 50 + 2 + 2);
    }
}
