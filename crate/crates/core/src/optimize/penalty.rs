//! Quadratic-penalty maximization with multistart and a final feasibility
//! restoration step.

use rayon::prelude::*;

use super::nelder_mead::{minimize, NelderMeadOptions};
use crate::qmath::{stream_rng, QRng};

/// Maximize `objective(x)` subject to `residuals(x) = 0`.
pub trait PenaltyProblem: Sync {
    fn dim(&self) -> usize;

    fn objective(&self, x: &[f64]) -> f64;

    /// Equality-constraint values; all zero at a feasible point.
    fn residuals(&self, x: &[f64], out: &mut Vec<f64>);

    fn initial_point(&self, rng: &mut QRng) -> Vec<f64>;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PenaltySettings {
    pub starts: usize,
    pub seed: u64,
    pub mu0: f64,
    pub mu_factor: f64,
    pub rounds: usize,
    /// Simplex restarts inside each penalty round.
    pub restarts: usize,
    pub simplex: NelderMeadOptions,
    /// Gauss-Newton iterations of the restoration step.
    pub restore_iters: usize,
}

impl Default for PenaltySettings {
    fn default() -> Self {
        Self {
            starts: 20,
            seed: 0,
            mu0: 1.0,
            mu_factor: 10.0,
            rounds: 6,
            restarts: 3,
            simplex: NelderMeadOptions { max_evals: 6000, ..NelderMeadOptions::default() },
            restore_iters: 30,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StartOutcome {
    pub index: usize,
    pub x: Vec<f64>,
    pub value: f64,
    /// Max-norm of the residual vector after restoration.
    pub residual: f64,
    pub evals: usize,
    pub simplex_converged: bool,
}

pub fn residual_norm<P: PenaltyProblem + ?Sized>(p: &P, x: &[f64]) -> f64 {
    let mut r = Vec::new();
    p.residuals(x, &mut r);
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn penalized<P: PenaltyProblem + ?Sized>(p: &P, x: &[f64], mu: f64, buf: &mut Vec<f64>) -> f64 {
    buf.clear();
    p.residuals(x, buf);
    -p.objective(x) + mu * buf.iter().map(|v| v * v).sum::<f64>()
}

pub fn run_start<P: PenaltyProblem + ?Sized>(p: &P, settings: &PenaltySettings, index: usize) -> StartOutcome {
    let mut rng = stream_rng(settings.seed, index as u64);
    let mut x = p.initial_point(&mut rng);
    let mut mu = settings.mu0;
    let mut evals = 0;
    let mut simplex_converged = false;
    let mut buf = Vec::new();
    for _ in 0..settings.rounds {
        for _ in 0..settings.restarts {
            let r = minimize(|y| penalized(p, y, mu, &mut buf), &x, &settings.simplex);
            x = r.x;
            evals += r.evals;
            simplex_converged = r.converged;
        }
        mu *= settings.mu_factor;
    }
    restore(p, &mut x, settings.restore_iters);
    StartOutcome { index, value: p.objective(&x), residual: residual_norm(p, &x), x, evals, simplex_converged }
}

/// All starts, in start order; each start owns generator stream `index`.
pub fn multistart<P: PenaltyProblem + ?Sized>(p: &P, settings: &PenaltySettings) -> Vec<StartOutcome> {
    (0..settings.starts).into_par_iter().map(|i| run_start(p, settings, i)).collect()
}

/// Pulls `x` onto the constraint set with minimum-norm Gauss-Newton steps
/// `Δ = −Jᵀ(JJᵀ + λ1)⁻¹ r`, using a central-difference Jacobian. The penalty
/// phase leaves residuals of order 1/μ; this removes them while moving `x`
/// (and hence the objective) by the same order. Steps are halved until the
/// residual 2-norm decreases.
pub fn restore<P: PenaltyProblem + ?Sized>(p: &P, x: &mut [f64], iters: usize) {
    let n = x.len();
    let mut r = Vec::new();
    let mut rp = Vec::new();
    let mut rm = Vec::new();
    let sum_sq = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>();
    for _ in 0..iters {
        r.clear();
        p.residuals(x, &mut r);
        let norm = sum_sq(&r);
        if norm < 1e-30 {
            return;
        }
        let m = r.len();
        let mut jac = vec![0.0; m * n];
        for k in 0..n {
            let h = 1e-7 * (1.0 + x[k].abs());
            let orig = x[k];
            x[k] = orig + h;
            rp.clear();
            p.residuals(x, &mut rp);
            x[k] = orig - h;
            rm.clear();
            p.residuals(x, &mut rm);
            x[k] = orig;
            for i in 0..m {
                jac[i * n + k] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let mut gram = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..=i {
                let v: f64 = (0..n).map(|k| jac[i * n + k] * jac[j * n + k]).sum();
                gram[i * m + j] = v;
                gram[j * m + i] = v;
            }
        }
        let scale = (0..m).map(|i| gram[i * m + i]).fold(0.0, f64::max).max(1e-300);
        for i in 0..m {
            gram[i * m + i] += 1e-12 * scale;
        }
        let Some(y) = cholesky_solve(&mut gram, &r, m) else {
            return;
        };
        let step: Vec<f64> = (0..n).map(|k| (0..m).map(|i| jac[i * n + k] * y[i]).sum::<f64>()).collect();
        let mut t = 1.0;
        let accepted = loop {
            let candidate: Vec<f64> = x.iter().zip(&step).map(|(xi, d)| xi - t * d).collect();
            rp.clear();
            p.residuals(&candidate, &mut rp);
            if sum_sq(&rp) < norm {
                break Some(candidate);
            }
            t *= 0.5;
            if t < 1e-6 {
                break None;
            }
        };
        match accepted {
            Some(c) => x.copy_from_slice(&c),
            None => return,
        }
    }
}

/// Solves `A y = b` for symmetric positive definite `A` (overwritten).
fn cholesky_solve(a: &mut [f64], b: &[f64], m: usize) -> Option<Vec<f64>> {
    for j in 0..m {
        let mut d = a[j * m + j];
        for k in 0..j {
            d -= a[j * m + k] * a[j * m + k];
        }
        if d <= 0.0 {
            return None;
        }
        let d = d.sqrt();
        a[j * m + j] = d;
        for i in j + 1..m {
            let mut s = a[i * m + j];
            for k in 0..j {
                s -= a[i * m + k] * a[j * m + k];
            }
            a[i * m + j] = s / d;
        }
    }
    let mut y = b.to_vec();
    for i in 0..m {
        for k in 0..i {
            y[i] -= a[i * m + k] * y[k];
        }
        y[i] /= a[i * m + i];
    }
    for i in (0..m).rev() {
        for k in i + 1..m {
            y[i] -= a[k * m + i] * y[k];
        }
        y[i] /= a[i * m + i];
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// max x + y on the unit circle: optimum √2 at (1/√2, 1/√2).
    struct Circle;

    impl PenaltyProblem for Circle {
        fn dim(&self) -> usize {
            2
        }
        fn objective(&self, x: &[f64]) -> f64 {
            x[0] + x[1]
        }
        fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
            out.push(x[0] * x[0] + x[1] * x[1] - 1.0);
        }
        fn initial_point(&self, rng: &mut QRng) -> Vec<f64> {
            vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]
        }
    }

    #[test]
    fn circle_optimum_is_feasible_after_restoration() {
        let settings = PenaltySettings { starts: 4, ..Default::default() };
        for s in multistart(&Circle, &settings) {
            assert!(s.residual < 1e-14, "{s:?}");
            assert!((s.value - 2f64.sqrt()).abs() < 1e-9, "{s:?}");
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let settings = PenaltySettings { starts: 3, seed: 9, rounds: 2, ..Default::default() };
        assert_eq!(multistart(&Circle, &settings), multistart(&Circle, &settings));
    }

    #[test]
    fn cholesky() {
        let mut a = vec![4.0, 2.0, 2.0, 3.0];
        let y = cholesky_solve(&mut a, &[2.0, 1.0], 2).unwrap();
        assert!((y[0] - 0.5).abs() < 1e-15 && y[1].abs() < 1e-15);
        let mut singular = vec![0.0, 0.0, 0.0, 0.0];
        assert!(cholesky_solve(&mut singular, &[1.0, 1.0], 2).is_none());
    }
}
