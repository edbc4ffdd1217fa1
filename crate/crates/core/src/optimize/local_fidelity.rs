//! Best local fidelity over the symmetric real transformations
//! |0⟩ ↦ (a, b, b, c), |1⟩ ↦ (c, b, b, a).
//!
//! Unitarity leaves a one-parameter family: a + c = sin u, 2b = cos u,
//! a − c = ±1. Each branch is scanned on a grid and the best cell refined
//! by golden-section search.

use std::f64::consts::PI;

use super::OptimizationResult;
use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, StateVector};
use crate::statedep::{input_states, TwoStateEnsemble};

pub const MIN_GRID: usize = 8;
const GOLDEN_TOL: f64 = 1e-12;

pub fn family_matrix(u: f64, sign: f64) -> ComplexMatrix {
    let (a, c) = (0.5 * (u.sin() + sign), 0.5 * (u.sin() - sign));
    let b = 0.5 * u.cos();
    ComplexMatrix::from_real(4, 2, &[a, c, b, b, b, b, c, a]).expect("4x2")
}

/// Mean over both inputs of ⟨ψ|ρ₁|ψ⟩, from an explicit partial trace.
pub fn local_fidelity_of(m: &ComplexMatrix, e: &TwoStateEnsemble) -> Result<f64> {
    let (a, b) = input_states(e);
    let mut total = 0.0;
    for psi in [&a, &b] {
        let out = StateVector::new(m.try_mul(&psi.as_column())?.col(0))?;
        let rho = out.reduced(&[0])?;
        let amps = psi.amplitudes();
        for i in 0..2 {
            for j in 0..2 {
                total += (amps[i].conj() * rho.entry(i, j) * amps[j]).re;
            }
        }
    }
    Ok(0.5 * total)
}

fn golden_max(f: &mut impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, evals: &mut usize) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    *evals += 2;
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
        *evals += 1;
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `best_parameters` is `[u, sign, a, b, c]`.
pub fn maximize_local_fidelity_statedep(s: f64, grid: usize) -> Result<OptimizationResult> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::OutOfRange(format!("overlap S = {s} outside (0, 1)")));
    }
    if grid < MIN_GRID {
        return Err(Error::OutOfRange(format!("grid {grid} below {MIN_GRID}")));
    }
    let e = TwoStateEnsemble::from_overlap(s)?;
    let mut evals = 0;
    let mut branch_best = Vec::new();
    for sign in [1.0, -1.0] {
        let mut f = |u: f64| local_fidelity_of(&family_matrix(u, sign), &e).unwrap_or(f64::NEG_INFINITY);
        let h = 2.0 * PI / grid as f64;
        let (k, _) = (0..grid).map(|k| (k, f(-PI + k as f64 * h))).fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
        evals += grid;
        let centre = -PI + k as f64 * h;
        let (u, v) = golden_max(&mut f, centre - h, centre + h, &mut evals);
        branch_best.push((v, u, sign));
    }
    let (value, u, sign) =
        branch_best.iter().copied().fold((f64::NEG_INFINITY, 0.0, 1.0), |b, c| if c.0 > b.0 { c } else { b });
    let m = family_matrix(u, sign);
    let constraint_residual = m.adjoint().try_mul(&m)?.max_abs_diff(&ComplexMatrix::identity(2))?;
    let start_values: Vec<f64> = branch_best.iter().map(|b| b.0).collect();
    Ok(OptimizationResult {
        best_value: value,
        best_parameters: vec![u, sign, m[(0, 0)].re, m[(1, 0)].re, m[(3, 0)].re],
        constraint_residual,
        iterations: evals,
        converged: true,
        // The two branches are distinct local problems, so their spread is
        // not a convergence diagnostic.
        dispersion: 0.0,
        start_values,
        feasible_starts: 2,
        total_starts: 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eavesdrop::local_fidelity_3;
    use crate::statedep::isometry;

    #[test]
    fn family_is_unitary() {
        for k in 0..50 {
            let u = -PI + k as f64 * 0.13;
            for sign in [1.0, -1.0] {
                let m = family_matrix(u, sign);
                let d = m.adjoint().try_mul(&m).unwrap().max_abs_diff(&ComplexMatrix::identity(2)).unwrap();
                assert!(d < 1e-15);
            }
        }
    }

    #[test]
    fn constructed_cloner_lies_in_family() {
        let e = TwoStateEnsemble::new(0.3).unwrap();
        let m = isometry(&e);
        let (a, b, c) = (m[(0, 0)].re, m[(1, 0)].re, m[(3, 0)].re);
        assert!((a - c - 1.0).abs() < 1e-14);
        let u = (a + c).atan2(2.0 * b);
        assert!(family_matrix(u, 1.0).max_abs_diff(&m).unwrap() < 1e-14);
    }

    #[test]
    fn matches_closed_form() {
        for s in [0.1, 0.5, 0.9] {
            let r = maximize_local_fidelity_statedep(s, 64).unwrap();
            assert!((r.best_value - local_fidelity_3(s).unwrap()).abs() < 1e-7, "S = {s}: {r:?}");
        }
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let mut n = 0;
        let (x, v) = golden_max(&mut |x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, &mut n);
        assert!((x - 0.3).abs() < 1e-6 && v.abs() < 1e-12);
    }

    #[test]
    fn domain() {
        assert!(maximize_local_fidelity_statedep(0.0, 64).is_err());
        assert!(maximize_local_fidelity_statedep(1.0, 64).is_err());
        assert!(maximize_local_fidelity_statedep(0.5, 4).is_err());
    }
}
