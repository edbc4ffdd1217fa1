//! Numerical re-derivation of the optimal cloners: constrained multistart
//! maximization, an exhaustive no-ancilla scan and one-parameter searches.

pub mod global_fidelity;
pub mod local_fidelity;
pub mod nelder_mead;
pub mod no_ancilla;
pub mod penalty;
pub mod universal_eta;

use serde::Serialize;

use crate::error::{Error, Result};
use penalty::StartOutcome;

/// Starts within this much of the best value count as ties.
pub const TIE_WINDOW: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub best_value: f64,
    pub best_parameters: Vec<f64>,
    pub constraint_residual: f64,
    /// Objective evaluations across all starts.
    pub iterations: usize,
    pub converged: bool,
    /// Objective value of every feasible start, in start order.
    pub start_values: Vec<f64>,
    /// Spread (max − min) of `start_values`.
    pub dispersion: f64,
    pub feasible_starts: usize,
    pub total_starts: usize,
}

/// Collapses multistart outcomes. `checked[i]` is `(value, residual)` for
/// start `i` as judged by the caller; `pick` chooses among tied best starts.
pub(crate) fn summarize(
    starts: &[StartOutcome],
    checked: &[(f64, f64)],
    feasibility_tol: f64,
    pick: impl Fn(&[usize]) -> usize,
    canonical: impl Fn(&[f64]) -> Vec<f64>,
) -> Result<(OptimizationResult, usize)> {
    let feasible: Vec<usize> = (0..starts.len()).filter(|&i| checked[i].1 < feasibility_tol).collect();
    let iterations = starts.iter().map(|s| s.evals).sum();
    if feasible.is_empty() {
        let best = (0..starts.len())
            .min_by(|&i, &j| checked[i].1.total_cmp(&checked[j].1))
            .ok_or_else(|| Error::Degenerate("no optimizer starts".into()))?;
        return Err(Error::NotConverged { best_value: checked[best].0, best_residual: checked[best].1 });
    }
    let top = feasible.iter().map(|&i| checked[i].0).fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = feasible.iter().copied().filter(|&i| checked[i].0 >= top - TIE_WINDOW).collect();
    let best = pick(&tied);
    let start_values: Vec<f64> = feasible.iter().map(|&i| checked[i].0).collect();
    let low = start_values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((
        OptimizationResult {
            best_value: checked[best].0,
            best_parameters: canonical(&starts[best].x),
            constraint_residual: checked[best].1,
            iterations,
            converged: true,
            dispersion: top - low,
            start_values,
            feasible_starts: feasible.len(),
            total_starts: starts.len(),
        },
        best,
    ))
}
