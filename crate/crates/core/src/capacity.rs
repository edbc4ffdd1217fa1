//! Upper bound on the quantum capacity of the depolarizing channel
//! `ρ ↦ η ρ + (1 − η) 1/2`.
//!
//! Cloning at η = 2/3 means the channel output can be shared by two
//! receivers, so no quantum information survives: Q = 0 for η ≤ 2/3.
//! Above that, `Q(η) ≤ 1 − H₂(3η/4 + 1/4)`.

use serde::Serialize;

use crate::error::{Error, Result};

pub const CLONING_THRESHOLD: f64 = 2.0 / 3.0;

/// `−x log₂ x − (1 − x) log₂(1 − x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(format!("binary entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Zero,
    Entropic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CapacityBound {
    pub eta: f64,
    pub bound: f64,
    pub regime: Regime,
    /// `min(bound, 3η − 2)`, valid only if Q is continuous in η.
    pub conditional_linear_bound: Option<f64>,
}

pub fn q_upper_bound(eta: f64, assume_continuity: bool) -> Result<CapacityBound> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange(format!("eta = {eta} outside [0, 1]")));
    }
    let (bound, regime) = if eta <= CLONING_THRESHOLD {
        (0.0, Regime::Zero)
    } else {
        (1.0 - binary_entropy(0.75 * eta + 0.25)?, Regime::Entropic)
    };
    let conditional_linear_bound = assume_continuity.then(|| match regime {
        Regime::Zero => 0.0,
        Regime::Entropic => bound.min(3.0 * eta - 2.0),
    });
    Ok(CapacityBound { eta, bound, regime, conditional_linear_bound })
}
