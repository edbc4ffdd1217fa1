//! Optimal cloner for a pair of known non-orthogonal states.
//!
//! Inputs are `|a⟩ = cos θ|0⟩ + sin θ|1⟩` and `|b⟩ = sin θ|0⟩ + cos θ|1⟩`
//! with θ ∈ [0, π/4] and overlap `S = sin 2θ`. The machine acts on the input
//! and a blank qubit prepared in |0⟩:
//!
//! ```text
//! U|00⟩ = a|00⟩ + b(|01⟩ + |10⟩) + c|11⟩
//! U|10⟩ = c|00⟩ + b(|01⟩ + |10⟩) + a|11⟩
//! ```
//!
//! and maximizes the global fidelity `½(|⟨α|aa⟩|² + |⟨β|bb⟩|²)`.

use std::f64::consts::FRAC_PI_4;

use crate::cloner::{ClonePair, Cloner};
use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, DensityOperator, StateVector, C64};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoStateEnsemble {
    theta: f64,
}

impl TwoStateEnsemble {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_4).contains(&theta) {
            return Err(Error::OutOfRange(format!("theta = {theta} outside [0, pi/4]")));
        }
        Ok(Self { theta })
    }

    /// Ensemble with `⟨a|b⟩ = s`.
    pub fn from_overlap(s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::OutOfRange(format!("overlap S = {s} outside [0, 1]")));
        }
        Self::new((0.5 * s.asin()).min(FRAC_PI_4))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn overlap(&self) -> f64 {
        (2.0 * self.theta).sin()
    }
}

pub fn input_states(e: &TwoStateEnsemble) -> (StateVector, StateVector) {
    let (s, c) = e.theta.sin_cos();
    let a = StateVector::normalized(vec![C64::new(c, 0.0), C64::new(s, 0.0)]).expect("unit vector");
    let b = StateVector::normalized(vec![C64::new(s, 0.0), C64::new(c, 0.0)]).expect("unit vector");
    (a, b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateDepCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub p: f64,
    pub q: f64,
}

const COS2THETA_FLOOR: f64 = 1e-12;

/// Coefficients from their closed forms, which divide by cos 2θ.
pub fn coeffs(e: &TwoStateEnsemble) -> Result<StateDepCoeffs> {
    let k = (2.0 * e.theta).cos();
    if k.abs() < COS2THETA_FLOOR {
        return Err(Error::Degenerate("identical input states (theta = pi/4)".into()));
    }
    let (st, ct) = e.theta.sin_cos();
    let s = e.overlap();
    let p = 0.5 * (1.0 + s).sqrt() / (1.0 + s * s).sqrt();
    let q = 0.5 * (1.0 - s).sqrt() / k;
    let a = (ct * (p + q * k) - st * (p - q * k)) / k;
    let b = p * s * (ct - st) / k;
    let c = (ct * (p - q * k) - st * (p + q * k)) / k;
    Ok(StateDepCoeffs { a, b, c, p, q })
}

/// (a, b, c) with the common factor cos θ − sin θ cancelled. Valid on the
/// whole range, including θ = π/4 where it gives U|+0⟩ = |++⟩.
fn transform_coeffs(theta: f64) -> (f64, f64, f64) {
    let s = (2.0 * theta).sin();
    let sum = theta.cos() + theta.sin();
    let p = 0.5 * (1.0 + s).sqrt() / (1.0 + s * s).sqrt();
    let a = p / sum + 0.5;
    (a, p * s / sum, a - 1.0)
}

/// Images of |0⟩ and |1⟩ (with the blank qubit in |0⟩) as a 4×2 isometry.
pub fn isometry(e: &TwoStateEnsemble) -> ComplexMatrix {
    let (a, b, c) = transform_coeffs(e.theta);
    ComplexMatrix::from_real(4, 2, &[a, c, b, b, b, b, c, a]).expect("4x2")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Input {
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct StateDepOutput {
    pub joint: StateVector,
    /// Marginal of the first output qubit.
    pub rho_clone: DensityOperator,
    pub rho_second: DensityOperator,
}

pub fn apply(e: &TwoStateEnsemble, which: Input) -> Result<StateDepOutput> {
    let (a, b) = input_states(e);
    let psi = match which {
        Input::A => a,
        Input::B => b,
    };
    apply_to(e, &psi)
}

fn apply_to(e: &TwoStateEnsemble, psi: &StateVector) -> Result<StateDepOutput> {
    if psi.dim() != 2 {
        return Err(Error::Dimension("cloner input must be a single qubit".into()));
    }
    let out = isometry(e).try_mul(&psi.as_column())?;
    let joint = StateVector::new(out.col(0))?;
    Ok(StateDepOutput { rho_clone: joint.reduced(&[0])?, rho_second: joint.reduced(&[1])?, joint })
}

/// `½(|⟨α|aa⟩|² + |⟨β|bb⟩|²)`.
pub fn global_fidelity(e: &TwoStateEnsemble, alpha: &StateVector, beta: &StateVector) -> Result<f64> {
    let (a, b) = input_states(e);
    let aa = a.tensor(&a)?;
    let bb = b.tensor(&b)?;
    Ok(0.5 * (alpha.inner(&aa)?.norm_sqr() + beta.inner(&bb)?.norm_sqr()))
}

/// Closed-form optimum of the global fidelity.
pub fn global_fidelity_opt(e: &TwoStateEnsemble) -> f64 {
    let s = e.overlap();
    let k = (2.0 * e.theta).cos();
    let inner = (1.0 + s * s).sqrt() * (1.0 + s).sqrt() + k * (1.0 - s).sqrt();
    0.25 * inner * inner
}

/// Angles between |aa⟩ and |bb⟩ (phi), |α⟩ and |β⟩ (gamma), |aa⟩ and |α⟩ (delta).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CloneGeometry {
    pub phi: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl CloneGeometry {
    /// `½(cos²δ + cos²(φ − γ − δ))`.
    pub fn fidelity(&self) -> f64 {
        0.5 * (self.delta.cos().powi(2) + (self.phi - self.gamma - self.delta).cos().powi(2))
    }
}

/// Geometry of the optimal, symmetric arrangement.
pub fn geometry(e: &TwoStateEnsemble) -> CloneGeometry {
    let s = e.overlap();
    let phi = (s * s).min(1.0).acos();
    let gamma = s.min(1.0).acos();
    CloneGeometry { phi, gamma, delta: 0.5 * (phi - gamma) }
}

fn check_overlap(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!("overlap S = {s} outside [0, 1]")));
    }
    Ok(())
}

/// Local fidelity `Tr[ρ_α |a⟩⟨a|]` of the global-fidelity optimum.
pub fn local_fidelity_1(s: f64) -> Result<f64> {
    check_overlap(s)?;
    let s2 = s * s;
    Ok(0.5 * (1.0 + (1.0 - s2) / (1.0 + s2).sqrt() + s2 * (1.0 + s) / (1.0 + s2)))
}

/// Length of each clone's Bloch vector.
pub fn bloch_modulus(e: &TwoStateEnsemble) -> f64 {
    let s = e.overlap();
    let k = (2.0 * e.theta).cos();
    let d = 1.0 + s * s;
    (s * s * (1.0 + s).powi(2) / (d * d) + k * k / d).sqrt()
}

/// Angle by which the clone's Bloch vector is rotated away from the input's:
/// `arccos(s_z / |s|) − 2θ`, evaluated as an atan2 of the clone's Bloch
/// components since arccos loses half its digits near θ = 0.
pub fn rotation_angle(e: &TwoStateEnsemble) -> f64 {
    let s = e.overlap();
    let d = 1.0 + s * s;
    let sx = s * (1.0 + s) / d;
    let sz = (2.0 * e.theta).cos() / d.sqrt();
    sx.atan2(sz) - 2.0 * e.theta
}

/// [`rotation_angle`] through the arccos form directly.
pub fn rotation_angle_acos(e: &TwoStateEnsemble) -> f64 {
    let k = (2.0 * e.theta).cos();
    let s = e.overlap();
    let arg = k / (bloch_modulus(e) * (1.0 + s * s).sqrt());
    arg.clamp(-1.0, 1.0).acos() - 2.0 * e.theta
}

/// The machine for a fixed ensemble, applied to arbitrary inputs by linearity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateDependentCloner {
    ensemble: TwoStateEnsemble,
}

impl StateDependentCloner {
    pub fn new(ensemble: TwoStateEnsemble) -> Self {
        Self { ensemble }
    }

    pub fn ensemble(&self) -> TwoStateEnsemble {
        self.ensemble
    }
}

impl Default for StateDependentCloner {
    fn default() -> Self {
        Self::new(TwoStateEnsemble::new(std::f64::consts::PI / 8.0).expect("in range"))
    }
}

impl Cloner for StateDependentCloner {
    fn name(&self) -> &'static str {
        "statedep"
    }

    fn summary(&self) -> &'static str {
        "global-fidelity optimal cloner for the pair |a>, |b> (theta = pi/8 by default)"
    }

    fn clone_state(&self, psi: &StateVector) -> Result<ClonePair> {
        let out = apply_to(&self.ensemble, psi)?;
        Ok(ClonePair { first: out.rho_clone, second: out.rho_second })
    }
}
