//! State-dependent cloners obtained from a single-qubit eavesdropping probe.
//!
//! A two-parameter family of interactions (α, φ) couples the transmitted
//! qubit to the eavesdropper's probe. The receiver's and the probe's reduced
//! states have closed-form matrix elements; when they coincide the
//! interaction is a cloner. Two specializations give the local fidelities
//! `F_l,2` (on the optimal-eavesdropping curve) and `F_l,3` (best over φ = α).

use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, DensityOperator};
use crate::statedep::{Input, TwoStateEnsemble};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EaveInteraction {
    pub alpha: f64,
    pub phi: f64,
    pub ensemble: TwoStateEnsemble,
}

impl EaveInteraction {
    pub fn new(alpha: f64, phi: f64, ensemble: TwoStateEnsemble) -> Self {
        Self { alpha, phi, ensemble }
    }

    /// (cos θ, sin θ), swapped when |b⟩ was sent.
    fn trig(&self, sent: Input) -> (f64, f64) {
        let (s, c) = self.ensemble.theta().sin_cos();
        match sent {
            Input::A => (c, s),
            Input::B => (s, c),
        }
    }

    /// Eavesdropper's probe state.
    pub fn probe_density(&self, sent: Input) -> Result<DensityOperator> {
        let (c, s) = self.trig(sent);
        let cos2t = c * c - s * s;
        let (a, p) = (self.alpha, self.phi);
        let d00 = 0.5 * (1.0 + cos2t * (2.0 * p).cos());
        let d01 = 0.25 * ((c - s).powi(2) * (2.0 * (p - a)).sin() + (c + s).powi(2) * (2.0 * (p + a)).sin());
        let d11 = 0.5 * (1.0 - cos2t * (2.0 * p).cos());
        real_density(d00, d01, d11)
    }

    /// Receiver's qubit after the interaction.
    pub fn receiver_density(&self, sent: Input) -> Result<DensityOperator> {
        let (c, s) = self.trig(sent);
        let (a, p) = (self.alpha, self.phi);
        let (ca, sa) = (a.cos(), a.sin());
        let d00 = c * c * ca * ca + s * s * sa * sa;
        let d01 = c * s * (2.0 * p).sin() * (2.0 * a).cos() + 0.5 * (2.0 * p).cos() * (2.0 * a).sin();
        let d11 = s * s * ca * ca + c * c * sa * sa;
        real_density(d00, d01, d11)
    }
}

fn real_density(d00: f64, d01: f64, d11: f64) -> Result<DensityOperator> {
    let m = ComplexMatrix::from_real(2, 2, &[d00, d01, d01, d11])?;
    DensityOperator::new(m)
}

/// `⟨a|ρ^A_a|a⟩` in closed form.
pub fn eave_fidelity(i: &EaveInteraction) -> f64 {
    let s = i.ensemble.overlap();
    let (a, p) = (i.alpha, i.phi);
    a.cos().powi(2) + 0.5 * s * (2.0 * p).cos() * (2.0 * a).sin()
        - 0.5 * s * s * (1.0 - (2.0 * p).sin()) * (2.0 * a).cos()
}

const DEGENERATE_TOL: f64 = 1e-14;

/// α on the optimal-eavesdropping curve for a given φ:
/// `tan 2α = S cos 2φ / (1 − S²(1 − sin 2φ))`.
pub fn optimal_alpha(phi: f64, s: f64) -> Result<f64> {
    let num = s * (2.0 * phi).cos();
    let den = 1.0 - s * s * (1.0 - (2.0 * phi).sin());
    if num.abs() < DEGENERATE_TOL && den.abs() < DEGENERATE_TOL {
        return Err(Error::Degenerate(format!("tan 2alpha undefined at phi = {phi}, S = {s}")));
    }
    Ok(0.5 * num.atan2(den))
}

fn check_overlap(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!("overlap S = {s} outside [0, 1]")));
    }
    Ok(())
}

/// Root in [0, 1] of `(S + S²)x² + (1 − S²)x − S = 0`, the value of sin 2φ
/// at which the optimal eavesdropper is also a cloner.
pub fn cloner_x(s: f64) -> Result<f64> {
    check_overlap(s)?;
    if s == 0.0 {
        return Err(Error::Degenerate("quadratic degenerates at S = 0".into()));
    }
    let (qa, qb) = (s + s * s, 1.0 - s * s);
    // Positive root written without the b² − 4ac cancellation.
    Ok(2.0 * s / (qb + (qb * qb + 4.0 * qa * s).sqrt()))
}

/// Interaction with φ = α = ½ arcsin x, where receiver and probe states coincide.
pub fn cloner_interaction(ensemble: TwoStateEnsemble) -> Result<EaveInteraction> {
    let phi = 0.5 * cloner_x(ensemble.overlap())?.asin();
    Ok(EaveInteraction::new(phi, phi, ensemble))
}

/// Local fidelity of the cloner on the optimal-eavesdropping curve.
pub fn local_fidelity_2(s: f64) -> Result<f64> {
    check_overlap(s)?;
    let (s2, s3, s4) = (s * s, s * s * s, s * s * s * s);
    let inner = (1.0 - 2.0 * s2 + 2.0 * s3 + s4) + (1.0 - s2) * ((1.0 + s) * (1.0 - s + 3.0 * s2 + s3)).sqrt();
    Ok(0.5 + 2f64.sqrt() / 4.0 * inner.sqrt())
}

/// F on the φ = α slice: `½ + ½(1 + S)((1 − S)cos 2φ + ½ S sin 4φ)`.
pub fn cloner_fidelity(phi: f64, s: f64) -> f64 {
    0.5 + 0.5 * (1.0 + s) * ((1.0 - s) * (2.0 * phi).cos() + 0.5 * s * (4.0 * phi).sin())
}

/// Maximizer of [`cloner_fidelity`] over φ, as sin 2φ.
/// Equal to `(−1 + S + √(1 − 2S + 9S²)) / 4S`, written without the
/// cancellation at small S; the S = 0 limit is 0.
pub fn sin2phi_opt(s: f64) -> Result<f64> {
    check_overlap(s)?;
    let r = (1.0 - 2.0 * s + 9.0 * s * s).sqrt();
    Ok(2.0 * s / (r + 1.0 - s))
}

/// Best local fidelity over the φ = α slice.
pub fn local_fidelity_3(s: f64) -> Result<f64> {
    check_overlap(s)?;
    if s == 0.0 {
        return Ok(1.0);
    }
    let r = (1.0 - 2.0 * s + 9.0 * s * s).sqrt();
    let prefactor = (1.0 + s) * (3.0 - 3.0 * s + r);
    let value = if s < 0.25 {
        // The radicand is 16S²(1 − 2S) / ((1 − S)r + 1 − 2S − 3S²); this
        // form avoids the O(S²) cancellation of the direct expression.
        let den = (1.0 - s) * r + 1.0 - 2.0 * s - 3.0 * s * s;
        2f64.sqrt() / 8.0 * prefactor * ((1.0 - 2.0 * s) / den).sqrt()
    } else {
        let radicand = -1.0 + 2.0 * s + 3.0 * s * s + (1.0 - s) * r;
        2f64.sqrt() / (32.0 * s) * prefactor * radicand.sqrt()
    };
    Ok(0.5 + value)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClonerConditionReport {
    pub s: f64,
    pub x: f64,
    pub phi: f64,
    /// Max elementwise |ρ^E − ρ^A| over both inputs at the cloner point.
    pub agreement: f64,
    /// `|α_opt(φ) − φ|`: the cloner point lies on the optimal-eavesdropping curve.
    pub curve_residual: f64,
    /// Same as `agreement` at φ + 0.05 on the optimal-eavesdropping curve.
    pub perturbed_disagreement: f64,
    pub passed: bool,
}

pub const CLONER_AGREEMENT_TOL: f64 = 1e-10;
pub const PERTURBATION: f64 = 0.05;
pub const PERTURBED_MIN_DISAGREEMENT: f64 = 1e-4;

fn probe_receiver_gap(i: &EaveInteraction) -> Result<f64> {
    let mut gap: f64 = 0.0;
    for sent in [Input::A, Input::B] {
        let e = i.probe_density(sent)?;
        let a = i.receiver_density(sent)?;
        gap = gap.max(e.matrix().max_abs_diff(a.matrix())?);
    }
    Ok(gap)
}

/// Checks that the optimal eavesdropper at sin 2φ = x is a cloner and that
/// moving along the eavesdropping curve breaks the coincidence.
pub fn cloner_condition_check(s: f64) -> Result<ClonerConditionReport> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::OutOfRange(format!("overlap S = {s} outside (0, 1)")));
    }
    let e = TwoStateEnsemble::from_overlap(s)?;
    let i = cloner_interaction(e)?;
    let agreement = probe_receiver_gap(&i)?;
    let curve_residual = (optimal_alpha(i.phi, s)? - i.phi).abs();
    let phi_p = i.phi + PERTURBATION;
    let perturbed = EaveInteraction::new(optimal_alpha(phi_p, s)?, phi_p, e);
    let perturbed_disagreement = probe_receiver_gap(&perturbed)?;
    let passed = agreement < CLONER_AGREEMENT_TOL
        && curve_residual < CLONER_AGREEMENT_TOL
        && perturbed_disagreement > PERTURBED_MIN_DISAGREEMENT;
    Ok(ClonerConditionReport {
        s,
        x: (2.0 * i.phi).sin(),
        phi: i.phi,
        agreement,
        curve_residual,
        perturbed_disagreement,
        passed,
    })
}
