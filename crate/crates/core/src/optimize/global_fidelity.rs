//! Global-fidelity optimum for the two-state ensemble without assuming the
//! outputs lie in span{|aa⟩, |bb⟩}.
//!
//! ```text
//! |a⟩ ↦ a₀|aa⟩ + b₀|bb⟩ + c₀|C₀⟩
//! |b⟩ ↦ a₁|aa⟩ + b₁|bb⟩ + c₁|C₁⟩
//! ```
//!
//! with |C₀⟩, |C₁⟩ unit vectors orthogonal to |aa⟩ and |bb⟩, `⟨C₀|C₁⟩ = g`.
//! Parameters (12): a₀, b₀ complex, c₀ real, a₁, b₁, c₁ complex, and
//! `g = tanh x`. Normalization is imposed by projection; the overlap
//! condition `⟨out₀|out₁⟩ = S` by penalty.

use std::f64::consts::FRAC_PI_4;

use rand::Rng;
use serde::Serialize;

use super::penalty::{multistart, PenaltyProblem, PenaltySettings};
use super::{summarize, OptimizationResult};
use crate::error::{Error, Result};
use crate::qmath::{QRng, StateVector, C64};
use crate::statedep::{global_fidelity_opt, input_states, TwoStateEnsemble};

pub const PARAMS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
struct Outputs {
    a0: C64,
    b0: C64,
    c0: f64,
    a1: C64,
    b1: C64,
    c1: C64,
    g: f64,
}

struct GlobalProblem {
    s: f64,
}

impl GlobalProblem {
    fn unpack(&self, x: &[f64]) -> Outputs {
        let s2 = self.s * self.s;
        let norm = |a: C64, b: C64, c: f64| {
            (a.norm_sqr() + b.norm_sqr() + 2.0 * s2 * (a.conj() * b).re + c * c).sqrt().max(1e-300)
        };
        let (a0, b0, c0) = (C64::new(x[0], x[1]), C64::new(x[2], x[3]), x[4]);
        let (a1, b1, c1) = (C64::new(x[5], x[6]), C64::new(x[7], x[8]), C64::new(x[9], x[10]));
        let n0 = norm(a0, b0, c0);
        let n1 = norm(a1, b1, c1.norm());
        Outputs { a0: a0 / n0, b0: b0 / n0, c0: c0 / n0, a1: a1 / n1, b1: b1 / n1, c1: c1 / n1, g: x[11].tanh() }
    }

    fn overlap(&self, o: &Outputs) -> C64 {
        let s2 = self.s * self.s;
        o.a0.conj() * o.a1 + o.b0.conj() * o.b1 + s2 * (o.a0.conj() * o.b1 + o.b0.conj() * o.a1) + o.c0 * o.c1 * o.g
    }

    fn fidelity(&self, o: &Outputs) -> f64 {
        let s2 = self.s * self.s;
        0.5 * ((o.a0 + o.b0 * s2).norm_sqr() + (o.b1 + o.a1 * s2).norm_sqr())
    }
}

impl PenaltyProblem for GlobalProblem {
    fn dim(&self) -> usize {
        PARAMS
    }

    fn objective(&self, x: &[f64]) -> f64 {
        self.fidelity(&self.unpack(x))
    }

    fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
        let z = self.overlap(&self.unpack(x)) - self.s;
        out.push(z.re);
        out.push(z.im);
    }

    fn initial_point(&self, rng: &mut QRng) -> Vec<f64> {
        let mut x: Vec<f64> = (0..PARAMS).map(|_| rng.random_range(-1.0..1.0)).collect();
        x[11] = rng.random_range(-2.0..2.0);
        x
    }
}

/// Outputs written out as explicit vectors in C⁴, with fidelity and
/// unitarity checked from scratch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplicitCheck {
    pub fidelity: f64,
    /// Largest of the two norm defects and |⟨out₀|out₁⟩ − S|.
    pub residual: f64,
}

/// Orthonormal pair spanning the complement of span{|aa⟩, |bb⟩}.
fn complement(aa: &[C64], bb: &[C64]) -> [Vec<C64>; 2] {
    let dot = |u: &[C64], v: &[C64]| -> C64 { u.iter().zip(v).map(|(x, y)| x.conj() * y).sum() };
    let mut basis: Vec<Vec<C64>> = vec![aa.to_vec()];
    let nb = {
        let mut v = bb.to_vec();
        let p = dot(aa, &v);
        v.iter_mut().zip(aa).for_each(|(x, y)| *x -= p * y);
        v
    };
    let n = dot(&nb, &nb).re.sqrt();
    basis.push(nb.iter().map(|x| x / n).collect());
    let mut extra = Vec::new();
    for k in 0..4 {
        let mut v = vec![C64::new(0.0, 0.0); 4];
        v[k] = C64::new(1.0, 0.0);
        for u in basis.iter().chain(extra.iter()) {
            let p = dot(u, &v);
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= p * y);
        }
        let n = dot(&v, &v).re.sqrt();
        if n > 1e-6 {
            extra.push(v.iter().map(|x| x / n).collect::<Vec<_>>());
        }
        if extra.len() == 2 {
            break;
        }
    }
    [extra[0].clone(), extra[1].clone()]
}

fn explicit_check(e: &TwoStateEnsemble, o: &Outputs) -> Result<ExplicitCheck> {
    let (a, b) = input_states(e);
    let aa = a.tensor(&a)?;
    let bb = b.tensor(&b)?;
    let [u, w] = complement(aa.amplitudes(), bb.amplitudes());
    let g = o.g;
    let h = (1.0 - g * g).max(0.0).sqrt();
    let build = |ca: C64, cb: C64, cc: C64, second: bool| -> Vec<C64> {
        (0..4)
            .map(|k| {
                let ck = if second { u[k] * g + w[k] * h } else { u[k] };
                ca * aa.amplitudes()[k] + cb * bb.amplitudes()[k] + cc * ck
            })
            .collect()
    };
    let v0 = build(o.a0, o.b0, C64::new(o.c0, 0.0), false);
    let v1 = build(o.a1, o.b1, o.c1, true);
    let dot = |u: &[C64], v: &[C64]| -> C64 { u.iter().zip(v).map(|(x, y)| x.conj() * y).sum() };
    let residual =
        [(dot(&v0, &v0).re - 1.0).abs(), (dot(&v1, &v1).re - 1.0).abs(), (dot(&v0, &v1) - e.overlap()).norm()]
            .into_iter()
            .fold(0.0, f64::max);
    // Renormalize before measuring fidelity so a norm defect cannot inflate it.
    let s0 = StateVector::normalized(v0)?;
    let s1 = StateVector::normalized(v1)?;
    let fidelity = 0.5 * (aa.inner(&s0)?.norm_sqr() + bb.inner(&s1)?.norm_sqr());
    Ok(ExplicitCheck { fidelity, residual })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GlobalFidelityReport {
    pub theta: f64,
    pub result: OptimizationResult,
    pub closed_form: f64,
    pub c0_abs: f64,
    pub c1_abs: f64,
    pub explicit: ExplicitCheck,
}

pub fn maximize_global_fidelity_full(
    theta: f64,
    settings: &PenaltySettings,
    feasibility_tol: f64,
) -> Result<GlobalFidelityReport> {
    if !(theta > 0.0 && theta < FRAC_PI_4) {
        return Err(Error::OutOfRange(format!("theta = {theta} outside (0, pi/4)")));
    }
    let e = TwoStateEnsemble::new(theta)?;
    let problem = GlobalProblem { s: e.overlap() };
    let starts = multistart(&problem, settings);
    let checked = starts
        .iter()
        .map(|s| explicit_check(&e, &problem.unpack(&s.x)).map(|c| (c.fidelity, c.residual.max(s.residual))))
        .collect::<Result<Vec<_>>>()?;
    let canonical = |x: &[f64]| {
        let o = problem.unpack(x);
        vec![o.a0.re, o.a0.im, o.b0.re, o.b0.im, o.c0, o.a1.re, o.a1.im, o.b1.re, o.b1.im, o.c1.re, o.c1.im, o.g]
    };
    let (result, best) = summarize(&starts, &checked, feasibility_tol, |c| c[0], canonical)?;
    let o = problem.unpack(&starts[best].x);
    Ok(GlobalFidelityReport {
        theta,
        closed_form: global_fidelity_opt(&e),
        c0_abs: o.c0.abs(),
        c1_abs: o.c1.norm(),
        explicit: explicit_check(&e, &o)?,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn complement_is_orthogonal() {
        let e = TwoStateEnsemble::new(0.3).unwrap();
        let (a, b) = input_states(&e);
        let aa = a.tensor(&a).unwrap();
        let bb = b.tensor(&b).unwrap();
        let [u, w] = complement(aa.amplitudes(), bb.amplitudes());
        for v in [&u, &w] {
            for t in [aa.amplitudes(), bb.amplitudes()] {
                let d: C64 = v.iter().zip(t).map(|(x, y)| x.conj() * y).sum();
                assert!(d.norm() < 1e-14);
            }
        }
        let d: C64 = u.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
        assert!(d.norm() < 1e-14);
    }

    #[test]
    fn reduced_and_explicit_forms_agree() {
        let e = TwoStateEnsemble::new(PI / 10.0).unwrap();
        let p = GlobalProblem { s: e.overlap() };
        let mut rng = crate::qmath::seeded_rng(4);
        for _ in 0..20 {
            let x = p.initial_point(&mut rng);
            let o = p.unpack(&x);
            let c = explicit_check(&e, &o).unwrap();
            assert!((c.fidelity - p.fidelity(&o)).abs() < 1e-13);
            assert!((c.residual - (p.overlap(&o) - e.overlap()).norm()).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_endpoints() {
        let s = PenaltySettings::default();
        assert!(maximize_global_fidelity_full(0.0, &s, 1e-8).is_err());
        assert!(maximize_global_fidelity_full(FRAC_PI_4, &s, 1e-8).is_err());
    }
}
