//! Numerical maximization of the shrink factor η over symmetric, isotropic
//! cloners with a qubit ancilla.
//!
//! Ansatz:
//!
//! ```text
//! |0⟩ ↦ a|00⟩|A⟩ + b₁|01⟩|B₁⟩ + b₂|10⟩|B₂⟩ + c|11⟩|C⟩
//! |1⟩ ↦ ã|11⟩|Ã⟩ + b̃₁|10⟩|B̃₁⟩ + b̃₂|01⟩|B̃₂⟩ + c̃|00⟩|C̃⟩
//! ```
//!
//! with |a| = |ã|, |b₁| = |b₂| = |b̃ᵢ|, |c| = |c̃| and eight ancilla qubit
//! states. Parameter vector (27 entries):
//! `[ra, rb, rc]` raw magnitudes (projected onto |a|² + 2|b|² + |c|² = 1),
//! eight phases (a, b₁, b₂, c, ã, b̃₁, b̃₂, c̃), then a polar/azimuth pair for
//! each ancilla state in the order A, B₁, B₂, C, Ã, B̃₁, B̃₂, C̃.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use super::penalty::{multistart, PenaltyProblem, PenaltySettings};
use super::{summarize, OptimizationResult};
use crate::error::Result;
use crate::qmath::{ComplexMatrix, QRng, C64};
use crate::universal::{audit_isometry, ClonerIsometry, CoefficientRecord, IsometryAudit};

pub const PARAMS: usize = 27;

struct Ansatz {
    a: C64,
    b1: C64,
    b2: C64,
    c: C64,
    ta: C64,
    tb1: C64,
    tb2: C64,
    tc: C64,
    /// A, B₁, B₂, C, Ã, B̃₁, B̃₂, C̃.
    anc: [[C64; 2]; 8],
}

fn magnitudes(x: &[f64]) -> (f64, f64, f64) {
    let (ra, rb, rc) = (x[0].abs(), x[1].abs(), x[2].abs());
    let n = (ra * ra + 2.0 * rb * rb + rc * rc).sqrt().max(1e-300);
    (ra / n, rb / n, rc / n)
}

fn unpack(x: &[f64]) -> Ansatz {
    let (ma, mb, mc) = magnitudes(x);
    let ph = |k: usize, m: f64| C64::from_polar(m, x[3 + k]);
    let anc = std::array::from_fn(|k| {
        let (t, p) = (x[11 + 2 * k], x[12 + 2 * k]);
        [C64::new(t.cos(), 0.0), C64::from_polar(t.sin(), p)]
    });
    Ansatz {
        a: ph(0, ma),
        b1: ph(1, mb),
        b2: ph(2, mb),
        c: ph(3, mc),
        ta: ph(4, ma),
        tb1: ph(5, mb),
        tb2: ph(6, mb),
        tc: ph(7, mc),
        anc,
    }
}

const A: usize = 0;
const B1: usize = 1;
const B2: usize = 2;
const C: usize = 3;
const TA: usize = 4;
const TB1: usize = 5;
const TB2: usize = 6;
const TC: usize = 7;

impl Ansatz {
    /// `⟨i|j⟩` between ancilla states.
    fn ip(&self, i: usize, j: usize) -> C64 {
        self.anc[i][0].conj() * self.anc[j][0] + self.anc[i][1].conj() * self.anc[j][1]
    }

    fn eta(&self) -> f64 {
        2.0 * self.a.norm_sqr() + 2.0 * self.b1.norm_sqr() - 1.0
    }

    /// Swaps the labels 1 ↔ 2.
    fn swapped(&self) -> Ansatz {
        let mut anc = self.anc;
        anc.swap(B1, B2);
        anc.swap(TB1, TB2);
        Ansatz { b1: self.b2, b2: self.b1, tb1: self.tb2, tb2: self.tb1, anc, ..*self }
    }

    /// Constraints (ii)–(vi) for one labelling, as reals.
    fn bloch_constraints(&self, out: &mut Vec<f64>) {
        let x = self.tb1.conj() * self.a * self.ip(TB1, A) + self.ta.conj() * self.b1 * self.ip(TA, B1);
        out.push(self.eta() - x.re);
        out.push(x.im);
        let iv = self.b1.conj() * self.tc * self.ip(B1, TC) + self.c.conj() * self.tb1 * self.ip(C, TB1);
        let v = self.b2.conj() * self.a * self.ip(B2, A) + self.c.conj() * self.b1 * self.ip(C, B1);
        let vi = self.tb2.conj() * self.ta * self.ip(TB2, TA) + self.tc.conj() * self.tb1 * self.ip(TC, TB1);
        for z in [iv, v, vi] {
            out.push(z.re);
            out.push(z.im);
        }
    }

    fn residuals(&self, out: &mut Vec<f64>) {
        self.bloch_constraints(out);
        self.swapped().bloch_constraints(out);
        let vii = self.tc.conj() * self.a * self.ip(TC, A) - self.ta.conj() * self.c * self.ip(TA, C);
        let orth = self.a.conj() * self.tc * self.ip(A, TC)
            + self.b2.conj() * self.tb1 * self.ip(B2, TB1)
            + self.b1.conj() * self.tb2 * self.ip(B1, TB2)
            + self.c.conj() * self.ta * self.ip(C, TA);
        // Symmetry relations between the two clones; squared moduli keep the
        // residuals differentiable where an overlap vanishes.
        out.push(self.ip(B1, TB2).norm_sqr() - self.ip(B2, TB1).norm_sqr());
        out.push(self.ip(B1, TB1).norm_sqr() - self.ip(B2, TB2).norm_sqr());
        let s1 = self.a * self.b1.conj() * self.ip(B1, A) + self.c.conj() * self.b2 * self.ip(C, B2)
            - (self.a * self.b2.conj() * self.ip(B2, A) + self.c.conj() * self.b1 * self.ip(C, B1));
        let s2 = self.ta * self.tb1.conj() * self.ip(TB1, TA) + self.tc.conj() * self.tb2 * self.ip(TC, TB2)
            - (self.ta * self.tb2.conj() * self.ip(TB2, TA) + self.tc.conj() * self.tb1 * self.ip(TC, TB1));
        let s3 = self.tb1.conj() * self.a * self.ip(TB1, A) + self.ta.conj() * self.b1 * self.ip(TA, B1)
            - (self.tb2.conj() * self.a * self.ip(TB2, A) + self.ta.conj() * self.b2 * self.ip(TA, B2));
        let s4 = self.b1.conj() * self.tc * self.ip(B1, TC) + self.c.conj() * self.tb1 * self.ip(C, TB1)
            - (self.b2.conj() * self.tc * self.ip(B2, TC) + self.c.conj() * self.tb2 * self.ip(C, TB2));
        for z in [vii, orth, s1, s2, s3, s4] {
            out.push(z.re);
            out.push(z.im);
        }
    }

    fn isometry_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(8, 2);
        let mut put = |col: usize, clones: usize, coef: C64, anc: usize| {
            for k in 0..2 {
                m[(2 * clones + k, col)] += coef * self.anc[anc][k];
            }
        };
        put(0, 0b00, self.a, A);
        put(0, 0b01, self.b1, B1);
        put(0, 0b10, self.b2, B2);
        put(0, 0b11, self.c, C);
        put(1, 0b11, self.ta, TA);
        put(1, 0b10, self.tb1, TB1);
        put(1, 0b01, self.tb2, TB2);
        put(1, 0b00, self.tc, TC);
        m
    }
}

struct EtaProblem;

impl PenaltyProblem for EtaProblem {
    fn dim(&self) -> usize {
        PARAMS
    }

    fn objective(&self, x: &[f64]) -> f64 {
        unpack(x).eta()
    }

    fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
        unpack(x).residuals(out);
    }

    fn initial_point(&self, rng: &mut QRng) -> Vec<f64> {
        let mut x: Vec<f64> = (0..PARAMS).map(|_| rng.random_range(-PI..PI)).collect();
        for v in &mut x[..3] {
            *v = rng.random_range(0.1..1.0);
        }
        x
    }
}

/// Phases in [0, 2π), magnitudes normalized: the reported representative.
fn canonical(x: &[f64]) -> Vec<f64> {
    let (ma, mb, mc) = magnitudes(x);
    let mut out = vec![ma, mb, mc];
    out.extend(x[3..].iter().map(|p| p.rem_euclid(TAU)));
    out
}

#[derive(Clone, Debug)]
pub struct UniversalEtaReport {
    pub result: OptimizationResult,
    pub isometry: ClonerIsometry,
    pub coefficients: CoefficientRecord,
    /// Independent check of the best candidate's cloning map.
    pub audit: IsometryAudit,
}

/// Residuals of the constraint system at the known optimal cloner, as a
/// sanity check of the constraint code.
pub fn residual_at(x: &[f64]) -> f64 {
    let mut r = Vec::new();
    unpack(x).residuals(&mut r);
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn maximize_universal_eta(settings: &PenaltySettings, feasibility_tol: f64) -> Result<UniversalEtaReport> {
    let starts = multistart(&EtaProblem, settings);
    // Feasibility is judged by the cloning-map audit, not by the penalty residuals.
    let audited: Vec<(f64, f64)> = starts
        .iter()
        .map(|s| {
            let audit = audit_isometry(&unpack(&s.x).isometry_matrix()).expect("8x2");
            (s.value, audit.worst().max(s.residual))
        })
        .collect();
    let pick = |cands: &[usize]| {
        // Tie-break among equal optima: smallest total phase in [0, 2π).
        cands
            .iter()
            .copied()
            .min_by(|&i, &j| {
                let w = |k: usize| canonical(&starts[k].x)[3..11].iter().sum::<f64>();
                w(i).total_cmp(&w(j))
            })
            .expect("nonempty")
    };
    let (result, best) = summarize(&starts, &audited, feasibility_tol, pick, canonical)?;
    let ansatz = unpack(&starts[best].x);
    let matrix = ansatz.isometry_matrix();
    let audit = audit_isometry(&matrix)?;
    let isometry = ClonerIsometry::new(orthonormalize(&matrix))?;
    Ok(UniversalEtaReport { coefficients: isometry.coefficients(), isometry, audit, result })
}

/// Gram-Schmidt on the two columns. The restored candidate is orthonormal
/// to ~1e-11; this removes the remainder before the strict isometry check.
fn orthonormalize(m: &ComplexMatrix) -> ComplexMatrix {
    let dot = |u: &[C64], v: &[C64]| -> C64 { u.iter().zip(v).map(|(x, y)| x.conj() * y).sum() };
    let mut c0 = m.col(0);
    let n0 = dot(&c0, &c0).re.sqrt();
    c0.iter_mut().for_each(|x| *x /= n0);
    let mut c1 = m.col(1);
    let p = dot(&c0, &c1);
    c1.iter_mut().zip(&c0).for_each(|(x, y)| *x -= p * y);
    let n1 = dot(&c1, &c1).re.sqrt();
    c1.iter_mut().for_each(|x| *x /= n1);
    let mut out = ComplexMatrix::zeros(8, 2);
    for k in 0..8 {
        out[(k, 0)] = c0[k];
        out[(k, 1)] = c1[k];
    }
    out
}

/// Parameter vector of the Bužek–Hillery point in this ansatz.
pub fn buzek_hillery_parameters() -> Vec<f64> {
    let mut x = vec![0.0; PARAMS];
    x[0] = (2.0f64 / 3.0).sqrt();
    x[1] = (1.0f64 / 6.0).sqrt();
    // Polar angles: A = |0⟩, B₁ = B₂ = |1⟩, C = |0⟩, Ã = |1⟩, B̃ᵢ = |0⟩, C̃ = |0⟩.
    for (k, t) in [0.0, PI / 2.0, PI / 2.0, 0.0, PI / 2.0, 0.0, 0.0, 0.0].into_iter().enumerate() {
        x[11 + 2 * k] = t;
    }
    x
}
