//! Exhaustive check that no symmetric isotropic cloner works without an
//! ancilla: with every ancilla overlap equal to one, feasibility forces η = 0.
//!
//! The scan runs over the magnitudes (|a|, |b|, |ã|, |b̃|) on a grid of step
//! 1/N; |c| and |c̃| follow from normalization. Each complex constraint is
//! replaced by the smallest modulus it can reach over all phases, so a grid
//! point that fails the relaxed test cannot be feasible for any phase choice.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const FEASIBILITY_TOL: f64 = 1e-8;
pub const MIN_RESOLUTION: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Magnitudes {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub ta: f64,
    pub tb: f64,
    pub tc: f64,
}

impl Magnitudes {
    /// `None` if normalization cannot be met.
    pub fn from_free(a: f64, b: f64, ta: f64, tb: f64) -> Option<Self> {
        let c2 = 1.0 - a * a - 2.0 * b * b;
        let tc2 = 1.0 - ta * ta - 2.0 * tb * tb;
        if c2 < -1e-15 || tc2 < -1e-15 {
            return None;
        }
        Some(Self { a, b, c: c2.max(0.0).sqrt(), ta, tb, tc: tc2.max(0.0).sqrt() })
    }

    /// z-component shrink factor, `|a|² − |c|²`.
    pub fn eta(&self) -> f64 {
        self.a * self.a - self.c * self.c
    }

    /// Phase-minimized moduli of the constraints, in the order
    /// (i), (ii), (iv), (v), (vi), (vii), orthogonality.
    pub fn lower_bounds(&self) -> [f64; 7] {
        let m = self;
        let eta = m.eta();
        let orth = [m.a * m.tc, m.b * m.tb, m.b * m.tb, m.c * m.ta];
        let orth_sum: f64 = orth.iter().sum();
        let orth_max = orth.iter().copied().fold(0.0, f64::max);
        [
            (eta - (m.ta * m.ta - m.tc * m.tc)).abs(),
            (eta.abs() - (m.tb * m.a + m.ta * m.b)).max(0.0),
            (m.b * m.tc - m.c * m.tb).abs(),
            m.b * (m.a - m.c).abs(),
            m.tb * (m.ta - m.tc).abs(),
            (m.tc * m.a - m.ta * m.c).abs(),
            (2.0 * orth_max - orth_sum).max(0.0),
        ]
    }

    pub fn relaxed_feasible(&self, tol: f64) -> bool {
        self.lower_bounds().iter().all(|&r| r <= tol)
    }
}

/// The four branches of constraints (v) and (vi).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NoAncillaCase {
    /// |b| = 0 and |b̃| = 0: (ii) reads η = 0.
    BothBZero,
    /// |b| = 0 and |ã| = |c̃|: (i) reads η = |ã|² − |c̃|² = 0.
    BZeroTildeBalanced,
    /// |a| = |c| and |b̃| = 0.
    BalancedTildeBZero,
    /// |a| = |c| and |ã| = |c̃|.
    BothBalanced,
}

impl NoAncillaCase {
    pub const ALL: [NoAncillaCase; 4] =
        [Self::BothBZero, Self::BZeroTildeBalanced, Self::BalancedTildeBZero, Self::BothBalanced];

    /// Magnitudes in this branch, parameterized by two angles.
    pub fn magnitudes(self, s: f64, t: f64) -> Magnitudes {
        let zero_b = |u: f64| (u.cos(), 0.0, u.sin());
        let balanced = |u: f64| {
            let r = (0.5f64).sqrt() * u.cos();
            (r, (0.5f64).sqrt() * u.sin(), r)
        };
        let ((a, b, c), (ta, tb, tc)) = match self {
            Self::BothBZero => (zero_b(s), zero_b(t)),
            Self::BZeroTildeBalanced => (zero_b(s), balanced(t)),
            Self::BalancedTildeBZero => (balanced(s), zero_b(t)),
            Self::BothBalanced => (balanced(s), balanced(t)),
        };
        Magnitudes { a, b, c, ta, tb, tc }
    }

    /// The η implied by the constraint that closes this branch.
    pub fn forced_eta(self, m: &Magnitudes) -> f64 {
        match self {
            // (ii) with b = b̃ = 0 has no right-hand side left.
            Self::BothBZero => m.tb * m.a + m.ta * m.b,
            Self::BZeroTildeBalanced => m.ta * m.ta - m.tc * m.tc,
            Self::BalancedTildeBZero | Self::BothBalanced => m.a * m.a - m.c * m.c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseCheck {
    pub case: NoAncillaCase,
    pub samples: usize,
    /// Largest |η| met in this branch; zero means exact.
    pub max_abs_eta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoAncillaReport {
    pub resolution: usize,
    pub points: u64,
    pub feasible: u64,
    /// Largest η among relaxed-feasible grid points (−∞ if none).
    pub max_feasible_eta: f64,
    pub argmax: Option<Magnitudes>,
    pub cases: Vec<CaseCheck>,
}

fn check_case(case: NoAncillaCase, steps: usize) -> CaseCheck {
    let mut max_abs_eta: f64 = 0.0;
    for i in 0..=steps {
        for j in 0..=steps {
            let s = std::f64::consts::FRAC_PI_2 * i as f64 / steps as f64;
            let t = std::f64::consts::FRAC_PI_2 * j as f64 / steps as f64;
            max_abs_eta = max_abs_eta.max(case.forced_eta(&case.magnitudes(s, t)).abs());
        }
    }
    CaseCheck { case, samples: (steps + 1) * (steps + 1), max_abs_eta }
}

pub fn no_ancilla_scan(resolution: usize) -> Result<NoAncillaReport> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::OutOfRange(format!("resolution {resolution} below {MIN_RESOLUTION}")));
    }
    let n = resolution;
    let step = 1.0 / n as f64;
    let (points, feasible, best) = (0..=n)
        .into_par_iter()
        .map(|i| {
            let mut points = 0u64;
            let mut feasible = 0u64;
            let mut best: Option<(f64, Magnitudes)> = None;
            let a = i as f64 * step;
            for j in 0..=n {
                let b = j as f64 * step;
                if a * a + 2.0 * b * b > 1.0 + 1e-15 {
                    break;
                }
                for k in 0..=n {
                    let ta = k as f64 * step;
                    for l in 0..=n {
                        let tb = l as f64 * step;
                        let Some(m) = Magnitudes::from_free(a, b, ta, tb) else { break };
                        points += 1;
                        if m.relaxed_feasible(FEASIBILITY_TOL) {
                            feasible += 1;
                            if best.is_none_or(|(e, _)| m.eta() > e) {
                                best = Some((m.eta(), m));
                            }
                        }
                    }
                }
            }
            (points, feasible, best)
        })
        .reduce(
            || (0, 0, None),
            |x, y| {
                let best = match (x.2, y.2) {
                    (Some(p), Some(q)) => Some(if q.0 > p.0 { q } else { p }),
                    (p, q) => p.or(q),
                };
                (x.0 + y.0, x.1 + y.1, best)
            },
        );
    Ok(NoAncillaReport {
        resolution,
        points,
        feasible,
        max_feasible_eta: best.map_or(f64::NEG_INFINITY, |b| b.0),
        argmax: best.map(|b| b.1),
        cases: NoAncillaCase::ALL.iter().map(|&c| check_case(c, 64)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_force_zero_exactly() {
        for case in NoAncillaCase::ALL {
            let c = check_case(case, 32);
            assert_eq!(c.max_abs_eta, 0.0, "{case:?}");
        }
    }

    #[test]
    fn case_magnitudes_are_normalized() {
        for case in NoAncillaCase::ALL {
            let m = case.magnitudes(0.4, 1.1);
            assert!((m.a * m.a + 2.0 * m.b * m.b + m.c * m.c - 1.0).abs() < 1e-15);
            assert!((m.ta * m.ta + 2.0 * m.tb * m.tb + m.tc * m.tc - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_map_is_infeasible() {
        // a = ã = 1 copies basis states perfectly; the off-diagonal constraints reject it.
        let m = Magnitudes::from_free(1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(m.eta(), 1.0);
        assert!(!m.relaxed_feasible(FEASIBILITY_TOL));
    }

    #[test]
    fn rejects_coarse_grid() {
        assert!(no_ancilla_scan(10).is_err());
    }

    #[test]
    fn minimum_scan_finds_no_positive_eta() {
        let r = no_ancilla_scan(MIN_RESOLUTION).unwrap();
        assert!(r.feasible > 0);
        assert!(r.max_feasible_eta <= 1e-8, "{r:?}");
    }
}
