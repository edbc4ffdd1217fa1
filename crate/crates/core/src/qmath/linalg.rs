//! Eigenvalues of small Hermitian matrices.
//!
//! 2×2 matrices use the closed form; larger ones use cyclic complex Jacobi
//! rotations, which converge quadratically and need no pivoting for the
//! dimensions used here (at most 16).

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const JACOBI_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Only the Hermitian part of the input is used; callers validate
/// Hermiticity when it matters.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("eigenvalues of a {}x{} matrix", m.rows(), m.cols())));
    }
    let mut vals = match m.rows() {
        1 => vec![m[(0, 0)].re],
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
            let mean = 0.5 * (a + d);
            let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
            vec![mean - r, mean + r]
        }
        _ => jacobi(m),
    };
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

fn jacobi(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    // Hermitian part.
    let mut a: Vec<C64> = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m[(i, j)] + m[(j, i)].conj());
        }
    }
    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) · [[c, s], [-s, c]] restricted to (p, q).
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * gpp + akq * gqp;
                    a[k * n + q] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[q * n + k] = gpq.conj() * apk + gqq.conj() * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i].re).collect()
}

/// Sum of singular values of a Hermitian matrix (sum of |eigenvalues|).
pub fn hermitian_trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::matrix::tensor;
    use crate::qmath::pauli;

    #[test]
    fn two_by_two_closed_form() {
        let vals = hermitian_eigenvalues(&pauli::sigma_y()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-15 && (vals[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_matches_known_spectrum() {
        // σx⊗σy + ½ σz⊗I has eigenvalues ±√(1 + 1/4), each twice.
        let m = &tensor(&pauli::sigma_x(), &pauli::sigma_y())
            + &tensor(&pauli::sigma_z(), &ComplexMatrix::identity(2)).scale_real(0.5);
        let vals = hermitian_eigenvalues(&m).unwrap();
        let r = 1.25f64.sqrt();
        let expected = [-r, -r, r, r];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-13, "{vals:?}");
        }
    }

    #[test]
    fn jacobi_on_complex_eight_by_eight() {
        // Diagonal spectrum conjugated by a unitary built from Pauli tensors.
        let d = ComplexMatrix::diag(&[0.5, 0.2, 0.1, 0.1, 0.05, 0.05, 0.0, 0.0]);
        let h = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap().scale_real(0.5f64.sqrt());
        let phase = ComplexMatrix::from_rows([
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(0.0, 1.0)],
        ]);
        let u1 = &phase * &h;
        let u = tensor(&tensor(&u1, &h), &u1);
        let m = u.conjugate(&d).unwrap();
        let vals = hermitian_eigenvalues(&m).unwrap();
        let mut expected = vec![0.5, 0.2, 0.1, 0.1, 0.05, 0.05, 0.0, 0.0];
        expected.sort_by(f64::total_cmp);
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-13, "{vals:?}");
        }
    }

    #[test]
    fn rejects_rectangular() {
        assert!(hermitian_eigenvalues(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
