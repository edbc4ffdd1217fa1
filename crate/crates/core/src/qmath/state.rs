use serde::Serialize;

use super::linalg::{hermitian_eigenvalues, hermitian_trace_norm};
use super::{pauli, ComplexMatrix, C64};
use crate::error::{Error, Result};

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const EIGEN_FLOOR: f64 = -1e-10;
pub const BLOCH_TOL: f64 = 1e-12;

/// Largest supported register: the teleportation setup holds four qubits.
pub const MAX_DIM: usize = 16;

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 || !dim.is_power_of_two() || dim > MAX_DIM {
        return Err(Error::Dimension(format!("dimension {dim} is not a power of two in [2, {MAX_DIM}]")));
    }
    Ok(())
}

/// Normalized pure state of one or more qubits. Qubit 1 is the most
/// significant bit of the amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        check_dim(amps.len())?;
        let norm = norm_of(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amps })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        check_dim(amps.len())?;
        let norm = norm_of(&amps);
        if norm <= f64::MIN_POSITIVE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::Dimension(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn zero() -> Self {
        Self { amps: vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)] }
    }

    pub fn one() -> Self {
        Self { amps: vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)] }
    }

    /// Qubit pointing along the unit Bloch direction `(θ, φ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        Self { amps: vec![C64::new(c, 0.0), C64::from_polar(s, phi)] }
    }

    /// Pure qubit with the given Bloch vector; requires `|s| = 1`.
    pub fn from_bloch(s: &BlochVector) -> Result<Self> {
        let n = s.norm();
        if n > 1.0 + 1e-9 {
            return Err(Error::BlochNorm(n));
        }
        if n < 1.0 - 1e-9 {
            return Err(Error::OutOfRange(format!("a pure state needs |s| = 1, got {n}")));
        }
        let theta = (s.z / n).clamp(-1.0, 1.0).acos();
        let phi = s.y.atan2(s.x);
        Ok(Self::from_angles(theta, phi))
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!("inner product of dims {} and {}", self.dim(), other.dim())));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let amps: Vec<C64> = self.amps.iter().flat_map(|&a| other.amps.iter().map(move |&b| a * b)).collect();
        check_dim(amps.len())?;
        Ok(Self { amps })
    }

    pub fn as_column(&self) -> ComplexMatrix {
        ComplexMatrix::column(&self.amps)
    }

    pub fn projector(&self) -> DensityOperator {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amps[i] * self.amps[j].conj();
            }
        }
        DensityOperator { m }
    }

    /// Applies a square operator and renormalizes.
    pub fn evolve(&self, op: &ComplexMatrix) -> Result<Self> {
        let out = op.try_mul(&self.as_column())?;
        Self::normalized(out.col(0))
    }

    /// Reduced state on the qubits listed in `keep` (0-based).
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityOperator> {
        let dims = vec![2; self.num_qubits()];
        partial_trace(&self.projector(), keep, &dims)
    }
}

fn norm_of(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    m: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidDensity(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        check_dim(m.rows())?;
        let herm = m.hermiticity_defect();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (defect {herm:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        let min_eig = hermitian_eigenvalues(&m)?[0];
        if min_eig < EIGEN_FLOOR {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(Self { m })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real(dim, dim, data)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { m: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.m).expect("density operators are square")
    }

    pub fn partial_trace(&self, keep: &[usize], dims: &[usize]) -> Result<Self> {
        partial_trace(self, keep, dims)
    }

    /// Bloch vector of a qubit density operator.
    pub fn bloch(&self) -> Result<BlochVector> {
        bloch_from_density(self)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let m = super::tensor(&self.m, &other.m);
        check_dim(m.rows())?;
        Ok(Self { m })
    }
}

/// Real Bloch vector `s_α = Tr(ρ σ_α)` of a qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let s = Self { x, y, z };
        let n = s.norm();
        if !n.is_finite() || n > 1.0 + BLOCH_TOL {
            return Err(Error::BlochNorm(n));
        }
        Ok(s)
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, o: &Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> [f64; 3] {
        [self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x]
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { x: k * self.x, y: k * self.y, z: k * self.z }
    }

    pub fn to_density(&self) -> DensityOperator {
        density_from_bloch(self)
    }
}

pub fn bloch_from_density(rho: &DensityOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::Dimension(format!("Bloch vector of a {}-dim state", rho.dim())));
    }
    let comp = |s: ComplexMatrix| (rho.matrix() * &s).trace().re;
    BlochVector::new(comp(pauli::sigma_x()), comp(pauli::sigma_y()), comp(pauli::sigma_z()))
}

/// `ρ = ½(1 + s·σ)`.
pub fn density_from_bloch(s: &BlochVector) -> DensityOperator {
    let m = ComplexMatrix::from_rows([
        [C64::new(0.5 * (1.0 + s.z), 0.0), C64::new(0.5 * s.x, -0.5 * s.y)],
        [C64::new(0.5 * s.x, 0.5 * s.y), C64::new(0.5 * (1.0 - s.z), 0.0)],
    ]);
    DensityOperator { m }
}

/// Partial trace of an arbitrary square operator, keeping the listed
/// subsystems in their original order. No positivity or trace checks.
pub fn partial_trace_operator(m: &ComplexMatrix, keep: &[usize], dims: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(Error::Dimension(format!(
            "subsystem dims {dims:?} multiply to {total}, operator is {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if keep.is_empty() {
        return Err(Error::Dimension("nothing to keep".into()));
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Dimension(format!("invalid subsystem set {keep:?} for {} subsystems", dims.len())));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let env_dim: usize = traced_dims.iter().product();

    // Mixed-radix composition of a full index from kept and traced digits.
    let compose = |kidx: usize, tidx: usize| -> usize {
        let mut digits = vec![0usize; dims.len()];
        let mut r = kidx;
        for (pos, &k) in kept.iter().enumerate().rev() {
            digits[k] = r % kept_dims[pos];
            r /= kept_dims[pos];
        }
        let mut r = tidx;
        for (pos, &t) in traced.iter().enumerate().rev() {
            digits[t] = r % traced_dims[pos];
            r /= traced_dims[pos];
        }
        digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
    };

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..env_dim {
                acc += m[(compose(i, t), compose(j, t))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Reduced density operator on the `keep` subsystems.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize], dims: &[usize]) -> Result<DensityOperator> {
    let m = partial_trace_operator(rho.matrix(), keep, dims)?;
    DensityOperator::new(m)
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity_pure(rho: &DensityOperator, psi: &StateVector) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(Error::Dimension(format!("state of dim {} vs operator of dim {}", psi.dim(), rho.dim())));
    }
    let n = psi.dim();
    let a = psi.amplitudes();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[i].conj() * rho.entry(i, j) * a[j];
        }
    }
    Ok(acc.re)
}

/// `½ ‖ρ − σ‖₁`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let diff = rho.matrix().try_sub(sigma.matrix())?;
    Ok(0.5 * hermitian_trace_norm(&diff)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::tensor;

    fn singlet() -> StateVector {
        let h = 0.5f64.sqrt();
        StateVector::from_real(&[0.0, h, -h, 0.0]).unwrap()
    }

    #[test]
    fn singlet_marginal_is_maximally_mixed() {
        let r = singlet().reduced(&[0]).unwrap();
        assert!(r.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)).unwrap() < 1e-15);
    }

    #[test]
    fn product_state_marginal() {
        let rho = DensityOperator::from_real(2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        let sigma = StateVector::from_angles(1.0, 0.3).projector();
        let joint = rho.tensor(&sigma).unwrap();
        let back = joint.partial_trace(&[0], &[2, 2]).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-15);
        let other = joint.partial_trace(&[1], &[2, 2]).unwrap();
        assert!(other.matrix().max_abs_diff(sigma.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_subsystem_order() {
        // |0⟩|1⟩|+⟩: keeping {0, 2} must give |0⟩⟨0| ⊗ |+⟩⟨+|.
        let h = 0.5f64.sqrt();
        let plus = StateVector::from_real(&[h, h]).unwrap();
        let psi = StateVector::zero().tensor(&StateVector::one()).unwrap().tensor(&plus).unwrap();
        let r = psi.reduced(&[0, 2]).unwrap();
        let expected = tensor(StateVector::zero().projector().matrix(), plus.projector().matrix());
        assert!(r.matrix().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = DensityOperator::maximally_mixed(4).unwrap();
        assert!(rho.partial_trace(&[0], &[2, 3]).is_err());
        assert!(rho.partial_trace(&[], &[2, 2]).is_err());
        assert!(rho.partial_trace(&[2], &[2, 2]).is_err());
        assert!(rho.partial_trace(&[0, 0], &[2, 2]).is_err());
    }

    #[test]
    fn bloch_examples() {
        let s0 = StateVector::zero().projector().bloch().unwrap();
        assert_eq!(s0.components(), [0.0, 0.0, 1.0]);
        let mixed = DensityOperator::maximally_mixed(2).unwrap().bloch().unwrap();
        assert_eq!(mixed.components(), [0.0, 0.0, 0.0]);
        let shrunk = DensityOperator::from_real(2, &[5.0 / 6.0, 0.0, 0.0, 1.0 / 6.0]).unwrap().bloch().unwrap();
        assert!((shrunk.z - 2.0 / 3.0).abs() < 1e-15 && shrunk.x == 0.0 && shrunk.y == 0.0);
    }

    #[test]
    fn bloch_norm_rejected() {
        assert!(matches!(BlochVector::new(2.0, 0.0, 0.0), Err(Error::BlochNorm(_))));
        assert!(BlochVector::new(1.0 + 1e-13, 0.0, 0.0).is_ok());
    }

    #[test]
    fn fidelity_examples() {
        let psi = StateVector::from_angles(0.4, 1.1);
        assert!((fidelity_pure(&psi.projector(), &psi).unwrap() - 1.0).abs() < 1e-15);
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!((fidelity_pure(&mixed, &psi).unwrap() - 0.5).abs() < 1e-15);
        let rho = DensityOperator::from_real(2, &[5.0 / 6.0, 0.0, 0.0, 1.0 / 6.0]).unwrap();
        assert!((fidelity_pure(&rho, &StateVector::zero()).unwrap() - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn trace_distance_examples() {
        let p0 = StateVector::zero().projector();
        let p1 = StateVector::one().projector();
        assert!(trace_distance(&p0, &p0).unwrap().abs() < 1e-15);
        assert!((trace_distance(&p0, &p1).unwrap() - 1.0).abs() < 1e-15);
        // I/2 − |0⟩⟨0| = diag(−½, ½).
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!((trace_distance(&mixed, &p0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn density_constructor_rejects_invalid() {
        let non_herm = ComplexMatrix::from_rows([
            [C64::new(0.5, 0.0), C64::new(0.1, 0.0)],
            [C64::new(0.2, 0.0), C64::new(0.5, 0.0)],
        ]);
        assert!(DensityOperator::new(non_herm).is_err());
        assert!(DensityOperator::from_real(2, &[0.6, 0.0, 0.0, 0.6]).is_err());
        assert!(DensityOperator::from_real(2, &[1.2, 0.0, 0.0, -0.2]).is_err());
        assert!(DensityOperator::from_real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn state_vector_validation() {
        assert!(StateVector::from_real(&[1.0, 1.0]).is_err());
        assert!(StateVector::from_real(&[1.0, 0.0, 0.0]).is_err());
        assert!(StateVector::normalized(vec![C64::new(0.0, 0.0); 2]).is_err());
        let s = StateVector::normalized(vec![C64::new(3.0, 0.0), C64::new(0.0, 4.0)]).unwrap();
        assert!((s.amplitude(1).im - 0.8).abs() < 1e-15);
    }
}
