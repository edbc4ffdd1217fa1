//! The optimal symmetric, isotropic 1→2 cloner.
//!
//! The machine is stored as an 8×2 isometry from the input qubit into the
//! register (clone 1, clone 2, ancilla), qubit 1 most significant:
//!
//! ```text
//! |0⟩ ↦ √(2/3) e^{iδa} |00⟩|A⟩ + √(1/6) e^{iδã} (|01⟩ + |10⟩)|A⊥⟩
//! |1⟩ ↦ √(2/3) e^{iδã} |11⟩|A⊥⟩ + √(1/6) e^{iδa} (|01⟩ + |10⟩)|A⟩
//! ```
//!
//! With δa = δã = 0 and |A⟩ = |0⟩ this is the Bužek–Hillery machine.

use crate::cloner::{isotropic_shrink, ClonePair, Cloner};
use crate::error::{Error, Result};
use crate::qmath::{partial_trace_operator, ComplexMatrix, DensityOperator, StateVector, C64};

/// Columns of a valid isometry must be orthonormal to this precision.
pub const ISOMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct UniversalClonerConfig {
    delta_a: f64,
    delta_a_tilde: f64,
    ancilla: [StateVector; 2],
}

impl UniversalClonerConfig {
    pub fn new(delta_a: f64, delta_a_tilde: f64, ancilla: StateVector, ancilla_perp: StateVector) -> Result<Self> {
        if ancilla.dim() != 2 || ancilla_perp.dim() != 2 {
            return Err(Error::Dimension("ancilla states must be single qubits".into()));
        }
        let overlap = ancilla.inner(&ancilla_perp)?.norm();
        if overlap > ISOMETRY_TOL {
            return Err(Error::AncillaBasis(overlap));
        }
        Ok(Self { delta_a, delta_a_tilde, ancilla: [ancilla, ancilla_perp] })
    }

    pub fn delta_a(&self) -> f64 {
        self.delta_a
    }

    pub fn delta_a_tilde(&self) -> f64 {
        self.delta_a_tilde
    }

    pub fn ancilla(&self) -> &[StateVector; 2] {
        &self.ancilla
    }
}

impl Default for UniversalClonerConfig {
    fn default() -> Self {
        Self { delta_a: 0.0, delta_a_tilde: 0.0, ancilla: [StateVector::zero(), StateVector::one()] }
    }
}

/// Magnitudes of the |00⟩, |01⟩, |10⟩, |11⟩ clone components of the image of |0⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientRecord {
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    pub c: f64,
}

impl CoefficientRecord {
    pub fn normalization(&self) -> f64 {
        self.a * self.a + self.b1 * self.b1 + self.b2 * self.b2 + self.c * self.c
    }
}

/// 8×2 isometry from the input qubit into (clone 1, clone 2, ancilla).
#[derive(Clone, Debug, PartialEq)]
pub struct ClonerIsometry {
    matrix: ComplexMatrix,
}

impl ClonerIsometry {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 8 || matrix.cols() != 2 {
            return Err(Error::Dimension(format!(
                "cloner isometry must be 8x2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.unitarity_defect();
        if defect > ISOMETRY_TOL {
            return Err(Error::Dimension(format!("columns are not orthonormal (defect {defect:e})")));
        }
        Ok(Self { matrix })
    }

    /// Builds the isometry from the images of |0⟩ and |1⟩.
    pub fn from_columns(col0: &[C64], col1: &[C64]) -> Result<Self> {
        if col0.len() != 8 || col1.len() != 8 {
            return Err(Error::Dimension("cloner columns must have 8 entries".into()));
        }
        let mut m = ComplexMatrix::zeros(8, 2);
        for i in 0..8 {
            m[(i, 0)] = col0[i];
            m[(i, 1)] = col1[i];
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn coefficients(&self) -> CoefficientRecord {
        let block = |k: usize| (self.matrix[(2 * k, 0)].norm_sqr() + self.matrix[(2 * k + 1, 0)].norm_sqr()).sqrt();
        CoefficientRecord { a: block(0), b1: block(1), b2: block(2), c: block(3) }
    }

    /// `⟨col0|col1⟩`, which unitarity requires to vanish.
    pub fn column_overlap(&self) -> C64 {
        (0..8).map(|i| self.matrix[(i, 0)].conj() * self.matrix[(i, 1)]).sum()
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dim() != 2 {
            return Err(Error::Dimension("cloner input must be a single qubit".into()));
        }
        let out = self.matrix.try_mul(&psi.as_column())?;
        StateVector::new(out.col(0))
    }
}

pub fn build_optimal_isometry(cfg: &UniversalClonerConfig) -> Result<ClonerIsometry> {
    let big = (2.0f64 / 3.0).sqrt();
    let small = (1.0f64 / 6.0).sqrt();
    let pa = C64::from_polar(1.0, cfg.delta_a);
    let pat = C64::from_polar(1.0, cfg.delta_a_tilde);
    let [anc, perp] = &cfg.ancilla;
    let ket = |bits: usize, anc: &StateVector| -> Vec<C64> {
        let clones = StateVector::basis(4, bits).expect("two-qubit basis");
        clones.tensor(anc).expect("three qubits").amplitudes().to_vec()
    };
    let sym =
        |anc: &StateVector| -> Vec<C64> { ket(0b01, anc).iter().zip(ket(0b10, anc)).map(|(x, y)| x + y).collect() };
    let col0: Vec<C64> = ket(0b00, anc).iter().zip(sym(perp)).map(|(x, y)| x * pa * big + y * pat * small).collect();
    let col1: Vec<C64> = ket(0b11, perp).iter().zip(sym(anc)).map(|(x, y)| x * pat * big + y * pa * small).collect();
    ClonerIsometry::from_columns(&col0, &col1)
}

#[derive(Clone, Debug)]
pub struct CloneOutput {
    pub rho1: DensityOperator,
    pub rho2: DensityOperator,
    pub rho_ancilla: DensityOperator,
    pub joint: StateVector,
}

/// Runs the cloner on `psi` and returns the three single-qubit marginals.
pub fn clone(iso: &ClonerIsometry, psi: &StateVector) -> Result<CloneOutput> {
    let joint = iso.apply(psi)?;
    Ok(CloneOutput { rho1: joint.reduced(&[0])?, rho2: joint.reduced(&[1])?, rho_ancilla: joint.reduced(&[2])?, joint })
}

/// Common Bloch-vector shrink factor η of both clones.
pub fn shrink_factor(iso: &ClonerIsometry, psi: &StateVector) -> Result<f64> {
    let out = clone(iso, psi)?;
    isotropic_shrink(psi, &[&out.rho1, &out.rho2])
}

/// `Tr[(ρψ ⊗ ρψ) ρ₁₂]` with ρ₁₂ the two-clone marginal.
pub fn global_fidelity_universal(iso: &ClonerIsometry, psi: &StateVector) -> Result<f64> {
    let joint = iso.apply(psi)?;
    let rho12 = joint.reduced(&[0, 1])?;
    let target = psi.projector().tensor(&psi.projector())?;
    Ok((target.matrix() * rho12.matrix()).trace().re)
}

/// Input-independent check of the cloning map of an isometry.
///
/// The clone-k map is fixed by the four blocks `M^k_ij = Tr_rest(V|i⟩⟨j|V†)`.
/// A symmetric isotropic cloner with shrink factor η has
/// `M^1_ij = M^2_ij = (1−η)/2 δ_ij 1 + η |i⟩⟨j|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometryAudit {
    pub isometry_defect: f64,
    pub symmetry_defect: f64,
    pub isotropy_defect: f64,
    pub eta: f64,
}

impl IsometryAudit {
    pub fn worst(&self) -> f64 {
        self.isometry_defect.max(self.symmetry_defect).max(self.isotropy_defect)
    }
}

pub fn audit_isometry(matrix: &ComplexMatrix) -> Result<IsometryAudit> {
    if matrix.rows() != 8 || matrix.cols() != 2 {
        return Err(Error::Dimension("audit expects an 8x2 matrix".into()));
    }
    let col = |j: usize| ComplexMatrix::column(&matrix.col(j));
    let blocks = |keep: usize| -> Result<Vec<ComplexMatrix>> {
        let mut out = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                let op = &col(i) * &col(j).adjoint();
                out.push(partial_trace_operator(&op, &[keep], &[2, 2, 2])?);
            }
        }
        Ok(out)
    };
    let m1 = blocks(0)?;
    let m2 = blocks(1)?;
    let eta = (m1[0][(0, 0)] - m1[0][(1, 1)]).re;
    let mut symmetry_defect: f64 = 0.0;
    let mut isotropy_defect: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let k = 2 * i + j;
            symmetry_defect = symmetry_defect.max(m1[k].max_abs_diff(&m2[k])?);
            let mut target = ComplexMatrix::zeros(2, 2);
            if i == j {
                target = ComplexMatrix::identity(2).scale_real(0.5 * (1.0 - eta));
            }
            target[(i, j)] += C64::new(eta, 0.0);
            isotropy_defect = isotropy_defect.max(m1[k].max_abs_diff(&target)?);
        }
    }
    Ok(IsometryAudit { isometry_defect: matrix.unitarity_defect(), symmetry_defect, isotropy_defect, eta })
}

/// The universal machine as a registry entry.
#[derive(Clone, Debug)]
pub struct UniversalCloner {
    iso: ClonerIsometry,
}

impl UniversalCloner {
    pub fn new(cfg: &UniversalClonerConfig) -> Result<Self> {
        Ok(Self { iso: build_optimal_isometry(cfg)? })
    }

    pub fn isometry(&self) -> &ClonerIsometry {
        &self.iso
    }
}

impl Default for UniversalCloner {
    fn default() -> Self {
        Self::new(&UniversalClonerConfig::default()).expect("default config is valid")
    }
}

impl Cloner for UniversalCloner {
    fn name(&self) -> &'static str {
        "universal"
    }

    fn summary(&self) -> &'static str {
        "optimal symmetric isotropic cloner (Buzek-Hillery isometry with a qubit ancilla)"
    }

    fn clone_state(&self, psi: &StateVector) -> Result<ClonePair> {
        let out = clone(&self.iso, psi)?;
        Ok(ClonePair { first: out.rho1, second: out.rho2 })
    }
}

/// Isometry that leaves the input in clone 1 and puts |0⟩ in clone 2.
pub fn identity_with_blank_isometry() -> ClonerIsometry {
    let e = |i: usize| StateVector::basis(8, i).expect("basis").amplitudes().to_vec();
    ClonerIsometry::from_columns(&e(0b000), &e(0b100)).expect("basis columns are orthonormal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{fidelity_pure, random_pure_qubit, seeded_rng, trace_distance};

    fn bh() -> ClonerIsometry {
        build_optimal_isometry(&UniversalClonerConfig::default()).unwrap()
    }

    #[test]
    fn buzek_hillery_column_amplitudes() {
        let iso = bh();
        let big = (2.0f64 / 3.0).sqrt();
        let small = (1.0f64 / 6.0).sqrt();
        let mut expected = [0.0; 8];
        expected[0b000] = big;
        expected[0b011] = small;
        expected[0b101] = small;
        for (i, e) in expected.iter().enumerate() {
            assert!((iso.matrix()[(i, 0)] - C64::new(*e, 0.0)).norm() < 1e-15, "row {i}");
        }
    }

    #[test]
    fn coefficient_record() {
        let rec = bh().coefficients();
        assert!((rec.a - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((rec.b1 - (1.0f64 / 6.0).sqrt()).abs() < 1e-15);
        assert!((rec.b2 - rec.b1).abs() < 1e-15);
        assert!(rec.c.abs() < 1e-15);
        assert!((rec.normalization() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn columns_orthogonal_for_any_config() {
        let anc = StateVector::from_angles(0.9, 2.0);
        let perp = StateVector::from_angles(std::f64::consts::PI - 0.9, 2.0 + std::f64::consts::PI);
        let cfg = UniversalClonerConfig::new(0.3, -1.2, anc, perp).unwrap();
        let iso = build_optimal_isometry(&cfg).unwrap();
        assert!(iso.column_overlap().norm() < 1e-15);
        assert!(iso.matrix().unitarity_defect() < 1e-14);
    }

    #[test]
    fn rejects_non_orthogonal_ancilla() {
        let r = UniversalClonerConfig::new(0.0, 0.0, StateVector::zero(), StateVector::from_angles(1.0, 0.0));
        assert!(matches!(r, Err(Error::AncillaBasis(_))));
    }

    #[test]
    fn clone_of_zero() {
        let out = clone(&bh(), &StateVector::zero()).unwrap();
        let expected = DensityOperator::from_real(2, &[5.0 / 6.0, 0.0, 0.0, 1.0 / 6.0]).unwrap();
        assert!(out.rho1.matrix().max_abs_diff(expected.matrix()).unwrap() < 1e-15);
        assert!(out.rho2.matrix().max_abs_diff(expected.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn clone_of_plus_shrinks_along_x() {
        let h = 0.5f64.sqrt();
        let plus = StateVector::from_real(&[h, h]).unwrap();
        let s = clone(&bh(), &plus).unwrap().rho1.bloch().unwrap();
        assert!((s.x - 2.0 / 3.0).abs() < 1e-15 && s.y.abs() < 1e-15 && s.z.abs() < 1e-15);
    }

    #[test]
    fn random_inputs_symmetric_with_fixed_shrink() {
        let iso = bh();
        let mut rng = seeded_rng(11);
        for _ in 0..100 {
            let psi = random_pure_qubit(&mut rng);
            let out = clone(&iso, &psi).unwrap();
            assert!(trace_distance(&out.rho1, &out.rho2).unwrap() < 1e-12);
            assert!((shrink_factor(&iso, &psi).unwrap() - 2.0 / 3.0).abs() < 1e-12);
            assert!((fidelity_pure(&out.rho1, &psi).unwrap() - 5.0 / 6.0).abs() < 1e-12);
            let s_in = psi.projector().bloch().unwrap();
            let s_out = out.rho1.bloch().unwrap();
            let c = s_in.cross(&s_out);
            assert!(c.iter().map(|x| x * x).sum::<f64>().sqrt() < 1e-10);
        }
    }

    #[test]
    fn shrink_factor_of_zero_input() {
        let iso = bh();
        let eta = shrink_factor(&iso, &StateVector::zero()).unwrap();
        assert!((eta - 2.0 / 3.0).abs() < 1e-15);
        assert!((0.5 * (1.0 + eta) - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn non_isotropic_isometry_is_rejected() {
        let iso = identity_with_blank_isometry();
        let psi = StateVector::from_angles(1.0, 0.5);
        assert!(matches!(shrink_factor(&iso, &psi), Err(Error::NonIsotropic { .. })));
    }

    #[test]
    fn global_fidelity_values() {
        let iso = bh();
        let h = 0.5f64.sqrt();
        let inputs = [StateVector::zero(), StateVector::one(), StateVector::from_real(&[h, h]).unwrap()];
        for psi in &inputs {
            assert!((global_fidelity_universal(&iso, psi).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        }
        let cfg = UniversalClonerConfig::new(0.7, 2.1, StateVector::zero(), StateVector::one()).unwrap();
        let phased = build_optimal_isometry(&cfg).unwrap();
        let psi = StateVector::from_angles(0.3, 1.9);
        let a = global_fidelity_universal(&iso, &psi).unwrap();
        let b = global_fidelity_universal(&phased, &psi).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn audit_accepts_optimal_and_rejects_identity() {
        let a = audit_isometry(bh().matrix()).unwrap();
        assert!(a.worst() < 1e-15 && (a.eta - 2.0 / 3.0).abs() < 1e-15);
        let b = audit_isometry(identity_with_blank_isometry().matrix()).unwrap();
        assert!(b.symmetry_defect > 0.1);
    }

    #[test]
    fn isometry_validation() {
        assert!(ClonerIsometry::new(ComplexMatrix::zeros(8, 2)).is_err());
        assert!(ClonerIsometry::new(ComplexMatrix::identity(8)).is_err());
    }
}
