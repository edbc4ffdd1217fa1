//! Cloning by teleportation.
//!
//! Alice holds the input ψ and the first qubit of a three-qubit resource
//! state shared with Bob and Charlie. After a Bell measurement on (ψ, Alice)
//! and a Pauli correction that depends only on the outcome, Bob and Charlie
//! each hold an optimal universal clone once outcomes are averaged.
//!
//! Register order is (ψ, Alice, Bob, Charlie), qubit 0 most significant.

use std::fmt;

use rand::Rng;

use crate::cloner::{ClonePair, Cloner};
use crate::error::{Error, Result};
use crate::qmath::{
    partial_trace_operator, pauli, tensor, BlochVector, ComplexMatrix, DensityOperator, StateVector, C64,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];

    /// Two-qubit Bell state for this outcome.
    pub fn state(self) -> StateVector {
        let h = 0.5f64.sqrt();
        let amps = match self {
            Self::PhiPlus => [h, 0.0, 0.0, h],
            Self::PhiMinus => [h, 0.0, 0.0, -h],
            Self::PsiPlus => [0.0, h, h, 0.0],
            Self::PsiMinus => [0.0, h, -h, 0.0],
        };
        StateVector::from_real(&amps).expect("Bell states are normalized")
    }

    pub fn group(self) -> KrausGroupLabel {
        match self {
            Self::PhiPlus | Self::PhiMinus => KrausGroupLabel::Phi,
            Self::PsiPlus | Self::PsiMinus => KrausGroupLabel::Psi,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::PhiPlus => "Phi+",
            Self::PhiMinus => "Phi-",
            Self::PsiPlus => "Psi+",
            Self::PsiMinus => "Psi-",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&o| o == self).expect("listed")
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KrausGroupLabel {
    Phi,
    Psi,
}

impl KrausGroupLabel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Phi" | "phi" | "Φ" => Ok(Self::Phi),
            "Psi" | "psi" | "Ψ" => Ok(Self::Psi),
            _ => Err(Error::Unknown { kind: "Kraus group", name: s.to_string() }),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Phi => "Phi",
            Self::Psi => "Psi",
        }
    }
}

/// `√(2/3)|100⟩ − √(1/6)|010⟩ − √(1/6)|001⟩` on (Alice, Bob, Charlie).
pub fn psi_clone_state() -> StateVector {
    let mut amps = [0.0; 8];
    amps[0b100] = (2.0f64 / 3.0).sqrt();
    amps[0b010] = -(1.0f64 / 6.0).sqrt();
    amps[0b001] = -(1.0f64 / 6.0).sqrt();
    StateVector::from_real(&amps).expect("normalized by construction")
}

/// Unitary both Bob and Charlie apply after hearing the outcome.
pub fn correction(outcome: BellOutcome) -> ComplexMatrix {
    match outcome {
        BellOutcome::PsiMinus => pauli::identity(),
        BellOutcome::PsiPlus => pauli::sigma_z(),
        BellOutcome::PhiMinus => pauli::sigma_x(),
        BellOutcome::PhiPlus => pauli::sigma_y(),
    }
}

/// One Bell-measurement branch, before any correction.
#[derive(Clone, Debug)]
pub struct BellBranch {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Projection of the remaining qubits, norm² equal to `probability`.
    pub residual: Vec<C64>,
}

/// All four branches of a Bell measurement on the first two qubits.
pub fn bell_branches(joint: &StateVector) -> Result<[BellBranch; 4]> {
    if joint.num_qubits() < 3 {
        return Err(Error::Dimension("Bell measurement needs at least one unmeasured qubit".into()));
    }
    let rest = joint.dim() / 4;
    let amps = joint.amplitudes();
    Ok(BellOutcome::ALL.map(|outcome| {
        let bell = outcome.state();
        let residual: Vec<C64> =
            (0..rest).map(|k| (0..4).map(|ij| bell.amplitude(ij).conj() * amps[ij * rest + k]).sum()).collect();
        let probability = residual.iter().map(|a| a.norm_sqr()).sum();
        BellBranch { outcome, probability, residual }
    }))
}

#[derive(Clone, Debug)]
pub struct BellMeasurement {
    pub outcome: BellOutcome,
    /// Normalized post-measurement state of the unmeasured qubits.
    pub residual: StateVector,
    pub probability: f64,
}

/// Samples a Bell outcome by inverse CDF over the exact Born probabilities.
pub fn bell_measure<R: Rng + ?Sized>(joint: &StateVector, rng: &mut R) -> Result<BellMeasurement> {
    let branches = bell_branches(joint)?;
    let probs = branches.each_ref().map(|b| b.probability);
    let k = sample_index(&probs, rng);
    let b = &branches[k];
    Ok(BellMeasurement {
        outcome: b.outcome,
        residual: StateVector::normalized(b.residual.clone())?,
        probability: b.probability,
    })
}

fn sample_index<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random::<f64>() * probs.iter().sum::<f64>();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // Rounding can leave u just above the final partial sum.
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1)
}

/// Exact conditional state of (Bob, Charlie) for one outcome, after the
/// correction. Unnormalized: the trace is the outcome probability.
#[derive(Clone, Debug)]
pub struct CorrectedBranch {
    pub outcome: BellOutcome,
    pub probability: f64,
    pub bob_charlie: ComplexMatrix,
}

impl CorrectedBranch {
    pub fn bob(&self) -> ComplexMatrix {
        partial_trace_operator(&self.bob_charlie, &[0], &[2, 2]).expect("4x4 operator")
    }

    pub fn charlie(&self) -> ComplexMatrix {
        partial_trace_operator(&self.bob_charlie, &[1], &[2, 2]).expect("4x4 operator")
    }
}

pub fn corrected_branches(psi: &StateVector) -> Result<[CorrectedBranch; 4]> {
    if psi.dim() != 2 {
        return Err(Error::Dimension("teleportation input must be a single qubit".into()));
    }
    let joint = psi.tensor(&psi_clone_state())?;
    let branches = bell_branches(&joint)?;
    Ok(branches.map(|b| {
        let c = correction(b.outcome);
        let u = tensor(&c, &c);
        let v = u.try_mul(&ComplexMatrix::column(&b.residual)).expect("4x4 times 4x1");
        CorrectedBranch { outcome: b.outcome, probability: b.probability, bob_charlie: &v * &v.adjoint() }
    }))
}

/// Kraus operators that share one POVM element.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausGroup {
    pub label: KrausGroupLabel,
    pub operators: Vec<ComplexMatrix>,
}

impl KrausGroup {
    /// `Σ_j A_j† A_j`.
    pub fn povm(&self) -> ComplexMatrix {
        self.operators.iter().fold(ComplexMatrix::zeros(2, 2), |acc, a| &acc + &(&a.adjoint() * a))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    groups: Vec<KrausGroup>,
}

impl KrausChannel {
    pub fn new(groups: Vec<KrausGroup>) -> Result<Self> {
        if groups.iter().flat_map(|g| &g.operators).any(|a| a.rows() != 2 || a.cols() != 2) {
            return Err(Error::Dimension("Kraus operators must be 2x2".into()));
        }
        Ok(Self { groups })
    }

    pub fn groups(&self) -> &[KrausGroup] {
        &self.groups
    }

    pub fn group(&self, label: KrausGroupLabel) -> Result<&KrausGroup> {
        self.groups
            .iter()
            .find(|g| g.label == label)
            .ok_or_else(|| Error::Unknown { kind: "Kraus group", name: label.label().to_string() })
    }

    pub fn povm(&self, label: KrausGroupLabel) -> Result<ComplexMatrix> {
        Ok(self.group(label)?.povm())
    }

    /// Largest entry of `Σ A†A − 1`.
    pub fn completeness_defect(&self) -> f64 {
        let total = self.groups.iter().fold(ComplexMatrix::zeros(2, 2), |acc, g| &acc + &g.povm());
        total.max_abs_diff(&ComplexMatrix::identity(2)).expect("2x2")
    }

    /// `Σ_j A_ij ρ A_ij†` for one group, or the sum over all groups.
    /// Conditional outputs are unnormalized with trace Pr(i).
    pub fn apply(&self, rho: &ComplexMatrix, group: Option<&str>) -> Result<ComplexMatrix> {
        if rho.rows() != 2 || rho.cols() != 2 {
            return Err(Error::Dimension("channel input must be 2x2".into()));
        }
        let selected: Vec<&KrausGroup> = match group {
            Some(name) => vec![self.group(KrausGroupLabel::parse(name)?)?],
            None => self.groups.iter().collect(),
        };
        Ok(selected
            .iter()
            .flat_map(|g| &g.operators)
            .fold(ComplexMatrix::zeros(2, 2), |acc, a| &acc + &a.conjugate(rho).expect("2x2")))
    }

    pub fn apply_total(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        DensityOperator::new(self.apply(rho.matrix(), None)?)
    }

    /// `Pr(i) = ½ Tr E_i + ½ Σ_α s_α Tr(E_i σ_α)`.
    pub fn outcome_probability_bloch(&self, label: KrausGroupLabel, s: &BlochVector) -> Result<f64> {
        let e = self.povm(label)?;
        let mut p = 0.5 * e.trace().re;
        for (sa, sigma) in s.components().into_iter().zip(pauli::all()) {
            p += 0.5 * sa * (&e * &sigma).trace().re;
        }
        Ok(p)
    }
}

/// The two-group channel that describes Bob's (and Charlie's) clone.
pub fn kraus_channel() -> KrausChannel {
    let big = (2.0f64 / 3.0).sqrt();
    let small = (1.0f64 / 6.0).sqrt();
    let real = |m: [f64; 4]| ComplexMatrix::from_real(2, 2, &m).expect("2x2");
    KrausChannel::new(vec![
        KrausGroup {
            label: KrausGroupLabel::Phi,
            operators: vec![real([0.5 * big, 0.0, 0.0, big]), real([0.0, 0.0, small, 0.0])],
        },
        KrausGroup {
            label: KrausGroupLabel::Psi,
            operators: vec![real([big, 0.0, 0.0, 0.5 * big]), real([0.0, small, 0.0, 0.0])],
        },
    ])
    .expect("2x2 operators")
}

#[derive(Clone, Debug)]
pub struct TeleportRun {
    pub shots: u64,
    /// Indexed like `BellOutcome::ALL`.
    pub counts: [u64; 4],
    pub probabilities: [f64; 4],
    /// Unnormalized corrected states of Bob, trace = probability.
    pub bob_conditional: [ComplexMatrix; 4],
    pub bob_average: DensityOperator,
    pub charlie_average: DensityOperator,
    /// Bob's state averaged with the sampled frequencies instead of the exact probabilities.
    pub bob_sampled: DensityOperator,
}

impl TeleportRun {
    pub fn count(&self, outcome: BellOutcome) -> u64 {
        self.counts[outcome.index()]
    }

    pub fn probability(&self, outcome: BellOutcome) -> f64 {
        self.probabilities[outcome.index()]
    }

    pub fn group_frequency(&self, label: KrausGroupLabel) -> f64 {
        let n: u64 = BellOutcome::ALL.iter().filter(|o| o.group() == label).map(|&o| self.count(o)).sum();
        n as f64 / self.shots as f64
    }
}

pub fn run_teleport_clone<R: Rng + ?Sized>(psi: &StateVector, shots: u64, rng: &mut R) -> Result<TeleportRun> {
    if shots == 0 {
        return Err(Error::OutOfRange("shots must be at least 1".into()));
    }
    let branches = corrected_branches(psi)?;
    let probabilities = branches.each_ref().map(|b| b.probability);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        counts[sample_index(&probabilities, rng)] += 1;
    }
    let bob_conditional = branches.each_ref().map(|b| b.bob());
    let sum = |ms: &[ComplexMatrix]| ms.iter().fold(ComplexMatrix::zeros(2, 2), |acc, m| &acc + m);
    let bob_average = DensityOperator::new(sum(&bob_conditional))?;
    let charlie_average = DensityOperator::new(sum(&branches.each_ref().map(|b| b.charlie())))?;
    let mut sampled = ComplexMatrix::zeros(2, 2);
    for (b, &n) in branches.iter().zip(&counts) {
        if n > 0 {
            let weight = n as f64 / shots as f64 / b.probability;
            sampled = &sampled + &b.bob().scale_real(weight);
        }
    }
    Ok(TeleportRun {
        shots,
        counts,
        probabilities,
        bob_conditional,
        bob_average,
        charlie_average,
        bob_sampled: DensityOperator::new(sampled)?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub samples: usize,
    pub max_simulation_vs_kraus: f64,
    pub max_simulation_vs_universal: f64,
    pub max_kraus_vs_universal: f64,
    pub max_bob_vs_charlie: f64,
}

impl EquivalenceReport {
    pub fn worst(&self) -> f64 {
        self.max_simulation_vs_kraus
            .max(self.max_simulation_vs_universal)
            .max(self.max_kraus_vs_universal)
            .max(self.max_bob_vs_charlie)
    }
}

/// Compares explicit simulation, the Kraus channel and the universal cloner
/// on Haar-random inputs by pairwise trace distance.
pub fn verify_channel_equivalence(samples: usize, seed: u64) -> Result<EquivalenceReport> {
    use crate::qmath::{random_pure_qubit, seeded_rng, trace_distance};
    use crate::universal::{build_optimal_isometry, clone, UniversalClonerConfig};

    let ch = kraus_channel();
    let iso = build_optimal_isometry(&UniversalClonerConfig::default())?;
    let mut rng = seeded_rng(seed);
    let mut report = EquivalenceReport {
        samples,
        max_simulation_vs_kraus: 0.0,
        max_simulation_vs_universal: 0.0,
        max_kraus_vs_universal: 0.0,
        max_bob_vs_charlie: 0.0,
    };
    for _ in 0..samples {
        let psi = random_pure_qubit(&mut rng);
        let (bob, charlie) = simulate_average(&psi)?;
        let kraus = ch.apply_total(&psi.projector())?;
        let uni = clone(&iso, &psi)?.rho1;
        report.max_simulation_vs_kraus = report.max_simulation_vs_kraus.max(trace_distance(&bob, &kraus)?);
        report.max_simulation_vs_universal = report.max_simulation_vs_universal.max(trace_distance(&bob, &uni)?);
        report.max_kraus_vs_universal = report.max_kraus_vs_universal.max(trace_distance(&kraus, &uni)?);
        report.max_bob_vs_charlie = report.max_bob_vs_charlie.max(trace_distance(&bob, &charlie)?);
    }
    Ok(report)
}

/// Exact outcome-averaged states of Bob and Charlie.
fn simulate_average(psi: &StateVector) -> Result<(DensityOperator, DensityOperator)> {
    let branches = corrected_branches(psi)?;
    let total = branches.iter().fold(ComplexMatrix::zeros(4, 4), |acc, b| &acc + &b.bob_charlie);
    let bc = DensityOperator::new(total)?;
    Ok((bc.partial_trace(&[0], &[2, 2])?, bc.partial_trace(&[1], &[2, 2])?))
}

/// Bob's clone from the Kraus description; Charlie's is identical.
#[derive(Clone, Debug)]
pub struct KrausCloner {
    channel: KrausChannel,
}

impl Default for KrausCloner {
    fn default() -> Self {
        Self { channel: kraus_channel() }
    }
}

impl Cloner for KrausCloner {
    fn name(&self) -> &'static str {
        "teleport-kraus"
    }

    fn summary(&self) -> &'static str {
        "teleportation cloner via its Kraus operators, outcomes averaged"
    }

    fn clone_state(&self, psi: &StateVector) -> Result<ClonePair> {
        let rho = self.channel.apply_total(&psi.projector())?;
        Ok(ClonePair { first: rho.clone(), second: rho })
    }
}

/// Exact four-qubit simulation with corrections, outcomes averaged.
#[derive(Clone, Copy, Debug, Default)]
pub struct TeleportSimulationCloner;

impl Cloner for TeleportSimulationCloner {
    fn name(&self) -> &'static str {
        "teleport-sim"
    }

    fn summary(&self) -> &'static str {
        "teleportation cloner by explicit Bell measurement and correction, outcomes averaged"
    }

    fn clone_state(&self, psi: &StateVector) -> Result<ClonePair> {
        let (first, second) = simulate_average(psi)?;
        Ok(ClonePair { first, second })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{random_pure_qubit, seeded_rng};

    fn diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.max_abs_diff(b).unwrap()
    }

    #[test]
    fn resource_state() {
        let s = psi_clone_state();
        assert!((s.amplitude(0b100).re - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((s.inner(&s).unwrap().re - 1.0).abs() < 1e-15);
        assert_eq!(s.amplitude(0b010), s.amplitude(0b001));
    }

    #[test]
    fn corrections_are_unitary() {
        assert_eq!(correction(BellOutcome::PsiMinus), pauli::identity());
        assert_eq!(correction(BellOutcome::PhiMinus), pauli::sigma_x());
        for o in BellOutcome::ALL {
            assert!(correction(o).unitarity_defect() < 1e-15);
        }
    }

    #[test]
    fn perfect_teleportation_outcomes_uniform() {
        let singlet = StateVector::from_real(&[0.0, 0.5f64.sqrt(), -(0.5f64.sqrt()), 0.0]).unwrap();
        let joint = StateVector::from_angles(0.7, 0.2).tensor(&singlet).unwrap();
        for b in bell_branches(&joint).unwrap() {
            assert!((b.probability - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn clone_setup_probabilities() {
        let joint = StateVector::zero().tensor(&psi_clone_state()).unwrap();
        let br = bell_branches(&joint).unwrap();
        let total: f64 = br.iter().map(|b| b.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((br[0].probability + br[1].probability - 1.0 / 3.0).abs() < 1e-14);
        let m = bell_measure(&joint, &mut seeded_rng(1)).unwrap();
        assert_eq!(m.residual.num_qubits(), 2);
        assert!(m.probability > 0.0);
    }

    #[test]
    fn kraus_operators_and_povm() {
        let ch = kraus_channel();
        let phi = ch.group(KrausGroupLabel::Phi).unwrap();
        let a1 = ComplexMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, 1.0]).unwrap().scale_real((2.0f64 / 3.0).sqrt());
        assert!(diff(&phi.operators[0], &a1) < 1e-15);
        assert!(ch.completeness_defect() < 1e-14);
        assert!(diff(&ch.povm(KrausGroupLabel::Phi).unwrap(), &ComplexMatrix::diag(&[1.0 / 3.0, 2.0 / 3.0])) < 1e-15);
        assert!(diff(&ch.povm(KrausGroupLabel::Psi).unwrap(), &ComplexMatrix::diag(&[2.0 / 3.0, 1.0 / 3.0])) < 1e-15);
        for g in [KrausGroupLabel::Phi, KrausGroupLabel::Psi] {
            let ev = crate::qmath::linalg::hermitian_eigenvalues(&ch.povm(g).unwrap()).unwrap();
            assert!(ev[0] >= 0.0);
        }
    }

    #[test]
    fn channel_on_zero() {
        let ch = kraus_channel();
        let rho = StateVector::zero().projector();
        let out = ch.apply(rho.matrix(), None).unwrap();
        assert!(diff(&out, &ComplexMatrix::diag(&[5.0 / 6.0, 1.0 / 6.0])) < 1e-15);
        let phi = ch.apply(rho.matrix(), Some("Phi")).unwrap();
        assert!((phi.trace().re - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(ch.apply(rho.matrix(), Some("Chi")), Err(Error::Unknown { .. })));
    }

    #[test]
    fn phi_and_psi_maps_related_by_bit_flip() {
        let ch = kraus_channel();
        let x = pauli::sigma_x();
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let rho = random_pure_qubit(&mut rng).projector();
            let flipped = x.conjugate(rho.matrix()).unwrap();
            let a = ch.apply(rho.matrix(), Some("Phi")).unwrap();
            let b = x.conjugate(&ch.apply(&flipped, Some("Psi")).unwrap()).unwrap();
            assert!(diff(&a, &b) < 1e-14);
        }
    }

    #[test]
    fn each_outcome_matches_half_its_group() {
        let ch = kraus_channel();
        let mut rng = seeded_rng(9);
        for _ in 0..20 {
            let psi = random_pure_qubit(&mut rng);
            let rho = psi.projector();
            for b in corrected_branches(&psi).unwrap() {
                let group = ch.apply(rho.matrix(), Some(b.outcome.group().label())).unwrap().scale_real(0.5);
                assert!(diff(&b.bob(), &group) < 1e-12, "{}", b.outcome);
                assert!(diff(&b.bob(), &b.charlie()) < 1e-12);
            }
        }
    }

    #[test]
    fn bloch_probability_formula() {
        let ch = kraus_channel();
        let mut rng = seeded_rng(13);
        for _ in 0..20 {
            let psi = random_pure_qubit(&mut rng);
            let s = psi.projector().bloch().unwrap();
            let br = corrected_branches(&psi).unwrap();
            let born_phi = br[0].probability + br[1].probability;
            let p_phi = ch.outcome_probability_bloch(KrausGroupLabel::Phi, &s).unwrap();
            let p_psi = ch.outcome_probability_bloch(KrausGroupLabel::Psi, &s).unwrap();
            assert!((born_phi - p_phi).abs() < 1e-12);
            assert!((p_phi + p_psi - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn run_on_zero() {
        let run = run_teleport_clone(&StateVector::zero(), 100_000, &mut seeded_rng(42)).unwrap();
        assert!(diff(run.bob_average.matrix(), &ComplexMatrix::diag(&[5.0 / 6.0, 1.0 / 6.0])) < 1e-14);
        assert!(diff(run.bob_average.matrix(), run.charlie_average.matrix()) < 1e-12);
        let p: f64 = 1.0 / 3.0;
        let sigma = (p * (1.0 - p) / 1e5).sqrt();
        assert!((run.group_frequency(KrausGroupLabel::Phi) - p).abs() < 3.0 * sigma);
        assert_eq!(run.counts.iter().sum::<u64>(), 100_000);
        assert!(run_teleport_clone(&StateVector::zero(), 0, &mut seeded_rng(1)).is_err());
    }

    #[test]
    fn equivalence_with_universal_cloner() {
        let r = verify_channel_equivalence(100, 3).unwrap();
        assert!(r.worst() < 1e-12, "{r:?}");
    }

    #[test]
    fn circular_input_bloch_vector() {
        let h = 0.5f64.sqrt();
        let psi = StateVector::new(vec![C64::new(h, 0.0), C64::new(0.0, h)]).unwrap();
        let s = kraus_channel().apply_total(&psi.projector()).unwrap().bloch().unwrap();
        assert!(s.x.abs() < 1e-15 && (s.y - 2.0 / 3.0).abs() < 1e-15 && s.z.abs() < 1e-15);
    }
}
