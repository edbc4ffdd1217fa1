//! Cloning machines behind a common interface, registered by name.
//!
//! Every machine maps a pure input qubit to the reduced states of its two
//! output qubits. The registry lets callers (the CLI in particular) pick a
//! machine at runtime.

use std::fmt;

use crate::error::{Error, Result};
use crate::qmath::{DensityOperator, StateVector};

/// Reduced states of the two clones.
#[derive(Clone, Debug)]
pub struct ClonePair {
    pub first: DensityOperator,
    pub second: DensityOperator,
}

pub trait Cloner: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn clone_state(&self, psi: &StateVector) -> Result<ClonePair>;
}

impl fmt::Debug for dyn Cloner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cloner({})", self.name())
    }
}

/// Minimum |s_ψα| for a Bloch component to enter the ratio test.
const RATIO_COMPONENT_FLOOR: f64 = 1e-5;
const RATIO_AGREEMENT: f64 = 1e-10;

/// Common shrink factor of the clones' Bloch vectors relative to the input.
///
/// Every input component above a small floor contributes the ratio
/// `s_out,α / s_ψ,α` for both clones; all ratios must coincide, otherwise
/// the machine is not an isotropic symmetric cloner at this input.
pub fn isotropic_shrink(psi: &StateVector, clones: &[&DensityOperator]) -> Result<f64> {
    let s_in = psi.projector().bloch()?;
    let mut ratios = Vec::new();
    for rho in clones {
        let s_out = rho.bloch()?;
        for (out, inp) in s_out.components().into_iter().zip(s_in.components()) {
            if inp.abs() > RATIO_COMPONENT_FLOOR {
                ratios.push(out / inp);
            }
        }
    }
    let Some(&first) = ratios.first() else {
        return Err(Error::Degenerate("input has a vanishing Bloch vector".into()));
    };
    if ratios.iter().any(|r| (r - first).abs() > RATIO_AGREEMENT) {
        return Err(Error::NonIsotropic { ratios });
    }
    let eta = ratios.iter().sum::<f64>() / ratios.len() as f64;
    // Components along vanishing input directions must vanish too.
    for rho in clones {
        let s_out = rho.bloch()?;
        if s_out.components().into_iter().zip(s_in.components()).any(|(o, i)| (o - eta * i).abs() > RATIO_AGREEMENT) {
            return Err(Error::NonIsotropic { ratios });
        }
    }
    Ok(eta)
}

/// Name-indexed collection of cloning machines.
#[derive(Default)]
pub struct ClonerRegistry {
    entries: Vec<Box<dyn Cloner>>,
}

impl ClonerRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every machine this crate provides, with default parameters.
    pub fn standard() -> Self {
        Self::new()
            .with(Box::new(crate::universal::UniversalCloner::default()))
            .with(Box::new(crate::teleport::KrausCloner::default()))
            .with(Box::new(crate::teleport::TeleportSimulationCloner))
            .with(Box::new(crate::statedep::StateDependentCloner::default()))
    }

    /// Adds a machine, replacing any previous entry with the same name.
    pub fn with(mut self, cloner: Box<dyn Cloner>) -> Self {
        self.entries.retain(|c| c.name() != cloner.name());
        self.entries.push(cloner);
        self
    }

    pub fn get(&self, name: &str) -> Result<&dyn Cloner> {
        self.entries
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "cloner", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|c| c.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Cloner> {
        self.entries.iter().map(|c| c.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_registry_lookup() {
        let reg = ClonerRegistry::standard();
        assert_eq!(reg.names(), ["universal", "teleport-kraus", "teleport-sim", "statedep"]);
        assert!(reg.get("universal").is_ok());
        assert!(matches!(reg.get("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn registering_twice_replaces() {
        let reg = ClonerRegistry::standard().with(Box::new(crate::universal::UniversalCloner::default()));
        assert_eq!(reg.names().len(), 4);
        assert_eq!(reg.names().last(), Some(&"universal"));
    }

    #[test]
    fn all_registered_machines_are_symmetric() {
        let psi = StateVector::from_angles(1.1, -0.4);
        for c in ClonerRegistry::standard().iter() {
            let pair = c.clone_state(&psi).unwrap();
            let d = crate::qmath::trace_distance(&pair.first, &pair.second).unwrap();
            assert!(d < 1e-12, "{}: {d}", c.name());
        }
    }

    #[test]
    fn shrink_rejects_rotated_clones() {
        let reg = ClonerRegistry::standard();
        let psi = StateVector::zero();
        let pair = reg.get("universal").unwrap().clone_state(&psi).unwrap();
        assert!((isotropic_shrink(&psi, &[&pair.first, &pair.second]).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        // The state-dependent machine tilts |0⟩ toward x: one nonzero ratio, but not parallel.
        let pair = reg.get("statedep").unwrap().clone_state(&psi).unwrap();
        assert!(matches!(isotropic_shrink(&psi, &[&pair.first, &pair.second]), Err(Error::NonIsotropic { .. })));
    }
}
