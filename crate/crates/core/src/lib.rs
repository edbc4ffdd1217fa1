//! Simulation and verification of optimal 1→2 qubit cloning machines.

pub mod capacity;
pub mod cloner;
pub mod eavesdrop;
pub mod error;
pub mod figures;
pub mod format;
pub mod optimize;
pub mod qmath;
pub mod statedep;
pub mod teleport;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
