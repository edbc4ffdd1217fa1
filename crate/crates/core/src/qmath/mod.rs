//! Small-dimension complex linear algebra for qubit registers of up to four
//! qubits: operators, states, partial traces, Bloch vectors and fidelities.

pub mod linalg;
mod matrix;
mod random;
mod state;

pub use matrix::{tensor, ComplexMatrix};
pub use random::{random_pure_qubit, seeded_rng, stream_rng, QRng};
pub use state::{
    bloch_from_density, density_from_bloch, fidelity_pure, partial_trace, partial_trace_operator, trace_distance,
    BlochVector, DensityOperator, StateVector, BLOCH_TOL, EIGEN_FLOOR, HERMITIAN_TOL, MAX_DIM, NORM_TOL, TRACE_TOL,
};

pub type C64 = num_complex::Complex64;

pub mod pauli {
    use super::{ComplexMatrix, C64};

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_rows([[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows([[C64::new(0.0, 0.0), C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]])
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_rows([[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]])
    }

    pub fn all() -> [ComplexMatrix; 3] {
        [sigma_x(), sigma_y(), sigma_z()]
    }
}
