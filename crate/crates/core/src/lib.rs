//! Stabilizer configuration interaction and codeword-stabilized error
//! detection for molecular ground states.
//!
//! Numerical layers are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`.

pub mod cws;
pub mod dense;
pub mod error;
pub mod hamiltonian;
pub mod noise;
pub mod pauli;
pub mod scalar;
pub mod sci;
pub mod stabilizer;

pub use error::{Error, ErrorKind, Result};
pub use pauli::{Pauli, PauliString};
pub use scalar::Scalar;
pub use stabilizer::{
    conjugate_pauli, sum_stabilizers, to_standard_form, BasisImage, CliffordCircuit, CliffordGate,
    GraphForm, PauliGroup, StabilizerTableau,
};

pub type Hamiltonian = hamiltonian::QubitHamiltonian<f64>;
pub type Generalized = hamiltonian::GeneralizedState<f64>;
pub type StateVector = dense::StateVector<f64>;
