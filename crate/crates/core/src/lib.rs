//! PT-symmetric qubits with the CPT inner product.
//!
//! The crate models the two-level Hamiltonian `H = s[[i sinα, 1], [1, −i sinα]]`,
//! its C operator and CPT inner product, two-qubit composites in which one or
//! both parties evolve under such a Hamiltonian, and three experiments on the
//! composite: outcome marginals (no-signaling), entanglement entropy and the
//! CHSH game. Every quantity is computed exactly; nothing is sampled.

pub mod cli;
pub mod composite;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod pt;
pub mod report;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
pub use pt::{Prescription, PtHamiltonian};
