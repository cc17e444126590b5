//! Stabilizer formalism toolkit for fault-tolerant quantum operations.
//!
//! Pauli operators are phase-tracked symplectic bit vectors
//! (`i^phase · X^x · Z^z`, with `Y = X·Z`). On top of that sit stabilizer
//! codes, Clifford maps given by their conjugation tables, transversal-gate
//! analysis, a stabilizer simulator with a dense-matrix oracle, and a set of
//! measurement-based gate constructions packaged as verifiable protocols.

pub mod bits;
pub mod clifford;
pub mod code;
pub mod error;
pub mod gf2;
pub mod group;
pub mod pauli;
pub mod protocols;
pub mod sim;
pub mod transversal;

pub use bits::BitVec;
pub use clifford::CliffordMap;
pub use code::StabilizerCode;
pub use error::{Error, Result};
pub use pauli::{pauli, PauliOperator};
