//! Spin matrices for arbitrary spin s, the 4(2s+1)-dimensional antisymmetric
//! block operator S built from them (the matrix form of the Pauli-Lubanski
//! vector operator), its closed-form inverse, spectrum and trace powers, and
//! entanglement analysis of the degenerate spin-1/2 eigenvectors.
//!
//! Everything is plain double-precision; identities are verified against
//! explicit tolerances rather than assumed.

pub mod entangle;
pub mod error;
pub mod lubanski;
pub mod matrix;
pub mod report;
pub mod spectral;
pub mod spin;

pub use error::{Error, Result};
pub use matrix::{anticommutator, commutator, CMatrix};
pub use report::{Check, IdentityReport};
pub use spin::{make_spin_matrices, verify_spin_identities, HalfInteger, SpinTriple, DEFAULT_TOL};
