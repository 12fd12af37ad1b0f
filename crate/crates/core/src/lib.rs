//! Exact verification engine for the unitary groups generated by Clifford
//! gates: group closure and structure analysis, Coxeter-type certificates,
//! BN-pair axiom checking, and the 27-line incidence model, all over exact
//! cyclotomic arithmetic.

pub mod binmat;
pub mod bn;
pub mod cache;
pub mod claims;
pub mod clifford;
pub mod coxeter;
pub mod cyclo;
pub mod error;
pub mod gate;
pub mod group;
pub mod pauli;
pub mod perm;
pub mod report;
pub mod schlaefli;

pub use error::{Error, Result};
