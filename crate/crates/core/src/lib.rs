pub mod error;
pub mod numerics;

pub use error::{Error, Result};
pub mod jets;
pub mod psi;
pub mod identities;
pub mod report;
pub mod operators;
pub mod quad;
pub mod genfun;
pub mod transforms;
pub mod suite;
pub mod cli;
