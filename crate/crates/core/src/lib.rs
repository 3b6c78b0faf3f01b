//! Exact alcove combinatorics for reductive groups at a root of unity:
//! affine Weyl groups under the ℓ-dilated dot action, Verlinde fusion
//! coefficients, and regular parts of tensor products at the level of
//! module labels.

pub mod affweyl;
pub mod charlib;
pub mod cli;
pub mod error;
pub mod fusion;
pub mod lattice;
pub mod regquot;
pub mod rootsys;
pub mod tiltprofile;
pub mod verify;

pub use affweyl::{EllContext, ExtAffineElement, OmegaElement, ReductionResult, Word};
pub use error::{Error, Result};
pub use rootsys::{Family, FiniteWeylElement, RootSystem, RootSystemSpec, Weight};
