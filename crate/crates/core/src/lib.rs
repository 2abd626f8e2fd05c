//! Real solvable Lie algebras whose derived ideal is two-dimensional.
//!
//! The crate builds every algebra of the classification from structure
//! constants ([`algebra`]), evaluates closed-form adjoint exponentials and
//! characters against a numeric oracle ([`adjoint`]), constructs explicit
//! faithful representations ([`representation`]), classifies coadjoint
//! orbits ([`coadjoint`]) and checks the foliation formed by the orbits of
//! maximal dimension ([`foliation`]).

pub mod adjoint;
pub mod algebra;
pub mod cli;
pub mod coadjoint;
pub mod error;
pub mod export;
pub mod foliation;
pub mod linalg;
pub mod representation;
pub mod sampling;
pub mod verify;

pub use algebra::{build, FamilySpec, LieAlgebra, Nilpotency, Subspace};
pub use error::{Error, Result};
