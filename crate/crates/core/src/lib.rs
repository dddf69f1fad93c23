//! Finite abelian harmonic analysis, Zak transforms and fiberization on finite groups.

pub mod error;
pub mod frame;
pub mod group;
pub mod harmonic;
pub mod instances;
pub mod invariant;
pub mod io;
pub mod linalg;
pub mod rep;
pub mod verify;
pub mod zak;

pub use error::{Error, Result};
pub use group::{CosetSpace, FiniteGroup, GroupSpec, Subgroup};
pub use harmonic::{AbelianView, Annihilator, DualGroup, DualQuotient};
pub use linalg::C64;
