//! Categories of p-subgroups of a finite group, their exact rational Euler
//! characteristics, and truncated nerve homology over Q and F_p.
//!
//! The crate builds the poset, transporter, linking, fusion, orbit, and
//! exterior-quotient categories attached to a finite permutation group and a
//! prime, solves their weighting and coweighting systems exactly, and checks
//! the classical inclusion statements between them at the level of truncated
//! nerve homology. A small spectral-sequence module computes the flag chain
//! complex of elementary abelian groups with group-homology coefficients.

pub mod category;
pub mod error;
pub mod euler;
pub mod flavors;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod nerve;
pub mod perm;
pub mod spectral;

pub use error::{
    BuildError, CategoryError, EulerError, GroupError, LatticeError, NerveError, SpectralError,
};
pub use group::{PermGroup, Subgroup};
pub use perm::Perm;
