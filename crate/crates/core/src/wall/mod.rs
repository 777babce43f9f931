//! Wall pairings in exact coordinates.
//!
//! X = ℤ^g with basis x_i, Y = ℤ^g ⊕ (ℤ/2)^g with basis y_i, z_i. The
//! standard forms are λ(x, y) = Σ x_i·free_i, q(y, y') = Σ free_i·tor'_i +
//! free'_i·tor_i and α(y) = Σ free_i·tor_i, the last two mod 2.

mod complement;
mod presentation;
mod standard;
mod vectors;

pub use complement::{
    complement, verify_complement, Complement, ComplementCheck, ComplementCoordinates,
    SubspacePair, XSplit, YSplit,
};
pub use presentation::{
    standardize, verify_witness, PairingPresentation, PresentedY, StandardizeWitness,
};
pub use standard::{
    direct_sum, embed_x, embed_y, search_rho, stable_range, torsion_duality, verify_rho_uniqueness,
    RhoSearch, StandardWallPairing, RHO_SEARCH_MAX_RANK,
};
pub use vectors::{bit_vectors, box_vectors, XVector, YVector};

pub(crate) use standard::{alpha_raw, lambda_raw, qform_raw};

use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallError {
    #[error("expected vectors of rank {expected}, found rank {found}")]
    Dimension { expected: usize, found: usize },
    #[error("not a Wall pairing: {0}")]
    NotWallPairing(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
