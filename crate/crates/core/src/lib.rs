//! Exact computations with Wall pairings: the forms, the complexes and
//! posets built from them, and their integral homology.

#![allow(clippy::needless_range_loop)]

pub mod builders;
pub mod homology;
pub mod lattice;
pub mod par;
pub mod poset;
pub mod verify;
pub mod wall;

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Wall(#[from] wall::WallError),
    #[error(transparent)]
    Poset(#[from] poset::PosetError),
    #[error(transparent)]
    Homology(#[from] homology::HomologyError),
    #[error(transparent)]
    Builder(#[from] builders::BuilderError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
