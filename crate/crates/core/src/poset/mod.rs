//! Posets of sequences under the ordered-sublist order, and the simplicial
//! complexes built from them.

mod checks;
mod complex;
mod sequence;

pub use checks::{
    check_homotopy_isomorphisms, check_link_suspension, check_null_homotopy, HomotopyIsoCheck,
    LinkSuspensionCheck, NullHomotopyCheck,
};
pub use complex::{facets, iterated_suspension, join, suspension, ComplexData, SimplicialComplex};
pub use sequence::{is_sublist, Labeled, Link, PosetData, SequencePoset, Tagged};

pub(crate) use sequence::permutations;

use crate::homology::HomologyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0} is not an element of the poset")]
    NotMember(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
