//! Bounded constructions of the complexes and posets attached to a Wall
//! pairing: K^π, U, L, M, the filtration of M, and the identifications
//! between them.
//!
//! All coordinates are cut off at a sup-norm bound B, so every object here
//! is a finite truncation of an infinite one. Vertices are ordered
//! lexicographically by (x, y.free, y.tor).

mod families;
mod identify;
mod kpi;
mod sequences;
mod unimodular;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::wall::{XVector, YVector};

pub use families::{weak_cm_vertex_links, KpiFamily, UnimodularFamily, WeakCmReport};
pub use identify::{
    check_filtration_links, check_sub_poset_chain, equivalence1_map, link_identification_check,
    Equivalence1Report, FiltrationLinkReport, LinkIdentificationReport, SubPosetChainReport,
    VRhoLabel,
};
pub use kpi::{build_kpi, compatible, enumerate_kpi_vertices, kpi_flag_matches_brute_force};
pub use sequences::{
    build_l, build_m, build_u, filtration, l_conditions_hold, m_conditions_hold, retraction_h,
    PairPoset,
};
pub use unimodular::{build_unimodular_complex, primitive_vectors};

/// Version stamped into every serialized artifact.
pub const BUILDER_VERSION: &str = concat!("wallcx-builders/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuilderError {
    #[error("invalid bounds: {0}")]
    Bounds(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Truncation parameters: sup-norm bound on integer coordinates, cap on
/// sequence length and cap on simplex dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub coeff_bound: i64,
    pub max_seq_len: usize,
    pub max_dim: usize,
}

impl EnumerationBounds {
    pub fn new(coeff_bound: i64, max_seq_len: usize, max_dim: usize) -> Result<Self, BuilderError> {
        if coeff_bound < 1 {
            return Err(BuilderError::Bounds(format!(
                "coefficient bound must be at least 1, got {coeff_bound}"
            )));
        }
        Ok(EnumerationBounds {
            coeff_bound,
            max_seq_len,
            max_dim,
        })
    }

    /// Sequence length min(g, 4) and dimension 3.
    pub fn defaults(g: usize, coeff_bound: i64) -> Result<Self, BuilderError> {
        Self::new(coeff_bound, g.min(4), 3)
    }

    pub fn with_bound(&self, coeff_bound: i64) -> Self {
        EnumerationBounds {
            coeff_bound,
            ..self.clone()
        }
    }

    pub fn with_seq_len(&self, max_seq_len: usize) -> Self {
        EnumerationBounds {
            max_seq_len,
            ..self.clone()
        }
    }

    pub fn with_dim(&self, max_dim: usize) -> Self {
        EnumerationBounds {
            max_dim,
            ..self.clone()
        }
    }

    pub fn x_in_bound(&self, x: &XVector) -> bool {
        x.coeffs.iter().all(|c| c.abs() <= self.coeff_bound)
    }

    pub fn y_in_bound(&self, y: &YVector) -> bool {
        y.free.iter().all(|c| c.abs() <= self.coeff_bound)
    }

    pub fn pair_in_bound(&self, p: &Pair) -> bool {
        self.x_in_bound(&p.x) && self.y_in_bound(&p.y)
    }
}

/// A vertex (x, y) ∈ X × Y.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub x: XVector,
    pub y: YVector,
}

/// An ordered list of pairs.
pub type Frame = Vec<Pair>;

impl Pair {
    pub fn new(x: XVector, y: YVector) -> Self {
        Pair { x, y }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.x, self.y)
    }
}

/// How to read the duality condition on nonzero y_i in the definition of M.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum MReading {
    /// y_i is dual to its own x_i and orthogonal to the other x_j.
    #[default]
    DualToOwn,
    /// y_i is orthogonal to every x_j.
    OrthogonalToAll,
}
