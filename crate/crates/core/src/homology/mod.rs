//! Simplicial homology over ℤ via Smith normal form.
//!
//! Orientation of a face is the increasing order of its vertex indices;
//! ∂[v_0..v_k] = Σ (−1)^i [v_0..v̂_i..v_k].

mod chains;
mod probe;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::lattice::{rank_mod2, rank_rational, Int, LatticeError, SparseIntMatrix};
use crate::par;
use crate::poset::{facets, SimplicialComplex};

pub use chains::{cycle_basis, is_boundary, BoundaryOracle, Chain};
pub use probe::{
    connectivity_probe, ComplexFamily, DegreeOutcome, FixedComplex, ProbeReport, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("face set is not closed: {0}")]
    NotClosed(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquare(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Boundary operators ∂_k : C_k → C_{k−1} for k = 1..=top.
#[derive(Clone, Debug)]
pub struct ChainBoundaryStack {
    ranks: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainBoundaryStack {
    /// `ranks[k]` is the rank of C_k and `boundaries[k − 1]` is ∂_k. Checks
    /// shapes and ∂∘∂ = 0.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self, HomologyError> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(HomologyError::Precondition(
                "need one boundary per positive degree".into(),
            ));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
                return Err(HomologyError::Precondition(format!(
                    "boundary {} has the wrong shape",
                    k + 1
                )));
            }
        }
        let squares = par::map_range(boundaries.len().saturating_sub(1), |k| {
            boundaries[k].mul(&boundaries[k + 1]).map(|m| m.is_zero())
        });
        for (k, ok) in squares.into_iter().enumerate() {
            if !ok? {
                return Err(HomologyError::BoundarySquare(k + 2));
            }
        }
        Ok(ChainBoundaryStack { ranks, boundaries })
    }

    /// Highest degree with a chain group (0 for an empty stack).
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn chain_rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// ∂_k, or `None` when it is the zero map out of or into a missing group.
    pub fn boundary(&self, k: usize) -> Option<&SparseIntMatrix> {
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    /// Unreduced homology in degrees 0..=through_dim. Degrees above the
    /// stack's top carry no chains. The stack must contain ∂_{through_dim+1}
    /// when that group is nonzero, or the top degree is overstated.
    pub fn homology(&self, through_dim: usize) -> HomologyResult {
        // Invariant factors of ∂_1..∂_{through_dim+1}, one SNF each.
        let needed: Vec<usize> = (1..=through_dim + 1).collect();
        let factors: Vec<Vec<Int>> = par::map(&needed, |&k| {
            self.boundary(k)
                .map(SparseIntMatrix::invariant_factors)
                .unwrap_or_default()
        });
        let degrees = (0..=through_dim)
            .map(|k| {
                let rank_out = if k == 0 { 0 } else { factors[k - 1].len() };
                let into = &factors[k];
                DegreeGroup {
                    degree: k,
                    betti: self.chain_rank(k) - rank_out - into.len(),
                    torsion: into.iter().filter(|f| !f.is_one()).cloned().collect(),
                }
            })
            .collect();
        HomologyResult {
            through_dim,
            reduced: false,
            empty: self.chain_rank(0) == 0,
            degrees,
        }
    }

    /// Betti numbers with field coefficients, for cross-checks.
    pub fn betti_over(&self, field: Field, through_dim: usize) -> Vec<usize> {
        let ranks: Vec<usize> = par::map_range(through_dim + 1, |i| {
            self.boundary(i + 1).map_or(0, |b| match field {
                Field::Rational => rank_rational(&b.to_dense()),
                Field::Mod2 => rank_mod2(b),
            })
        });
        (0..=through_dim)
            .map(|k| {
                let out = if k == 0 { 0 } else { ranks[k - 1] };
                self.chain_rank(k) - out - ranks[k]
            })
            .collect()
    }
}

/// Coefficient fields for the fast cross-check paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Mod2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors greater than 1.
    pub torsion: Vec<Int>,
}

impl DegreeGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// H_k ≅ ℤ^betti ⊕ ⊕ ℤ/t for each degree 0..=through_dim.
///
/// For reduced homology `empty` records H̃_{−1} = ℤ of the empty complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub through_dim: usize,
    pub reduced: bool,
    pub empty: bool,
    pub degrees: Vec<DegreeGroup>,
}

impl HomologyResult {
    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti)
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn torsion(&self, k: usize) -> &[Int] {
        self.degrees.get(k).map_or(&[], |d| d.torsion.as_slice())
    }

    /// Reduced version: H̃_0 loses one ℤ when nonempty.
    pub fn into_reduced(mut self) -> HomologyResult {
        if !self.reduced {
            if !self.empty {
                self.degrees[0].betti -= 1;
            }
            self.reduced = true;
        }
        self
    }

    /// Rank and torsion of H̃_j for j ≥ −1 (reduced results only).
    pub fn reduced_group(&self, j: i64) -> (usize, Vec<Int>) {
        debug_assert!(self.reduced);
        if j == -1 {
            (usize::from(self.empty), Vec::new())
        } else if j < -1 {
            (0, Vec::new())
        } else {
            self.degrees
                .get(j as usize)
                .map_or((0, Vec::new()), |d| (d.betti, d.torsion.clone()))
        }
    }

    /// Whether H̃_j = 0 for all −1 ≤ j ≤ d (reduced results only).
    pub fn vanishes_through(&self, d: i64) -> bool {
        (-1..=d).all(|j| {
            let (b, t) = self.reduced_group(j);
            b == 0 && t.is_empty()
        })
    }

    /// Degree-by-degree equality of reduced groups, H̃_j(self) = H̃_{j−shift}(other)
    /// for −1 ≤ j ≤ through_dim.
    pub fn reduced_matches_shifted(&self, other: &HomologyResult, shift: i64) -> bool {
        (-1..=self.through_dim as i64)
            .all(|j| self.reduced_group(j) == other.reduced_group(j - shift))
    }

    /// Σ (−1)^k β_k.
    pub fn euler_from_betti(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| {
                if d.degree % 2 == 0 {
                    d.betti as i64
                } else {
                    -(d.betti as i64)
                }
            })
            .sum()
    }

    /// `degree,betti,torsion` rows, torsion as `;`-separated factors.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,betti,torsion\n");
        if self.reduced && self.empty {
            s.push_str("-1,1,\n");
        }
        for d in &self.degrees {
            let t: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
            s.push_str(&format!("{},{},{}\n", d.degree, d.betti, t.join(";")));
        }
        s
    }
}

/// Sparse ∂_1..∂_top with top = min(through_dim, dim K). Fails when a facet
/// of some face is missing.
pub fn boundary_matrices(
    k: &SimplicialComplex,
    through_dim: usize,
) -> Result<ChainBoundaryStack, HomologyError> {
    let top = (k.dim().max(0) as usize).min(through_dim);
    let ranks: Vec<usize> = (0..=top).map(|d| k.faces(d).len()).collect();
    let boundaries: Vec<Result<SparseIntMatrix, HomologyError>> = par::map_range(top, |i| {
        let d = i + 1;
        let lower = k.faces(d - 1);
        let mut trip = Vec::with_capacity(k.faces(d).len() * (d + 1));
        for (col, f) in k.faces(d).iter().enumerate() {
            for (pos, g) in facets(f).enumerate() {
                let row = lower.binary_search(&g).map_err(|_| {
                    HomologyError::NotClosed(format!("facet {g:?} of {f:?} is missing"))
                })?;
                let sign = if pos % 2 == 0 { Int::ONE } else { -Int::ONE };
                trip.push((row, col, sign));
            }
        }
        Ok(SparseIntMatrix::from_triplets(
            lower.len(),
            k.faces(d).len(),
            trip,
        )?)
    });
    ChainBoundaryStack::new(ranks, boundaries.into_iter().collect::<Result<_, _>>()?)
}

/// Unreduced integral homology in degrees 0..=through_dim.
pub fn homology(
    k: &SimplicialComplex,
    through_dim: usize,
) -> Result<HomologyResult, HomologyError> {
    Ok(boundary_matrices(k, through_dim + 1)?.homology(through_dim))
}

pub fn reduced_homology(
    k: &SimplicialComplex,
    through_dim: usize,
) -> Result<HomologyResult, HomologyError> {
    Ok(homology(k, through_dim)?.into_reduced())
}

pub fn betti_over(
    k: &SimplicialComplex,
    field: Field,
    through_dim: usize,
) -> Result<Vec<usize>, HomologyError> {
    Ok(boundary_matrices(k, through_dim + 1)?.betti_over(field, through_dim))
}

/// Alternating face count equals alternating Betti sum.
pub fn euler_identity_holds(k: &SimplicialComplex) -> Result<bool, HomologyError> {
    let h = homology(k, k.dim().max(0) as usize)?;
    Ok(h.euler_from_betti() == k.euler_characteristic())
}

/// Component label (smallest vertex index in the component) per vertex,
/// from the 1-skeleton.
pub fn components(k: &SimplicialComplex) -> Vec<usize> {
    let n = k.num_vertices();
    let mut uf = UnionFind::<usize>::new(n);
    for e in k.faces(1) {
        uf.union(e[0] as usize, e[1] as usize);
    }
    let mut rep = vec![usize::MAX; n];
    let mut out = vec![0; n];
    for v in 0..n {
        let r = uf.find(v);
        if rep[r] == usize::MAX {
            rep[r] = v;
        }
        out[v] = rep[r];
    }
    out
}

pub fn component_count(k: &SimplicialComplex) -> usize {
    components(k)
        .iter()
        .enumerate()
        .filter(|(v, r)| v == *r)
        .count()
}

/// Homology of the semi-simplicial set whose k-simplices are the ordered
/// (k+1)-tuples of distinct vertices spanning a face of `k`, with d_i
/// deleting entry i.
pub fn ordered_tuple_homology(
    k: &SimplicialComplex,
    through_dim: usize,
) -> Result<HomologyResult, HomologyError> {
    let top = (k.dim().max(0) as usize).min(through_dim + 1);
    let tuples: Vec<Vec<Vec<u32>>> = (0..=top)
        .map(|d| {
            let mut t: Vec<Vec<u32>> = k.faces(d).iter().flat_map(|f| all_orders(f)).collect();
            t.sort();
            t
        })
        .collect();
    let ranks: Vec<usize> = tuples.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(top);
    for d in 1..=top {
        let mut trip = Vec::new();
        for (col, t) in tuples[d].iter().enumerate() {
            for i in 0..t.len() {
                let mut g = t.clone();
                g.remove(i);
                let row = tuples[d - 1]
                    .binary_search(&g)
                    .map_err(|_| HomologyError::NotClosed(format!("{g:?}")))?;
                trip.push((row, col, if i % 2 == 0 { Int::ONE } else { -Int::ONE }));
            }
        }
        boundaries.push(SparseIntMatrix::from_triplets(
            ranks[d - 1],
            ranks[d],
            trip,
        )?);
    }
    Ok(ChainBoundaryStack::new(ranks, boundaries)?.homology(through_dim))
}

fn all_orders(f: &[u32]) -> Vec<Vec<u32>> {
    if f.len() <= 1 {
        return vec![f.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..f.len() {
        let mut rest = f.to_vec();
        let h = rest.remove(i);
        for mut p in all_orders(&rest) {
            p.insert(0, h);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{suspension, SimplicialComplex};

    #[test]
    fn sphere_homology() {
        for k in 1..=4 {
            let s = SimplicialComplex::simplex_boundary(k);
            let h = reduced_homology(&s, k).unwrap();
            for j in 0..=k {
                let expect = usize::from(j == k - 1);
                assert_eq!(h.betti(j), expect, "boundary of {k}-simplex, degree {j}");
                assert!(h.torsion(j).is_empty());
            }
        }
    }

    #[test]
    fn projective_plane_torsion() {
        let rp2 = SimplicialComplex::projective_plane();
        let h = homology(&rp2, 2).unwrap();
        assert_eq!(h.bettis(), vec![1, 0, 0]);
        assert_eq!(h.torsion(1), &[Int::from(2)]);
        assert_eq!(betti_over(&rp2, Field::Rational, 2).unwrap(), vec![1, 0, 0]);
        assert_eq!(betti_over(&rp2, Field::Mod2, 2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn single_edge_boundary() {
        let e = SimplicialComplex::simplex(2);
        let st = boundary_matrices(&e, 1).unwrap();
        let d1 = st.boundary(1).unwrap().to_dense();
        assert_eq!(d1.to_i64_rows().unwrap(), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn non_closed_input_is_rejected() {
        let k = SimplicialComplex::with_faces(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        assert!(matches!(homology(&k, 2), Err(HomologyError::NotClosed(_))));
    }

    #[test]
    fn empty_complex() {
        let h = reduced_homology(&SimplicialComplex::empty(), 2).unwrap();
        assert!(h.empty);
        assert_eq!(h.reduced_group(-1), (1, vec![]));
        assert!(h.degrees.iter().all(DegreeGroup::is_zero));
        let s = reduced_homology(&suspension(&SimplicialComplex::empty()), 2).unwrap();
        assert!(s.reduced_matches_shifted(&h, 1));
    }

    #[test]
    fn ordered_tuples_of_a_vertex_and_an_edge() {
        // An ordered edge pair glues two 1-cells between two points: a circle.
        let e = SimplicialComplex::simplex(2);
        let h = ordered_tuple_homology(&e, 1).unwrap();
        assert_eq!(h.bettis(), vec![1, 1]);
    }

    #[test]
    fn component_labels() {
        let k = SimplicialComplex::with_faces(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![vec![0, 2], vec![1, 3]],
        )
        .unwrap();
        assert_eq!(components(&k), vec![0, 1, 0, 1]);
        assert_eq!(component_count(&k), 2);
    }
}
