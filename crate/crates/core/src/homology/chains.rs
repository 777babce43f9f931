use serde::{Deserialize, Serialize};

use super::{boundary_matrices, HomologyError};
use crate::lattice::{kernel_basis, Int, IntegerSolver, SparseIntMatrix};
use crate::poset::SimplicialComplex;

/// Integer chain in one degree as a sparse list of (face, coefficient).
/// Faces may be listed in any vertex order; the orientation sign of the
/// reordering is applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub degree: usize,
    pub terms: Vec<(Vec<u32>, Int)>,
}

impl Chain {
    pub fn new(degree: usize, terms: Vec<(Vec<u32>, Int)>) -> Self {
        Chain { degree, terms }
    }

    /// Coordinates in the basis of sorted `degree`-faces of `k`.
    pub fn to_vector(&self, k: &SimplicialComplex) -> Result<Vec<Int>, HomologyError> {
        let faces = k.faces(self.degree);
        let mut v = vec![Int::ZERO; faces.len()];
        for (face, c) in &self.terms {
            if face.len() != self.degree + 1 {
                return Err(HomologyError::InvalidChain(format!(
                    "{face:?} is not a {}-face",
                    self.degree
                )));
            }
            let (sorted, odd) = sort_with_sign(face)
                .ok_or_else(|| HomologyError::InvalidChain(format!("{face:?} repeats a vertex")))?;
            let i = faces
                .binary_search(&sorted)
                .map_err(|_| HomologyError::InvalidChain(format!("{face:?} is not a face")))?;
            if odd {
                v[i] -= c;
            } else {
                v[i] += c;
            }
        }
        Ok(v)
    }

    pub fn from_vector(k: &SimplicialComplex, degree: usize, v: &[Int]) -> Chain {
        let terms = k
            .faces(degree)
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| (f.clone(), c.clone()))
            .collect();
        Chain { degree, terms }
    }

    /// The same chain with vertices renamed through `map` (None drops
    /// nothing; a missing vertex is an error).
    pub fn relabel(&self, map: impl Fn(u32) -> Option<u32>) -> Result<Chain, HomologyError> {
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| {
                let g: Option<Vec<u32>> = f.iter().map(|&v| map(v)).collect();
                g.map(|g| (g, c.clone())).ok_or_else(|| {
                    HomologyError::InvalidChain(format!("vertex of {f:?} has no image"))
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Chain {
            degree: self.degree,
            terms,
        })
    }
}

fn sort_with_sign(face: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut f = face.to_vec();
    let mut odd = false;
    // Insertion sort, counting transpositions.
    for i in 1..f.len() {
        let mut j = i;
        while j > 0 && f[j - 1] > f[j] {
            f.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if f.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((f, odd))
}

/// Membership tests for B_d = im ∂_{d+1} with the Smith form of ∂_{d+1}
/// computed once.
///
/// A set of cycles lies in B_d iff appending them as columns leaves the
/// cokernel unchanged, i.e. the invariant factors agree.
pub struct BoundaryOracle {
    degree: usize,
    faces: usize,
    d_down: Option<SparseIntMatrix>,
    d_up: SparseIntMatrix,
    factors: Vec<Int>,
}

impl BoundaryOracle {
    pub fn new(k: &SimplicialComplex, degree: usize) -> Result<Self, HomologyError> {
        let st = boundary_matrices(k, degree + 1)?;
        let faces = k.faces(degree).len();
        let d_down = st.boundary(degree).cloned();
        let d_up = st
            .boundary(degree + 1)
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zeros(faces, 0));
        let factors = d_up.invariant_factors();
        Ok(BoundaryOracle {
            degree,
            faces,
            d_down,
            d_up,
            factors,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Errors unless ∂ v = 0.
    pub fn check_cycle(&self, v: &[Int]) -> Result<(), HomologyError> {
        if v.len() != self.faces {
            return Err(HomologyError::InvalidChain(
                "vector has the wrong length".into(),
            ));
        }
        if let Some(d) = &self.d_down {
            if d.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
                return Err(HomologyError::Precondition("chain is not a cycle".into()));
            }
        }
        Ok(())
    }

    /// Whether every given cycle is a boundary.
    pub fn contains_all(&self, cycles: &[Vec<Int>]) -> Result<bool, HomologyError> {
        for c in cycles {
            self.check_cycle(c)?;
        }
        if cycles.iter().all(|c| c.iter().all(Int::is_zero)) {
            return Ok(true);
        }
        let base = self.d_up.cols();
        let mut trip = Vec::new();
        for i in 0..self.faces {
            for (j, v) in self.d_up.row_entries(i) {
                trip.push((i, *j as usize, v.clone()));
            }
        }
        for (t, c) in cycles.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    trip.push((i, base + t, v.clone()));
                }
            }
        }
        let widened = SparseIntMatrix::from_triplets(self.faces, base + cycles.len(), trip)?;
        Ok(widened.invariant_factors() == self.factors)
    }

    pub fn contains(&self, cycle: &[Int]) -> Result<bool, HomologyError> {
        self.contains_all(std::slice::from_ref(&cycle.to_vec()))
    }

    /// A preimage under ∂_{d+1}, computed densely.
    pub fn witness(&self, cycle: &[Int]) -> Result<Option<Vec<Int>>, HomologyError> {
        self.check_cycle(cycle)?;
        Ok(IntegerSolver::new(&self.d_up.to_dense()).solve(cycle)?)
    }
}

/// Whether a d-cycle bounds. Non-cycles are rejected.
pub fn is_boundary(k: &SimplicialComplex, cycle: &Chain) -> Result<bool, HomologyError> {
    let v = cycle.to_vector(k)?;
    BoundaryOracle::new(k, cycle.degree)?.contains(&v)
}

/// Generators of the reduced cycle group Z̃_d: differences v_i − v_0 in
/// degree 0, an integer kernel basis of ∂_d above.
pub fn cycle_basis(k: &SimplicialComplex, degree: usize) -> Result<Vec<Chain>, HomologyError> {
    if degree == 0 {
        let n = k.num_vertices() as u32;
        return Ok((1..n)
            .map(|i| Chain::new(0, vec![(vec![i], Int::ONE), (vec![0], -Int::ONE)]))
            .collect());
    }
    let st = boundary_matrices(k, degree)?;
    let n = k.faces(degree).len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let d = st
        .boundary(degree)
        .expect("degree within dimension")
        .to_dense();
    Ok(kernel_basis(&d)
        .iter()
        .map(|v| Chain::from_vector(k, degree, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(filled: bool) -> SimplicialComplex {
        let v: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        if filled {
            SimplicialComplex::from_generators(v, vec![vec![0, 1, 2]]).unwrap()
        } else {
            SimplicialComplex::from_generators(v, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
        }
    }

    fn loop_chain() -> Chain {
        let one = Int::ONE;
        Chain::new(
            1,
            vec![
                (vec![0, 1], one.clone()),
                (vec![1, 2], one.clone()),
                (vec![2, 0], one),
            ],
        )
    }

    #[test]
    fn triangle_cycles() {
        assert!(!is_boundary(&triangle(false), &loop_chain()).unwrap());
        assert!(is_boundary(&triangle(true), &loop_chain()).unwrap());
        let o = BoundaryOracle::new(&triangle(true), 1).unwrap();
        let v = loop_chain().to_vector(&triangle(true)).unwrap();
        assert!(o.witness(&v).unwrap().is_some());
    }

    #[test]
    fn zero_cycles() {
        let k = triangle(false);
        let c = Chain::new(0, vec![(vec![0], Int::ONE), (vec![2], -Int::ONE)]);
        assert!(is_boundary(&k, &c).unwrap());
        let c = Chain::new(0, vec![(vec![0], Int::ONE)]);
        assert!(!is_boundary(&k, &c).unwrap());
    }

    #[test]
    fn non_cycle_rejected() {
        let c = Chain::new(1, vec![(vec![0, 1], Int::ONE)]);
        assert!(matches!(
            is_boundary(&triangle(true), &c),
            Err(HomologyError::Precondition(_))
        ));
    }

    #[test]
    fn kernel_cycles_of_hollow_triangle() {
        let k = triangle(false);
        let z = cycle_basis(&k, 1).unwrap();
        assert_eq!(z.len(), 1);
        assert!(!is_boundary(&k, &z[0]).unwrap());
    }
}
