use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::PosetError;

/// Finite abstract simplicial complex. Vertices carry string labels and a
/// global order (their index), which fixes all orientations.
///
/// `faces[d]` holds the d-simplices as strictly increasing index lists,
/// sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: Vec<Vec<Vec<u32>>>,
}

/// On-disk form: vertex labels and every face as an index array.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexData {
    pub vertices: Vec<String>,
    pub faces: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            faces: Vec::new(),
        }
    }

    /// Takes the faces as given, without closing them downward. Every
    /// vertex is added as a 0-face. See [`is_closed`](Self::is_closed).
    pub fn with_faces<I>(vertices: Vec<String>, faces: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let n = vertices.len();
        if vertices.iter().collect::<HashSet<_>>().len() != n {
            return Err(PosetError::Input("duplicate vertex label".into()));
        }
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = vec![(0..n as u32).map(|v| vec![v]).collect()];
        for mut f in faces {
            f.sort_unstable();
            let len = f.len();
            f.dedup();
            if f.len() != len {
                return Err(PosetError::Input(format!("face {f:?} repeats a vertex")));
            }
            if f.is_empty() {
                continue;
            }
            if f.iter().any(|&v| v as usize >= n) {
                return Err(PosetError::Input(format!(
                    "face {f:?} uses an unknown vertex"
                )));
            }
            let d = f.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(f);
        }
        Ok(Self::from_sets(vertices, by_dim))
    }

    /// Downward closure of the given faces.
    pub fn from_generators<I>(vertices: Vec<String>, gens: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let k = Self::with_faces(vertices, gens)?;
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = k
            .faces
            .iter()
            .map(|fs| fs.iter().cloned().collect())
            .collect();
        for d in (1..by_dim.len()).rev() {
            let lower: Vec<Vec<u32>> = by_dim[d].iter().flat_map(|f| facets(f)).collect();
            by_dim[d - 1].extend(lower);
        }
        Ok(Self::from_sets(k.vertices, by_dim))
    }

    fn from_sets(vertices: Vec<String>, mut by_dim: Vec<BTreeSet<Vec<u32>>>) -> Self {
        while by_dim.last().is_some_and(BTreeSet::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex {
            vertices,
            faces: by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        }
    }

    /// Builds from per-dimension face lists that are already sorted,
    /// deduplicated and closed. Used by the builders.
    pub(crate) fn from_sorted_unchecked(
        vertices: Vec<String>,
        mut faces: Vec<Vec<Vec<u32>>>,
    ) -> Self {
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        SimplicialComplex { vertices, faces }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension, or -1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn faces(&self, d: usize) -> &[Vec<u32>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn contains_face(&self, f: &[u32]) -> bool {
        if f.is_empty() {
            return true;
        }
        let mut s = f.to_vec();
        s.sort_unstable();
        self.faces(s.len() - 1).binary_search(&s).is_ok()
    }

    /// Whether every facet of every face is present.
    pub fn is_closed(&self) -> bool {
        (1..self.faces.len()).all(|d| {
            self.faces[d]
                .iter()
                .all(|f| facets(f).all(|g| self.faces[d - 1].binary_search(&g).is_ok()))
        })
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Alternating face count.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, f)| {
                if d % 2 == 0 {
                    f.len() as i64
                } else {
                    -(f.len() as i64)
                }
            })
            .sum()
    }

    /// Faces of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        SimplicialComplex {
            vertices: self.vertices.clone(),
            faces: self.faces.iter().take(d + 1).cloned().collect(),
        }
    }

    /// Relabels vertex i as `perm[i]`'s position; used to test that results
    /// do not depend on the vertex order.
    pub fn permuted(&self, perm: &[u32]) -> SimplicialComplex {
        let n = self.vertices.len();
        let mut vertices = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            vertices[p as usize] = self.vertices[i].clone();
        }
        let faces = self
            .faces
            .iter()
            .map(|fs| {
                let mut out: Vec<Vec<u32>> = fs
                    .iter()
                    .map(|f| {
                        let mut g: Vec<u32> = f.iter().map(|&v| perm[v as usize]).collect();
                        g.sort_unstable();
                        g
                    })
                    .collect();
                out.sort();
                out
            })
            .collect();
        SimplicialComplex { vertices, faces }
    }

    /// lk(v): faces σ ∌ v with σ ∪ {v} a face, on the neighbours of v in
    /// their original order and with their original labels.
    pub fn link(&self, v: u32) -> SimplicialComplex {
        let nbrs: Vec<u32> = self
            .faces(1)
            .iter()
            .filter(|e| e.contains(&v))
            .map(|e| if e[0] == v { e[1] } else { e[0] })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos = |u: u32| nbrs.binary_search(&u).expect("neighbour") as u32;
        let faces: Vec<Vec<Vec<u32>>> = self
            .faces
            .iter()
            .skip(1)
            .map(|fs| {
                let mut out: Vec<Vec<u32>> = fs
                    .iter()
                    .filter(|f| f.binary_search(&v).is_ok())
                    .map(|f| f.iter().filter(|&&u| u != v).map(|&u| pos(u)).collect())
                    .collect();
                out.sort();
                out
            })
            .collect();
        let vertices = nbrs
            .iter()
            .map(|&u| self.vertices[u as usize].clone())
            .collect();
        SimplicialComplex::from_sorted_unchecked(vertices, faces)
    }

    pub fn to_data(&self) -> ComplexData {
        ComplexData {
            vertices: self.vertices.clone(),
            faces: self.faces.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_data(data: ComplexData) -> Result<Self, PosetError> {
        Self::with_faces(data.vertices, data.faces)
    }

    /// The boundary of the standard k-simplex on vertices 0..=k.
    pub fn simplex_boundary(k: usize) -> SimplicialComplex {
        let vertices: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
        let full: Vec<u32> = (0..=k as u32).collect();
        let gens: Vec<Vec<u32>> = if k == 0 {
            vec![]
        } else {
            facets(&full).collect()
        };
        Self::from_generators(vertices, gens).expect("valid simplex")
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> SimplicialComplex {
        let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let full: Vec<u32> = (0..n as u32).collect();
        Self::from_generators(vertices, if n == 0 { vec![] } else { vec![full] })
            .expect("valid simplex")
    }

    /// The 6-vertex triangulation of the real projective plane.
    pub fn projective_plane() -> SimplicialComplex {
        let tris: [[u32; 3]; 10] = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [1, 3, 5],
            [2, 4, 5],
        ];
        let vertices = (1..=6).map(|i| i.to_string()).collect();
        Self::from_generators(vertices, tris.iter().map(|t| t.to_vec())).expect("valid RP2")
    }
}

/// Codimension-one faces of a sorted face, in the order of the removed
/// position.
pub fn facets(f: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    (0..f.len()).map(move |i| {
        let mut g = f.to_vec();
        g.remove(i);
        g
    })
}

fn disjoint_labels(a: &SimplicialComplex, b: &SimplicialComplex) -> (Vec<String>, Vec<String>) {
    let left: HashSet<&String> = a.vertices.iter().collect();
    if b.vertices.iter().any(|v| left.contains(v)) {
        (
            a.vertices.iter().map(|v| format!("L.{v}")).collect(),
            b.vertices.iter().map(|v| format!("R.{v}")).collect(),
        )
    } else {
        (a.vertices.clone(), b.vertices.clone())
    }
}

/// The join K₁ ⋆ K₂: faces σ₁ ∪ σ₂ with either side possibly empty. Labels
/// are prefixed when the vertex sets collide. Faces above `max_dim` are
/// dropped when a cap is given.
pub fn join(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    max_dim: Option<usize>,
) -> SimplicialComplex {
    let (mut vertices, right) = disjoint_labels(k1, k2);
    let off = vertices.len() as u32;
    vertices.extend(right);
    let cap = max_dim.unwrap_or(usize::MAX);
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    let left_faces = std::iter::once(Vec::new()).chain(k1.faces.iter().flatten().cloned());
    let right_faces: Vec<Vec<u32>> = std::iter::once(Vec::new())
        .chain(
            k2.faces
                .iter()
                .flatten()
                .map(|f| f.iter().map(|v| v + off).collect()),
        )
        .collect();
    for a in left_faces {
        for b in &right_faces {
            let n = a.len() + b.len();
            if n == 0 || n - 1 > cap {
                continue;
            }
            let mut f = a.clone();
            f.extend_from_slice(b);
            if by_dim.len() < n {
                by_dim.resize_with(n, Vec::new);
            }
            by_dim[n - 1].push(f);
        }
    }
    for fs in &mut by_dim {
        fs.sort();
    }
    SimplicialComplex::from_sorted_unchecked(vertices, by_dim)
}

/// Σ K = K ⋆ S⁰.
pub fn suspension(k: &SimplicialComplex) -> SimplicialComplex {
    let mut n = 0;
    let poles = loop {
        let (a, b) = (format!("north{n}"), format!("south{n}"));
        if !k.vertices.contains(&a) && !k.vertices.contains(&b) {
            break SimplicialComplex::from_sorted_unchecked(
                vec![a, b],
                vec![vec![vec![0], vec![1]]],
            );
        }
        n += 1;
    };
    join(k, &poles, None)
}

pub fn iterated_suspension(k: &SimplicialComplex, times: usize) -> SimplicialComplex {
    (0..times).fold(k.clone(), |acc, _| suspension(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_counts() {
        let k = SimplicialComplex::simplex_boundary(3);
        assert_eq!(k.face_counts(), vec![4, 6, 4]);
        assert!(k.is_closed());
        assert_eq!(k.euler_characteristic(), 2);
        let rp2 = SimplicialComplex::projective_plane();
        assert_eq!(rp2.face_counts(), vec![6, 15, 10]);
        assert_eq!(rp2.euler_characteristic(), 1);
    }

    #[test]
    fn unclosed_faces_are_detected() {
        let k = SimplicialComplex::with_faces(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        assert!(!k.is_closed());
        assert!(SimplicialComplex::with_faces(vec!["a".into()], vec![vec![0, 3]]).is_err());
    }

    #[test]
    fn join_with_empty_is_identity() {
        let k = SimplicialComplex::simplex_boundary(2);
        assert_eq!(join(&k, &SimplicialComplex::empty(), None), k);
    }

    #[test]
    fn suspension_of_two_points_is_a_square() {
        let s0 = SimplicialComplex::with_faces(vec!["a".into(), "b".into()], vec![]).unwrap();
        let s = suspension(&s0);
        assert_eq!(s.face_counts(), vec![4, 4]);
        assert!(s.is_closed());
    }
}
