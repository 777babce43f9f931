use num_integer::Integer;

use super::EnumerationBounds;
use crate::lattice::is_unimodular_sequence;
use crate::par;
use crate::poset::SimplicialComplex;
use crate::wall::{box_vectors, XVector};
use crate::Error;

/// Nonzero vectors of ℤ^g with entries in [−B, B] and coprime entries, in
/// lexicographic order.
pub fn primitive_vectors(g: usize, bound: i64) -> Vec<XVector> {
    box_vectors(g, bound)
        .into_iter()
        .filter(|v| v.iter().fold(0i64, |a, &c| a.gcd(&c)) == 1)
        .map(XVector::new)
        .collect()
}

/// Two vectors span a direct summand iff the gcd of their 2×2 minors is 1.
fn pair_unimodular(a: &[i64], b: &[i64]) -> bool {
    let mut gcd = 0i64;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            gcd = gcd.gcd(&(a[i] * b[j] - a[j] * b[i]));
            if gcd == 1 {
                return true;
            }
        }
    }
    false
}

/// The complex whose faces are the unimodular sets of bounded primitive
/// vectors, up to dimension max_dim. Every face is tested as a whole; the
/// complex is not a flag complex.
pub fn build_unimodular_complex(
    g: usize,
    b: &EnumerationBounds,
) -> Result<(Vec<XVector>, SimplicialComplex), Error> {
    let verts = primitive_vectors(g, b.coeff_bound);
    let n = verts.len();
    let labels = verts.iter().map(ToString::to_string).collect();
    if n == 0 {
        return Ok((
            verts,
            SimplicialComplex::from_sorted_unchecked(labels, Vec::new()),
        ));
    }
    let mut faces: Vec<Vec<Vec<u32>>> = vec![(0..n as u32).map(|v| vec![v]).collect()];
    let edges: Vec<Vec<u32>> = par::map_range(n, |i| {
        ((i + 1)..n)
            .filter(|&j| pair_unimodular(&verts[i].coeffs, &verts[j].coeffs))
            .map(|j| j as u32)
            .collect()
    });
    if b.max_dim >= 1 {
        faces.push(
            edges
                .iter()
                .enumerate()
                .flat_map(|(i, js)| js.iter().map(move |&j| vec![i as u32, j]))
                .collect(),
        );
    }
    for d in 2..=b.max_dim.min(g.saturating_sub(1)) {
        let prev = &faces[d - 1];
        let next: Vec<Result<Vec<Vec<u32>>, Error>> = par::map(prev, |f| {
            let last = *f.last().expect("nonempty face") as usize;
            let mut out = Vec::new();
            // Candidates must be adjacent to every vertex of f.
            for &w in &edges[last] {
                if !f
                    .iter()
                    .all(|&u| edges[u as usize].binary_search(&w).is_ok())
                {
                    continue;
                }
                let mut vs: Vec<Vec<i64>> = f
                    .iter()
                    .map(|&u| verts[u as usize].coeffs.clone())
                    .collect();
                vs.push(verts[w as usize].coeffs.clone());
                if is_unimodular_sequence(&vs, g)? {
                    let mut h = f.clone();
                    h.push(w);
                    out.push(h);
                }
            }
            Ok(out)
        });
        let mut layer = Vec::new();
        for r in next {
            layer.extend(r?);
        }
        if layer.is_empty() {
            break;
        }
        faces.push(layer);
    }
    Ok((
        verts,
        SimplicialComplex::from_sorted_unchecked(labels, faces),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one() {
        let b = EnumerationBounds::new(1, 1, 3).unwrap();
        let (v, k) = build_unimodular_complex(1, &b).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(k.face_counts(), vec![2]);
    }

    #[test]
    fn rank_two_faces() {
        let b = EnumerationBounds::new(1, 2, 3).unwrap();
        let (v, k) = build_unimodular_complex(2, &b).unwrap();
        assert_eq!(v.len(), 8);
        let idx = |c: [i64; 2]| v.binary_search(&XVector::new(c.to_vec())).unwrap() as u32;
        assert!(k.contains_face(&[idx([1, 0]), idx([0, 1])]));
        assert!(k.contains_face(&[idx([1, 0]), idx([1, 1])]));
        assert!(!k.contains_face(&[idx([1, 0]), idx([-1, 0])]));
        assert!(v.binary_search(&XVector::new(vec![2, 0])).is_err());
        assert!(k.is_closed());
        assert_eq!(crate::homology::component_count(&k), 1);
    }

    #[test]
    fn faces_agree_with_snf_test() {
        let b = EnumerationBounds::new(1, 3, 2).unwrap();
        let (v, k) = build_unimodular_complex(3, &b).unwrap();
        for d in 1..=2 {
            for f in k.faces(d) {
                let vs: Vec<Vec<i64>> = f.iter().map(|&i| v[i as usize].coeffs.clone()).collect();
                assert!(is_unimodular_sequence(&vs, 3).unwrap());
            }
        }
    }
}
