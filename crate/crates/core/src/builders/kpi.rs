use super::{EnumerationBounds, Pair};
use crate::par;
use crate::poset::SimplicialComplex;
use crate::wall::{
    alpha_raw, bit_vectors, box_vectors, lambda_raw, qform_raw, StandardWallPairing, XVector,
    YVector,
};
use crate::Error;

/// Pairs (x, y) with coordinates bounded by B, λ(x, y) = 1 and α(y) = 0, in
/// lexicographic order. q(y, y) = 0 is checked on each, never filtered on.
pub fn enumerate_kpi_vertices(
    p: &StandardWallPairing,
    b: &EnumerationBounds,
) -> Result<Vec<Pair>, Error> {
    let g = p.rank;
    if g == 0 {
        return Ok(Vec::new());
    }
    let xs = box_vectors(g, b.coeff_bound);
    let frees = box_vectors(g, b.coeff_bound);
    let tors = bit_vectors(g);
    let per_x: Vec<Result<Vec<Pair>, Error>> = par::map(&xs, |x| {
        let mut out = Vec::new();
        for f in frees.iter().filter(|f| lambda_raw(x, f) == 1) {
            for t in &tors {
                let y = YVector {
                    free: f.clone(),
                    tor: t.clone(),
                };
                if alpha_raw(&y) != 0 {
                    continue;
                }
                if qform_raw(&y, &y) != 0 {
                    return Err(Error::Internal(format!("q({y}, {y}) is nonzero")));
                }
                out.push(Pair::new(XVector::new(x.clone()), y));
            }
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for r in per_x {
        all.extend(r?);
    }
    Ok(all)
}

/// Pairwise condition for two distinct vertices to span an edge of K^π:
/// λ(x_a, y_b) = λ(x_b, y_a) = 0 and q(y_a, y_b) = 0.
pub fn compatible(a: &Pair, b: &Pair) -> bool {
    lambda_raw(&a.x.coeffs, &b.y.free) == 0
        && lambda_raw(&b.x.coeffs, &a.y.free) == 0
        && qform_raw(&a.y, &b.y) == 0
}

/// Forward adjacency: for each vertex, the compatible vertices after it.
pub(crate) fn forward_adjacency<T: Sync>(
    verts: &[T],
    edge: impl Fn(&T, &T) -> bool + Sync + Send,
) -> Vec<Vec<u32>> {
    par::map_range(verts.len(), |i| {
        ((i + 1)..verts.len())
            .filter(|&j| edge(&verts[i], &verts[j]))
            .map(|j| j as u32)
            .collect()
    })
}

/// Cliques of size ≤ max_dim + 1 in a graph given by forward adjacency,
/// as sorted index lists grouped by dimension and sorted within each.
pub(crate) fn cliques(adj: &[Vec<u32>], max_dim: usize) -> Vec<Vec<Vec<u32>>> {
    let n = adj.len();
    let per_vertex: Vec<Vec<Vec<Vec<u32>>>> = par::map_range(n, |v| {
        let mut faces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_dim + 1];
        let mut stack = vec![v as u32];
        grow(adj, &mut stack, &adj[v], max_dim, &mut faces);
        faces
    });
    let mut faces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_dim + 1];
    for pv in per_vertex {
        for (d, fs) in pv.into_iter().enumerate() {
            faces[d].extend(fs);
        }
    }
    for fs in &mut faces {
        fs.sort();
    }
    faces
}

fn grow(
    adj: &[Vec<u32>],
    stack: &mut Vec<u32>,
    cand: &[u32],
    max_dim: usize,
    faces: &mut [Vec<Vec<u32>>],
) {
    faces[stack.len() - 1].push(stack.clone());
    if stack.len() > max_dim {
        return;
    }
    for (i, &w) in cand.iter().enumerate() {
        let next: Vec<u32> = intersect_sorted(&cand[i + 1..], &adj[w as usize]);
        stack.push(w);
        grow(adj, stack, &next, max_dim, faces);
        stack.pop();
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// K^π truncated at bound B and dimension max_dim: the flag complex of
/// the compatibility graph on the enumerated vertices.
pub fn build_kpi(
    p: &StandardWallPairing,
    b: &EnumerationBounds,
) -> Result<(Vec<Pair>, SimplicialComplex), Error> {
    let verts = enumerate_kpi_vertices(p, b)?;
    let adj = forward_adjacency(&verts, compatible);
    let faces = if verts.is_empty() {
        Vec::new()
    } else {
        cliques(&adj, b.max_dim)
    };
    let labels = verts.iter().map(ToString::to_string).collect();
    Ok((
        verts,
        SimplicialComplex::from_sorted_unchecked(labels, faces),
    ))
}

/// Compares the flag construction with a direct check of the simplex
/// conditions on every vertex set of size ≤ max_dim + 1.
pub fn kpi_flag_matches_brute_force(
    p: &StandardWallPairing,
    b: &EnumerationBounds,
) -> Result<bool, Error> {
    let (verts, k) = build_kpi(p, b)?;
    let n = verts.len() as u32;
    for d in 0..=b.max_dim {
        let mut expected = Vec::new();
        subsets(n, d + 1, &mut Vec::new(), 0, &mut |s| {
            let frame: Vec<&Pair> = s.iter().map(|&i| &verts[i as usize]).collect();
            if simplex_conditions(p, &frame) {
                expected.push(s.to_vec());
            }
        });
        if expected != k.faces(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// λ(x_i, y_j) = δ_ij, q(y_i, y_j) = 0, α(y_i) = 0 for all i, j, evaluated
/// with the checked forms.
pub(crate) fn simplex_conditions(p: &StandardWallPairing, frame: &[&Pair]) -> bool {
    frame.iter().enumerate().all(|(i, a)| {
        p.alpha(&a.y) == Ok(0)
            && frame.iter().enumerate().all(|(j, c)| {
                p.lambda(&a.x, &c.y) == Ok(i64::from(i == j)) && p.qform(&a.y, &c.y) == Ok(0)
            })
    })
}

fn subsets(n: u32, k: usize, cur: &mut Vec<u32>, start: u32, f: &mut impl FnMut(&[u32])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for v in start..n {
        cur.push(v);
        subsets(n, k, cur, v + 1, f);
        cur.pop();
    }
}
