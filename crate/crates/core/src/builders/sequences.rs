use std::collections::BTreeSet;

use num_integer::Integer;

use super::kpi::{
    build_kpi, cliques, enumerate_kpi_vertices, forward_adjacency, simplex_conditions,
};
use super::unimodular::{build_unimodular_complex, primitive_vectors};
use super::{BuilderError, EnumerationBounds, MReading, Pair};
use crate::lattice::is_unimodular_sequence;
use crate::poset::{permutations, SequencePoset, SimplicialComplex};
use crate::wall::{bit_vectors, box_vectors, lambda_raw, qform_raw, StandardWallPairing, YVector};
use crate::Error;

/// Sequence poset over pairs (x, y).
pub type PairPoset = SequencePoset<Pair>;

/// Every ordering of every face of `k`.
fn orderings<V: Clone + Ord + std::fmt::Display>(
    ground: Vec<V>,
    k: &SimplicialComplex,
) -> SequencePoset<V> {
    let mut set = BTreeSet::new();
    for d in 0..=k.dim().max(-1) {
        for f in k.faces(d as usize) {
            set.extend(permutations(f));
        }
    }
    SequencePoset::from_parts_unchecked(ground, set)
}

/// U(ℤ^g) truncated: orderings of unimodular sets of bounded primitive
/// vectors of size ≤ max_seq_len.
pub fn build_u(
    g: usize,
    b: &EnumerationBounds,
) -> Result<SequencePoset<crate::wall::XVector>, Error> {
    if b.max_seq_len == 0 {
        return Ok(SequencePoset::from_parts_unchecked(
            primitive_vectors(g, b.coeff_bound),
            BTreeSet::new(),
        ));
    }
    let (verts, k) = build_unimodular_complex(g, &b.with_dim(b.max_seq_len - 1))?;
    Ok(orderings(verts, &k))
}

/// L(X, Y) truncated: sequences of K^π vertices, of length ≤ max_seq_len,
/// satisfying λ(x_i, y_j) = δ_ij, q(y_i, y_j) = 0 and α(y_i) = 0.
pub fn build_l(p: &StandardWallPairing, b: &EnumerationBounds) -> Result<PairPoset, Error> {
    if b.max_seq_len == 0 {
        return Ok(SequencePoset::from_parts_unchecked(
            enumerate_kpi_vertices(p, b)?,
            BTreeSet::new(),
        ));
    }
    let (verts, k) = build_kpi(p, &b.with_dim(b.max_seq_len - 1))?;
    Ok(orderings(verts, &k))
}

/// Direct evaluation of the defining conditions of L on one sequence.
pub fn l_conditions_hold(p: &StandardWallPairing, seq: &[Pair]) -> bool {
    let refs: Vec<&Pair> = seq.iter().collect();
    distinct_pairs(seq) && simplex_conditions(p, &refs)
}

fn distinct_pairs(seq: &[Pair]) -> bool {
    seq.iter().collect::<BTreeSet<_>>().len() == seq.len()
}

/// Direct evaluation of the defining conditions of M: the x's are
/// unimodular, α(y_i) = 0, each nonzero y_i satisfies the duality
/// condition under `reading`, and q(y_i, y_j) = 0.
pub fn m_conditions_hold(
    p: &StandardWallPairing,
    seq: &[Pair],
    reading: MReading,
) -> Result<bool, Error> {
    if seq.is_empty() || !distinct_pairs(seq) {
        return Ok(false);
    }
    let xs: Vec<Vec<i64>> = seq.iter().map(|s| s.x.coeffs.clone()).collect();
    if !is_unimodular_sequence(&xs, p.rank)? {
        return Ok(false);
    }
    for (i, a) in seq.iter().enumerate() {
        if p.alpha(&a.y)? != 0 {
            return Ok(false);
        }
        if !a.y.is_zero() {
            for (j, c) in seq.iter().enumerate() {
                let want = match reading {
                    MReading::DualToOwn => i64::from(i == j),
                    MReading::OrthogonalToAll => 0,
                };
                if p.lambda(&c.x, &a.y)? != want {
                    return Ok(false);
                }
            }
        }
        for c in seq {
            if p.qform(&a.y, &c.y)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn pair_unimodular(a: &[i64], b: &[i64]) -> bool {
    let mut gcd = 0i64;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            gcd = gcd.gcd(&(a[i] * b[j] - a[j] * b[i]));
        }
    }
    gcd == 1
}

/// Ground set of M: (x, 0) for primitive x, and (x, y) with y ≠ 0 allowed
/// as a singleton under `reading`.
fn m_ground(
    p: &StandardWallPairing,
    b: &EnumerationBounds,
    reading: MReading,
) -> Result<Vec<Pair>, Error> {
    let g = p.rank;
    let prim = primitive_vectors(g, b.coeff_bound);
    let mut ground: Vec<Pair> = prim
        .iter()
        .map(|x| Pair::new(x.clone(), YVector::zero(g)))
        .collect();
    match reading {
        MReading::DualToOwn => ground.extend(enumerate_kpi_vertices(p, b)?),
        MReading::OrthogonalToAll => {
            let frees = box_vectors(g, b.coeff_bound);
            let tors = bit_vectors(g);
            for x in &prim {
                for f in frees.iter().filter(|f| lambda_raw(&x.coeffs, f) == 0) {
                    for t in &tors {
                        let y = YVector {
                            free: f.clone(),
                            tor: t.clone(),
                        };
                        if !y.is_zero() && p.alpha(&y)? == 0 {
                            ground.push(Pair::new(x.clone(), y));
                        }
                    }
                }
            }
        }
    }
    ground.sort();
    Ok(ground)
}

/// M(X, Y) truncated at bound B and length max_seq_len.
pub fn build_m(
    p: &StandardWallPairing,
    b: &EnumerationBounds,
    reading: MReading,
) -> Result<PairPoset, Error> {
    let ground = m_ground(p, b, reading)?;
    if b.max_seq_len == 0 || ground.is_empty() {
        return Ok(SequencePoset::from_parts_unchecked(ground, BTreeSet::new()));
    }
    let adj = forward_adjacency(&ground, |a, c| {
        (a.y.is_zero() || lambda_raw(&c.x.coeffs, &a.y.free) == 0)
            && (c.y.is_zero() || lambda_raw(&a.x.coeffs, &c.y.free) == 0)
            && qform_raw(&a.y, &c.y) == 0
            && pair_unimodular(&a.x.coeffs, &c.x.coeffs)
    });
    let mut set = BTreeSet::new();
    for (d, fs) in cliques(&adj, b.max_seq_len - 1).into_iter().enumerate() {
        for f in fs {
            if d >= 2 {
                let xs: Vec<Vec<i64>> = f
                    .iter()
                    .map(|&i| ground[i as usize].x.coeffs.clone())
                    .collect();
                if !is_unimodular_sequence(&xs, p.rank)? {
                    continue;
                }
            }
            set.extend(permutations(&f));
        }
    }
    Ok(SequencePoset::from_parts_unchecked(ground, set))
}

/// F_0 holds the elements with some y ≠ 0; F_i adds the all-zero-y
/// elements of length ≤ i.
pub fn filtration(m: &PairPoset, i: usize) -> PairPoset {
    let ground = m.ground().to_vec();
    m.filter(|s| {
        let all_zero = s.iter().all(|&k| ground[k as usize].y.is_zero());
        !all_zero || s.len() <= i
    })
}

/// h(w): the sub-list of entries with y ≠ 0.
pub fn retraction_h(w: &[Pair]) -> Result<Vec<Pair>, BuilderError> {
    let out: Vec<Pair> = w.iter().filter(|p| !p.y.is_zero()).cloned().collect();
    if out.is_empty() {
        return Err(BuilderError::Precondition(
            "every y is zero, so the element is not in F_0".into(),
        ));
    }
    Ok(out)
}
