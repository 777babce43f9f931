//! Exhaustive identity checks on the standard pairing and random inputs for
//! the complement and torsion-duality checks.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::lattice::{is_unimodular_sequence, Int, IntMatrix};
use crate::par;
use crate::wall::{
    bit_vectors, box_vectors, StandardWallPairing, SubspacePair, WallError, XVector, YVector,
};
use crate::Error;

/// Counts of violated identities over one domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub rank: usize,
    pub bound: i64,
    pub x_domain: usize,
    pub y_domain: usize,
    /// Identity name to number of violations. Every identity is listed.
    pub violations: BTreeMap<String, u64>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.violations.values().all(|&v| v == 0)
    }
}

const IDENTITIES: [&str; 9] = [
    "alpha_generators",
    "alpha_summation",
    "lambda_additive",
    "lambda_expansion",
    "lambda_perfect",
    "q_additive",
    "q_expansion",
    "q_isotropic",
    "q_symmetric",
];

fn generators(g: usize) -> Vec<YVector> {
    (0..g)
        .map(|i| YVector::y(g, i))
        .chain((0..g).map(|i| YVector::z(g, i)))
        .collect()
}

/// Coordinates of y on the generators y_1..y_g, z_1..z_g.
fn y_coords(y: &YVector) -> Vec<i64> {
    y.free
        .iter()
        .copied()
        .chain(y.tor.iter().map(|&t| i64::from(t)))
        .collect()
}

/// Checks, on every x, x' ∈ [−B, B]^g and y, y' ∈ [−B, B]^g × (ℤ/2)^g:
/// the summation formula α(y + y') = α(y) + α(y') + q(y, y'), q(y, y) = 0,
/// α = 0 on generators, λ(x_i, y_j) = δ_ij, and bilinearity of λ and q.
///
/// Bilinearity is checked twice over: additivity in each argument against
/// every generator, and agreement on every pair with the bilinear extension
/// of the generator values. Symmetry of q is checked pair by pair.
pub fn wall_axioms(g: usize, bound: i64) -> Result<AxiomReport, Error> {
    let p = StandardWallPairing::new(g);
    let xs: Vec<XVector> = box_vectors(g, bound)
        .into_iter()
        .map(XVector::new)
        .collect();
    let ys: Vec<YVector> = box_vectors(g, bound)
        .into_iter()
        .flat_map(|f| {
            bit_vectors(g)
                .into_iter()
                .map(move |t| YVector::new(f.clone(), t))
        })
        .collect();
    let gens = generators(g);
    let xgens: Vec<XVector> = (0..g).map(|i| XVector::basis(g, i)).collect();

    let mut qtab = vec![vec![0u8; 2 * g]; 2 * g];
    let mut ltab = vec![vec![0i64; 2 * g]; g];
    let mut base: BTreeMap<String, u64> = IDENTITIES.iter().map(|s| (s.to_string(), 0)).collect();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            qtab[i][j] = p.qform(a, b)?;
        }
        if p.alpha(a)? != 0 {
            *base.get_mut("alpha_generators").expect("listed") += 1;
        }
    }
    for (i, x) in xgens.iter().enumerate() {
        for (j, y) in gens.iter().enumerate() {
            ltab[i][j] = p.lambda(x, y)?;
            if ltab[i][j] != i64::from(i == j) {
                *base.get_mut("lambda_perfect").expect("listed") += 1;
            }
        }
    }
    let per_y: Vec<Result<BTreeMap<&'static str, u64>, WallError>> = par::map(&ys, |a| {
        let mut v: BTreeMap<&'static str, u64> = BTreeMap::new();
        let mut bump = |k: &'static str| *v.entry(k).or_insert(0) += 1;
        let ca = y_coords(a);
        if p.qform(a, a)? != 0 {
            bump("q_isotropic");
        }
        let alpha_a = p.alpha(a)?;
        for b in &ys {
            let qab = p.qform(a, b)?;
            if qab != p.qform(b, a)? {
                bump("q_symmetric");
            }
            let sum = a.add(b);
            if p.alpha(&sum)? != (alpha_a + p.alpha(b)? + qab) % 2 {
                bump("alpha_summation");
            }
            let cb = y_coords(b);
            let mut e = 0i64;
            for (i, &u) in ca.iter().enumerate() {
                for (j, &w) in cb.iter().enumerate() {
                    e += u * w * i64::from(qtab[i][j]);
                }
            }
            if e.rem_euclid(2) as u8 != qab {
                bump("q_expansion");
            }
            for c in &gens {
                if p.qform(&sum, c)? != (p.qform(a, c)? + p.qform(b, c)?) % 2 {
                    bump("q_additive");
                }
            }
            for x in &xgens {
                if p.lambda(x, &sum)? != p.lambda(x, a)? + p.lambda(x, b)? {
                    bump("lambda_additive");
                }
            }
        }
        for x in &xs {
            let mut e = 0i64;
            for (i, &u) in x.coeffs.iter().enumerate() {
                for (j, &w) in ca.iter().enumerate() {
                    e += u * w * ltab[i][j];
                }
            }
            if p.lambda(x, a)? != e {
                bump("lambda_expansion");
            }
        }
        Ok(v)
    });
    for r in per_y {
        for (k, n) in r? {
            *base.get_mut(k).expect("listed") += n;
        }
    }
    let per_x: Vec<Result<u64, WallError>> = par::map(&xs, |x| {
        let mut n = 0;
        for x2 in &xs {
            let s = x.add(x2);
            for y in &gens {
                if p.lambda(&s, y)? != p.lambda(x, y)? + p.lambda(x2, y)? {
                    n += 1;
                }
            }
        }
        Ok(n)
    });
    for r in per_x {
        *base.get_mut("lambda_additive").expect("listed") += r?;
    }
    Ok(AxiomReport {
        rank: g,
        bound,
        x_domain: xs.len(),
        y_domain: ys.len(),
        violations: base,
    })
}

fn random_vec(rng: &mut impl Rng, g: usize, bound: i64) -> Vec<i64> {
    (0..g).map(|_| rng.random_range(-bound..=bound)).collect()
}

fn random_bits(rng: &mut impl Rng, g: usize) -> Vec<u8> {
    (0..g).map(|_| rng.random_range(0..=1u8)).collect()
}

const MAX_ATTEMPTS: usize = 1_000_000;

/// A SubspacePair in rank g with k generators and coefficients in
/// [−B, B]: V and the free parts of W unimodular, λ on V × W perfect.
/// Found by rejection sampling.
pub fn random_subspace_pair(
    rng: &mut impl Rng,
    g: usize,
    k: usize,
    bound: i64,
) -> Result<SubspacePair, Error> {
    if k == 0 || k > g {
        return Err(Error::Internal(format!(
            "cannot draw {k} generators in rank {g}"
        )));
    }
    let v = draw_unimodular(rng, g, k, bound)?;
    for _ in 0..MAX_ATTEMPTS {
        let wfree = draw_unimodular(rng, g, k, bound)?;
        let gram = IntMatrix::from_fn(k, k, |i, j| {
            Int::from(v[i].iter().zip(&wfree[j]).map(|(a, b)| a * b).sum::<i64>())
        });
        if gram.determinant()?.is_unit() {
            return Ok(SubspacePair {
                v: v.into_iter().map(XVector::new).collect(),
                w: wfree
                    .into_iter()
                    .map(|f| YVector::new(f, random_bits(rng, g)))
                    .collect(),
            });
        }
    }
    Err(Error::Internal(format!(
        "no perfect pair found in rank {g} with {k} generators"
    )))
}

fn draw_unimodular(
    rng: &mut impl Rng,
    g: usize,
    k: usize,
    bound: i64,
) -> Result<Vec<Vec<i64>>, Error> {
    for _ in 0..MAX_ATTEMPTS {
        let rows: Vec<Vec<i64>> = (0..k).map(|_| random_vec(rng, g, bound)).collect();
        if is_unimodular_sequence(&rows, g)? {
            return Ok(rows);
        }
    }
    Err(Error::Internal(format!(
        "no unimodular sequence of length {k} found in rank {g}"
    )))
}

/// g elements of Y whose free parts form a basis of ℤ^g, with random
/// torsion: a random complement to Torsion(Y).
pub fn random_torsion_complement(
    rng: &mut impl Rng,
    g: usize,
    bound: i64,
) -> Result<Vec<YVector>, Error> {
    let rows = if g == 0 {
        Vec::new()
    } else {
        draw_unimodular(rng, g, g, bound)?
    };
    Ok(rows
        .into_iter()
        .map(|f| YVector::new(f, random_bits(rng, g)))
        .collect())
}
