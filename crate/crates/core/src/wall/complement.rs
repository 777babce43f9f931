//! Orthogonal complements of a perfectly paired pair of submodules.

use serde::{Deserialize, Serialize};

use super::standard::{alpha_raw, lambda_raw, qform_raw, rho_raw};
use super::{standardize, PairingPresentation, StandardWallPairing, WallError, XVector, YVector};
use crate::lattice::{
    inverse_mod2, is_unimodular_sequence, kernel_basis_i64, unimodular_inverse, Int, IntMatrix,
};

/// Submodules V ⊂ X and W ⊂ Y of equal rank k, given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspacePair {
    #[serde(rename = "V")]
    pub v: Vec<XVector>,
    #[serde(rename = "W")]
    pub w: Vec<YVector>,
}

/// Output of [`complement`]: bases of W^⊥ and of V^⊥ ∩ Ŵ in which the
/// restricted forms are standard of rank g − k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Complement {
    pub pairing: StandardWallPairing,
    pub x_basis: Vec<XVector>,
    pub y_basis: Vec<YVector>,
    pub z_basis: Vec<YVector>,
    /// The generators of W rebased so that λ(v_i, w_j) = δ_ij.
    pub w_dual: Vec<YVector>,
}

fn pre(msg: impl Into<String>) -> WallError {
    WallError::Precondition(msg.into())
}

fn combine_y(coeffs: &[i64], ys: &[YVector], g: usize) -> YVector {
    coeffs
        .iter()
        .zip(ys)
        .fold(YVector::zero(g), |acc, (c, y)| acc.add(&y.scale(*c)))
}

fn to_i64_matrix(m: &IntMatrix) -> Result<Vec<Vec<i64>>, WallError> {
    Ok(m.to_i64_rows()?)
}

/// Checks the hypotheses on `sub` and returns (k, Λ_VW).
fn check_sub(p: &StandardWallPairing, sub: &SubspacePair) -> Result<IntMatrix, WallError> {
    let g = p.rank;
    let k = sub.v.len();
    if sub.w.len() != k {
        return Err(pre(format!(
            "V has {k} generators but W has {}",
            sub.w.len()
        )));
    }
    if k > g {
        return Err(pre(format!(
            "subspaces of rank {k} exceed the pairing rank {g}"
        )));
    }
    for x in &sub.v {
        p.lambda(x, &YVector::zero(g))?;
    }
    for y in &sub.w {
        p.alpha(y)?;
    }
    let vs: Vec<Vec<i64>> = sub.v.iter().map(|x| x.coeffs.clone()).collect();
    if !is_unimodular_sequence(&vs, g)? {
        return Err(pre(
            "V is not a unimodular sequence (not a direct summand of X)",
        ));
    }
    let ws: Vec<Vec<i64>> = sub.w.iter().map(|y| y.free.clone()).collect();
    if !is_unimodular_sequence(&ws, g)? {
        return Err(pre("W does not span a free direct summand of Y"));
    }
    let gram = IntMatrix::from_fn(k, k, |i, j| Int::from(lambda_raw(&vs[i], &ws[j])));
    if !gram.determinant()?.is_unit() {
        return Err(pre("λ restricted to V × W is not a perfect pairing"));
    }
    Ok(gram)
}

/// Constructs bases of W^⊥ and V^⊥ ∩ Ŵ satisfying the standard relations.
///
/// W^⊥ is the kernel of the free parts of W; the free part of V^⊥ is the
/// kernel of V. A λ-dual basis of the latter is then shifted into Ŵ by
/// adding ρ(v_j) for every w_j it meets under q.
pub fn complement(p: &StandardWallPairing, sub: &SubspacePair) -> Result<Complement, WallError> {
    let g = p.rank;
    let k = sub.v.len();
    let gram = check_sub(p, sub)?;

    // Rebase W so that λ(v_i, w_j) = δ_ij: w'_j = Σ_l w_l (G^{-1})_{lj}.
    let ginv = to_i64_matrix(&unimodular_inverse(&gram)?)?;
    let w_dual: Vec<YVector> = (0..k)
        .map(|j| {
            let col: Vec<i64> = (0..k).map(|l| ginv[l][j]).collect();
            combine_y(&col, &sub.w, g)
        })
        .collect();

    if k == g {
        return Ok(Complement {
            pairing: StandardWallPairing::new(0),
            x_basis: vec![],
            y_basis: vec![],
            z_basis: vec![],
            w_dual,
        });
    }

    let wfree: Vec<Vec<i64>> = w_dual.iter().map(|y| y.free.clone()).collect();
    let vrows: Vec<Vec<i64>> = sub.v.iter().map(|x| x.coeffs.clone()).collect();
    let x_basis = kernel_basis_i64(&IntMatrix::from_rows_with_cols(&wfree, g)?)?;
    let vperp_free = kernel_basis_i64(&IntMatrix::from_rows_with_cols(&vrows, g)?)?;
    let r = g - k;
    if x_basis.len() != r || vperp_free.len() != r {
        return Err(WallError::Internal(
            "complement kernels have the wrong rank".into(),
        ));
    }

    // λ-dual basis of proj(V^⊥) against x_basis.
    let h = IntMatrix::from_fn(r, r, |i, j| {
        Int::from(lambda_raw(&x_basis[i], &vperp_free[j]))
    });
    let hinv = unimodular_inverse(&h)
        .map_err(|_| WallError::Internal("λ on W^⊥ × proj(V^⊥) is not perfect".into()))?;
    let hinv = to_i64_matrix(&hinv)?;
    let ys: Vec<YVector> = (0..r)
        .map(|j| {
            let mut free = vec![0i64; g];
            for l in 0..r {
                for (c, f) in free.iter_mut().zip(&vperp_free[l]) {
                    *c += f * hinv[l][j];
                }
            }
            YVector::new(free, vec![0; g])
        })
        .collect();

    // ŷ_i = y_i + Σ_{j ∈ A_i} ρ(v_j), A_i = { j : q(y_i, w_j) ≠ 0 }.
    let y_basis: Vec<YVector> = ys
        .iter()
        .map(|y| {
            let mut out = y.clone();
            for (vj, wj) in sub.v.iter().zip(&w_dual) {
                if qform_raw(y, wj) != 0 {
                    out = out.add(&rho_raw(vj));
                }
            }
            out
        })
        .collect();

    let x_basis: Vec<XVector> = x_basis.into_iter().map(XVector::new).collect();
    let z_basis: Vec<YVector> = x_basis.iter().map(rho_raw).collect();
    Ok(Complement {
        pairing: StandardWallPairing::new(r),
        x_basis,
        y_basis,
        z_basis,
        w_dual,
    })
}

/// Outcome of the independent re-check of a [`Complement`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComplementCheck {
    pub dual: bool,
    pub q_vanishes: bool,
    pub alpha_vanishes: bool,
    pub orthogonal_to_sub: bool,
    pub x_spans_w_perp: bool,
    pub y_z_span_intersection: bool,
    pub standardizes_to_rank: Option<usize>,
}

impl ComplementCheck {
    pub fn all_hold(&self, expected_rank: usize) -> bool {
        self.dual
            && self.q_vanishes
            && self.alpha_vanishes
            && self.orthogonal_to_sub
            && self.x_spans_w_perp
            && self.y_z_span_intersection
            && self.standardizes_to_rank == Some(expected_rank)
    }
}

/// Re-verifies conditions (a)–(d), the spanning claims and that the
/// induced presentation standardizes.
pub fn verify_complement(
    p: &StandardWallPairing,
    sub: &SubspacePair,
    c: &Complement,
) -> Result<ComplementCheck, WallError> {
    let g = p.rank;
    let k = sub.v.len();
    let r = c.x_basis.len();
    let mut out = ComplementCheck::default();
    if r + k != g || c.y_basis.len() != r || c.z_basis.len() != r {
        return Ok(out);
    }
    let (xs, ys) = (&c.x_basis, &c.y_basis);

    out.dual =
        (0..r).all(|i| (0..r).all(|j| lambda_raw(&xs[i].coeffs, &ys[j].free) == i64::from(i == j)));
    out.q_vanishes = (0..r).all(|i| (0..r).all(|j| qform_raw(&ys[i], &ys[j]) == 0));
    out.alpha_vanishes = ys.iter().all(|y| alpha_raw(y) == 0);
    out.orthogonal_to_sub = ys.iter().all(|y| {
        sub.v.iter().all(|v| lambda_raw(&v.coeffs, &y.free) == 0)
            && sub.w.iter().all(|w| qform_raw(y, w) == 0)
    });

    // x_basis: g − k unimodular vectors inside the rank g − k summand W^⊥.
    let xrows: Vec<Vec<i64>> = xs.iter().map(|x| x.coeffs.clone()).collect();
    out.x_spans_w_perp = is_unimodular_sequence(&xrows, g)?
        && xs
            .iter()
            .all(|x| sub.w.iter().all(|w| lambda_raw(&x.coeffs, &w.free) == 0));

    // Y = ⟨ŷ⟩ ⊕ ⟨ρ(x)⟩ ⊕ ρ(V) ⊕ W, and (ρ(V) ⊕ W) meets V^⊥ ∩ Ŵ trivially.
    let free_rows: Vec<Vec<i64>> = ys
        .iter()
        .map(|y| y.free.clone())
        .chain(c.w_dual.iter().map(|w| w.free.clone()))
        .collect();
    let free_basis = IntMatrix::from_rows_with_cols(&free_rows, g)?
        .determinant()?
        .is_unit();
    let tor_rows: Vec<Vec<u8>> = c
        .z_basis
        .iter()
        .map(|z| z.tor.clone())
        .chain(sub.v.iter().map(|v| rho_raw(v).tor))
        .collect();
    let tor_basis = tor_rows.iter().all(|t| t.len() == g) && inverse_mod2(&tor_rows).is_some();
    let z_ok = c.z_basis.iter().zip(xs).all(|(z, x)| *z == rho_raw(x));
    let meets_trivially = (0..k).all(|i| {
        (0..k).all(|j| {
            let d = i64::from(i == j);
            lambda_raw(&sub.v[i].coeffs, &c.w_dual[j].free) == d
                && qform_raw(&rho_raw(&sub.v[i]), &c.w_dual[j]) == d as u8
        })
    });
    let z_inside = c.z_basis.iter().all(|z| {
        sub.v.iter().all(|v| lambda_raw(&v.coeffs, &z.free) == 0)
            && sub.w.iter().all(|w| qform_raw(z, w) == 0)
    });
    out.y_z_span_intersection = free_basis && tor_basis && z_ok && meets_trivially && z_inside;

    let pres = PairingPresentation::from_generators(p, xs, ys, &c.z_basis)?;
    out.standardizes_to_rank = standardize(&pres).ok().map(|_| pres.rank);
    Ok(out)
}

/// Coordinates of elements of W^⊥ and V^⊥ ∩ Ŵ in a [`Complement`]'s bases,
/// and the reverse embedding.
#[derive(Clone, Debug)]
pub struct ComplementCoordinates {
    g: usize,
    // Inverse of the matrix whose rows are x_basis followed by V.
    x_inv: Vec<Vec<i64>>,
    // Inverse of the free rows ŷ followed by rebased W.
    y_inv: Vec<Vec<i64>>,
    // Inverse over ℤ/2 of the torsion rows ρ(x_basis) followed by ρ(V).
    t_inv: Vec<Vec<u8>>,
    comp: Complement,
    v: Vec<XVector>,
}

/// Decomposition of x ∈ X along X = W^⊥ ⊕ V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSplit {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

/// Decomposition of y along Y = (V^⊥ ∩ Ŵ) ⊕ W ⊕ ρ(V): `c_free`/`c_tor`
/// in the (ŷ, ρ(x)) basis, `d` along the rebased W and `e` along ρ(V).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSplit {
    pub c_free: Vec<i64>,
    pub c_tor: Vec<u8>,
    pub d: Vec<i64>,
    pub e: Vec<u8>,
}

fn row_solve(inv: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    // v = Σ_i coeff_i row_i  ⇔  coeff = v · inv
    let n = inv.len();
    (0..n)
        .map(|j| (0..n).map(|i| v[i] * inv[i][j]).sum())
        .collect()
}

fn row_solve_mod2(inv: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    let n = inv.len();
    (0..n)
        .map(|j| (0..n).fold(0u8, |s, i| s ^ (v[i] & inv[i][j])))
        .collect()
}

impl ComplementCoordinates {
    pub fn new(
        p: &StandardWallPairing,
        sub: &SubspacePair,
        comp: Complement,
    ) -> Result<Self, WallError> {
        let g = p.rank;
        let xrows: Vec<Vec<i64>> = comp
            .x_basis
            .iter()
            .chain(&sub.v)
            .map(|x| x.coeffs.clone())
            .collect();
        let yrows: Vec<Vec<i64>> = comp
            .y_basis
            .iter()
            .chain(&comp.w_dual)
            .map(|y| y.free.clone())
            .collect();
        let trows: Vec<Vec<u8>> = comp
            .z_basis
            .iter()
            .map(|z| z.tor.clone())
            .chain(sub.v.iter().map(|v| rho_raw(v).tor))
            .collect();
        let x_inv = to_i64_matrix(&unimodular_inverse(&IntMatrix::from_rows_with_cols(
            &xrows, g,
        )?)?)?;
        let y_inv = to_i64_matrix(&unimodular_inverse(&IntMatrix::from_rows_with_cols(
            &yrows, g,
        )?)?)?;
        let t_inv = inverse_mod2(&trows)
            .ok_or_else(|| WallError::Internal("torsion rows are not a basis".into()))?;
        Ok(ComplementCoordinates {
            g,
            x_inv,
            y_inv,
            t_inv,
            comp,
            v: sub.v.clone(),
        })
    }

    pub fn complement(&self) -> &Complement {
        &self.comp
    }

    pub fn rank(&self) -> usize {
        self.comp.x_basis.len()
    }

    pub fn split_x(&self, x: &XVector) -> XSplit {
        let c = row_solve(&self.x_inv, &x.coeffs);
        let r = self.rank();
        XSplit {
            a: c[..r].to_vec(),
            b: c[r..].to_vec(),
        }
    }

    pub fn split_y(&self, y: &YVector) -> YSplit {
        let r = self.rank();
        let fc = row_solve(&self.y_inv, &y.free);
        let (c_free, d) = (fc[..r].to_vec(), fc[r..].to_vec());
        // Remove the torsion carried by the free generators, then split the
        // remainder along ρ(x_basis) ⊕ ρ(V).
        let carried = combine_y(&c_free, &self.comp.y_basis, self.g).add(&combine_y(
            &d,
            &self.comp.w_dual,
            self.g,
        ));
        let rest: Vec<u8> = y.tor.iter().zip(&carried.tor).map(|(a, b)| a ^ b).collect();
        let tc = row_solve_mod2(&self.t_inv, &rest);
        YSplit {
            c_free,
            c_tor: tc[..r].to_vec(),
            d,
            e: tc[r..].to_vec(),
        }
    }

    /// Element of W^⊥ with coordinates `a` in the complement's x-basis.
    pub fn embed_x(&self, a: &[i64]) -> XVector {
        a.iter()
            .zip(&self.comp.x_basis)
            .fold(XVector::zero(self.g), |acc, (c, x)| acc.add(&x.scale(*c)))
    }

    pub fn embed_v(&self, b: &[i64]) -> XVector {
        b.iter()
            .zip(&self.v)
            .fold(XVector::zero(self.g), |acc, (c, x)| acc.add(&x.scale(*c)))
    }

    /// Element of V^⊥ ∩ Ŵ from standard coordinates of the complement.
    pub fn embed_y(&self, y: &YVector) -> YVector {
        let free = combine_y(&y.free, &self.comp.y_basis, self.g);
        let tor = y
            .tor
            .iter()
            .zip(&self.comp.z_basis)
            .fold(YVector::zero(self.g), |acc, (t, z)| {
                acc.add(&z.scale(*t as i64))
            });
        free.add(&tor)
    }

    pub fn embed_rho_v(&self, e: &[u8]) -> YVector {
        e.iter()
            .zip(&self.v)
            .fold(YVector::zero(self.g), |acc, (t, v)| {
                acc.add(&rho_raw(v).scale(*t as i64))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: usize, v: Vec<XVector>, w: Vec<YVector>) -> Complement {
        let p = StandardWallPairing::new(g);
        let sub = SubspacePair { v, w };
        let c = complement(&p, &sub).unwrap();
        let chk = verify_complement(&p, &sub, &c).unwrap();
        assert!(chk.all_hold(g - sub.v.len()), "{chk:?}");
        c
    }

    #[test]
    fn coordinate_complement() {
        let c = check(2, vec![XVector::basis(2, 0)], vec![YVector::y(2, 0)]);
        assert_eq!(c.x_basis.len(), 1);
        assert_eq!(c.x_basis[0].coeffs[0], 0);
        assert_eq!(c.y_basis[0].free[0], 0);
        assert_eq!(c.z_basis[0], YVector::z(2, 1));
    }

    #[test]
    fn twisted_w_needs_rho_correction() {
        let w = YVector::y(2, 0).add(&YVector::z(2, 1));
        let c = check(2, vec![XVector::basis(2, 0)], vec![w]);
        assert!(c.y_basis[0].tor[0] == 1, "{:?}", c.y_basis);
    }

    #[test]
    fn full_rank_sub_gives_rank_zero() {
        let v = vec![XVector::basis(2, 0), XVector::basis(2, 1)];
        let w = vec![YVector::y(2, 0), YVector::y(2, 1)];
        let c = check(2, v, w);
        assert_eq!(c.pairing.rank, 0);
        assert!(c.x_basis.is_empty());
    }

    #[test]
    fn hypotheses_are_named() {
        let p = StandardWallPairing::new(2);
        let sub = SubspacePair {
            v: vec![XVector::basis(2, 0)],
            w: vec![YVector::y(2, 1)],
        };
        let err = complement(&p, &sub).unwrap_err();
        assert!(err.to_string().contains("perfect"), "{err}");
        let sub = SubspacePair {
            v: vec![XVector::new(vec![2, 0])],
            w: vec![YVector::y(2, 0)],
        };
        assert!(complement(&p, &sub)
            .unwrap_err()
            .to_string()
            .contains("unimodular"));
    }

    #[test]
    fn splitting_round_trips() {
        let p = StandardWallPairing::new(3);
        let sub = SubspacePair {
            v: vec![XVector::new(vec![1, 1, 0])],
            w: vec![YVector::new(vec![1, 0, 1], vec![0, 1, 1])],
        };
        let c = complement(&p, &sub).unwrap();
        let coords = ComplementCoordinates::new(&p, &sub, c).unwrap();
        let x = XVector::new(vec![2, -1, 3]);
        let s = coords.split_x(&x);
        assert_eq!(coords.embed_x(&s.a).add(&coords.embed_v(&s.b)), x);
        let y = YVector::new(vec![1, 2, -1], vec![1, 0, 1]);
        let s = coords.split_y(&y);
        let back = coords
            .embed_y(&YVector::new(s.c_free.clone(), s.c_tor.clone()))
            .add(&combine_y(&s.d, &coords.complement().w_dual, 3))
            .add(&coords.embed_rho_v(&s.e));
        assert_eq!(back, y);
    }
}
