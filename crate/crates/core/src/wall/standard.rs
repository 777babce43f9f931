use serde::{Deserialize, Serialize};

use super::vectors::{bit_vectors, box_vectors};
use super::{WallError, XVector, YVector};
use crate::lattice::{rank_mod2_dense, IntMatrix};
use crate::par;

/// The rank-g Wall pairing in standard coordinates.
///
/// λ, q and α are valued in ℤ, ℤ/2 and ℤ/2 respectively; the returned
/// numbers are coefficients of the fixed generators of those groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardWallPairing {
    pub rank: usize,
}

impl StandardWallPairing {
    pub fn new(rank: usize) -> Self {
        StandardWallPairing { rank }
    }

    fn check_x(&self, x: &XVector) -> Result<(), WallError> {
        if x.rank() != self.rank {
            return Err(WallError::Dimension {
                expected: self.rank,
                found: x.rank(),
            });
        }
        Ok(())
    }

    fn check_y(&self, y: &YVector) -> Result<(), WallError> {
        if y.free.len() != self.rank {
            return Err(WallError::Dimension {
                expected: self.rank,
                found: y.free.len(),
            });
        }
        if y.tor.len() != self.rank {
            return Err(WallError::Dimension {
                expected: self.rank,
                found: y.tor.len(),
            });
        }
        if y.tor.iter().any(|&t| t > 1) {
            return Err(WallError::Precondition(
                "torsion entries must be 0 or 1".into(),
            ));
        }
        Ok(())
    }

    /// λ(x, y) = Σ x_i·free_i.
    pub fn lambda(&self, x: &XVector, y: &YVector) -> Result<i64, WallError> {
        self.check_x(x)?;
        self.check_y(y)?;
        Ok(lambda_raw(&x.coeffs, &y.free))
    }

    /// q(y, y') = Σ free_i·tor'_i + free'_i·tor_i mod 2.
    pub fn qform(&self, y: &YVector, y2: &YVector) -> Result<u8, WallError> {
        self.check_y(y)?;
        self.check_y(y2)?;
        Ok(qform_raw(y, y2))
    }

    /// α(y) = Σ free_i·tor_i mod 2.
    pub fn alpha(&self, y: &YVector) -> Result<u8, WallError> {
        self.check_y(y)?;
        Ok(alpha_raw(y))
    }

    /// ρ(x) = the torsion element with bits x mod 2.
    pub fn rho(&self, x: &XVector) -> Result<YVector, WallError> {
        self.check_x(x)?;
        Ok(rho_raw(x))
    }
}

// Unchecked closed forms, shared by the enumerators.

pub(crate) fn lambda_raw(x: &[i64], free: &[i64]) -> i64 {
    x.iter().zip(free).map(|(a, b)| a * b).sum()
}

pub(crate) fn qform_raw(y: &YVector, y2: &YVector) -> u8 {
    let mut s = 0u8;
    for i in 0..y.free.len() {
        s ^= ((y.free[i] & 1) as u8 & y2.tor[i]) ^ ((y2.free[i] & 1) as u8 & y.tor[i]);
    }
    s
}

pub(crate) fn alpha_raw(y: &YVector) -> u8 {
    y.free
        .iter()
        .zip(&y.tor)
        .fold(0u8, |s, (f, t)| s ^ ((f & 1) as u8 & t))
}

pub(crate) fn rho_raw(x: &XVector) -> YVector {
    YVector::torsion(x.coeffs.iter().map(|c| (c & 1) as u8).collect())
}

/// Outcome of the exhaustive search for ρ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoSearch {
    pub candidates: u64,
    /// Each solution as a g×g bit matrix: row i holds the torsion bits of
    /// the image of x_{i+1}.
    pub solutions: Vec<Vec<Vec<u8>>>,
}

/// Largest rank accepted by [`search_rho`]; the candidate space is 2^{g²}.
pub const RHO_SEARCH_MAX_RANK: usize = 3;

/// Enumerates every homomorphism X → Torsion(Y) and keeps those with
/// q(ρ(x), y) = λ(x, y) mod 2 for all x, y with coefficients in [-2, 2].
pub fn search_rho(p: &StandardWallPairing) -> Result<RhoSearch, WallError> {
    let g = p.rank;
    if g > RHO_SEARCH_MAX_RANK {
        return Err(WallError::Resource(format!(
            "rho search is limited to rank {RHO_SEARCH_MAX_RANK}, got {g}"
        )));
    }
    let xs = box_vectors(g, 2);
    let frees = box_vectors(g, 2);
    let tors = bit_vectors(g);
    let n = 1u64 << (g * g);
    let ok = par::map_range(n as usize, |m| {
        let m = m as u64;
        let row =
            |i: usize| -> Vec<u8> { (0..g).map(|j| ((m >> (i * g + j)) & 1) as u8).collect() };
        let rows: Vec<Vec<u8>> = (0..g).map(row).collect();
        for x in &xs {
            let mut img = vec![0u8; g];
            for (i, c) in x.iter().enumerate() {
                if c & 1 == 1 {
                    for j in 0..g {
                        img[j] ^= rows[i][j];
                    }
                }
            }
            let rx = YVector::torsion(img);
            for f in &frees {
                let lam = (lambda_raw(x, f) & 1) as u8;
                for t in &tors {
                    let y = YVector {
                        free: f.clone(),
                        tor: t.clone(),
                    };
                    if qform_raw(&rx, &y) != lam {
                        return None;
                    }
                }
            }
        }
        Some(rows)
    });
    Ok(RhoSearch {
        candidates: n,
        solutions: ok.into_iter().flatten().collect(),
    })
}

/// True iff exactly one candidate map satisfies the defining identity and
/// it is the closed form x_i ↦ z_i.
pub fn verify_rho_uniqueness(p: &StandardWallPairing) -> Result<bool, WallError> {
    let s = search_rho(p)?;
    let g = p.rank;
    let identity: Vec<Vec<u8>> = (0..g)
        .map(|i| (0..g).map(|j| u8::from(i == j)).collect())
        .collect();
    Ok(s.solutions.len() == 1 && s.solutions[0] == identity)
}

/// Whether z ↦ q(z, ·) maps Torsion(Y) isomorphically onto Hom(Y', ℤ/2),
/// where Y' is spanned by `yprime_basis`.
pub fn torsion_duality(
    p: &StandardWallPairing,
    yprime_basis: &[YVector],
) -> Result<bool, WallError> {
    let g = p.rank;
    if yprime_basis.len() != g {
        return Err(WallError::Precondition(format!(
            "a complement to the torsion needs {g} generators, got {}",
            yprime_basis.len()
        )));
    }
    for y in yprime_basis {
        p.check_y(y)?;
    }
    let free: Vec<Vec<i64>> = yprime_basis.iter().map(|y| y.free.clone()).collect();
    let det = IntMatrix::from_rows_with_cols(&free, g)?.determinant()?;
    if !det.is_unit() {
        return Err(WallError::Precondition(
            "free parts do not form a basis, so the span is not a complement to the torsion".into(),
        ));
    }
    let m: Vec<Vec<u8>> = (0..g)
        .map(|i| {
            let z = YVector::z(g, i);
            yprime_basis.iter().map(|y| qform_raw(&z, y)).collect()
        })
        .collect();
    Ok(rank_mod2_dense(&m, g) == g)
}

pub fn direct_sum(p1: &StandardWallPairing, p2: &StandardWallPairing) -> StandardWallPairing {
    StandardWallPairing::new(p1.rank + p2.rank)
}

/// Places `x` at coordinate `offset` inside a rank-`total` pairing.
pub fn embed_x(x: &XVector, offset: usize, total: usize) -> XVector {
    let mut out = XVector::zero(total);
    out.coeffs[offset..offset + x.rank()].copy_from_slice(&x.coeffs);
    out
}

pub fn embed_y(y: &YVector, offset: usize, total: usize) -> YVector {
    let mut out = YVector::zero(total);
    out.free[offset..offset + y.rank()].copy_from_slice(&y.free);
    out.tor[offset..offset + y.rank()].copy_from_slice(&y.tor);
    out
}

/// ⌊(g − 3)/2⌋: homology in degrees up to this value is stable at rank g.
pub fn stable_range(g: usize) -> i64 {
    (g as i64 - 3).div_euclid(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_values() {
        let p = StandardWallPairing::new(2);
        let (x1, x2) = (XVector::basis(2, 0), XVector::basis(2, 1));
        let (y1, y2, z1, z2) = (
            YVector::y(2, 0),
            YVector::y(2, 1),
            YVector::z(2, 0),
            YVector::z(2, 1),
        );
        assert_eq!(p.lambda(&x1, &y1).unwrap(), 1);
        assert_eq!(p.lambda(&x1, &z1).unwrap(), 0);
        assert_eq!(p.lambda(&x1.scale(2).add(&x2), &y2).unwrap(), 1);
        assert_eq!(p.qform(&y1, &z1).unwrap(), 1);
        assert_eq!(p.qform(&z1, &z2).unwrap(), 0);
        assert_eq!(p.alpha(&y1).unwrap(), 0);
        assert_eq!(p.alpha(&z1).unwrap(), 0);
        assert_eq!(p.alpha(&y1.add(&z1)).unwrap(), 1);
        assert_eq!(p.rho(&x1).unwrap(), z1);
        assert!(p.rho(&x1.scale(2)).unwrap().is_zero());
    }

    #[test]
    fn dimension_errors() {
        let p = StandardWallPairing::new(2);
        assert!(p.lambda(&XVector::zero(3), &YVector::zero(2)).is_err());
        assert!(p.alpha(&YVector::zero(1)).is_err());
    }

    #[test]
    fn rho_is_unique_in_small_rank() {
        for g in 0..=2 {
            assert!(verify_rho_uniqueness(&StandardWallPairing::new(g)).unwrap());
        }
        assert_eq!(
            search_rho(&StandardWallPairing::new(1)).unwrap().candidates,
            2
        );
        assert!(matches!(
            search_rho(&StandardWallPairing::new(4)),
            Err(WallError::Resource(_))
        ));
    }

    #[test]
    fn duality_examples() {
        let p = StandardWallPairing::new(2);
        let std = vec![YVector::y(2, 0), YVector::y(2, 1)];
        assert!(torsion_duality(&p, &std).unwrap());
        let twisted = vec![YVector::y(2, 0).add(&YVector::z(2, 1)), YVector::y(2, 1)];
        assert!(torsion_duality(&p, &twisted).unwrap());
        assert!(torsion_duality(&StandardWallPairing::new(0), &[]).unwrap());
        let bad = vec![YVector::y(2, 0).scale(2), YVector::y(2, 1)];
        assert!(torsion_duality(&p, &bad).is_err());
    }

    #[test]
    fn stable_range_values() {
        assert_eq!(stable_range(3), 0);
        assert_eq!(stable_range(5), 1);
        assert_eq!(stable_range(9), 3);
        assert_eq!(stable_range(2), -1);
        assert_eq!(stable_range(0), -2);
    }
}
