//! Wall pairings given by matrices on arbitrary generators, and their
//! reduction to standard coordinates.

use serde::{Deserialize, Serialize};

use super::{StandardWallPairing, WallError, XVector, YVector};
use crate::lattice::{inverse_mod2, unimodular_inverse, IntMatrix, LatticeError};

/// Generators a_1..a_g of X, b_1..b_g (free) and c_1..c_g (order two) of
/// Y. `q_matrix` and `alpha_gens` list the b's first, then the c's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingPresentation {
    pub rank: usize,
    pub lambda_matrix: Vec<Vec<i64>>,
    pub q_matrix: Vec<Vec<u8>>,
    pub alpha_gens: Vec<u8>,
}

/// Element of Y in presentation coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedY {
    pub free: Vec<i64>,
    pub tor: Vec<u8>,
}

/// Change of basis taking a presentation to standard form.
///
/// Row i of `x_basis` is the new x_{i+1} in terms of the a's; the new
/// y_{i+1} is `b_{i+1} + Σ_j y_torsion[i][j]·c_{j+1}`; row i of `z_basis`
/// is the new z_{i+1} in terms of the c's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardizeWitness {
    pub x_basis: Vec<Vec<i64>>,
    pub y_torsion: Vec<Vec<u8>>,
    pub z_basis: Vec<Vec<u8>>,
}

impl StandardizeWitness {
    pub fn is_identity(&self) -> bool {
        let g = self.x_basis.len();
        (0..g).all(|i| {
            (0..g).all(|j| {
                let d = u8::from(i == j);
                self.x_basis[i][j] == d as i64
                    && self.y_torsion[i][j] == 0
                    && self.z_basis[i][j] == d
            })
        })
    }
}

impl PairingPresentation {
    /// The standard model written as a presentation.
    pub fn standard(g: usize) -> Self {
        let p = StandardWallPairing::new(g);
        let xs: Vec<XVector> = (0..g).map(|i| XVector::basis(g, i)).collect();
        let ys: Vec<YVector> = (0..g).map(|i| YVector::y(g, i)).collect();
        let zs: Vec<YVector> = (0..g).map(|i| YVector::z(g, i)).collect();
        Self::from_generators(&p, &xs, &ys, &zs).expect("standard generators")
    }

    /// Reads off the matrices of the standard pairing `p` on the given
    /// generators. `zs` must be torsion elements.
    pub fn from_generators(
        p: &StandardWallPairing,
        xs: &[XVector],
        ys: &[YVector],
        zs: &[YVector],
    ) -> Result<Self, WallError> {
        let g = xs.len();
        if ys.len() != g || zs.len() != g {
            return Err(WallError::Precondition(format!(
                "generator counts differ: {} x, {} y, {} z",
                g,
                ys.len(),
                zs.len()
            )));
        }
        if zs.iter().any(|z| !z.is_torsion()) {
            return Err(WallError::Precondition(
                "torsion generators must have zero free part".into(),
            ));
        }
        let mut lambda_matrix = vec![vec![0i64; g]; g];
        for (i, x) in xs.iter().enumerate() {
            for (j, y) in ys.iter().enumerate() {
                lambda_matrix[i][j] = p.lambda(x, y)?;
            }
        }
        let all: Vec<&YVector> = ys.iter().chain(zs).collect();
        let mut q_matrix = vec![vec![0u8; 2 * g]; 2 * g];
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                q_matrix[i][j] = p.qform(a, b)?;
            }
        }
        let alpha_gens = all.iter().map(|y| p.alpha(y)).collect::<Result<_, _>>()?;
        Ok(PairingPresentation {
            rank: g,
            lambda_matrix,
            q_matrix,
            alpha_gens,
        })
    }

    fn validate_shape(&self) -> Result<(), WallError> {
        let g = self.rank;
        let bad = |what: &str| {
            Err(WallError::Precondition(format!(
                "{what} has the wrong shape"
            )))
        };
        if self.lambda_matrix.len() != g || self.lambda_matrix.iter().any(|r| r.len() != g) {
            return bad("lambda_matrix");
        }
        if self.q_matrix.len() != 2 * g || self.q_matrix.iter().any(|r| r.len() != 2 * g) {
            return bad("q_matrix");
        }
        if self.alpha_gens.len() != 2 * g {
            return bad("alpha_gens");
        }
        if self
            .q_matrix
            .iter()
            .flatten()
            .chain(&self.alpha_gens)
            .any(|&b| b > 1)
        {
            return Err(WallError::Precondition(
                "q and α entries must be 0 or 1".into(),
            ));
        }
        for i in 0..2 * g {
            for j in 0..i {
                if self.q_matrix[i][j] != self.q_matrix[j][i] {
                    return Err(WallError::Precondition("q_matrix is not symmetric".into()));
                }
            }
        }
        Ok(())
    }

    /// q on presentation coordinates (bilinear, through mod 2).
    pub fn q(&self, a: &PresentedY, b: &PresentedY) -> u8 {
        let g = self.rank;
        let pa = parities(a);
        let pb = parities(b);
        let mut s = 0u8;
        for i in 0..2 * g {
            if pa[i] == 0 {
                continue;
            }
            for j in 0..2 * g {
                s ^= pb[j] & self.q_matrix[i][j];
            }
        }
        s
    }

    /// α via the summation formula: α(Σ n_k g_k) = Σ n_k α(g_k) +
    /// Σ_{k<l} n_k n_l q(g_k, g_l) + Σ_k C(n_k, 2) q(g_k, g_k), all mod 2.
    pub fn alpha(&self, a: &PresentedY) -> u8 {
        let g = self.rank;
        let n: Vec<i64> = a
            .free
            .iter()
            .copied()
            .chain(a.tor.iter().map(|&t| t as i64))
            .collect();
        let mut s = 0u8;
        for k in 0..2 * g {
            let nk = n[k];
            s ^= (nk & 1) as u8 & self.alpha_gens[k];
            let choose2 = (nk * (nk - 1) / 2) & 1;
            s ^= choose2 as u8 & self.q_matrix[k][k];
            for l in k + 1..2 * g {
                s ^= ((nk * n[l]) & 1) as u8 & self.q_matrix[k][l];
            }
        }
        s
    }

    pub fn lambda(&self, x: &[i64], y: &PresentedY) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.free.iter().enumerate() {
                s += xi * self.lambda_matrix[i][j] * yj;
            }
        }
        s
    }
}

fn parities(a: &PresentedY) -> Vec<u8> {
    a.free
        .iter()
        .map(|f| (f & 1) as u8)
        .chain(a.tor.iter().map(|t| t & 1))
        .collect()
}

fn not_wall(msg: impl Into<String>) -> WallError {
    WallError::NotWallPairing(msg.into())
}

/// Finds bases of X and Y in which the presentation takes the standard
/// closed forms, or explains why it is not a Wall pairing.
pub fn standardize(pres: &PairingPresentation) -> Result<StandardizeWitness, WallError> {
    pres.validate_shape()?;
    let g = pres.rank;
    let q = &pres.q_matrix;

    // (1) λ must be perfect.
    let lam = IntMatrix::from_rows_with_cols(&pres.lambda_matrix, g)?;
    let lam_inv = match unimodular_inverse(&lam) {
        Ok(m) => m,
        Err(LatticeError::Precondition(_)) => {
            return Err(not_wall(
                "lambda_matrix is not unimodular, so λ is not perfect",
            ))
        }
        Err(e) => return Err(e.into()),
    };

    // Structural constraints that hold in every Wall pairing.
    for i in 0..2 * g {
        if q[i][i] != 0 {
            return Err(not_wall(format!("q(g, g) ≠ 0 on generator {}", i + 1)));
        }
    }
    for i in g..2 * g {
        for j in g..2 * g {
            if q[i][j] != 0 {
                return Err(not_wall("q is nonzero between torsion generators"));
            }
        }
        if pres.alpha_gens[i] != 0 {
            return Err(not_wall(format!(
                "α is nonzero on torsion generator {}",
                i - g + 1
            )));
        }
    }

    // (2) Torsion corrections y_i = b_i + Σ_j S_ij c_j with α(y_i) = 0 and
    // q(y_i, y_l) = 0. With Q_ij = q(b_i, c_j) and T = Q·Sᵀ these read
    // T_ii = α(b_i) and T_il + T_li = q(b_i, b_l); take T upper triangular.
    let qbc: Vec<Vec<u8>> = (0..g)
        .map(|i| (0..g).map(|j| q[i][g + j]).collect())
        .collect();
    let qbc_inv = inverse_mod2(&qbc)
        .ok_or_else(|| not_wall("q pairs the torsion degenerately with the free generators"))?;
    let t: Vec<Vec<u8>> = (0..g)
        .map(|i| {
            (0..g)
                .map(|l| match i.cmp(&l) {
                    std::cmp::Ordering::Equal => pres.alpha_gens[i],
                    std::cmp::Ordering::Less => q[i][l],
                    std::cmp::Ordering::Greater => 0,
                })
                .collect()
        })
        .collect();
    let st = mul_mod2(&qbc_inv, &t); // Sᵀ
    let y_torsion: Vec<Vec<u8>> = (0..g).map(|i| (0..g).map(|j| st[j][i]).collect()).collect();

    // (3) λ-dual basis of X: rows of Λ^{-1}.
    let x_basis = lam_inv.to_i64_rows().map_err(WallError::from)?;

    // (4) q-dual torsion basis: D = (Qᵀ)^{-1}, i.e. row j of D is column j
    // of Q^{-1}.
    let z_basis: Vec<Vec<u8>> = (0..g)
        .map(|j| (0..g).map(|m| qbc_inv[m][j]).collect())
        .collect();

    let w = StandardizeWitness {
        x_basis,
        y_torsion,
        z_basis,
    };
    // (5) Re-check conditions i–iii in the presentation's own terms.
    verify_witness(pres, &w).map_err(WallError::Internal)?;
    Ok(w)
}

fn mul_mod2(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(0u8, |s, k| s ^ (a[i][k] & b[k][j])))
                .collect()
        })
        .collect()
}

/// Checks that the witness bases satisfy conditions i–iii.
pub fn verify_witness(pres: &PairingPresentation, w: &StandardizeWitness) -> Result<(), String> {
    let g = pres.rank;
    let ys: Vec<PresentedY> = (0..g)
        .map(|i| {
            let mut free = vec![0; g];
            free[i] = 1;
            PresentedY {
                free,
                tor: w.y_torsion[i].clone(),
            }
        })
        .collect();
    let zs: Vec<PresentedY> = (0..g)
        .map(|i| PresentedY {
            free: vec![0; g],
            tor: w.z_basis[i].clone(),
        })
        .collect();
    for i in 0..g {
        for j in 0..g {
            let d = i64::from(i == j);
            if pres.lambda(&w.x_basis[i], &ys[j]) != d {
                return Err(format!("λ(x{}, y{}) ≠ δ", i + 1, j + 1));
            }
            if pres.lambda(&w.x_basis[i], &zs[j]) != 0 {
                return Err(format!("λ(x{}, z{}) ≠ 0", i + 1, j + 1));
            }
            if pres.q(&ys[i], &zs[j]) != d as u8 || pres.q(&zs[j], &ys[i]) != d as u8 {
                return Err(format!("q(y{}, z{}) ≠ δ", i + 1, j + 1));
            }
            if pres.q(&ys[i], &ys[j]) != 0 || pres.q(&zs[i], &zs[j]) != 0 {
                return Err(format!("q vanishing fails at ({}, {})", i + 1, j + 1));
            }
        }
        if pres.alpha(&ys[i]) != 0 || pres.alpha(&zs[i]) != 0 {
            return Err(format!("α(y{0}) or α(z{0}) is nonzero", i + 1));
        }
    }
    let xdet = IntMatrix::from_rows_with_cols(&w.x_basis, g)
        .and_then(|m| m.determinant())
        .map_err(|e| e.to_string())?;
    if !xdet.is_unit() {
        return Err("x basis is not unimodular".into());
    }
    if inverse_mod2(&w.z_basis).is_none() {
        return Err("z basis is not a basis of the torsion".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_presentation_gives_identity() {
        for g in 0..=3 {
            let w = standardize(&PairingPresentation::standard(g)).unwrap();
            assert!(w.is_identity(), "g = {g}");
        }
    }

    #[test]
    fn rebased_x_is_undone() {
        let p = StandardWallPairing::new(2);
        let xs = vec![XVector::new(vec![1, 1]), XVector::basis(2, 1)];
        let ys = vec![YVector::y(2, 0), YVector::y(2, 1)];
        let zs = vec![YVector::z(2, 0), YVector::z(2, 1)];
        let pres = PairingPresentation::from_generators(&p, &xs, &ys, &zs).unwrap();
        let w = standardize(&pres).unwrap();
        assert_eq!(w.x_basis, vec![vec![1, -1], vec![0, 1]]);
    }

    #[test]
    fn torsion_twisted_free_generators_are_corrected() {
        // b_1 = y1 + z2 and b_2 = y2 pair to 1 under q.
        let p = StandardWallPairing::new(2);
        let xs = vec![XVector::basis(2, 0), XVector::basis(2, 1)];
        let ys = vec![YVector::y(2, 0).add(&YVector::z(2, 1)), YVector::y(2, 1)];
        let zs = vec![YVector::z(2, 0), YVector::z(2, 1)];
        let pres = PairingPresentation::from_generators(&p, &xs, &ys, &zs).unwrap();
        assert_eq!(pres.q_matrix[0][1], 1);
        let w = standardize(&pres).unwrap();
        assert!(!w.is_identity());
    }

    #[test]
    fn imperfect_lambda_is_rejected() {
        let mut pres = PairingPresentation::standard(2);
        pres.lambda_matrix = vec![vec![2, 0], vec![0, 1]];
        assert!(matches!(
            standardize(&pres),
            Err(WallError::NotWallPairing(_))
        ));
    }

    #[test]
    fn alpha_on_torsion_is_rejected() {
        let mut pres = PairingPresentation::standard(1);
        pres.alpha_gens[1] = 1;
        assert!(matches!(
            standardize(&pres),
            Err(WallError::NotWallPairing(_))
        ));
    }
}
