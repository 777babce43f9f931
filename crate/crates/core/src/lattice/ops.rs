//! Unimodularity, basis completion, integer solving and kernels.

use super::normal_form::{hnf, invariant_factors, snf, SmithDecomposition};
use super::{Int, IntMatrix, LatticeError};

fn vectors_to_matrix(vs: &[Vec<i64>], g: usize) -> Result<IntMatrix, LatticeError> {
    for v in vs {
        if v.len() != g {
            return Err(LatticeError::Dimension(format!(
                "vector of length {} in ambient rank {g}",
                v.len()
            )));
        }
    }
    IntMatrix::from_rows_with_cols(vs, g)
}

/// True iff the vectors are independent and span a direct summand of ℤ^g,
/// i.e. every invariant factor of their row matrix is 1 and there are as
/// many factors as vectors.
pub fn is_unimodular_sequence(vs: &[Vec<i64>], g: usize) -> Result<bool, LatticeError> {
    let m = vectors_to_matrix(vs, g)?;
    if vs.len() > g {
        return Ok(false);
    }
    let f = invariant_factors(&m);
    Ok(f.len() == vs.len() && f.iter().all(Int::is_one))
}

/// Extends a unimodular sequence to a ℤ-basis of ℤ^g.
pub fn complete_to_basis(vs: &[Vec<i64>], g: usize) -> Result<Vec<Vec<i64>>, LatticeError> {
    if !is_unimodular_sequence(vs, g)? {
        return Err(LatticeError::Precondition(
            "sequence is not unimodular".into(),
        ));
    }
    let k = vs.len();
    if k == g {
        return Ok(Vec::new());
    }
    let m = vectors_to_matrix(vs, g)?;
    // L m R = [I | 0], so the rows of R^{-1} past the k-th complete m.
    let d = snf(&m);
    let r_inv = unimodular_inverse(&d.right_transform)?;
    let mut out = Vec::with_capacity(g - k);
    for i in k..g {
        out.push(
            r_inv
                .row(i)
                .iter()
                .map(|v| v.to_i64().ok_or(LatticeError::Overflow))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(out)
}

/// Inverse of a unimodular matrix via its Hermite form (which is I).
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    if m.rows() != m.cols() {
        return Err(LatticeError::Dimension(
            "inverse of non-square matrix".into(),
        ));
    }
    let (h, u) = hnf(m);
    if h != IntMatrix::identity(m.rows()) {
        return Err(LatticeError::Precondition(
            "matrix is not unimodular".into(),
        ));
    }
    Ok(u)
}

/// A cached Smith decomposition for repeated solves against one matrix.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    rows: usize,
    cols: usize,
    decomposition: SmithDecomposition,
}

impl IntegerSolver {
    pub fn new(m: &IntMatrix) -> Self {
        IntegerSolver {
            rows: m.rows(),
            cols: m.cols(),
            decomposition: snf(m),
        }
    }

    pub fn decomposition(&self) -> &SmithDecomposition {
        &self.decomposition
    }

    /// Some `x` with `m x = b`, or `None` when no integer solution exists.
    pub fn solve(&self, b: &[Int]) -> Result<Option<Vec<Int>>, LatticeError> {
        if b.len() != self.rows {
            return Err(LatticeError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let d = &self.decomposition;
        let lb = d.left_transform.mul_vec(b)?;
        let r = d.rank();
        let mut y = vec![Int::ZERO; self.cols];
        for (i, v) in lb.iter().enumerate() {
            if i < r {
                let f = &d.invariant_factors[i];
                if !f.divides(v) {
                    return Ok(None);
                }
                y[i] = v.div_exact(f);
            } else if !v.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(d.right_transform.mul_vec(&y)?))
    }

    /// Basis of the integer kernel: the columns of R past the rank.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        let d = &self.decomposition;
        (d.rank()..self.cols)
            .map(|j| d.right_transform.column(j))
            .collect()
    }
}

pub fn solve_integer(m: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>, LatticeError> {
    IntegerSolver::new(m).solve(b)
}

/// Basis of `{ v : m v = 0 }`; always a direct summand.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<Int>> {
    IntegerSolver::new(m).kernel_basis()
}

/// `i64` convenience wrapper around [`kernel_basis`].
pub fn kernel_basis_i64(m: &IntMatrix) -> Result<Vec<Vec<i64>>, LatticeError> {
    kernel_basis(m)
        .into_iter()
        .map(|v| {
            v.iter()
                .map(|x| x.to_i64().ok_or(LatticeError::Overflow))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular_sequence(&[vec![1, 0]], 2).unwrap());
        assert!(!is_unimodular_sequence(&[vec![2, 0]], 2).unwrap());
        assert!(is_unimodular_sequence(&[vec![1, 0], vec![0, 1]], 2).unwrap());
        assert!(!is_unimodular_sequence(&[vec![1, 1], vec![2, 2]], 2).unwrap());
        assert!(is_unimodular_sequence(&[], 3).unwrap());
        assert!(is_unimodular_sequence(&[vec![1, 0], vec![0]], 2).is_err());
    }

    #[test]
    fn completion_examples() {
        assert_eq!(
            complete_to_basis(&[vec![1, 0]], 2).unwrap(),
            vec![vec![0, 1]]
        );
        assert!(complete_to_basis(&[vec![1, 0], vec![0, 1]], 2)
            .unwrap()
            .is_empty());
        let c = complete_to_basis(&[vec![1, 1]], 2).unwrap();
        let det = IntMatrix::from_rows(&[vec![1i64, 1], c[0].clone()])
            .unwrap()
            .determinant()
            .unwrap();
        assert!(det.is_unit());
        assert!(complete_to_basis(&[vec![2, 0]], 2).is_err());
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(
            solve_integer(&id, &ints(&[4, -1, 7])).unwrap(),
            Some(ints(&[4, -1, 7]))
        );
        let two = IntMatrix::from_rows(&[[2i64]]).unwrap();
        assert_eq!(solve_integer(&two, &ints(&[3])).unwrap(), None);
        assert_eq!(solve_integer(&two, &ints(&[4])).unwrap(), Some(ints(&[2])));
        assert!(solve_integer(&two, &ints(&[1, 2])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&IntMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 2)).len(), 2);
        let k = kernel_basis(&IntMatrix::from_rows(&[[1i64, 1]]).unwrap());
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = k[0].iter().map(|x| x.to_i64().unwrap()).collect();
        assert!(v == vec![1, -1] || v == vec![-1, 1]);
    }
}
