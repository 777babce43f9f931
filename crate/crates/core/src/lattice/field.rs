//! Ranks over ℚ and ℤ/2, used as independent cross-checks of the integral
//! computations.

use super::{Int, IntMatrix, SparseIntMatrix};

/// Rank over ℚ by fraction-free elimination.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut prev = Int::ONE;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        let pivot = a.get(rank, c).clone();
        for i in rank + 1..rows {
            let lead = a.get(i, c).clone();
            for j in c..cols {
                let v = &(a.get(i, j) * &pivot) - &(&lead * a.get(rank, j));
                a.set(i, j, v.div_exact(&prev));
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank over ℤ/2 with packed bit rows.
pub fn rank_mod2(m: &SparseIntMatrix) -> usize {
    let words = m.cols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            let mut bits = vec![0u64; words];
            for (j, v) in m.row_entries(i) {
                if v.parity() == 1 {
                    bits[*j as usize / 64] |= 1 << (*j % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let (w, b) = (c / 64, c % 64);
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a square bit matrix over ℤ/2, if it exists.
pub fn inverse_mod2(m: &[Vec<u8>]) -> Option<Vec<Vec<u8>>> {
    let n = m.len();
    let mut a: Vec<Vec<u8>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u8> = r.iter().map(|x| x & 1).collect();
            row.extend((0..n).map(|j| u8::from(i == j)));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| a[i][c] == 1)?;
        a.swap(c, p);
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rank_mod2_dense(m: &[Vec<u8>], cols: usize) -> usize {
    let triplets = m.iter().enumerate().flat_map(|(i, r)| {
        r.iter()
            .enumerate()
            .filter(|(_, v)| **v & 1 == 1)
            .map(move |(j, _)| (i, j, Int::ONE))
    });
    SparseIntMatrix::from_triplets(m.len(), cols, triplets)
        .map(|s| rank_mod2(&s))
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_differ_on_two_torsion() {
        let m = IntMatrix::from_rows(&[[2i64, 0], [0, 1]]).unwrap();
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod2(&SparseIntMatrix::from_dense(&m)), 1);
    }

    #[test]
    fn mod2_inverse() {
        let m = vec![vec![1, 1], vec![0, 1]];
        let inv = inverse_mod2(&m).unwrap();
        assert_eq!(inv, vec![vec![1, 1], vec![0, 1]]);
        assert!(inverse_mod2(&[vec![1, 1], vec![1, 1]]).is_none());
        assert_eq!(inverse_mod2(&[]), Some(vec![]));
    }
}
