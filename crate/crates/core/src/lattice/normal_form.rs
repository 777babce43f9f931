//! Hermite and Smith normal forms over ℤ.
//!
//! Both reductions pick the nonzero entry of least absolute value as pivot
//! (ties broken by row, then column) and reduce with nearest-integer
//! quotients, which keeps intermediate entries close to the input size on
//! the sparse ±1 matrices produced by boundary operators.

use serde::Serialize;

use super::{Int, IntMatrix};

/// `left * m * right` is diagonal with `invariant_factors` (then zeros) on
/// the diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct SmithDecomposition {
    pub invariant_factors: Vec<Int>,
    pub left_transform: IntMatrix,
    pub right_transform: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<Int> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular,
/// `u * m = h`, `h` in row echelon form with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).cmp_abs(h.get(b, c)).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            found = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_round(h.get(r, c));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let (q, _) = h.get(i, c).div_mod_floor(&pivot);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(i, r, &k);
                u.add_row_multiple(i, r, &k);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form with unimodular transforms.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows());
    let mut right = IntMatrix::identity(m.cols());
    let factors = diagonalize(&mut a, Some(&mut left), Some(&mut right));
    SmithDecomposition {
        invariant_factors: factors,
        left_transform: left,
        right_transform: right,
    }
}

/// Invariant factors only (nonzero ones, in divisibility order).
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let mut a = m.clone();
    diagonalize(&mut a, None, None)
}

fn min_abs_in_block(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if v.cmp_abs(a.get(bi, bj)) != std::cmp::Ordering::Less => {}
                _ => {
                    if v.is_unit() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

fn diagonalize(
    a: &mut IntMatrix,
    mut left: Option<&mut IntMatrix>,
    mut right: Option<&mut IntMatrix>,
) -> Vec<Int> {
    let n = a.rows().min(a.cols());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_abs_in_block(a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        if let Some(l) = left.as_deref_mut() {
            l.swap_rows(t, pi);
        }
        a.swap_cols(t, pj);
        if let Some(r) = right.as_deref_mut() {
            r.swap_cols(t, pj);
        }
        loop {
            for i in t + 1..a.rows() {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_round(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                if let Some(l) = left.as_deref_mut() {
                    l.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..a.cols() {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_round(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                if let Some(r) = right.as_deref_mut() {
                    r.add_col_multiple(j, t, &q);
                }
            }
            // A nonzero remainder is smaller than the pivot: move it in.
            let col_rest = (t + 1..a.rows()).find(|&i| !a.get(i, t).is_zero());
            let row_rest = (t + 1..a.cols()).find(|&j| !a.get(t, j).is_zero());
            if let Some(i) = col_rest {
                let best = (t + 1..a.rows())
                    .filter(|&k| !a.get(k, t).is_zero())
                    .min_by(|&x, &y| a.get(x, t).cmp_abs(a.get(y, t)).then(x.cmp(&y)))
                    .unwrap_or(i);
                a.swap_rows(t, best);
                if let Some(l) = left.as_deref_mut() {
                    l.swap_rows(t, best);
                }
                continue;
            }
            if let Some(j) = row_rest {
                let best = (t + 1..a.cols())
                    .filter(|&k| !a.get(t, k).is_zero())
                    .min_by(|&x, &y| a.get(t, x).cmp_abs(a.get(t, y)).then(x.cmp(&y)))
                    .unwrap_or(j);
                a.swap_cols(t, best);
                if let Some(r) = right.as_deref_mut() {
                    r.swap_cols(t, best);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let pivot = a.get(t, t).clone();
            let offender = if pivot.is_unit() {
                None
            } else {
                (t + 1..a.rows()).find(|&i| (t + 1..a.cols()).any(|j| !pivot.divides(a.get(i, j))))
            };
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &Int::ONE);
                    if let Some(l) = left.as_deref_mut() {
                        l.add_row_multiple(t, i, &Int::ONE);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some(l) = left.as_deref_mut() {
                l.negate_row(t);
            }
        }
        factors.push(a.get(t, t).clone());
        t += 1;
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&v).unwrap()
    }

    #[test]
    fn hnf_identity_and_zero() {
        let (h, u) = hnf(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hnf(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_example() {
        let a = m(&[&[2, 4], &[1, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        assert!(u.determinant().unwrap().is_unit());
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            invariant_factors(&m(&[&[2, 0], &[0, 3]])),
            vec![Int::from(1), Int::from(6)]
        );
        assert_eq!(
            invariant_factors(&m(&[&[2, 0], &[0, 0]])),
            vec![Int::from(2)]
        );
        assert_eq!(
            invariant_factors(&IntMatrix::identity(3)),
            vec![Int::ONE; 3]
        );
        let d = snf(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            d.invariant_factors,
            vec![Int::from(2), Int::from(6), Int::from(12)]
        );
    }

    #[test]
    fn snf_transforms_diagonalize() {
        let a = m(&[&[4, 6, 2], &[2, 8, 0]]);
        let d = snf(&a);
        let prod = d
            .left_transform
            .mul(&a)
            .unwrap()
            .mul(&d.right_transform)
            .unwrap();
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expect = if i == j && i < d.rank() {
                    d.invariant_factors[i].clone()
                } else {
                    Int::ZERO
                };
                assert_eq!(prod.get(i, j), &expect);
            }
        }
    }
}
