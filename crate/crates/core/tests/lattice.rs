use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use wallcx::lattice::{
    hnf, invariant_factors, is_unimodular_sequence, snf, solve_integer, Int, IntMatrix,
    SparseIntMatrix,
};

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, rows * cols)
        .prop_map(move |v| IntMatrix::from_fn(rows, cols, |i, j| Int::from(v[i * cols + j])))
}

fn sized_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

fn is_diagonal_with(m: &IntMatrix, d: &[Int]) -> bool {
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            let want = if i == j && i < d.len() {
                d[i].clone()
            } else {
                Int::ZERO
            };
            *m.get(i, j) == want
        })
    })
}

proptest! {
    #[test]
    fn int_matches_bigint(a in any::<i64>(), b in any::<i64>()) {
        let (x, y) = (Int::from(a), Int::from(b));
        let (ba, bb) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!((x.clone() + y.clone()).to_big(), &ba + &bb);
        prop_assert_eq!((x.clone() - y.clone()).to_big(), &ba - &bb);
        prop_assert_eq!((x.clone() * y.clone()).to_big(), &ba * &bb);
        prop_assert_eq!((-x.clone()).to_big(), -ba.clone());
        // Promoted values demote when they fit again.
        let back = (x.clone() * y.clone() + x.clone()) - x.clone() * y;
        prop_assert_eq!(back, x);
    }

    #[test]
    fn snf_is_a_valid_decomposition(m in sized_matrix()) {
        let d = snf(&m);
        let prod = d.left_transform.mul(&m).unwrap().mul(&d.right_transform).unwrap();
        prop_assert!(is_diagonal_with(&prod, &d.invariant_factors));
        prop_assert!(d.left_transform.determinant().unwrap().is_unit());
        prop_assert!(d.right_transform.determinant().unwrap().is_unit());
        for w in d.invariant_factors.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert!(d.invariant_factors.iter().all(|f| f.signum() > 0));
        prop_assert_eq!(invariant_factors(&m), d.invariant_factors.clone());
        prop_assert_eq!(SparseIntMatrix::from_dense(&m).invariant_factors(), d.invariant_factors);
    }

    #[test]
    fn smith_product_is_determinant(m in (1usize..5).prop_flat_map(|n| matrix(n, n, 5))) {
        let det = m.determinant().unwrap();
        let f = invariant_factors(&m);
        let mut prod = BigInt::one();
        if f.len() < m.rows() {
            prod = BigInt::zero();
        } else {
            for x in &f {
                prod *= x.to_big();
            }
        }
        prop_assert_eq!(prod, det.abs().to_big());
    }

    #[test]
    fn hnf_is_echelon_and_unimodular(m in sized_matrix()) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(u.determinant().unwrap().is_unit());
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            let Some(p) = (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) else { continue };
            prop_assert!(last.is_none_or(|l| p > l), "pivots move right");
            prop_assert!(h.get(i, p).signum() > 0);
            for r in 0..i {
                let e = h.get(r, p);
                prop_assert!(e.signum() >= 0 && e < h.get(i, p));
            }
            last = Some(p);
        }
    }

    #[test]
    fn integer_solutions_check_out(m in sized_matrix(), x in prop::collection::vec(-4i64..=4, 5)) {
        let x: Vec<Int> = x[..m.cols()].iter().map(|&v| Int::from(v)).collect();
        let b = m.mul_vec(&x).unwrap();
        let sol = solve_integer(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
    }
}

#[test]
fn big_entries_survive_reduction() {
    let big = Int::from(i64::MAX);
    let m = IntMatrix::from_fn(2, 2, |i, j| {
        if i == j {
            big.clone() * big.clone()
        } else {
            Int::ZERO
        }
    });
    let f = invariant_factors(&m);
    assert_eq!(f.len(), 2);
    assert_eq!(
        f[0].to_big(),
        BigInt::from(i64::MAX) * BigInt::from(i64::MAX)
    );
    assert!(f[0].to_i64().is_none());
}

#[test]
fn unimodularity_of_sequences() {
    assert!(is_unimodular_sequence(&[vec![1, 2, 3], vec![0, 1, 5]], 3).unwrap());
    assert!(!is_unimodular_sequence(&[vec![2, 0, 0]], 3).unwrap());
    assert!(!is_unimodular_sequence(&[vec![1, 1, 0], vec![1, -1, 0]], 3).unwrap());
    assert!(is_unimodular_sequence(&[], 3).unwrap());
}
