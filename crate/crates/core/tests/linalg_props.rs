use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use psw_core::linalg::{
    invariant_factors_by_minors, smith_normal_form, z2_solve, BitVec, IntegerMatrix, Z2Matrix,
};

fn int_matrix(max_dim: usize, max_abs: i64) -> impl Strategy<Value = IntegerMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-max_abs..=max_abs, r * c)
            .prop_map(move |data| IntegerMatrix::from_i64(r, c, &data))
    })
}

fn z2_matrix(max_dim: usize) -> impl Strategy<Value = Z2Matrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(0u8..=1, r * c).prop_map(move |bits| Z2Matrix::from_u8(r, c, &bits))
    })
}

fn is_unimodular(m: &IntegerMatrix) -> bool {
    m.determinant().abs() == BigInt::from(1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_reconstructs(a in int_matrix(6, 9)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(is_unimodular(&s.u));
        prop_assert!(is_unimodular(&s.v));
        prop_assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(a.cols()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let r = s.rank();
        for i in 0..r {
            prop_assert!(s.diag[i].is_positive());
            prop_assert_eq!(s.d.get(i, i), &s.diag[i]);
            if i + 1 < r {
                prop_assert!((&s.diag[i + 1] % &s.diag[i]).is_zero());
            }
        }
        prop_assert!(s.diag[r..].iter().all(Zero::is_zero));
    }

    #[test]
    fn smith_form_matches_minors(a in int_matrix(4, 12)) {
        let s = smith_normal_form(&a);
        let r = s.rank();
        prop_assert_eq!(s.diag[..r].to_vec(), invariant_factors_by_minors(&a));
    }

    #[test]
    fn z2_solve_is_sound_and_complete(a in z2_matrix(12), seed in any::<u64>(), consistent in any::<bool>()) {
        let n = a.cols();
        let bits: Vec<bool> = (0..n).map(|i| (seed >> (i % 64)) & 1 == 1).collect();
        let b = if consistent {
            a.mul_vec(&BitVec::from_bools(&bits)).unwrap()
        } else {
            let rb: Vec<bool> = (0..a.rows()).map(|i| (seed >> ((i * 7) % 64)) & 1 == 1).collect();
            BitVec::from_bools(&rb)
        };
        match z2_solve(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
            None => {
                prop_assert!(!consistent);
                // b lies outside the column space: appending it raises the rank
                let mut cols: Vec<BitVec> = (0..n).map(|c| a.column(c)).collect();
                cols.push(b.clone());
                prop_assert_eq!(Z2Matrix::from_columns(&cols, a.rows()).rank(), a.rank() + 1);
            }
        }
    }

    #[test]
    fn z2_rank_nullity(a in z2_matrix(14)) {
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.mul_vec(v).unwrap().is_zero());
        }
    }
}

#[test]
fn minors_oracle_examples() {
    let a = IntegerMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
    assert_eq!(invariant_factors_by_minors(&a), vec![BigInt::from(2), BigInt::from(4)]);
    let z = IntegerMatrix::zeros(3, 2);
    assert!(invariant_factors_by_minors(&z).is_empty());
}
