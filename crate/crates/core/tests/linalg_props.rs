use proptest::prelude::*;
use torus_gcs::linalg::{ratio, CMatrix, CScalar};
use torus_gcs::sample;

mod common;

fn entry() -> impl Strategy<Value = CScalar> {
    (-5i64..=5, 1i64..=4, -3i64..=3).prop_map(|(a, b, c)| CScalar::new(ratio(a, b), ratio(c, 1)))
}

fn square(n: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(entry(), n * n).prop_map(move |v| CMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn pair() -> impl Strategy<Value = (CMatrix, CMatrix)> {
    (1usize..=3).prop_flat_map(|n| (square(n), square(n)))
}

proptest! {
    #[test]
    fn transpose_reverses_products((a, b) in pair()) {
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn inverse_is_two_sided(a in (1usize..=3).prop_flat_map(square)) {
        if let Ok(inv) = a.inverse() {
            let id = CMatrix::identity(a.rows());
            prop_assert_eq!(&inv * &a, id.clone());
            prop_assert_eq!(&a * &inv, id);
        } else {
            prop_assert_eq!(a.det().unwrap(), CScalar::default());
        }
    }

    #[test]
    fn det_is_multiplicative((a, b) in pair()) {
        prop_assert_eq!((&a * &b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn y_plus_x_yinv_x_is_invertible(seed in any::<u64>(), n in 1usize..=3) {
        let p = sample::period(&mut common::rng(seed), n);
        prop_assert!(p.y_plus_xyx().det().unwrap() != CScalar::default());
    }
}
