use proptest::prelude::*;
use torus_gcs::gcs::{b_transform, build_it, closed_form_parts, explicit_mirror_matrix, extract_mirror_data, factorization_holds, mirror, BField};
use torus_gcs::linalg::{CMatrix, CScalar};
use torus_gcs::sample;

mod common;

/// `[[0, I], [I, 0]]` built entrywise.
fn pairing_oracle(n: usize) -> CMatrix {
    CMatrix::from_fn(4 * n, 4 * n, |i, j| if i.abs_diff(j) == 2 * n { CScalar::from_int(1) } else { CScalar::default() })
}

/// Permutation matrix of the frame swap `∂y ↔ dy`.
fn swap_oracle(n: usize) -> CMatrix {
    let image = |i: usize| match i / n {
        1 => i + 2 * n,
        3 => i - 2 * n,
        _ => i,
    };
    CMatrix::from_fn(4 * n, 4 * n, |i, j| if image(i) == j { CScalar::from_int(1) } else { CScalar::default() })
}

fn dims() -> impl Iterator<Item = usize> {
    (0..).map(|k| 1 + k % 3)
}

#[test]
fn structures_satisfy_the_axioms() {
    let mut r = common::rng(100);
    for n in dims().take(100) {
        let p = sample::period(&mut r, n);
        let j = build_it(&p);
        let jm = j.matrix();
        assert_eq!(jm * jm, -CMatrix::identity(4 * n));
        let pr = pairing_oracle(n);
        assert_eq!(&(&jm.transpose() * &pr) * jm, pr);
        assert!(j.satisfies_axioms());
    }
}

#[test]
fn mirror_is_an_involution_and_matches_the_swap() {
    let mut r = common::rng(100);
    for n in dims().take(100) {
        let j = build_it(&sample::period(&mut r, n));
        let m = mirror(&j);
        assert_eq!(mirror(&m), j);
        let s = swap_oracle(n);
        assert_eq!(m.matrix(), &(&(&s * j.matrix()) * &s));
        assert!(m.satisfies_axioms());
    }
}

#[test]
fn mirror_intertwines_tau_shear() {
    let mut r = common::rng(200);
    for n in dims().take(50) {
        let p = sample::period(&mut r, n);
        let tau = sample::tau(&mut r, n, false);
        let b = BField::tau(&tau).unwrap();
        let j = build_it(&p);
        let lhs = mirror(&b_transform(&j, &b).unwrap());
        let rhs = b_transform(&mirror(&j), &b).unwrap();
        assert_eq!(lhs, rhs);
        // Written out: only the dx̌ row picks up −τ on the left and +τ on the right.
        let m = mirror(&j).matrix().clone();
        let zeros = CMatrix::zeros(n, n);
        let id = CMatrix::identity(n);
        let shear = |t: &CMatrix| {
            CMatrix::from_blocks(&[
                vec![id.clone(), zeros.clone(), zeros.clone(), zeros.clone()],
                vec![zeros.clone(), id.clone(), zeros.clone(), zeros.clone()],
                vec![t.clone(), zeros.clone(), id.clone(), zeros.clone()],
                vec![zeros.clone(), zeros.clone(), zeros.clone(), id.clone()],
            ])
            .unwrap()
        };
        assert_eq!(lhs.matrix(), &(&(&shear(&-&tau) * &m) * &shear(&tau)));
    }
}

#[test]
fn rigidity() {
    let mut r = common::rng(300);
    for n in dims().take(20) {
        let j = build_it(&sample::period(&mut r, n));
        let zero = BField::tau(&CMatrix::zeros(n, n)).unwrap();
        assert_eq!(b_transform(&j, &zero).unwrap(), j);
    }
    for k in 0..50 {
        let n = 2 + k % 2;
        let j = build_it(&sample::period(&mut r, n));
        let tau = sample::nonzero_tau(&mut r, n);
        assert_ne!(b_transform(&j, &BField::tau(&tau).unwrap()).unwrap(), j);
    }
}

#[test]
fn closed_forms_and_factorization() {
    let mut r = common::rng(400);
    for n in dims().take(50) {
        let p = sample::period(&mut r, n);
        assert!(factorization_holds(&p));
        assert_eq!(&explicit_mirror_matrix(&p), mirror(&build_it(&p)).matrix());
        let (re, im) = closed_form_parts(&p).unwrap();
        let w = CMatrix::from_parts(&re, &im).unwrap();
        // Oracle: −(T⁻¹)ᵗ is characterised by W·(−Tᵗ) = I.
        assert_eq!(&w * &-p.t().transpose(), CMatrix::identity(n));
        let data = extract_mirror_data(&p, &CMatrix::zeros(n, n)).unwrap();
        assert_eq!((data.b_mat, data.omega_mat), (re, im));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn b_transforms_compose_additively(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = common::rng(seed);
        let j = build_it(&sample::period(&mut r, n));
        let (t1, t2) = (sample::tau(&mut r, n, false), sample::tau(&mut r, n, false));
        let b1 = BField::tau(&t1).unwrap();
        let b2 = BField::tau(&t2).unwrap();
        let sum = BField::tau(&(&t1 + &t2)).unwrap();
        let twice = b_transform(&b_transform(&j, &b1).unwrap(), &b2).unwrap();
        prop_assert_eq!(twice, b_transform(&j, &sum).unwrap());
        prop_assert!(b_transform(&j, &b1).unwrap().satisfies_axioms());
    }
}
