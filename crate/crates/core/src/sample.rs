//! Seeded pseudorandom instances for property checks.
//!
//! Entries are small rationals so exact arithmetic stays cheap. The
//! integrable generator uses a symmetric integer `a` with `X = r₁a + r₀I`
//! and `Y = a² + dI`, which makes `aT` symmetric by construction.

use rand::Rng;

use crate::bundles::ComplexSideObject;
use crate::linalg::{rat, ratio, validate_period, CMatrix, PeriodMatrix, Rational};
use crate::section::AffineSection;

/// Numerator in `[-3, 3]`, denominator in `[1, 3]`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.random_range(-3..=3), rng.random_range(1..=3))
}

pub fn small_int_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> CMatrix {
    CMatrix::from_rationals(n, n, |_, _| rat(rng.random_range(-bound..=bound)))
}

/// `X` arbitrary, `Y = GᵗG + kI` with `k ≥ 1`.
pub fn period<R: Rng>(rng: &mut R, n: usize) -> PeriodMatrix {
    let x = CMatrix::from_rationals(n, n, |_, _| small_rational(rng));
    let g = CMatrix::from_rationals(n, n, |_, _| small_rational(rng));
    let k = rat(rng.random_range(1..=2));
    let y = &(&g.transpose() * &g) + &CMatrix::identity(n).scale(&k.into());
    validate_period(CMatrix::from_parts(&x, &y).expect("square")).expect("Y is positive definite")
}

/// Alternating `τ`; integral entries in `[-2, 2]` when `integral`, otherwise
/// small rationals.
pub fn tau<R: Rng>(rng: &mut R, n: usize, integral: bool) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = if integral { rat(rng.random_range(-2..=2)) } else { small_rational(rng) };
            m[(i, j)] = v.clone().into();
            m[(j, i)] = (-v).into();
        }
    }
    m
}

/// Alternating and nonzero; needs `n ≥ 2`.
pub fn nonzero_tau<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    assert!(n >= 2, "no nonzero alternating 1×1 matrix");
    loop {
        let t = tau(rng, n, false);
        if !t.is_zero() {
            return t;
        }
    }
}

pub fn rational_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

fn finish<R: Rng>(rng: &mut R, p: PeriodMatrix, a: CMatrix, tau: CMatrix) -> ComplexSideObject {
    let n = p.n();
    let s = AffineSection::new(a, rational_vec(rng, n)).expect("integer a");
    let q = rational_vec(rng, n);
    ComplexSideObject::new(p, s, q, tau).expect("consistent instance")
}

/// Generic instance; `a` is a random integer matrix, so usually non-integrable.
pub fn instance<R: Rng>(rng: &mut R, n: usize, integral_tau: bool) -> ComplexSideObject {
    let p = period(rng, n);
    let a = small_int_matrix(rng, n, 2);
    let t = tau(rng, n, integral_tau);
    finish(rng, p, a, t)
}

/// Instance with `aT` symmetric by construction.
pub fn integrable_instance<R: Rng>(rng: &mut R, n: usize, integral_tau: bool) -> ComplexSideObject {
    let g = small_int_matrix(rng, n, 2);
    let a = &g + &g.transpose();
    let p = integrable_period(rng, &a);
    let t = tau(rng, n, integral_tau);
    finish(rng, p, a, t)
}

/// A period matrix with `aT` symmetric, for a given symmetric `a`.
pub fn integrable_period<R: Rng>(rng: &mut R, a: &CMatrix) -> PeriodMatrix {
    let n = a.rows();
    let id = CMatrix::identity(n);
    let x = &a.scale(&small_rational(rng).into()) + &id.scale(&small_rational(rng).into());
    let y = &(a * a) + &id.scale(&rat(rng.random_range(1..=3)).into());
    validate_period(CMatrix::from_parts(&x, &y).expect("square")).expect("Y is positive definite")
}

/// Another object over the same `(T, τ)` with a different section.
pub fn companion<R: Rng>(rng: &mut R, o: &ComplexSideObject, a: CMatrix) -> ComplexSideObject {
    finish(rng, o.period().clone(), a, o.tau().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn integrable_instances_are_integrable() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3 {
            for _ in 0..10 {
                assert!(integrable_instance(&mut rng, n, false).integrable_matrix_test());
            }
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = instance(&mut ChaCha8Rng::seed_from_u64(9), 2, true);
        let b = instance(&mut ChaCha8Rng::seed_from_u64(9), 2, true);
        assert_eq!(a, b);
        assert!(a.tau().is_integer());
    }
}
