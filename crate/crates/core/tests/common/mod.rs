#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_gcs::forms::{Coords, Form, PQForm, Poly};
use torus_gcs::linalg::{ratio, CScalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly<R: Rng>(rng: &mut R, nvars: usize) -> Poly {
    let terms = rng.random_range(0..=3);
    Poly::from_terms(
        nvars,
        (0..terms).map(|_| {
            let mut e = vec![0u32; nvars + 1];
            for _ in 0..rng.random_range(0..=2) {
                e[rng.random_range(0..nvars)] += 1;
            }
            let c = CScalar::new(ratio(rng.random_range(-4..=4), rng.random_range(1..=3)), ratio(rng.random_range(-2..=2), 1));
            (e, c)
        }),
    )
}

fn gens<R: Rng>(rng: &mut R, total: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..total).collect();
    (0..k).map(|_| all.swap_remove(rng.random_range(0..all.len()))).collect()
}

/// A random homogeneous `k`-form with a few terms.
pub fn form<R: Rng>(rng: &mut R, n: usize, k: usize) -> Form {
    let mut f = Form::zero(n, Coords::Torus);
    for _ in 0..3 {
        let g = gens(rng, 2 * n, k);
        f = f.add(&Form::term(n, Coords::Torus, g, poly(rng, 2 * n)));
    }
    f
}

/// A random pure `(p, q)`-form.
pub fn pq_form<R: Rng>(rng: &mut R, n: usize, p: usize, q: usize) -> PQForm {
    let mut f = PQForm::zero(n);
    for _ in 0..2 {
        let mut g = gens(rng, n, p);
        g.extend(gens(rng, n, q).into_iter().map(|v| v + n));
        f = f.add(&PQForm::term(n, g, poly(rng, 2 * n)));
    }
    f
}
