//! Symbolic exterior calculus on ℝ²ⁿ with polynomial coefficients, plus the
//! Dolbeault change of frame relative to a period matrix.
//!
//! With `dz = dx + T dy` and `dz̄ = dx + T̄ dy`, and `D = (T − T̄)⁻¹`, the
//! inverse substitution is `dx = −T̄D dz + TD dz̄` and `dy = D dz − D dz̄`.

mod form;
mod poly;

pub use form::{Coords, Form, Half, PQForm};
pub use poly::{Monomial, Poly};

use form::Ext;
use thiserror::Error;

use crate::linalg::{CMatrix, PeriodMatrix};
use crate::section::AffineSection;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("forms live on different coordinate systems")]
    CoordinateMismatch,
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// The 1-form `Σ_l (m₀)_{kl} e_l + (m₁)_{kl} e_{n+l}` for each row `k`.
fn rows_as_one_forms(m0: &CMatrix, m1: &CMatrix) -> Vec<Ext> {
    let n = m0.rows();
    (0..n)
        .map(|k| {
            let mut f = PQForm::zero(n);
            for l in 0..n {
                f = f.add(&PQForm::term(n, vec![l], Poly::constant(2 * n, m0[(k, l)].clone())));
                f = f.add(&PQForm::term(n, vec![n + l], Poly::constant(2 * n, m1[(k, l)].clone())));
            }
            f.ext().clone()
        })
        .collect()
}

fn check_dim(n: usize, p: &PeriodMatrix) -> Result<(), FormError> {
    if n != p.n() {
        return Err(FormError::DimensionMismatch { expected: p.n(), found: n });
    }
    Ok(())
}

/// Rewrite a torus form in the Dolbeault frame.
pub fn pq_split(f: &Form, p: &PeriodMatrix) -> Result<PQForm, FormError> {
    if f.coords() != Coords::Torus {
        return Err(FormError::CoordinateMismatch);
    }
    check_dim(f.n(), p)?;
    let d = p.dbar_matrix();
    let t = p.t();
    let dx = rows_as_one_forms(&-&(&t.conj() * &d), &(t * &d));
    let dy = rows_as_one_forms(&d, &-&d);
    let images: Vec<Ext> = dx.into_iter().chain(dy).collect();
    Ok(PQForm::from_ext(f.ext().pullback(&images, p.n(), Poly::clone)))
}

/// Back-substitute `dz = dx + T dy`, `dz̄ = dx + T̄ dy`.
pub fn to_real(f: &PQForm, p: &PeriodMatrix) -> Result<Form, FormError> {
    check_dim(f.n(), p)?;
    let n = p.n();
    let id = CMatrix::identity(n);
    let dz = rows_as_one_forms(&id, p.t());
    let dzb = rows_as_one_forms(&id, &p.t().conj());
    let images: Vec<Ext> = dz.into_iter().chain(dzb).collect();
    Ok(Form::from_ext(Coords::Torus, f.ext().pullback(&images, n, Poly::clone)))
}

/// `∂̄` on the Dolbeault side: for each `(p, q)` component take the
/// `(p, q + 1)` part of `d`.
pub fn dbar(f: &PQForm, p: &PeriodMatrix) -> Result<PQForm, FormError> {
    let mut out = PQForm::zero(f.n());
    for (bp, bq) in f.bidegrees() {
        let real = to_real(&f.component(bp, bq), p)?;
        let split = pq_split(&real.d(), p)?;
        out = out.add(&split.component(bp, bq + 1));
    }
    Ok(out)
}

/// Pull a mirror-side form back to the graph `y̌ = a x̌ + c`.
pub fn restrict_to_graph(f: &Form, s: &AffineSection) -> Result<Form, FormError> {
    if f.coords() != Coords::Mirror {
        return Err(FormError::CoordinateMismatch);
    }
    let n = f.n();
    if s.n() != n {
        return Err(FormError::DimensionMismatch { expected: n, found: s.n() });
    }
    let nv = 2 * n;
    let coords: Vec<Poly> = (0..n).map(|k| Poly::var(nv, k)).chain(s.values(nv)).collect();
    let zero = CMatrix::zeros(n, n);
    let dx = rows_as_one_forms(&CMatrix::identity(n), &zero);
    let dy = rows_as_one_forms(s.a(), &zero);
    let images: Vec<Ext> = dx.into_iter().chain(dy).collect();
    Ok(Form::from_ext(Coords::Mirror, f.ext().pullback(&images, n, |p| p.substitute(&coords))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, validate_period, CScalar};

    fn period(re: &[&[i64]], im: &[&[i64]]) -> PeriodMatrix {
        validate_period(CMatrix::from_parts(&CMatrix::from_ints(re), &CMatrix::from_ints(im)).unwrap()).unwrap()
    }

    #[test]
    fn dx_splits_evenly_for_t_equal_i() {
        let p = period(&[&[0]], &[&[1]]);
        let f = Form::basis(1, Coords::Torus, Half::X, 0);
        let half = CScalar::real(ratio(1, 2));
        // Oracle: solve dz = dx + i dy, dz̄ = dx − i dy for dx.
        let expect = PQForm::dz(1, 0).add(&PQForm::dzbar(1, 0)).scale(&half);
        assert_eq!(pq_split(&f, &p).unwrap(), expect);
    }

    #[test]
    fn split_round_trip() {
        let p = period(&[&[1, 2], &[0, -1]], &[&[2, 1], &[1, 3]]);
        let nv = 4;
        let coeff = &Poly::var(nv, 0) * &Poly::var(nv, 3);
        let f = Form::term(2, Coords::Torus, vec![0, 3], coeff).add(&Form::basis(2, Coords::Torus, Half::Y, 0));
        let back = to_real(&pq_split(&f, &p).unwrap(), &p).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn real_two_form_bidegrees() {
        let p = period(&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 2]]);
        let a = CMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let f = Form::quadratic(Coords::Torus, Half::X, &a, Half::Y, &Poly::one(4));
        let split = pq_split(&f, &p).unwrap();
        assert!(split.bidegrees().iter().all(|&(a, b)| a + b == 2));
    }

    #[test]
    fn dbar_of_zbar_coordinate() {
        // z̄ = x − i y for T = i, so ∂̄z̄ = dz̄ and ∂̄z = 0.
        let p = period(&[&[0]], &[&[1]]);
        let zbar = &Poly::var(2, 0) - &Poly::var(2, 1).scale(&CScalar::i());
        let z = &Poly::var(2, 0) + &Poly::var(2, 1).scale(&CScalar::i());
        assert_eq!(dbar(&PQForm::function(zbar), &p).unwrap(), PQForm::dzbar(1, 0));
        assert!(dbar(&PQForm::function(z), &p).unwrap().is_zero());
    }

    #[test]
    fn restriction_needs_mirror_coordinates() {
        let s = AffineSection::new(CMatrix::from_ints(&[&[1]]), vec![ratio(0, 1)]).unwrap();
        let f = Form::basis(1, Coords::Torus, Half::X, 0);
        assert_eq!(restrict_to_graph(&f, &s), Err(FormError::CoordinateMismatch));
    }

    #[test]
    fn restriction_substitutes_graph() {
        let a = CMatrix::from_ints(&[&[2]]);
        let s = AffineSection::new(a, vec![ratio(1, 3)]).unwrap();
        // y̌ dy̌ restricts to (2x̌ + 1/3)·2 dx̌.
        let f = Form::term(1, Coords::Mirror, vec![1], Poly::var(2, 1));
        let got = restrict_to_graph(&f, &s).unwrap();
        let coeff = &Poly::var(2, 0).scale(&CScalar::from_int(4)) + &Poly::constant(2, CScalar::real(ratio(2, 3)));
        assert_eq!(got, Form::term(1, Coords::Mirror, vec![0], coeff));
    }
}
