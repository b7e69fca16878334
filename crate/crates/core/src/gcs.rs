//! Constant generalized complex structures on the torus.
//!
//! Matrices act on the frame `(∂/∂x, ∂/∂y, dx, dy)` of `T ⊕ T*`, which has
//! `4n` entries; all block arithmetic below uses `n`-blocks in that order.
//! The structure built from a period matrix is `diag(I_T, −I_Tᵗ)`.

use thiserror::Error;

use crate::forms::{Coords, Form, Half, Poly};
use crate::linalg::{alt_check, CMatrix, CScalar, LinalgError, PeriodMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcsError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("dimension mismatch: structure has n = {expected}, operand has n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a real alternating matrix")]
    NotAlternating(&'static str),
    #[error("{0} is not real")]
    NotReal(&'static str),
    #[error("matrix is not a generalized complex structure: {0}")]
    InvalidStructure(&'static str),
    #[error("internal identity failed: {0}")]
    InternalAssertion(&'static str),
}

/// Pairing `⟨X + ξ, Y + η⟩ = ξ(Y) + η(X)` as `[[0, I₂ₙ], [I₂ₙ, 0]]`.
pub fn pairing_matrix(n: usize) -> CMatrix {
    let z = CMatrix::zeros(2 * n, 2 * n);
    let i = CMatrix::identity(2 * n);
    CMatrix::from_blocks(&[vec![z.clone(), i.clone()], vec![i, z]]).expect("square blocks")
}

/// The involution exchanging the `∂/∂y` and `dy` blocks.
pub fn mirror_matrix(n: usize) -> CMatrix {
    let z = CMatrix::zeros(n, n);
    let i = CMatrix::identity(n);
    CMatrix::from_blocks(&[
        vec![i.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), i.clone()],
        vec![z.clone(), z.clone(), i.clone(), z.clone()],
        vec![z.clone(), i.clone(), z.clone(), z],
    ])
    .expect("square blocks")
}

fn check_axioms(n: usize, j: &CMatrix) -> Result<(), GcsError> {
    j.expect_shape(4 * n, 4 * n)?;
    if j * j != -CMatrix::identity(4 * n) {
        return Err(GcsError::InvalidStructure("J² ≠ −I"));
    }
    let p = pairing_matrix(n);
    if &(&j.transpose() * &p) * j != p {
        return Err(GcsError::InvalidStructure("J does not preserve the pairing"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCStructure {
    n: usize,
    j: CMatrix,
}

impl GCStructure {
    /// Validate `J² = −I` and `JᵗPJ = P`.
    pub fn new(n: usize, j: CMatrix) -> Result<Self, GcsError> {
        check_axioms(n, &j)?;
        Ok(Self { n, j })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.j
    }

    /// Re-check both invariants; always true for values built by this module.
    pub fn satisfies_axioms(&self) -> bool {
        check_axioms(self.n, &self.j).is_ok()
    }

    pub fn squares_to_minus_one(&self) -> bool {
        &self.j * &self.j == -CMatrix::identity(4 * self.n)
    }

    pub fn preserves_pairing(&self) -> bool {
        let p = pairing_matrix(self.n);
        &(&self.j.transpose() * &p) * &self.j == p
    }
}

/// `B = [[B₁, B₂], [−B₂ᵗ, B₃]]` with `B₁`, `B₃` alternating and all blocks real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BField {
    b1: CMatrix,
    b2: CMatrix,
    b3: CMatrix,
}

impl BField {
    pub fn new(b1: CMatrix, b2: CMatrix, b3: CMatrix) -> Result<Self, GcsError> {
        let n = b1.expect_square()?;
        b2.expect_shape(n, n)?;
        b3.expect_shape(n, n)?;
        if !b1.is_real() || !alt_check(&b1) {
            return Err(GcsError::NotAlternating("B1"));
        }
        if !b3.is_real() || !alt_check(&b3) {
            return Err(GcsError::NotAlternating("B3"));
        }
        if !b2.is_real() {
            return Err(GcsError::NotReal("B2"));
        }
        Ok(Self { b1, b2, b3 })
    }

    /// The B₁-type field carrying `τ`.
    pub fn tau(tau: &CMatrix) -> Result<Self, GcsError> {
        let n = tau.expect_square()?;
        Self::new(tau.clone(), CMatrix::zeros(n, n), CMatrix::zeros(n, n))
    }

    pub fn n(&self) -> usize {
        self.b1.rows()
    }

    pub fn neg(&self) -> Self {
        Self { b1: -&self.b1, b2: -&self.b2, b3: -&self.b3 }
    }

    pub fn assembled(&self) -> CMatrix {
        CMatrix::from_blocks(&[vec![self.b1.clone(), self.b2.clone()], vec![-self.b2.transpose(), self.b3.clone()]])
            .expect("square blocks")
    }

    /// `[[I, 0], [sign·B, I]]` in the tangent/cotangent split.
    fn shear(&self, sign: i64) -> CMatrix {
        let m = 2 * self.n();
        let b = self.assembled().scale(&CScalar::from_int(sign));
        CMatrix::from_blocks(&[vec![CMatrix::identity(m), CMatrix::zeros(m, m)], vec![b, CMatrix::identity(m)]])
            .expect("square blocks")
    }
}

/// The period-matrix structure `diag(I_T, −I_Tᵗ)` with
/// `I_T = [[−XY⁻¹, −Y − XY⁻¹X], [Y⁻¹, Y⁻¹X]]`.
pub fn build_it(p: &PeriodMatrix) -> GCStructure {
    let n = p.n();
    let it = complex_block(p);
    let z = CMatrix::zeros(2 * n, 2 * n);
    let j = CMatrix::from_blocks(&[vec![it.clone(), z.clone()], vec![z, -it.transpose()]]).expect("square blocks");
    GCStructure { n, j }
}

/// The tangent block `I_T` alone.
pub fn complex_block(p: &PeriodMatrix) -> CMatrix {
    let (x, yi) = (p.x(), p.y_inv());
    let xyi = x * yi;
    CMatrix::from_blocks(&[vec![-&xyi, -p.y_plus_xyx()], vec![yi.clone(), yi * x]]).expect("square blocks")
}

/// `[[I, 0], [−B, I]] · J · [[I, 0], [B, I]]`.
pub fn b_transform(j: &GCStructure, b: &BField) -> Result<GCStructure, GcsError> {
    if b.n() != j.n {
        return Err(GcsError::DimensionMismatch { expected: j.n, found: b.n() });
    }
    let out = &(&b.shear(-1) * &j.j) * &b.shear(1);
    Ok(GCStructure { n: j.n, j: out })
}

/// Conjugation by the block-swap involution.
pub fn mirror(j: &GCStructure) -> GCStructure {
    let m = mirror_matrix(j.n);
    GCStructure { n: j.n, j: &(&m * &j.j) * &m }
}

/// Complexified symplectic data of the mirror: `−(T⁻¹)ᵗ = B_mat + i·ω_mat`,
/// together with the B₁ twist `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorSymplecticData {
    pub omega_mat: CMatrix,
    pub b_mat: CMatrix,
    pub tau: CMatrix,
}

pub fn extract_mirror_data(p: &PeriodMatrix, tau: &CMatrix) -> Result<MirrorSymplecticData, GcsError> {
    let n = p.n();
    tau.expect_shape(n, n)?;
    if !tau.is_real() || !alt_check(tau) {
        return Err(GcsError::NotAlternating("tau"));
    }
    let w = -p.t_inv().transpose();
    let data = MirrorSymplecticData { omega_mat: w.im(), b_mat: w.re(), tau: tau.clone() };
    if data.omega_mat.inverse().is_err() {
        return Err(GcsError::InternalAssertion("omega_mat is singular"));
    }
    if !factorization_holds(p) {
        return Err(GcsError::InternalAssertion("three-matrix factorization of the mirror structure"));
    }
    Ok(data)
}

/// The mirror structure written out explicitly in terms of `X` and `Y`.
pub fn explicit_mirror_matrix(p: &PeriodMatrix) -> CMatrix {
    let n = p.n();
    let (x, yi) = (p.x(), p.y_inv());
    let z = CMatrix::zeros(n, n);
    let xt = x.transpose();
    let yit = yi.transpose();
    CMatrix::from_blocks(&[
        vec![-(x * yi), z.clone(), z.clone(), -p.y_plus_xyx()],
        vec![z.clone(), -(&xt * &yit), &p.y().transpose() + &(&(&xt * &yit) * &xt), z.clone()],
        vec![z.clone(), -yit.clone(), &yit * &xt, z.clone()],
        vec![yi.clone(), z.clone(), z, yi * x],
    ])
    .expect("square blocks")
}

/// `(A₁, C, A₂)` with the mirror structure equal to `A₁·C·A₂`: two B-field
/// shears by `B_mat` around the symplectic structure of `ω_mat`.
pub fn mirror_factorization(p: &PeriodMatrix) -> (CMatrix, CMatrix, CMatrix) {
    let n = p.n();
    let w = -p.t_inv().transpose();
    let (bm, om) = (w.re(), w.im());
    let om_inv = om.inverse().expect("omega_mat is invertible for a valid period matrix");
    let i = CMatrix::identity(n);
    let z = CMatrix::zeros(n, n);
    let shear = |s: &CMatrix| {
        CMatrix::from_blocks(&[
            vec![i.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), i.clone(), z.clone(), z.clone()],
            vec![z.clone(), -s, i.clone(), z.clone()],
            vec![s.transpose(), z.clone(), z.clone(), i.clone()],
        ])
        .expect("square blocks")
    };
    let c = CMatrix::from_blocks(&[
        vec![z.clone(), z.clone(), z.clone(), -om_inv.transpose()],
        vec![z.clone(), z.clone(), om_inv, z.clone()],
        vec![z.clone(), -&om, z.clone(), z.clone()],
        vec![om.transpose(), z.clone(), z.clone(), z.clone()],
    ])
    .expect("square blocks");
    (shear(&bm), c, shear(&-&bm))
}

pub fn factorization_holds(p: &PeriodMatrix) -> bool {
    let (a1, c, a2) = mirror_factorization(p);
    let product = &(&a1 * &c) * &a2;
    let m = mirror(&build_it(p));
    product == *m.matrix() && product == explicit_mirror_matrix(p)
}

/// `(Re, Im)` of `−(T⁻¹)ᵗ` from the closed forms
/// `−((Y + XY⁻¹X)⁻¹)ᵗ Xᵗ (Y⁻¹)ᵗ` and `((Y + XY⁻¹X)⁻¹)ᵗ`.
pub fn closed_form_parts(p: &PeriodMatrix) -> Result<(CMatrix, CMatrix), GcsError> {
    let s_inv_t = p.y_plus_xyx().inverse()?.transpose();
    let re = -&(&(&s_inv_t * &p.x().transpose()) * &p.y_inv().transpose());
    Ok((re, s_inv_t))
}

impl MirrorSymplecticData {
    pub fn n(&self) -> usize {
        self.omega_mat.rows()
    }

    /// `ω∨ = 2π dx̌ᵗ ω_mat dy̌`.
    pub fn omega_form(&self) -> Form {
        let two_pi = Poly::pi_times(2 * self.n(), CScalar::from_int(2), 1);
        Form::quadratic(Coords::Mirror, Half::X, &self.omega_mat, Half::Y, &two_pi)
    }

    /// `B_τ∨ = 2π dx̌ᵗ B_mat dy̌ + π dx̌ᵗ τ dx̌`.
    pub fn b_form(&self) -> Form {
        let nv = 2 * self.n();
        let two_pi = Poly::pi_times(nv, CScalar::from_int(2), 1);
        Form::quadratic(Coords::Mirror, Half::X, &self.b_mat, Half::Y, &two_pi)
            .add(&Form::quadratic(Coords::Mirror, Half::X, &self.tau, Half::X, &Poly::pi(nv)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, validate_period, Rational};

    fn period(re: &[&[i64]], im: &[&[i64]]) -> PeriodMatrix {
        validate_period(CMatrix::from_parts(&CMatrix::from_ints(re), &CMatrix::from_ints(im)).unwrap()).unwrap()
    }

    #[test]
    fn standard_torus_block() {
        let p = period(&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]]);
        let it = complex_block(&p);
        let i = CMatrix::identity(2);
        let z = CMatrix::zeros(2, 2);
        let expect = CMatrix::from_blocks(&[vec![z.clone(), -&i], vec![i, z]]).unwrap();
        assert_eq!(it, expect);
    }

    #[test]
    fn one_plus_i_block() {
        let p = period(&[&[1]], &[&[1]]);
        let it = complex_block(&p);
        // Oracle: direct 2×2 product.
        assert_eq!(it, CMatrix::from_ints(&[&[-1, -2], &[1, 1]]));
        let sq = CMatrix::from_fn(2, 2, |r, c| {
            let mut acc = CScalar::default();
            for k in 0..2 {
                acc += &(&it[(r, k)] * &it[(k, c)]);
            }
            acc
        });
        assert_eq!(sq, -CMatrix::identity(2));
    }

    #[test]
    fn built_structure_is_valid() {
        let p = period(&[&[1, 2], &[-1, 0]], &[&[3, 1], &[1, 2]]);
        assert!(build_it(&p).satisfies_axioms());
    }

    #[test]
    fn rejects_non_structures() {
        assert!(GCStructure::new(1, CMatrix::identity(4)).is_err());
    }

    #[test]
    fn zero_b_field_is_identity() {
        let p = period(&[&[1]], &[&[2]]);
        let j = build_it(&p);
        let b = BField::tau(&CMatrix::zeros(1, 1)).unwrap();
        assert_eq!(b_transform(&j, &b).unwrap(), j);
    }

    #[test]
    fn b_transform_group_law() {
        let p = period(&[&[1, 0], &[2, 1]], &[&[2, 1], &[1, 1]]);
        let j = build_it(&p);
        let b = BField::new(
            CMatrix::from_ints(&[&[0, 3], &[-3, 0]]),
            CMatrix::from_ints(&[&[1, 2], &[0, -1]]),
            CMatrix::from_ints(&[&[0, -1], &[1, 0]]),
        )
        .unwrap();
        let there = b_transform(&j, &b).unwrap();
        assert!(there.satisfies_axioms());
        assert_eq!(b_transform(&there, &b.neg()).unwrap(), j);
    }

    #[test]
    fn tau_moves_the_structure() {
        let p = period(&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]]);
        let j = build_it(&p);
        let b = BField::tau(&CMatrix::from_ints(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_ne!(b_transform(&j, &b).unwrap(), j);
    }

    #[test]
    fn mirror_of_standard_circle() {
        let p = period(&[&[0]], &[&[1]]);
        let m = mirror(&build_it(&p));
        // Oracle: X = 0, Y = 1 leaves only the anti-diagonal blocks.
        let expect = CMatrix::from_ints(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(*m.matrix(), expect);
        assert_eq!(mirror(&m), build_it(&p));
    }

    #[test]
    fn mirror_data_examples() {
        let zero = CMatrix::zeros(1, 1);
        let p = period(&[&[0]], &[&[1]]);
        let d = extract_mirror_data(&p, &zero).unwrap();
        assert_eq!(d.omega_mat, CMatrix::identity(1));
        assert!(d.b_mat.is_zero());

        // −1/(1+i) = (−1+i)/2.
        let p = period(&[&[1]], &[&[1]]);
        let d = extract_mirror_data(&p, &zero).unwrap();
        let half = |r: Rational| CMatrix::from_rationals(1, 1, move |_, _| r.clone());
        assert_eq!(d.omega_mat, half(ratio(1, 2)));
        assert_eq!(d.b_mat, half(ratio(-1, 2)));
    }

    #[test]
    fn rejects_symmetric_tau() {
        let p = period(&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]]);
        let tau = CMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(extract_mirror_data(&p, &tau), Err(GcsError::NotAlternating("tau")));
    }

    #[test]
    fn closed_forms_agree() {
        let p = period(&[&[1, -2], &[3, 0]], &[&[2, 1], &[1, 3]]);
        let w = -p.t_inv().transpose();
        assert_eq!(closed_form_parts(&p).unwrap(), (w.re(), w.im()));
        assert!(factorization_holds(&p));
    }
}
