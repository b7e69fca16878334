use num_traits::{Signed, Zero};

use super::{CMatrix, LinalgError};

/// A period matrix `T` with `Im T` symmetric positive definite and
/// `det T ≠ 0`. Derived matrices are cached at validation time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodMatrix {
    t: CMatrix,
    x: CMatrix,
    y: CMatrix,
    y_inv: CMatrix,
    t_inv: CMatrix,
}

pub fn validate_period(t: CMatrix) -> Result<PeriodMatrix, LinalgError> {
    t.expect_square()?;
    let x = t.re();
    let y = t.im();
    if !y.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    for (k, minor) in y.leading_minors()?.iter().enumerate() {
        // Minors of a real matrix are real.
        if !minor.re.is_positive() {
            return Err(LinalgError::NotPositiveDefinite { index: k + 1, value: minor.to_string() });
        }
    }
    if t.det()?.is_zero() {
        return Err(LinalgError::Singular);
    }
    let y_inv = y.inverse()?;
    let t_inv = t.inverse()?;
    Ok(PeriodMatrix { t, x, y, y_inv, t_inv })
}

impl PeriodMatrix {
    pub fn n(&self) -> usize {
        self.t.rows()
    }

    pub fn t(&self) -> &CMatrix {
        &self.t
    }

    pub fn x(&self) -> &CMatrix {
        &self.x
    }

    pub fn y(&self) -> &CMatrix {
        &self.y
    }

    pub fn y_inv(&self) -> &CMatrix {
        &self.y_inv
    }

    pub fn t_inv(&self) -> &CMatrix {
        &self.t_inv
    }

    /// `Y + X Y⁻¹ X`, invertible whenever `T` is.
    pub fn y_plus_xyx(&self) -> CMatrix {
        &self.y + &(&(&self.x * &self.y_inv) * &self.x)
    }

    /// `(T − T̄)⁻¹ = (2i Y)⁻¹`, the matrix that converts `dz, dz̄` back to `dx, dy`.
    pub fn dbar_matrix(&self) -> CMatrix {
        (&self.t - &self.t.conj()).inverse().expect("Im T is invertible")
    }
}

/// True iff `m` is square with `mᵗ = −m`.
pub fn alt_check(m: &CMatrix) -> bool {
    m.is_alternating()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, CScalar};

    fn t_from(re: &[&[i64]], im: &[&[i64]]) -> CMatrix {
        CMatrix::from_parts(&CMatrix::from_ints(re), &CMatrix::from_ints(im)).unwrap()
    }

    #[test]
    fn identity_imaginary_part_accepted() {
        let p = validate_period(t_from(&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(*p.y(), CMatrix::identity(2));
    }

    #[test]
    fn one_by_one() {
        let p = validate_period(t_from(&[&[1]], &[&[1]])).unwrap();
        assert_eq!(*p.x(), CMatrix::from_ints(&[&[1]]));
        assert_eq!(*p.y(), CMatrix::from_ints(&[&[1]]));
    }

    #[test]
    fn indefinite_rejected_at_second_minor() {
        let err = validate_period(t_from(&[&[0, 0], &[0, 0]], &[&[1, 2], &[2, 1]])).unwrap_err();
        assert_eq!(err, LinalgError::NotPositiveDefinite { index: 2, value: "-3".into() });
    }

    #[test]
    fn asymmetric_rejected() {
        let err = validate_period(t_from(&[&[0, 0], &[0, 0]], &[&[1, 1], &[0, 1]])).unwrap_err();
        assert_eq!(err, LinalgError::NotSymmetric);
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(validate_period(CMatrix::zeros(1, 2)), Err(LinalgError::NonSquare { .. })));
    }

    #[test]
    fn dbar_matrix_for_i() {
        let p = validate_period(t_from(&[&[0]], &[&[1]])).unwrap();
        assert_eq!(p.dbar_matrix()[(0, 0)], CScalar::new(ratio(0, 1), ratio(-1, 2)));
    }

    #[test]
    fn alternating_examples() {
        assert!(alt_check(&CMatrix::from_ints(&[&[0, 1], &[-1, 0]])));
        assert!(alt_check(&CMatrix::zeros(3, 3)));
        assert!(!alt_check(&CMatrix::from_ints(&[&[0, 1], &[1, 0]])));
    }
}
