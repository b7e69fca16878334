//! Affine sections `s(x) = a·x + c` with integer slope.

use crate::forms::Poly;
use crate::linalg::{CMatrix, CScalar, LinalgError, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSection {
    a: CMatrix,
    c: Vec<Rational>,
}

impl AffineSection {
    /// `a` must be a square integer matrix and `c` a vector of matching length.
    pub fn new(a: CMatrix, c: Vec<Rational>) -> Result<Self, LinalgError> {
        let n = a.expect_square()?;
        if c.len() != n {
            return Err(LinalgError::DimensionMismatch { expected: format!("{n} offsets"), found: c.len().to_string() });
        }
        if !a.is_integer() {
            return Err(LinalgError::NotInteger);
        }
        Ok(Self { a, c })
    }

    pub fn zero(n: usize) -> Self {
        Self { a: CMatrix::zeros(n, n), c: vec![Rational::default(); n] }
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// The constant Jacobian `∂s/∂x`.
    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    pub fn with_offset(&self, c: Vec<Rational>) -> Result<Self, LinalgError> {
        Self::new(self.a.clone(), c)
    }

    /// `s_k(x) = Σ_l a_kl x_l + c_k` as polynomials in `nvars` coordinates
    /// whose first `n` are the `x`.
    pub fn values(&self, nvars: usize) -> Vec<Poly> {
        let n = self.n();
        (0..n)
            .map(|k| {
                let mut p = Poly::constant(nvars, CScalar::real(self.c[k].clone()));
                for l in 0..n {
                    p = &p + &Poly::var(nvars, l).scale(&self.a[(k, l)]);
                }
                p
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn rejects_fractional_slope() {
        let a = CMatrix::from_rationals(1, 1, |_, _| ratio(1, 2));
        assert_eq!(AffineSection::new(a, vec![ratio(0, 1)]), Err(LinalgError::NotInteger));
    }

    #[test]
    fn quasi_periodic_shift() {
        // s(x + e_j) − s(x) is the j-th column of a.
        let a = CMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let s = AffineSection::new(a, vec![ratio(1, 2), ratio(0, 1)]).unwrap();
        let vals = s.values(2);
        let shifted: Vec<Poly> = vals
            .iter()
            .map(|p| p.substitute(&[&Poly::var(2, 0) + &Poly::one(2), Poly::var(2, 1)]))
            .collect();
        assert_eq!((&shifted[0] - &vals[0]).as_number(), Some(CScalar::from_int(1)));
        assert_eq!((&shifted[1] - &vals[1]).as_number(), Some(CScalar::from_int(3)));
    }
}
