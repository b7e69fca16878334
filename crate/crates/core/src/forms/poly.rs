//! Polynomials in the real coordinates of the torus with Gaussian-rational
//! coefficients and a formal factor π.
//!
//! Variables `0..2n` are the coordinates (`x₁..xₙ, y₁..yₙ`); one extra
//! exponent slot records the power of π, which is a constant for `d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::{CScalar, Rational};

/// Exponent vector ordered graded-lexicographically: total degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    fn new(exps: Vec<u32>) -> Self {
        Self { degree: exps.iter().sum(), exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    /// Number of coordinate variables (π excluded).
    nvars: usize,
    terms: BTreeMap<Monomial, CScalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: CScalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(vec![0; nvars + 1]), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CScalar::one())
    }

    /// The coordinate `v`.
    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable {v} out of range");
        let mut e = vec![0; nvars + 1];
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(e), CScalar::one());
        p
    }

    /// The formal constant π.
    pub fn pi(nvars: usize) -> Self {
        let mut e = vec![0; nvars + 1];
        e[nvars] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(e), CScalar::one());
        p
    }

    /// `c · π^k`.
    pub fn pi_times(nvars: usize, c: CScalar, k: u32) -> Self {
        let mut e = vec![0; nvars + 1];
        e[nvars] = k;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(e), c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs; exponents include the π slot.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, CScalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars + 1, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: CScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in the coordinates (π not counted).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree - m.exps[self.nvars]).max().unwrap_or(0)
    }

    /// `Some(c)` if the polynomial is a pure number (no coordinates, no π).
    pub fn as_number(&self) -> Option<CScalar> {
        match self.terms.len() {
            0 => Some(CScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                (m.degree == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// True iff no coordinate appears (π may).
    pub fn is_coordinate_free(&self) -> bool {
        self.terms.keys().all(|m| m.exps[..self.nvars].iter().all(|&e| e == 0))
    }

    pub fn scale(&self, c: &CScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&CScalar::real(r.clone()))
    }

    /// Partial derivative with respect to coordinate `v`.
    pub fn diff(&self, v: usize) -> Self {
        assert!(v < self.nvars, "cannot differentiate by π");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[v] -= 1;
            out.add_term(Monomial::new(exps), c * &CScalar::from_int(i64::from(e)));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute every coordinate `v` by `images[v]` (π is kept). The
    /// images may live in a different number of variables.
    pub fn substitute(&self, images: &[Poly]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per coordinate");
        let target = images.first().map_or(self.nvars, Poly::nvars);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::pi_times(target, c.clone(), m.exps[self.nvars]);
            for (v, &e) in m.exps[..self.nvars].iter().enumerate() {
                if e > 0 {
                    term = &term * &images[v].pow(e);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Substitute `v ↦ v + shift[v]` for every coordinate.
    pub fn translate(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars, "one shift per coordinate");
        if shift.iter().all(|&s| s == 0) {
            return self.clone();
        }
        let images: Vec<Poly> = (0..self.nvars)
            .map(|v| &Poly::var(self.nvars, v) + &Poly::constant(self.nvars, CScalar::from_int(shift[v])))
            .collect();
        self.substitute(&images)
    }

    /// Apply complex conjugation to every coefficient.
    pub fn conj(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Render with the given coordinate names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            let mut sign = "";
            if m.degree == 0 {
                factors.push(c.to_string());
            } else if (-c).is_one() {
                sign = "-";
            } else if !c.is_one() {
                factors.push(c.to_string());
            }
            if m.exps[self.nvars] > 0 {
                factors.push(power("pi", m.exps[self.nvars]));
            }
            for (v, &e) in m.exps[..self.nvars].iter().enumerate() {
                if e > 0 {
                    factors.push(power(&names[v], e));
                }
            }
            parts.push(format!("{sign}{}", factors.join("*")));
        }
        parts.join(" + ")
    }

    fn check_compatible(&self, o: &Poly) {
        assert_eq!(self.nvars, o.nvars, "polynomials over different coordinate sets");
    }
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.check_compatible(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.check_compatible(o);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|v| format!("v{}", v + 1)).collect();
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let x = Poly::var(2, 0);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).len(), 0);
    }

    #[test]
    fn derivative_of_product() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &x) * &y;
        assert_eq!(p.diff(0), (&x * &y).scale(&CScalar::from_int(2)));
        assert_eq!(p.diff(1), &x * &x);
    }

    #[test]
    fn pi_is_constant_for_derivatives() {
        let p = &Poly::pi(1) * &Poly::var(1, 0);
        assert_eq!(p.diff(0), Poly::pi(1));
    }

    #[test]
    fn substitution_shifts() {
        let x = Poly::var(1, 0);
        let p = &x * &x;
        let shifted = p.substitute(&[&x + &Poly::one(1)]);
        let expect = &(&p + &x.scale(&CScalar::from_int(2))) + &Poly::one(1);
        assert_eq!(shifted, expect);
    }

    #[test]
    fn render_is_graded() {
        let x = Poly::var(2, 0);
        let p = &(&x * &x) + &Poly::constant(2, CScalar::from_int(3));
        assert_eq!(p.render(&["x1".into(), "y1".into()]), "3 + x1^2");
    }
}
