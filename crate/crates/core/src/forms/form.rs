use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use super::{FormError, Poly};
use crate::linalg::{CMatrix, CScalar};

/// Which copy of ℝ²ⁿ the coordinates belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coords {
    /// `(x, y)` on the complex torus.
    Torus,
    /// `(x̌, y̌)` on the mirror torus.
    Mirror,
}

impl Coords {
    pub fn coordinate_names(self, n: usize) -> Vec<String> {
        let (x, y) = self.stems();
        (1..=n).map(|k| format!("{x}{k}")).chain((1..=n).map(|k| format!("{y}{k}"))).collect()
    }

    fn stems(self) -> (&'static str, &'static str) {
        match self {
            Coords::Torus => ("x", "y"),
            Coords::Mirror => ("xc", "yc"),
        }
    }
}

/// The first or second half of the coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    X,
    Y,
}

impl Half {
    fn offset(self, n: usize) -> usize {
        match self {
            Half::X => 0,
            Half::Y => n,
        }
    }
}

/// Sort a generator tuple, returning the permutation sign, or `None` when a
/// generator repeats.
fn normalize(mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, odd))
}

/// Exterior algebra on `2n` abstract generators with polynomial
/// coefficients in `2n` coordinates. Shared by [`Form`] and [`PQForm`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Ext {
    n: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl Ext {
    fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    fn nvars(&self) -> usize {
        2 * self.n
    }

    fn insert(&mut self, idx: Vec<usize>, p: Poly) {
        assert!(idx.iter().all(|&g| g < 2 * self.n), "generator out of range");
        if p.is_zero() {
            return;
        }
        let Some((idx, odd)) = normalize(idx) else { return };
        let p = if odd { -&p } else { p };
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v = &*v + &p;
                if v.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, p);
            }
        }
    }

    fn add(&self, o: &Ext) -> Ext {
        let mut out = self.clone();
        for (k, p) in &o.terms {
            out.insert(k.clone(), p.clone());
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Ext {
        let mut out = Ext::zero(self.n);
        for (k, p) in &self.terms {
            out.insert(k.clone(), f(p));
        }
        out
    }

    fn wedge(&self, o: &Ext) -> Ext {
        let mut out = Ext::zero(self.n);
        for (ka, pa) in &self.terms {
            for (kb, pb) in &o.terms {
                if ka.iter().any(|g| kb.contains(g)) {
                    continue;
                }
                let mut idx = ka.clone();
                idx.extend_from_slice(kb);
                out.insert(idx, pa * pb);
            }
        }
        out
    }

    /// Exterior derivative when generator `v` is `d` of coordinate `v`.
    fn d(&self) -> Ext {
        let mut out = Ext::zero(self.n);
        for (k, p) in &self.terms {
            for v in 0..self.nvars() {
                if k.contains(&v) {
                    continue;
                }
                let dp = p.diff(v);
                if dp.is_zero() {
                    continue;
                }
                let mut idx = vec![v];
                idx.extend_from_slice(k);
                out.insert(idx, dp);
            }
        }
        out
    }

    /// Replace each generator by a 1-form and each coefficient by `coeff(p)`.
    pub(crate) fn pullback(&self, images: &[Ext], target_n: usize, coeff: impl Fn(&Poly) -> Poly) -> Ext {
        let mut out = Ext::zero(target_n);
        for (k, p) in &self.terms {
            let mut acc = Ext::zero(target_n);
            acc.insert(vec![], coeff(p));
            for g in k {
                acc = acc.wedge(&images[*g]);
                if acc.terms.is_empty() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Vec::len).collect()
    }

    fn render(&self, coord_names: &[String], gen_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, p) in &self.terms {
            let basis = k.iter().map(|&g| gen_names[g].as_str()).collect::<Vec<_>>().join("^");
            for (m, c) in p.terms() {
                let single = Poly::from_terms(p.nvars(), [(m.exps().to_vec(), c.clone())]);
                let coeff = single.render(coord_names);
                parts.push(if basis.is_empty() { coeff } else { format!("{coeff} * {basis}") });
            }
        }
        parts.join(" + ")
    }
}

/// A differential form on ℝ²ⁿ in the real frame `dx₁..dxₙ, dy₁..dyₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    coords: Coords,
    ext: Ext,
}

impl Form {
    pub fn zero(n: usize, coords: Coords) -> Self {
        Self { coords, ext: Ext::zero(n) }
    }

    pub fn function(coords: Coords, p: Poly) -> Self {
        assert!(p.nvars().is_multiple_of(2), "coefficient ring has an odd number of coordinates");
        let mut f = Self::zero(p.nvars() / 2, coords);
        f.ext.insert(vec![], p);
        f
    }

    /// `p · d(generator)₀ ∧ …`; generators `0..n` are `dx`, `n..2n` are `dy`.
    pub fn term(n: usize, coords: Coords, gens: Vec<usize>, p: Poly) -> Self {
        assert_eq!(p.nvars(), 2 * n, "coefficient dimension");
        let mut f = Self::zero(n, coords);
        f.ext.insert(gens, p);
        f
    }

    pub fn basis(n: usize, coords: Coords, half: Half, k: usize) -> Self {
        Self::term(n, coords, vec![half.offset(n) + k], Poly::one(2 * n))
    }

    /// `Σ_k p_k · d(half)_k`.
    pub fn linear(coords: Coords, half: Half, coeffs: &[Poly]) -> Self {
        let n = coeffs.len();
        let mut f = Self::zero(n, coords);
        for (k, p) in coeffs.iter().enumerate() {
            f.ext.insert(vec![half.offset(n) + k], p.clone());
        }
        f
    }

    /// `scale · d(left)ᵗ M d(right) = Σ_{k,l} scale·M_kl d(left)_k ∧ d(right)_l`.
    pub fn quadratic(coords: Coords, left: Half, m: &CMatrix, right: Half, scale: &Poly) -> Self {
        let n = m.rows();
        assert!(m.is_square(), "quadratic form needs a square matrix");
        let mut f = Self::zero(n, coords);
        for k in 0..n {
            for l in 0..n {
                let c = &m[(k, l)];
                if !c.is_zero() {
                    f.ext.insert(vec![left.offset(n) + k, right.offset(n) + l], scale.scale(c));
                }
            }
        }
        f
    }

    pub fn n(&self) -> usize {
        self.ext.n
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.ext.terms.is_empty()
    }

    /// Degrees that occur with a nonzero coefficient.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.ext.degrees()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.ext.terms.iter()
    }

    pub fn coefficient(&self, gens: &[usize]) -> Poly {
        match normalize(gens.to_vec()) {
            None => Poly::zero(2 * self.n()),
            Some((idx, odd)) => {
                let p = self.ext.terms.get(&idx).cloned().unwrap_or_else(|| Poly::zero(2 * self.n()));
                if odd {
                    -&p
                } else {
                    p
                }
            }
        }
    }

    fn check(&self, o: &Form) -> Result<(), FormError> {
        if self.coords != o.coords {
            return Err(FormError::CoordinateMismatch);
        }
        if self.n() != o.n() {
            return Err(FormError::DimensionMismatch { expected: self.n(), found: o.n() });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Form) -> Result<Form, FormError> {
        self.check(o)?;
        Ok(Form { coords: self.coords, ext: self.ext.add(&o.ext) })
    }

    /// Sum; panics on mismatched spaces.
    pub fn add(&self, o: &Form) -> Form {
        self.try_add(o).expect("adding forms on different spaces")
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale(&-CScalar::from_int(1))
    }

    pub fn scale(&self, c: &CScalar) -> Form {
        Form { coords: self.coords, ext: self.ext.map_coeffs(|p| p.scale(c)) }
    }

    pub fn mul_poly(&self, q: &Poly) -> Form {
        Form { coords: self.coords, ext: self.ext.map_coeffs(|p| p * q) }
    }

    pub fn wedge(&self, o: &Form) -> Result<Form, FormError> {
        self.check(o)?;
        Ok(Form { coords: self.coords, ext: self.ext.wedge(&o.ext) })
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        Form { coords: self.coords, ext: self.ext.d() }
    }

    /// Substitute coordinates `v ↦ images[v]` in the coefficients without
    /// touching the covectors. Used for chart translations.
    pub fn substitute_coeffs(&self, images: &[Poly]) -> Form {
        Form { coords: self.coords, ext: self.ext.map_coeffs(|p| p.substitute(images)) }
    }

    /// Rewrite coefficients in the coordinates of a chart translated by
    /// `shift`: every coordinate `v` becomes `v + shift[v]`.
    pub fn translate(&self, shift: &[i64]) -> Form {
        Form { coords: self.coords, ext: self.ext.map_coeffs(|p| p.translate(shift)) }
    }

    pub(crate) fn from_ext(coords: Coords, ext: Ext) -> Form {
        Form { coords, ext }
    }

    pub(crate) fn ext(&self) -> &Ext {
        &self.ext
    }

    pub fn generator_names(&self) -> Vec<String> {
        let (x, y) = self.coords.stems();
        let n = self.n();
        (1..=n).map(|k| format!("d{x}{k}")).chain((1..=n).map(|k| format!("d{y}{k}"))).collect()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.coords.coordinate_names(self.n());
        f.write_str(&self.ext.render(&coords, &self.generator_names()))
    }
}

/// A form in the Dolbeault frame `dz₁..dzₙ, dz̄₁..dz̄ₙ` with coefficients in
/// the real torus coordinates. Bidegree `(p, q)` counts the `dz` and `dz̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PQForm {
    ext: Ext,
}

impl PQForm {
    pub fn zero(n: usize) -> Self {
        Self { ext: Ext::zero(n) }
    }

    /// `p · e_{g₀} ∧ …` with generators `0..n` = `dz`, `n..2n` = `dz̄`.
    pub fn term(n: usize, gens: Vec<usize>, p: Poly) -> Self {
        assert_eq!(p.nvars(), 2 * n, "coefficient dimension");
        let mut f = Self::zero(n);
        f.ext.insert(gens, p);
        f
    }

    pub fn function(p: Poly) -> Self {
        let n = p.nvars() / 2;
        Self::term(n, vec![], p)
    }

    pub fn dz(n: usize, k: usize) -> Self {
        Self::term(n, vec![k], Poly::one(2 * n))
    }

    pub fn dzbar(n: usize, k: usize) -> Self {
        Self::term(n, vec![n + k], Poly::one(2 * n))
    }

    /// `scale · dz̄ᵗ M dz̄`.
    pub fn dzbar_quadratic(m: &CMatrix, scale: &Poly) -> Self {
        let n = m.rows();
        let mut f = Self::zero(n);
        for k in 0..n {
            for l in 0..n {
                if !m[(k, l)].is_zero() {
                    f.ext.insert(vec![n + k, n + l], scale.scale(&m[(k, l)]));
                }
            }
        }
        f
    }

    pub(crate) fn from_ext(ext: Ext) -> Self {
        Self { ext }
    }

    pub(crate) fn ext(&self) -> &Ext {
        &self.ext
    }

    pub fn n(&self) -> usize {
        self.ext.n
    }

    pub fn is_zero(&self) -> bool {
        self.ext.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.ext.terms.iter()
    }

    fn bidegree_of(&self, gens: &[usize]) -> (usize, usize) {
        let p = gens.iter().filter(|&&g| g < self.n()).count();
        (p, gens.len() - p)
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.ext.terms.keys().map(|k| self.bidegree_of(k)).collect()
    }

    /// The `(p, q)` component.
    pub fn component(&self, p: usize, q: usize) -> PQForm {
        let mut out = Ext::zero(self.n());
        for (k, c) in &self.ext.terms {
            if self.bidegree_of(k) == (p, q) {
                out.insert(k.clone(), c.clone());
            }
        }
        PQForm { ext: out }
    }

    /// True iff every term has bidegree `(p, q)`.
    pub fn is_pure(&self, p: usize, q: usize) -> bool {
        self.ext.terms.keys().all(|k| self.bidegree_of(k) == (p, q))
    }

    fn check(&self, o: &PQForm) -> Result<(), FormError> {
        if self.n() != o.n() {
            return Err(FormError::DimensionMismatch { expected: self.n(), found: o.n() });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &PQForm) -> Result<PQForm, FormError> {
        self.check(o)?;
        Ok(PQForm { ext: self.ext.add(&o.ext) })
    }

    pub fn add(&self, o: &PQForm) -> PQForm {
        self.try_add(o).expect("adding forms of different dimension")
    }

    pub fn sub(&self, o: &PQForm) -> PQForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PQForm {
        self.scale(&-CScalar::from_int(1))
    }

    pub fn scale(&self, c: &CScalar) -> PQForm {
        PQForm { ext: self.ext.map_coeffs(|p| p.scale(c)) }
    }

    pub fn mul_poly(&self, q: &Poly) -> PQForm {
        PQForm { ext: self.ext.map_coeffs(|p| p * q) }
    }

    pub fn wedge(&self, o: &PQForm) -> Result<PQForm, FormError> {
        self.check(o)?;
        Ok(PQForm { ext: self.ext.wedge(&o.ext) })
    }

    pub fn generator_names(&self) -> Vec<String> {
        let n = self.n();
        (1..=n).map(|k| format!("dz{k}")).chain((1..=n).map(|k| format!("dzb{k}"))).collect()
    }
}

impl fmt::Display for PQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = Coords::Torus.coordinate_names(self.n());
        f.write_str(&self.ext.render(&coords, &self.generator_names()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dx(n: usize, k: usize) -> Form {
        Form::basis(n, Coords::Torus, Half::X, k)
    }

    #[test]
    fn d_of_x1_dx2() {
        let f = Form::term(2, Coords::Torus, vec![1], Poly::var(4, 0));
        assert_eq!(f.d(), dx(2, 0).wedge(&dx(2, 1)).unwrap());
    }

    #[test]
    fn wedge_basics() {
        assert!(dx(2, 0).wedge(&dx(2, 0)).unwrap().is_zero());
        let a = dx(2, 0).wedge(&dx(2, 1)).unwrap();
        let b = dx(2, 1).wedge(&dx(2, 0)).unwrap();
        assert_eq!(a, b.neg());
    }

    #[test]
    fn d_of_constant_vanishes() {
        let f = Form::term(2, Coords::Torus, vec![0, 3], Poly::constant(4, CScalar::int(3, -1)));
        assert!(f.d().is_zero());
    }

    #[test]
    fn coordinate_mismatch() {
        let a = Form::basis(1, Coords::Torus, Half::X, 0);
        let b = Form::basis(1, Coords::Mirror, Half::X, 0);
        assert_eq!(a.wedge(&b), Err(FormError::CoordinateMismatch));
    }

    #[test]
    fn canonical_text() {
        let f = Form::term(2, Coords::Torus, vec![2, 0], &Poly::pi(4) * &Poly::var(4, 1));
        assert_eq!(f.to_string(), "-pi*x2 * dx1^dy1");
        let g = Form::basis(1, Coords::Mirror, Half::Y, 0);
        assert_eq!(g.to_string(), "1 * dyc1");
        assert_eq!(Form::zero(1, Coords::Torus).to_string(), "0");
    }

    #[test]
    fn coefficient_lookup_respects_order() {
        let f = dx(2, 0).wedge(&dx(2, 1)).unwrap();
        assert_eq!(f.coefficient(&[1, 0]), -&Poly::one(4));
        assert!(f.coefficient(&[0, 0]).is_zero());
    }
}
