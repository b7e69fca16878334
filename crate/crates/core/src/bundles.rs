//! Complex-side line bundles `E_(s,a,q)` on the torus, their twisted
//! connections, curvatures and transition data.
//!
//! The connection is `ω = −2πi(s(x)ᵗ + qᵗT)dy − πi·xᵗτdx` on every chart.
//! A transition exponent `e_ij` means `ψ_j = exp(2πi·e_ij)·ψ_i` and is written
//! in chart `i` coordinates.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use thiserror::Error;

use crate::forms::{pq_split, Coords, Form, FormError, Half, PQForm, Poly};
use crate::gerbe::cover::{self, pair_representatives};
use crate::gerbe::{one_connection, CoverIndex, GerbeConnection, Shift, Side};
use crate::linalg::{alt_check, CMatrix, CScalar, LinalgError, PeriodMatrix, Rational};
use crate::section::AffineSection;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tau must be a real alternating matrix")]
    NotAlternating,
    #[error("gerbe lives on the wrong side of the mirror")]
    SideMismatch,
    #[error("gerbe and object carry different tau")]
    TauMismatch,
    #[error("object is already twisted; tensoring expects tau = 0")]
    NotUntwisted,
    #[error("internal identity failed: {0}")]
    InternalAssertion(String),
}

/// The twisted bundle `E_(s,a,q)(τ)` with its connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSideObject {
    period: PeriodMatrix,
    section: AffineSection,
    q: Vec<Rational>,
    tau: CMatrix,
    /// Per-chart replacements of `q`, used to build corrupted objects.
    chart_q: BTreeMap<CoverIndex, Vec<Rational>>,
}

pub(crate) fn check_tau(n: usize, tau: &CMatrix) -> Result<(), BundleError> {
    tau.expect_shape(n, n)?;
    if !tau.is_real() || !alt_check(tau) {
        return Err(BundleError::NotAlternating);
    }
    Ok(())
}

impl ComplexSideObject {
    pub fn new(period: PeriodMatrix, section: AffineSection, q: Vec<Rational>, tau: CMatrix) -> Result<Self, BundleError> {
        let n = period.n();
        if section.n() != n {
            return Err(BundleError::DimensionMismatch { expected: n, found: section.n() });
        }
        if q.len() != n {
            return Err(BundleError::DimensionMismatch { expected: n, found: q.len() });
        }
        check_tau(n, &tau)?;
        Ok(Self { period, section, q, tau, chart_q: BTreeMap::new() })
    }

    pub fn n(&self) -> usize {
        self.period.n()
    }

    pub fn period(&self) -> &PeriodMatrix {
        &self.period
    }

    pub fn section(&self) -> &AffineSection {
        &self.section
    }

    pub fn q(&self) -> &[Rational] {
        &self.q
    }

    pub fn tau(&self) -> &CMatrix {
        &self.tau
    }

    pub fn with_tau(&self, tau: CMatrix) -> Result<Self, BundleError> {
        check_tau(self.n(), &tau)?;
        Ok(Self { tau, ..self.clone() })
    }

    /// Same object with `q` replaced on a single chart.
    pub fn with_chart_q(&self, chart: CoverIndex, q: Vec<Rational>) -> Result<Self, BundleError> {
        if q.len() != self.n() || chart.n() != self.n() {
            return Err(BundleError::DimensionMismatch { expected: self.n(), found: q.len() });
        }
        let mut out = self.clone();
        out.chart_q.insert(chart, q);
        Ok(out)
    }

    pub fn has_chart_overrides(&self) -> bool {
        !self.chart_q.is_empty()
    }

    /// True iff `a·T` is symmetric.
    pub fn integrable_matrix_test(&self) -> bool {
        (self.section.a() * self.period.t()).is_symmetric()
    }

    fn connection_with(&self, q: &[Rational], tau: &CMatrix) -> Form {
        let n = self.n();
        let nv = 2 * n;
        let t = self.period.t();
        let s = self.section.values(nv);
        let minus_two_pi_i = Poly::pi_times(nv, CScalar::int(0, -2), 1);
        let dy: Vec<Poly> = (0..n)
            .map(|k| {
                let mut qt = CScalar::zero();
                for (l, ql) in q.iter().enumerate() {
                    qt += &t[(l, k)].scale(ql);
                }
                &(&s[k] + &Poly::constant(nv, qt)) * &minus_two_pi_i
            })
            .collect();
        let minus_pi_i = Poly::pi_times(nv, CScalar::int(0, -1), 1);
        let dx: Vec<Poly> = (0..n)
            .map(|l| {
                let mut p = Poly::zero(nv);
                for k in 0..n {
                    p = &p + &Poly::var(nv, k).scale(&tau[(k, l)]);
                }
                &p * &minus_pi_i
            })
            .collect();
        Form::linear(Coords::Torus, Half::Y, &dy).add(&Form::linear(Coords::Torus, Half::X, &dx))
    }

    /// The connection 1-form on a given chart.
    pub fn connection_on(&self, chart: &CoverIndex) -> Form {
        let q = self.chart_q.get(chart).map_or(self.q.as_slice(), Vec::as_slice);
        self.connection_with(q, &self.tau)
    }

    /// The connection with `τ` dropped.
    pub fn untwisted_connection_form(&self) -> Form {
        self.connection_with(&self.q, &CMatrix::zeros(self.n(), self.n()))
    }
}

/// `ω = −2πi(s(x)ᵗ + qᵗT)dy − πi·xᵗτdx`.
pub fn connection_form(o: &ComplexSideObject) -> Form {
    o.connection_with(&o.q, &o.tau)
}

/// `Ω̃ = dω + ω∧ω = dω` for a line bundle.
pub fn local_curvature(o: &ComplexSideObject) -> Form {
    connection_form(o).d()
}

/// `Ω = Ω̃ − B` where `B = −πi·dxᵗτdx` is the gerbe's 1-connection.
pub fn true_curvature(o: &ComplexSideObject) -> Form {
    local_curvature(o).sub(&one_connection(&o.tau, Coords::Torus))
}

/// Closed form `−2πi·dxᵗaᵗdy − πi·dxᵗτdx` of the local curvature.
pub fn local_curvature_closed_form(o: &ComplexSideObject) -> Form {
    let nv = 2 * o.n();
    let at = o.section.a().transpose();
    Form::quadratic(Coords::Torus, Half::X, &at, Half::Y, &Poly::pi_times(nv, CScalar::int(0, -2), 1))
        .add(&one_connection(&o.tau, Coords::Torus))
}

/// Closed form `2πi·dz̄ᵗ Dᵗ (aT)ᵗ D dz̄` of the (0,2)-part of the true
/// curvature, with `D = (T − T̄)⁻¹`.
pub fn curvature_02_closed_form(o: &ComplexSideObject) -> PQForm {
    let d = o.period.dbar_matrix();
    let at = o.section.a() * o.period.t();
    let m = &(&d.transpose() * &at.transpose()) * &d;
    PQForm::dzbar_quadratic(&m, &Poly::pi_times(2 * o.n(), CScalar::int(0, 2), 1))
}

/// Closed form `−πi·dz̄ᵗ Dᵗ Tᵗ τ T D dz̄` of the (0,2)-part of the local
/// curvature, valid when `aT` is symmetric.
pub fn local_curvature_02_closed_form(o: &ComplexSideObject) -> PQForm {
    let d = o.period.dbar_matrix();
    let t = o.period.t();
    let m = &(&(&(&d.transpose() * &t.transpose()) * &o.tau) * t) * &d;
    PQForm::dzbar_quadratic(&m, &Poly::pi_times(2 * o.n(), CScalar::int(0, -1), 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrability {
    pub integrable: bool,
    /// `(Ω)^{0,2}` computed through `pq_split`; zero iff integrable.
    pub witness: PQForm,
}

/// Decide integrability by the matrix test and by the curvature route; the
/// two must agree, and when integrable the closed form of `(Ω̃)^{0,2}` must
/// match the split of the local curvature.
pub fn is_integrable(o: &ComplexSideObject) -> Result<Integrability, BundleError> {
    let matrix = o.integrable_matrix_test();
    let witness = pq_split(&true_curvature(o), &o.period)?.component(0, 2);
    if matrix != witness.is_zero() {
        return Err(BundleError::InternalAssertion(format!(
            "aT symmetric = {matrix} but (0,2)-curvature = {witness}"
        )));
    }
    if witness != curvature_02_closed_form(o) {
        return Err(BundleError::InternalAssertion("(0,2)-curvature closed form".into()));
    }
    if matrix {
        let split = pq_split(&local_curvature(o), &o.period)?.component(0, 2);
        if split != local_curvature_02_closed_form(o) {
            return Err(BundleError::InternalAssertion("local (0,2)-curvature closed form".into()));
        }
    }
    Ok(Integrability { integrable: matrix, witness })
}

/// Transition exponents of `E_(s,a,q)`: `e_ij = (a·δx)ᵗ y` where `δx` is the
/// `x`-shift from chart `i` to chart `j`. Computed on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionData {
    a: CMatrix,
}

pub fn build_transitions(o: &ComplexSideObject) -> TransitionData {
    TransitionData { a: o.section.a().clone() }
}

impl TransitionData {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// `e_ij` in units of `2πi`, in chart `i` coordinates.
    pub fn exponent(&self, i: &CoverIndex, j: &CoverIndex) -> Poly {
        let n = self.n();
        let nv = 2 * n;
        let dx = i.shift_to(j).x;
        let mut p = Poly::zero(nv);
        for k in 0..n {
            let mut c = CScalar::zero();
            for (l, &d) in dx.iter().enumerate() {
                if d != 0 {
                    c += &(&self.a[(k, l)] * &CScalar::from_int(d));
                }
            }
            p = &p + &Poly::var(nv, n + k).scale(&c);
        }
        p
    }

    pub fn is_trivial(&self, i: &CoverIndex, j: &CoverIndex) -> bool {
        self.exponent(i, j).is_zero()
    }

    /// First nonempty triple whose cocycle sum is not an integer constant.
    pub fn cocycle_failure(&self, triples: &[[CoverIndex; 3]]) -> Option<String> {
        cocycle_failure(triples, |i, j| self.exponent(i, j))
    }
}

/// Shared cocycle test for exponent data in units of `2πi`: around each
/// triple, `e_ij + e_jk + e_ki` (all in chart `i` coordinates) must be an
/// integer constant. Memoised by shift pattern.
pub fn cocycle_failure(triples: &[[CoverIndex; 3]], e: impl Fn(&CoverIndex, &CoverIndex) -> Poly) -> Option<String> {
    let mut memo: HashMap<(Shift, Shift), bool> = HashMap::new();
    for t in triples {
        let [i, j, k] = t;
        let key = (i.shift_to(j), j.shift_to(k));
        let ok = *memo.entry(key).or_insert_with(|| {
            let sum = &(&e(i, j) + &e(j, k).translate(&i.shift_to(j).as_coords()))
                + &e(k, i).translate(&i.shift_to(k).as_coords());
            sum.as_number().is_some_and(|c| c.is_integer())
        });
        if !ok {
            return Some(format!("[{i} {j} {k}]"));
        }
    }
    None
}

/// Pairs to test: one per shift pattern plus every pair touching a chart
/// that carries an override.
pub(crate) fn pairs_touching(n: usize, special: &[CoverIndex]) -> Vec<(CoverIndex, CoverIndex)> {
    let mut out = pair_representatives(n);
    for c in special {
        for o in CoverIndex::all(n) {
            out.push((c.clone(), o.clone()));
            out.push((o, c.clone()));
        }
    }
    out
}

/// Check `ω_j − ω_i + 2πi·d e_ij = −i·(τω)_ij` on every overlap. Returns the
/// first failing pair as witness.
pub fn check_twisted_compatibility(o: &ComplexSideObject, g: &GerbeConnection) -> Result<Option<String>, BundleError> {
    if g.side() != Side::Complex {
        return Err(BundleError::SideMismatch);
    }
    if g.tau() != o.tau() {
        return Err(BundleError::TauMismatch);
    }
    let tr = build_transitions(o);
    let nv = 2 * o.n();
    let two_pi_i = Poly::pi_times(nv, CScalar::int(0, 2), 1);
    let mut special: Vec<CoverIndex> = o.chart_q.keys().cloned().collect();
    special.extend(g.overridden_charts());
    for (i, j) in pairs_touching(o.n(), &special) {
        let shift = i.shift_to(&j).as_coords();
        let lhs = o
            .connection_on(&j)
            .translate(&shift)
            .sub(&o.connection_on(&i))
            .add(&Form::function(Coords::Torus, &tr.exponent(&i, &j) * &two_pi_i).d());
        let rhs = g.zero_conn(&i, &j).scale(&-CScalar::i());
        if lhs != rhs {
            return Ok(Some(format!("[{i} {j}]")));
        }
    }
    Ok(None)
}

/// Tensor an untwisted object with the twist `τ`: the connection gains
/// `−πi·xᵗτdx`, while `s`, `a`, `q` are unchanged.
pub fn tensor_deform(o: &ComplexSideObject, tau: &CMatrix) -> Result<ComplexSideObject, BundleError> {
    if !o.tau.is_zero() {
        return Err(BundleError::NotUntwisted);
    }
    o.with_tau(tau.clone())
}

/// Check the cocycle over exhaustive or sampled triples.
pub fn transition_cocycle_failure(o: &ComplexSideObject, seed: u64) -> Option<String> {
    let triples = cover::triples(o.n(), crate::gerbe::SAMPLED_TRIPLES, seed);
    build_transitions(o).cocycle_failure(&triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gerbe::build_gerbe;
    use crate::linalg::{rat, ratio, validate_period};

    fn period(re: &[&[i64]], im: &[&[i64]]) -> PeriodMatrix {
        validate_period(CMatrix::from_parts(&CMatrix::from_ints(re), &CMatrix::from_ints(im)).unwrap()).unwrap()
    }

    fn object(p: PeriodMatrix, a: &[&[i64]], tau: CMatrix) -> ComplexSideObject {
        let n = p.n();
        let s = AffineSection::new(CMatrix::from_ints(a), vec![rat(0); n]).unwrap();
        ComplexSideObject::new(p, s, vec![rat(0); n], tau).unwrap()
    }

    fn i2() -> PeriodMatrix {
        period(&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]])
    }

    fn tau2() -> CMatrix {
        CMatrix::from_ints(&[&[0, 1], &[-1, 0]])
    }

    #[test]
    fn trivial_connection() {
        let o = object(i2(), &[&[0, 0], &[0, 0]], CMatrix::zeros(2, 2));
        assert!(connection_form(&o).is_zero());
    }

    #[test]
    fn circle_connection() {
        let o = object(period(&[&[0]], &[&[1]]), &[&[1]], CMatrix::zeros(1, 1));
        // Oracle: −2πi·(1·x + 0 + 0·i)·dy.
        let expect = Form::term(1, Coords::Torus, vec![1], &Poly::pi_times(2, CScalar::int(0, -2), 1) * &Poly::var(2, 0));
        assert_eq!(connection_form(&o), expect);
    }

    #[test]
    fn twist_adds_exactly_one_term() {
        let plain = object(i2(), &[&[1, 0], &[2, 1]], CMatrix::zeros(2, 2));
        let twisted = plain.with_tau(tau2()).unwrap();
        let diff = connection_form(&twisted).sub(&connection_form(&plain));
        // −πi·(x₁τ₁₂dx₂ + x₂τ₂₁dx₁) = −πi·x₁dx₂ + πi·x₂dx₁.
        let pi_i = Poly::pi_times(4, CScalar::i(), 1);
        let expect = Form::term(2, Coords::Torus, vec![1], &(-&pi_i) * &Poly::var(4, 0))
            .add(&Form::term(2, Coords::Torus, vec![0], &pi_i * &Poly::var(4, 1)));
        assert_eq!(diff, expect);
    }

    #[test]
    fn curvature_closed_forms() {
        let p = period(&[&[1, 2], &[0, 1]], &[&[2, 1], &[1, 1]]);
        let o = object(p, &[&[1, -1], &[2, 3]], tau2());
        assert_eq!(local_curvature(&o), local_curvature_closed_form(&o));
        let plain = o.with_tau(CMatrix::zeros(2, 2)).unwrap();
        assert_eq!(true_curvature(&o), true_curvature(&plain));
    }

    #[test]
    fn tau_only_local_curvature() {
        let o = object(i2(), &[&[0, 0], &[0, 0]], tau2());
        // Oracle: d(−πi(x₁dx₂ − x₂dx₁)) = −2πi dx₁∧dx₂.
        let expect = Form::term(2, Coords::Torus, vec![0, 1], Poly::pi_times(4, CScalar::int(0, -2), 1));
        assert_eq!(local_curvature(&o), expect);
    }

    #[test]
    fn swap_matrix_curvature() {
        let o = object(i2(), &[&[0, 1], &[1, 0]], CMatrix::zeros(2, 2));
        let m2pi = Poly::pi_times(4, CScalar::int(0, -2), 1);
        // −2πi(dx₁∧dy₂ + dx₂∧dy₁).
        let expect = Form::term(2, Coords::Torus, vec![0, 3], m2pi.clone()).add(&Form::term(2, Coords::Torus, vec![1, 2], m2pi));
        assert_eq!(true_curvature(&o), expect);
    }

    #[test]
    fn integrability_examples() {
        let o = object(period(&[&[3]], &[&[2]]), &[&[5]], CMatrix::zeros(1, 1));
        assert!(is_integrable(&o).unwrap().integrable);
        let o = object(i2(), &[&[0, 1], &[0, 0]], CMatrix::zeros(2, 2));
        let v = is_integrable(&o).unwrap();
        assert!(!v.integrable);
        assert!(!v.witness.is_zero());
    }

    #[test]
    fn twisted_curvature_02_example() {
        let o = object(i2(), &[&[1, 2], &[2, 5]], tau2());
        assert!(is_integrable(&o).unwrap().integrable);
        let split = pq_split(&local_curvature(&o), o.period()).unwrap().component(0, 2);
        // Oracle: D = −(i/2)I, TᵗτT = −τ, so −πi·(−1/4)(−τ) summed gives −(πi/2) dz̄₁∧dz̄₂.
        let expect = PQForm::term(2, vec![2, 3], Poly::pi_times(4, CScalar::new(rat(0), ratio(-1, 2)), 1));
        assert_eq!(split, expect);
    }

    #[test]
    fn circle_transitions() {
        let o = object(period(&[&[0]], &[&[1]]), &[&[1]], CMatrix::zeros(1, 1));
        let tr = build_transitions(&o);
        for i in CoverIndex::all(1) {
            for j in CoverIndex::all(1) {
                let wraps = (i.l()[0], j.l()[0]) == (1, 3) || (i.l()[0], j.l()[0]) == (3, 1);
                assert_eq!(!tr.is_trivial(&i, &j), wraps, "{i} {j}");
            }
        }
        assert_eq!(tr.exponent(&CoverIndex::new(vec![1], vec![2]), &CoverIndex::new(vec![3], vec![2])), Poly::var(2, 1));
    }

    #[test]
    fn cocycle_holds_for_integer_slopes() {
        let o = object(i2(), &[&[2, -1], &[3, 4]], CMatrix::zeros(2, 2));
        assert_eq!(transition_cocycle_failure(&o, 1), None);
    }

    #[test]
    fn compatibility_with_gerbe() {
        let o = object(period(&[&[1, 0], &[1, 2]], &[&[2, 0], &[0, 1]]), &[&[1, 2], &[0, 1]], tau2());
        let g = build_gerbe(2, &tau2(), Side::Complex).unwrap();
        assert_eq!(check_twisted_compatibility(&o, &g).unwrap(), None);
        let bad = o.with_chart_q(CoverIndex::new(vec![1, 1], vec![1, 1]), vec![ratio(1, 2), rat(0)]).unwrap();
        assert!(check_twisted_compatibility(&bad, &g).unwrap().is_some());
        let sym = build_gerbe(2, &tau2(), Side::Symplectic).unwrap();
        assert_eq!(check_twisted_compatibility(&o, &sym), Err(BundleError::SideMismatch));
    }

    #[test]
    fn tensoring() {
        let o = object(i2(), &[&[1, 1], &[1, 2]], CMatrix::zeros(2, 2));
        assert_eq!(tensor_deform(&o, &CMatrix::zeros(2, 2)).unwrap(), o);
        let t = tensor_deform(&o, &tau2()).unwrap();
        let delta = Form::linear(
            Coords::Torus,
            Half::X,
            &[&Poly::var(4, 1) * &Poly::pi_times(4, CScalar::i(), 1), &Poly::var(4, 0) * &Poly::pi_times(4, CScalar::int(0, -1), 1)],
        );
        assert_eq!(connection_form(&t), connection_form(&o).add(&delta));
        assert_eq!(is_integrable(&t).unwrap().integrable, is_integrable(&o).unwrap().integrable);
        assert_eq!(tensor_deform(&t, &tau2()), Err(BundleError::NotUntwisted));
    }
}
