//! Hom-complexes between complex-side objects.
//!
//! A degree `r` morphism `E₁ → E₂` is a `(0, r)`-form on one chart. Its
//! differential is `∂̄φ + A₂∧φ − (−1)ʳ φ∧A₁` with `Aₖ` the `(0,1)`-part of
//! the untwisted connection. The `τ` term of a twisted connection is common
//! to both endpoints and cancels, which [`differential_twisted`] lets one
//! confirm. Composition is the wedge product.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bundles::{connection_form, curvature_02_closed_form, is_integrable, BundleError, ComplexSideObject};
use crate::forms::{dbar, pq_split, FormError, PQForm, Poly};
use crate::linalg::{ratio, CScalar};
use crate::report::{AxiomLine, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("endpoints do not share {0}")]
    ParameterMismatch(&'static str),
    #[error("target of the first morphism is not the source of the second")]
    ChainMismatch,
    #[error("body is not of bidegree (0,{0})")]
    NotPure(usize),
    #[error("object {0} is not integrable")]
    NonIntegrableObject(usize),
    #[error("no objects given")]
    NoObjects,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: ComplexSideObject,
    target: ComplexSideObject,
    r: usize,
    body: PQForm,
}

fn shared(a: &ComplexSideObject, b: &ComplexSideObject) -> Result<(), DgError> {
    if a.period() != b.period() {
        return Err(DgError::ParameterMismatch("the period matrix"));
    }
    if a.tau() != b.tau() {
        return Err(DgError::ParameterMismatch("tau"));
    }
    Ok(())
}

impl Morphism {
    pub fn new(source: ComplexSideObject, target: ComplexSideObject, r: usize, body: PQForm) -> Result<Self, DgError> {
        shared(&source, &target)?;
        if body.n() != source.n() {
            return Err(FormError::DimensionMismatch { expected: source.n(), found: body.n() }.into());
        }
        if !body.is_pure(0, r) {
            return Err(DgError::NotPure(r));
        }
        Ok(Self { source, target, r, body })
    }

    /// The constant `1` endomorphism.
    pub fn identity(o: &ComplexSideObject) -> Self {
        let body = PQForm::function(Poly::one(2 * o.n()));
        Self { source: o.clone(), target: o.clone(), r: 0, body }
    }

    pub fn source(&self) -> &ComplexSideObject {
        &self.source
    }

    pub fn target(&self) -> &ComplexSideObject {
        &self.target
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn body(&self) -> &PQForm {
        &self.body
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg {}: {}", self.r, self.body)
    }
}

/// `(0,1)`-part of the connection, with or without its `τ` term.
pub fn connection_01(o: &ComplexSideObject, twisted: bool) -> Result<PQForm, DgError> {
    let w = if twisted { connection_form(o) } else { o.untwisted_connection_form() };
    Ok(pq_split(&w, o.period())?.component(0, 1))
}

fn differential_with(phi: &Morphism, twisted: bool) -> Result<Morphism, DgError> {
    let a1 = connection_01(&phi.source, twisted)?;
    let a2 = connection_01(&phi.target, twisted)?;
    let sign = if phi.r.is_multiple_of(2) { CScalar::from_int(1) } else { CScalar::from_int(-1) };
    let body = dbar(&phi.body, phi.source.period())?
        .add(&a2.wedge(&phi.body)?)
        .sub(&phi.body.wedge(&a1)?.scale(&sign));
    Ok(Morphism { source: phi.source.clone(), target: phi.target.clone(), r: phi.r + 1, body })
}

pub fn differential(phi: &Morphism) -> Result<Morphism, DgError> {
    differential_with(phi, false)
}

/// Same formula with the twisted connections; agrees with [`differential`].
pub fn differential_twisted(phi: &Morphism) -> Result<Morphism, DgError> {
    differential_with(phi, true)
}

/// `ψ∘φ = ψ∧φ`.
pub fn compose(psi: &Morphism, phi: &Morphism) -> Result<Morphism, DgError> {
    if phi.target != psi.source {
        return Err(DgError::ChainMismatch);
    }
    Ok(Morphism {
        source: phi.source.clone(),
        target: psi.target.clone(),
        r: phi.r + psi.r,
        body: psi.body.wedge(&phi.body)?,
    })
}

/// Expected value of `d²φ`: `Ω₂^{0,2}∧φ − φ∧Ω₁^{0,2}`, from the closed form of
/// the `(0,2)`-curvature.
pub fn expected_d_squared(phi: &Morphism) -> Result<PQForm, DgError> {
    let o1 = curvature_02_closed_form(&phi.source);
    let o2 = curvature_02_closed_form(&phi.target);
    Ok(o2.wedge(&phi.body)?.sub(&phi.body.wedge(&o1)?))
}

fn random_coefficient<R: Rng>(rng: &mut R, nvars: usize) -> Poly {
    let terms = rng.random_range(1..=2);
    Poly::from_terms(
        nvars,
        (0..terms).map(|_| {
            let mut e = vec![0u32; nvars + 1];
            for _ in 0..rng.random_range(0..=2) {
                e[rng.random_range(0..nvars)] += 1;
            }
            let c = CScalar::new(ratio(rng.random_range(-3..=3), rng.random_range(1..=2)), ratio(rng.random_range(-2..=2), 1));
            (e, c)
        }),
    )
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (0..n).filter(|&b| m & (1 << b) != 0).collect())
        .collect()
}

/// A random degree-`r` morphism: polynomial coefficients of degree ≤ 2 on
/// up to two `dz̄` monomials.
pub fn random_morphism<R: Rng>(rng: &mut R, source: &ComplexSideObject, target: &ComplexSideObject, r: usize) -> Result<Morphism, DgError> {
    let n = source.n();
    let nv = 2 * n;
    let mut support = subsets(n, r);
    let mut body = PQForm::zero(n);
    for _ in 0..support.len().min(2) {
        let gens = support.swap_remove(rng.random_range(0..support.len()));
        let gens = gens.into_iter().map(|g| g + n).collect();
        body = body.add(&PQForm::term(n, gens, random_coefficient(rng, nv)));
    }
    Morphism::new(source.clone(), target.clone(), r, body)
}

pub const D_SQUARED: &str = "d-squared";
pub const LEIBNIZ: &str = "leibniz";
pub const TAU_CANCELLATION: &str = "tau-cancellation";
pub const ASSOCIATIVITY: &str = "associativity";
pub const UNIT: &str = "unit";

#[derive(Default)]
struct FirstFailures {
    d2: Option<String>,
    leibniz: Option<String>,
    tau: Option<String>,
    assoc: Option<String>,
    unit: Option<String>,
}

fn note(slot: &mut Option<String>, ok: bool, witness: impl FnOnce() -> String) {
    if !ok && slot.is_none() {
        *slot = Some(witness());
    }
}

/// Check `d² = 0`, Leibniz, `τ`-independence of `d`, associativity and
/// unitality on `samples` seeded morphism pairs among `objects`. Refuses
/// non-integrable objects, where `d² ≠ 0` is expected.
pub fn verify_dg_axioms(objects: &[ComplexSideObject], samples: usize, seed: u64) -> Result<Report, DgError> {
    let first = objects.first().ok_or(DgError::NoObjects)?;
    for o in objects {
        shared(first, o)?;
    }
    for (k, o) in objects.iter().enumerate() {
        if !is_integrable(o)?.integrable {
            return Err(DgError::NonIntegrableObject(k));
        }
    }
    let n = first.n();
    let max_r = n.min(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = FirstFailures::default();
    for s in 0..samples {
        let pick: Vec<&ComplexSideObject> = (0..4).map(|_| &objects[rng.random_range(0..objects.len())]).collect();
        let r1 = rng.random_range(0..=max_r);
        let phi = random_morphism(&mut rng, pick[0], pick[1], r1)?;
        let r2 = rng.random_range(0..=max_r);
        let psi = random_morphism(&mut rng, pick[1], pick[2], r2)?;
        let r3 = rng.random_range(0..=max_r);
        let chi = random_morphism(&mut rng, pick[2], pick[3], r3)?;

        let dphi = differential(&phi)?;
        let ddphi = differential(&dphi)?;
        note(&mut f.d2, ddphi.body.is_zero(), || format!("sample {s}: phi = {}; d^2 phi = {}", phi.body, ddphi.body));

        let lhs = differential(&compose(&psi, &phi)?)?.body;
        let sign = if psi.r % 2 == 0 { CScalar::from_int(1) } else { CScalar::from_int(-1) };
        let rhs = compose(&differential(&psi)?, &phi)?.body.add(&compose(&psi, &dphi)?.body.scale(&sign));
        note(&mut f.leibniz, lhs == rhs, || {
            format!("sample {s}: psi = {}; phi = {}; d(psi phi) - (d psi) phi -+ psi d phi = {}", psi.body, phi.body, lhs.sub(&rhs))
        });

        let tw = differential_twisted(&phi)?;
        note(&mut f.tau, tw == dphi, || format!("sample {s}: phi = {}; difference = {}", phi.body, tw.body.sub(&dphi.body)));

        let left = compose(&chi, &compose(&psi, &phi)?)?;
        let right = compose(&compose(&chi, &psi)?, &phi)?;
        note(&mut f.assoc, left == right, || format!("sample {s}: {} vs {}", left.body, right.body));

        let unit_ok = compose(&Morphism::identity(&phi.target), &phi)? == phi
            && compose(&phi, &Morphism::identity(&phi.source))? == phi
            && differential(&Morphism::identity(&phi.source))?.body.is_zero();
        note(&mut f.unit, unit_ok, || format!("sample {s}: phi = {}", phi.body));
    }
    let mut report = Report::default();
    report.push(AxiomLine::from_failure(D_SQUARED, f.d2));
    report.push(AxiomLine::from_failure(LEIBNIZ, f.leibniz));
    report.push(AxiomLine::from_failure(TAU_CANCELLATION, f.tau));
    report.push(AxiomLine::from_failure(ASSOCIATIVITY, f.assoc));
    report.push(AxiomLine::from_failure(UNIT, f.unit));
    Ok(report)
}
