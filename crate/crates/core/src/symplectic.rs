//! Mirror-side objects: Lagrangian graphs `y̌ = a x̌ + c` carrying a flat
//! (or twisted flat) connection `−2πi qᵗdx̌ − πi x̌ᵗτdx̌`.
//!
//! In ordinary mode the local system is an honest line bundle whose
//! transitions are `exp(πi·δᵗτx̌ + πi·δᵗNδ)`, where `N` is the strictly lower
//! triangular part of `τ` (so `τ = N − Nᵗ`). The constant only matters on
//! overlaps where two slots wrap at once. This data closes up iff `τ` is
//! integral. In twisted mode transitions are trivial and the defect is
//! absorbed by the mirror gerbe.

use num_traits::Zero;
use thiserror::Error;

use crate::bundles::{check_tau, cocycle_failure, is_integrable, pairs_touching, BundleError, ComplexSideObject};
use crate::forms::{restrict_to_graph, Coords, Form, FormError, Half, Poly};
use crate::gcs::{extract_mirror_data, GcsError, MirrorSymplecticData};
use crate::gerbe::{cover, CoverIndex, GerbeConnection, Side};
use crate::linalg::{ratio, CMatrix, CScalar, LinalgError, Rational};
use crate::section::AffineSection;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Gcs(#[from] GcsError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("ordinary mode needs an integral tau; use twisted mode")]
    NonIntegralTau,
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objects do not share parameters: {0}")]
    ParameterMismatch(&'static str),
    #[error("gerbe lives on the wrong side of the mirror")]
    SideMismatch,
    #[error("internal identity failed: {0}")]
    InternalAssertion(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Ordinary,
    Twisted,
}

impl Mode {
    /// Ordinary when `τ` is integral, otherwise twisted.
    pub fn natural(tau: &CMatrix) -> Mode {
        if tau.is_integer() {
            Mode::Ordinary
        } else {
            Mode::Twisted
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSideObject {
    section: AffineSection,
    q: Vec<Rational>,
    data: MirrorSymplecticData,
    mode: Mode,
}

impl SymplecticSideObject {
    /// Refuses ordinary mode for non-integral `τ`.
    pub fn new(section: AffineSection, q: Vec<Rational>, data: MirrorSymplecticData, mode: Mode) -> Result<Self, SymplecticError> {
        let n = data.n();
        for len in [section.n(), q.len()] {
            if len != n {
                return Err(SymplecticError::DimensionMismatch { expected: n, found: len });
            }
        }
        check_tau(n, &data.tau)?;
        if mode == Mode::Ordinary && !data.tau.is_integer() {
            return Err(SymplecticError::NonIntegralTau);
        }
        Ok(Self { section, q, data, mode })
    }

    /// The mirror partner of a complex-side object, sharing `(T, a, c, q, τ)`.
    pub fn mirror_of(e: &ComplexSideObject, mode: Mode) -> Result<Self, SymplecticError> {
        let data = extract_mirror_data(e.period(), e.tau())?;
        Self::new(e.section().clone(), e.q().to_vec(), data, mode)
    }

    pub fn n(&self) -> usize {
        self.data.n()
    }

    pub fn section(&self) -> &AffineSection {
        &self.section
    }

    pub fn q(&self) -> &[Rational] {
        &self.q
    }

    pub fn tau(&self) -> &CMatrix {
        &self.data.tau
    }

    pub fn data(&self) -> &MirrorSymplecticData {
        &self.data
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `T` recovered from `−(T⁻¹)ᵗ = B_mat + i·ω_mat`.
    pub fn period_t(&self) -> CMatrix {
        let w = CMatrix::from_parts(&self.data.b_mat, &self.data.omega_mat).expect("square blocks");
        -w.inverse().expect("B_mat + i·omega_mat is invertible").transpose()
    }
}

/// Connection and transition data of the (twisted) local system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystemData {
    pub connection_form: Form,
    tau: CMatrix,
    mode: Mode,
}

pub fn local_system(o: &SymplecticSideObject) -> LocalSystemData {
    let n = o.n();
    let nv = 2 * n;
    let tau = &o.data.tau;
    let coeffs: Vec<Poly> = (0..n)
        .map(|l| {
            let mut p = Poly::constant(nv, CScalar::real(o.q[l].clone())).scale(&CScalar::from_int(2));
            for k in 0..n {
                p = &p + &Poly::var(nv, k).scale(&tau[(k, l)]);
            }
            &p * &Poly::pi_times(nv, CScalar::int(0, -1), 1)
        })
        .collect();
    LocalSystemData { connection_form: Form::linear(Coords::Mirror, Half::X, &coeffs), tau: tau.clone(), mode: o.mode }
}

impl LocalSystemData {
    pub fn n(&self) -> usize {
        self.tau.rows()
    }

    /// `Ω = dω` (rank one), equal to `−πi·dx̌ᵗτdx̌` in both modes.
    pub fn curvature(&self) -> Form {
        self.connection_form.d()
    }

    /// Transition exponent in units of `2πi`, in chart `i` coordinates.
    pub fn exponent(&self, i: &CoverIndex, j: &CoverIndex) -> Poly {
        let n = self.n();
        let nv = 2 * n;
        if self.mode == Mode::Twisted {
            return Poly::zero(nv);
        }
        let d = i.shift_to(j).x;
        let half = CScalar::real(ratio(1, 2));
        let mut p = Poly::zero(nv);
        let mut constant = CScalar::zero();
        for (r, &dr) in d.iter().enumerate() {
            if dr == 0 {
                continue;
            }
            let dr = CScalar::from_int(dr);
            for (c, &dc) in d.iter().enumerate() {
                p = &p + &Poly::var(nv, c).scale(&(&self.tau[(r, c)] * &dr));
                // δᵗNδ with N the strictly lower part of τ.
                if r > c && dc != 0 {
                    constant += &(&(&self.tau[(r, c)] * &dr) * &CScalar::from_int(dc));
                }
            }
        }
        (&p + &Poly::constant(nv, constant)).scale(&half)
    }

    /// First nonempty triple where the transitions fail to close up.
    pub fn cocycle_failure(&self, seed: u64) -> Option<String> {
        let triples = cover::triples(self.n(), crate::gerbe::SAMPLED_TRIPLES, seed);
        cocycle_failure(&triples, |i, j| self.exponent(i, j))
    }
}

/// Lagrangian condition by the matrix test `ω_mat·a` symmetric and by
/// restricting `ω∨` to the graph; the two must agree.
pub fn is_lagrangian(o: &SymplecticSideObject) -> Result<bool, SymplecticError> {
    let matrix = (&o.data.omega_mat * o.section.a()).is_symmetric();
    let form = restrict_to_graph(&o.data.omega_form(), &o.section)?.is_zero();
    if matrix != form {
        return Err(SymplecticError::InternalAssertion(format!(
            "Lagrangian test: matrix route {matrix}, form route {form}"
        )));
    }
    Ok(matrix)
}

/// Curvature equals `−i·B_τ∨` on the graph, which reduces to `B_mat·a`
/// symmetric. Both routes are computed and must agree.
pub fn check_f2(o: &SymplecticSideObject) -> Result<bool, SymplecticError> {
    let matrix = (&o.data.b_mat * o.section.a()).is_symmetric();
    let restricted = restrict_to_graph(&o.data.b_form(), &o.section)?.scale(&-CScalar::i());
    let form = local_system(o).curvature() == restricted;
    if matrix != form {
        return Err(SymplecticError::InternalAssertion(format!(
            "B-field condition: matrix route {matrix}, form route {form}"
        )));
    }
    Ok(matrix)
}

/// Both conditions, cross-checked against `a·T` symmetric.
pub fn is_fukaya_object(o: &SymplecticSideObject) -> Result<bool, SymplecticError> {
    let verdict = is_lagrangian(o)? && check_f2(o)?;
    let single = (o.section.a() * &o.period_t()).is_symmetric();
    if verdict != single {
        return Err(SymplecticError::InternalAssertion(format!(
            "conditions give {verdict} but aT symmetric is {single}"
        )));
    }
    Ok(verdict)
}

/// `ch₁ = Σ_{i<j} τ_ij dx̌ⁱ∧dx̌ʲ` and whether it is integral. Also checks
/// `Ω = −2πi·ch₁`.
pub fn first_chern(o: &SymplecticSideObject) -> Result<(Form, bool), SymplecticError> {
    let n = o.n();
    let nv = 2 * n;
    let tau = &o.data.tau;
    let mut ch = Form::zero(n, Coords::Mirror);
    for i in 0..n {
        for j in i + 1..n {
            ch = ch.add(&Form::term(n, Coords::Mirror, vec![i, j], Poly::constant(nv, tau[(i, j)].clone())));
        }
    }
    let omega = local_system(o).curvature();
    if omega != ch.mul_poly(&Poly::pi_times(nv, CScalar::int(0, -2), 1)) {
        return Err(SymplecticError::InternalAssertion("curvature is not −2πi·ch₁".into()));
    }
    Ok((ch, tau.is_integer()))
}

/// Gluing check against the mirror gerbe: in twisted mode
/// `ω_j − ω_i = −i·(τω̌)_ij`; in ordinary mode the transitions absorb the
/// difference entirely.
pub fn check_local_system_compatibility(o: &SymplecticSideObject, g: &GerbeConnection) -> Result<Option<String>, SymplecticError> {
    if g.side() != Side::Symplectic {
        return Err(SymplecticError::SideMismatch);
    }
    if g.tau() != o.tau() {
        return Err(SymplecticError::ParameterMismatch("tau"));
    }
    let ls = local_system(o);
    let nv = 2 * o.n();
    let two_pi_i = Poly::pi_times(nv, CScalar::int(0, 2), 1);
    for (i, j) in pairs_touching(o.n(), &g.overridden_charts()) {
        let shift = i.shift_to(&j).as_coords();
        let w = &ls.connection_form;
        let lhs = w
            .translate(&shift)
            .sub(w)
            .add(&Form::function(Coords::Mirror, &ls.exponent(&i, &j) * &two_pi_i).d());
        let rhs = match o.mode {
            Mode::Twisted => g.zero_conn(&i, &j).scale(&-CScalar::i()),
            Mode::Ordinary => Form::zero(o.n(), Coords::Mirror),
        };
        if lhs != rhs {
            return Ok(Some(format!("[{i} {j}]")));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchVerdict {
    MirrorDual,
    BothObstructed,
}

impl MatchVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchVerdict::MirrorDual => "MIRROR_DUAL",
            MatchVerdict::BothObstructed => "BOTH_OBSTRUCTED",
        }
    }
}

/// Compare complex-side integrability with the symplectic-side object
/// conditions. Disagreement is an internal assertion failure.
pub fn mirror_match(e: &ComplexSideObject, l: &SymplecticSideObject) -> Result<MatchVerdict, SymplecticError> {
    if e.n() != l.n() {
        return Err(SymplecticError::DimensionMismatch { expected: e.n(), found: l.n() });
    }
    if e.section() != l.section() {
        return Err(SymplecticError::ParameterMismatch("section"));
    }
    if e.q() != l.q() {
        return Err(SymplecticError::ParameterMismatch("q"));
    }
    if e.tau() != l.tau() {
        return Err(SymplecticError::ParameterMismatch("tau"));
    }
    if *e.period().t() != l.period_t() {
        return Err(SymplecticError::ParameterMismatch("period matrix"));
    }
    let complex = is_integrable(e)?.integrable;
    let symplectic = is_fukaya_object(l)?;
    match (complex, symplectic) {
        (true, true) => Ok(MatchVerdict::MirrorDual),
        (false, false) => Ok(MatchVerdict::BothObstructed),
        _ => Err(SymplecticError::InternalAssertion(format!(
            "INCONSISTENT: complex side {complex}, symplectic side {symplectic}"
        ))),
    }
}
