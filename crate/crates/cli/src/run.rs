//! Pipeline stages. Each stage returns its records; the caller sorts them by
//! check name, so stage order never affects output.

use torus_gcs::bundles::{
    check_twisted_compatibility, is_integrable, local_curvature, tensor_deform, transition_cocycle_failure, ComplexSideObject,
};
use torus_gcs::dg::{verify_dg_axioms, DgError};
use torus_gcs::gcs::{b_transform, build_it, closed_form_parts, extract_mirror_data, factorization_holds, mirror, BField};
use torus_gcs::gerbe::{build_gerbe, one_connection, Side};
use torus_gcs::forms::Coords;
use torus_gcs::linalg::CMatrix;
use torus_gcs::symplectic::{
    check_f2, check_local_system_compatibility, first_chern, is_lagrangian, local_system, mirror_match, Mode, SymplecticError,
    SymplecticSideObject,
};

use crate::config::{Command, ObjectSide, ObjectEntry, RunConfig};
use crate::records::{self, Format, Record};
use crate::{float, CliError, ExitStatus};

/// Command-line values that take precedence over the config's options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub float_mode: bool,
}

fn check(name: &str, anchor: &'static str, ok: bool, witness: impl FnOnce() -> String) -> Record {
    if ok {
        Record::pass(name, anchor)
    } else {
        Record::fail(name, anchor, witness())
    }
}

fn tau_field(cfg: &RunConfig) -> Result<BField, CliError> {
    Ok(BField::tau(&cfg.tau)?)
}

fn check_gcs(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let j = build_it(&cfg.period);
    let deformed = b_transform(&j, &tau_field(cfg)?)?;
    Ok(vec![
        check("gcs.square", "gcs-axioms", j.squares_to_minus_one(), || format!("J = {}", j.matrix())),
        check("gcs.pairing", "gcs-axioms", j.preserves_pairing(), || format!("J = {}", j.matrix())),
        check("gcs.deformed-axioms", "b-field-transform", deformed.satisfies_axioms(), || {
            format!("J_tau = {}", deformed.matrix())
        }),
        check("gcs.mirror-axioms", "mirror-transform", mirror(&j).satisfies_axioms(), || {
            format!("mirror J = {}", mirror(&j).matrix())
        }),
    ])
}

fn check_mirror(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let p = &cfg.period;
    let j = build_it(p);
    let b = tau_field(cfg)?;
    let m = mirror(&j);
    let lhs = mirror(&b_transform(&j, &b)?);
    let rhs = b_transform(&m, &b)?;
    let (re, im) = closed_form_parts(p)?;
    let w = CMatrix::from_parts(&re, &im)?;
    let closed = &w * &-p.t().transpose() == CMatrix::identity(p.n());
    let data = extract_mirror_data(p, &cfg.tau)?;
    Ok(vec![
        check("mirror.involution", "mirror-involution", mirror(&m) == j, || format!("mirror(mirror J) = {}", mirror(&m).matrix())),
        check("mirror.intertwining", "mirror-intertwining", lhs == rhs, || {
            format!("mirror(J_tau) = {}; sheared mirror J = {}", lhs.matrix(), rhs.matrix())
        }),
        check("mirror.factorization", "mirror-factorization", factorization_holds(p), || format!("mirror J = {}", m.matrix())),
        check("mirror.closed-forms", "mirror-closed-forms", closed, || format!("Re = {re}; Im = {im}")),
        check("mirror.symplectic-form", "mirror-symplectic-data", data.omega_mat.inverse().is_ok(), || {
            format!("omega_mat = {}", data.omega_mat)
        }),
    ])
}

fn check_deform(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let j = build_it(&cfg.period);
    let b = tau_field(cfg)?;
    let moved = b_transform(&j, &b)?;
    let back = b_transform(&moved, &b.neg())?;
    let mut out = vec![
        check("deform.rigidity", "b-field-rigidity", (moved == j) == cfg.tau.is_zero(), || {
            format!("tau = {}; J_tau = {}", cfg.tau, moved.matrix())
        }),
        check("deform.inverse", "b-field-transform", back == j, || format!("J_tau then -tau = {}", back.matrix())),
    ];
    let one = one_connection(&cfg.tau, Coords::Torus);
    for (k, entry) in cfg.objects.iter().enumerate() {
        let o = &entry.object;
        let flat = o.with_tau(CMatrix::zeros(o.n(), o.n()))?;
        let rebuilt = tensor_deform(&flat, &cfg.tau)?;
        let shift = local_curvature(o).sub(&local_curvature(&flat));
        out.push(check(&format!("deform.object{k:02}.tensor"), "tensor-deformation", rebuilt == *o && shift == one, || {
            format!("curvature shift = {shift}")
        }));
    }
    Ok(out)
}

fn check_gerbe(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    for (side, tag) in [(Side::Complex, "complex"), (Side::Symplectic, "symplectic")] {
        let g = build_gerbe(cfg.n(), &cfg.tau, side)?;
        for line in g.check_axioms(cfg.options.seed).lines {
            out.push(Record::from_failure(format!("gerbe.{tag}.{}", line.name), "gerbe-axioms", line.witness));
        }
    }
    let verdict = if cfg.tau.is_integer() { "INTEGRAL" } else { "NON_INTEGRAL" };
    out.push(Record::verdict("gerbe.tau-integrality", "first-chern-integrality", verdict));
    Ok(out)
}

fn complex_checks(k: usize, o: &ComplexSideObject, seed: u64) -> Result<Vec<Record>, CliError> {
    let name = |c: &str| format!("object{k:02}.complex.{c}");
    let integ = is_integrable(o)?;
    let g = build_gerbe(o.n(), o.tau(), Side::Complex)?;
    Ok(vec![
        check(&name("integrable"), "integrability-criterion", integ.integrable, || format!("(0,2)-curvature = {}", integ.witness)),
        Record::from_failure(name("transition-cocycle"), "transition-cocycle", transition_cocycle_failure(o, seed)),
        Record::from_failure(name("twisted-compatibility"), "twisted-compatibility", check_twisted_compatibility(o, &g)?),
    ])
}

fn symplectic_object(entry: &ObjectEntry) -> Result<SymplecticSideObject, CliError> {
    Ok(SymplecticSideObject::mirror_of(&entry.object, entry.resolved_mode())?)
}

fn symplectic_checks(k: usize, entry: &ObjectEntry, seed: u64) -> Result<Vec<Record>, CliError> {
    let name = |c: &str| format!("object{k:02}.symplectic.{c}");
    let l = symplectic_object(entry)?;
    let g = build_gerbe(l.n(), l.tau(), Side::Symplectic)?;
    let cocycle = match l.mode() {
        Mode::Ordinary => local_system(&l).cocycle_failure(seed),
        Mode::Twisted => None,
    };
    let (ch, integral) = first_chern(&l)?;
    let lag = is_lagrangian(&l)?;
    let f2 = check_f2(&l)?;
    let a = l.section().a().clone();
    let mut chern = Record::verdict(name("first-chern"), "first-chern-integrality", if integral { "INTEGRAL" } else { "NON_INTEGRAL" });
    if !integral {
        chern.witness = Some(format!("ch1 = {ch}"));
    }
    Ok(vec![
        check(&name("lagrangian"), "lagrangian-condition", lag, || format!("omega_mat a = {}", &l.data().omega_mat * &a)),
        check(&name("b-field-condition"), "b-field-condition", f2, || format!("B_mat a = {}", &l.data().b_mat * &a)),
        Record::from_failure(name("local-system-cocycle"), "transition-cocycle", cocycle),
        Record::from_failure(name("gerbe-compatibility"), "twisted-compatibility", check_local_system_compatibility(&l, &g)?),
        chern,
    ])
}

fn check_objects(cfg: &RunConfig, both_sides: bool) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    let seed = cfg.options.seed;
    for (k, entry) in cfg.objects.iter().enumerate() {
        if both_sides || entry.side == ObjectSide::Complex {
            out.extend(complex_checks(k, &entry.object, seed)?);
        }
        if both_sides || entry.side == ObjectSide::Symplectic {
            out.extend(symplectic_checks(k, entry, seed)?);
        }
    }
    Ok(out)
}

fn check_match(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    for (k, entry) in cfg.objects.iter().enumerate() {
        let l = symplectic_object(entry)?;
        let v = match mirror_match(&entry.object, &l) {
            Ok(v) => v,
            Err(SymplecticError::InternalAssertion(m)) => return Err(CliError::Internal(m)),
            Err(e) => return Err(e.into()),
        };
        out.push(Record::verdict(format!("match.object{k:02}"), "mirror-duality", v.as_str()));
    }
    Ok(out)
}

fn check_dg(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let objects: Vec<ComplexSideObject> = cfg.objects.iter().map(|s| s.object.clone()).collect();
    match verify_dg_axioms(&objects, cfg.options.samples, cfg.options.seed) {
        Ok(report) => Ok(report
            .lines
            .into_iter()
            .map(|l| Record::from_failure(format!("dg.{}", l.name), "dg-category", l.witness))
            .collect()),
        Err(e @ (DgError::NonIntegrableObject(_) | DgError::NoObjects)) => {
            Ok(vec![Record::fail("dg.preconditions", "dg-category", format!("refused: {e}"))])
        }
        Err(e) => Err(e.into()),
    }
}

/// Run the configured command and return its records sorted by name.
pub fn execute(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let mut out = match cfg.command {
        Command::CheckGcs => check_gcs(cfg)?,
        Command::Mirror => check_mirror(cfg)?,
        Command::Deform => check_deform(cfg)?,
        Command::CheckGerbe => check_gerbe(cfg)?,
        Command::CheckObject => check_objects(cfg, false)?,
        Command::Match => check_match(cfg)?,
        Command::DgVerify => check_dg(cfg)?,
        Command::Suite => {
            let mut v = check_gcs(cfg)?;
            v.extend(check_mirror(cfg)?);
            v.extend(check_deform(cfg)?);
            v.extend(check_gerbe(cfg)?);
            v.extend(check_objects(cfg, true)?);
            v.extend(check_match(cfg)?);
            v.extend(check_dg(cfg)?);
            v
        }
    };
    if cfg.options.float_mode {
        let objects: Vec<ComplexSideObject> = cfg.objects.iter().map(|s| s.object.clone()).collect();
        out.extend(float::float_checks(&cfg.period, &cfg.tau, &objects)?);
    }
    records::sort(&mut out);
    Ok(out)
}

/// Outcome of a run: exit status, standard output and optional error text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: Option<String>,
}

fn failure(e: CliError) -> Outcome {
    Outcome { status: e.status(), stdout: String::new(), stderr: Some(format!("error: {e}")) }
}

/// Parse, apply overrides, execute and render. Panics inside the kernel are
/// reported as internal assertion failures.
pub fn run_text(text: &str, overrides: &Overrides, format: Format) -> Outcome {
    let mut cfg = match RunConfig::from_json(text) {
        Ok(c) => c,
        Err(e) => return failure(e),
    };
    if let Some(s) = overrides.seed {
        cfg.options.seed = s;
    }
    if let Some(s) = overrides.samples {
        cfg.options.samples = s;
    }
    cfg.options.float_mode |= overrides.float_mode;
    let result = std::panic::catch_unwind(|| execute(&cfg))
        .unwrap_or_else(|_| Err(CliError::Internal("panic inside the verification kernel".into())));
    match result {
        Ok(recs) => Outcome { status: records::status(&recs), stdout: records::render(&recs, format), stderr: None },
        Err(e) => failure(e),
    }
}
