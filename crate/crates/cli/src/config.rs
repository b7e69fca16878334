//! Versioned JSON run configuration. Rationals are strings (`"3"`, `"-1/2"`)
//! so that exact values survive parsing.

use serde::Deserialize;
use torus_gcs::bundles::ComplexSideObject;
use torus_gcs::linalg::{alt_check, parse_rational, LinalgError, validate_period, CMatrix, PeriodMatrix, Rational};
use torus_gcs::section::AffineSection;
use torus_gcs::symplectic::Mode;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckGcs,
    Mirror,
    Deform,
    CheckGerbe,
    CheckObject,
    Match,
    DgVerify,
    Suite,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectSide {
    #[default]
    Complex,
    Symplectic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    /// Ordinary for integral `τ`, twisted otherwise.
    #[default]
    Auto,
    Ordinary,
    Twisted,
}

type Grid = Vec<Vec<String>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorus {
    n: usize,
    #[serde(rename = "T_re")]
    t_re: Grid,
    #[serde(rename = "T_im")]
    t_im: Grid,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDeformation {
    tau: Grid,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObject {
    a: Grid,
    #[serde(default)]
    c: Option<Vec<String>>,
    #[serde(default)]
    q: Option<Vec<String>>,
    #[serde(default)]
    side: ObjectSide,
    #[serde(default)]
    mode: ModeChoice,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    #[serde(default)]
    float_mode: bool,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    samples: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    version: u32,
    command: Command,
    torus: RawTorus,
    #[serde(default)]
    deformation: Option<RawDeformation>,
    #[serde(default)]
    objects: Vec<RawObject>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub float_mode: bool,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectEntry {
    pub object: ComplexSideObject,
    pub side: ObjectSide,
    pub mode: ModeChoice,
}

impl ObjectEntry {
    pub fn resolved_mode(&self) -> Mode {
        match self.mode {
            ModeChoice::Auto => Mode::natural(self.object.tau()),
            ModeChoice::Ordinary => Mode::Ordinary,
            ModeChoice::Twisted => Mode::Twisted,
        }
    }
}

/// A parsed and validated configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub period: PeriodMatrix,
    pub tau: CMatrix,
    pub objects: Vec<ObjectEntry>,
    pub options: Options,
}

fn vector(v: &[String], n: usize, what: &str) -> Result<Vec<Rational>, CliError> {
    if v.len() != n {
        return Err(CliError::Parse(format!("{what}: expected {n} entries, found {}", v.len())));
    }
    v.iter().map(|s| parse_rational(s).map_err(|e| CliError::Parse(format!("{what}: {e}")))).collect()
}

fn grid(g: &Grid, n: usize, what: &str) -> Result<CMatrix, CliError> {
    if g.len() != n {
        return Err(CliError::Parse(format!("{what}: expected {n} rows, found {}", g.len())));
    }
    let rows = g.iter().map(|r| vector(r, n, what)).collect::<Result<Vec<_>, _>>()?;
    Ok(CMatrix::from_rationals(n, n, |i, j| rows[i][j].clone()))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if raw.version != SCHEMA_VERSION {
            return Err(CliError::Parse(format!("unsupported config version {}", raw.version)));
        }
        let n = raw.torus.n;
        if n == 0 {
            return Err(CliError::Parse("torus.n must be positive".into()));
        }
        let t = CMatrix::from_parts(&grid(&raw.torus.t_re, n, "T_re")?, &grid(&raw.torus.t_im, n, "T_im")?)?;
        let period = validate_period(t)?;
        let tau = match &raw.deformation {
            Some(d) => grid(&d.tau, n, "tau")?,
            None => CMatrix::zeros(n, n),
        };
        if !tau.is_real() || !alt_check(&tau) {
            return Err(LinalgError::NotAlternating.into());
        }
        let objects = raw
            .objects
            .iter()
            .enumerate()
            .map(|(k, o)| {
                let zeros = || vec!["0".to_string(); n];
                let a = grid(&o.a, n, &format!("objects[{k}].a"))?;
                let c = vector(o.c.as_deref().unwrap_or(&zeros()), n, &format!("objects[{k}].c"))?;
                let q = vector(o.q.as_deref().unwrap_or(&zeros()), n, &format!("objects[{k}].q"))?;
                let section = AffineSection::new(a, c)?;
                let object = ComplexSideObject::new(period.clone(), section, q, tau.clone())?;
                Ok(ObjectEntry { object, side: o.side, mode: o.mode })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let options = Options {
            float_mode: raw.options.float_mode,
            seed: raw.options.seed,
            samples: raw.options.samples.unwrap_or(DEFAULT_SAMPLES),
        };
        Ok(RunConfig { command: raw.command, period, tau, objects, options })
    }

    pub fn n(&self) -> usize {
        self.period.n()
    }
}
