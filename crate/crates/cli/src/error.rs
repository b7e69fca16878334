use thiserror::Error;
use torus_gcs::bundles::BundleError;
use torus_gcs::dg::DgError;
use torus_gcs::forms::FormError;
use torus_gcs::gcs::GcsError;
use torus_gcs::gerbe::GerbeError;
use torus_gcs::linalg::LinalgError;
use torus_gcs::symplectic::SymplecticError;

use crate::ExitStatus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("ParseError: {0}")]
    Parse(String),
    /// Well-formed input violating a precondition; `kind` names the core error.
    #[error("{kind}: {message}")]
    Invalid { kind: &'static str, message: String },
    #[error("InternalAssertion: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Internal(_) => ExitStatus::Internal,
            _ => ExitStatus::InvalidInput,
        }
    }

    fn invalid(kind: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Invalid { kind, message: e.to_string() }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        let kind = match &e {
            LinalgError::NonSquare { .. } => "NonSquare",
            LinalgError::DimensionMismatch { .. } => "DimensionMismatch",
            LinalgError::Singular => "Singular",
            LinalgError::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            LinalgError::NotSymmetric => "NotSymmetric",
            LinalgError::NotReal => "NotReal",
            LinalgError::NotAlternating => "NotAlternating",
            LinalgError::NotInteger => "NotInteger",
            LinalgError::Parse(_) => return CliError::Parse(e.to_string()),
        };
        CliError::invalid(kind, e)
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        CliError::invalid("FormMismatch", e)
    }
}

impl From<GcsError> for CliError {
    fn from(e: GcsError) -> Self {
        match e {
            GcsError::Linalg(l) => l.into(),
            GcsError::InternalAssertion(m) => CliError::Internal(m.into()),
            GcsError::NotAlternating(_) => CliError::invalid("NotAlternating", e),
            GcsError::NotReal(_) => CliError::invalid("NotReal", e),
            GcsError::DimensionMismatch { .. } => CliError::invalid("DimensionMismatch", e),
            GcsError::InvalidStructure(_) => CliError::invalid("InvalidStructure", e),
        }
    }
}

impl From<GerbeError> for CliError {
    fn from(e: GerbeError) -> Self {
        CliError::invalid("GerbeError", e)
    }
}

impl From<BundleError> for CliError {
    fn from(e: BundleError) -> Self {
        match e {
            BundleError::Linalg(l) => l.into(),
            BundleError::Form(f) => f.into(),
            BundleError::InternalAssertion(m) => CliError::Internal(m),
            BundleError::NotAlternating => CliError::invalid("NotAlternating", e),
            _ => CliError::invalid("InvalidObject", e),
        }
    }
}

impl From<SymplecticError> for CliError {
    fn from(e: SymplecticError) -> Self {
        match e {
            SymplecticError::Linalg(l) => l.into(),
            SymplecticError::Form(f) => f.into(),
            SymplecticError::Gcs(g) => g.into(),
            SymplecticError::Bundle(b) => b.into(),
            SymplecticError::InternalAssertion(m) => CliError::Internal(m),
            SymplecticError::NonIntegralTau => CliError::invalid("NonIntegralTau", e),
            SymplecticError::ParameterMismatch(_) => CliError::invalid("ParameterMismatch", e),
            _ => CliError::invalid("InvalidObject", e),
        }
    }
}

impl From<DgError> for CliError {
    fn from(e: DgError) -> Self {
        match e {
            DgError::Form(f) => f.into(),
            DgError::Bundle(b) => b.into(),
            DgError::ParameterMismatch(_) => CliError::invalid("ParameterMismatch", e),
            _ => CliError::invalid("DgError", e),
        }
    }
}
