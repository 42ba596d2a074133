use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Which axiom or structural condition a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Code {
    BadIdentifier,
    DuplicateElement,
    UnknownElement,
    Antisymmetry,
    NotUpset,
    /// k-sets closed under codirected intersections.
    S1K,
    /// o-sets closed under directed unions.
    S1O,
    /// compactness of k-sets.
    S2K,
    /// cocompactness of o-sets.
    S2O,
    /// principal upsets are k-sets.
    S3K,
    /// complements of principal downsets are o-sets.
    S3O,
    /// o-sets are unions of k-sets.
    A1O,
    /// k-sets are intersections of o-sets.
    A1K,
    /// o-sets separate points.
    A2,
    /// smallest k-set containing a point.
    A3K,
    /// largest o-set avoiding a point.
    A3O,
    NotPurifiedK,
    NotPurifiedO,
    /// codirected meets inside the k-side.
    L1K,
    /// directed joins inside the o-side.
    L1O,
    /// compactness of k-elements.
    L2K,
    /// cocompactness of o-elements.
    L2O,
    Density,
    NotLattice,
    Weakening,
    CRelImage,
    CRelPreimage,
    GaloisCondition,
    Adjunction,
    KPreserved,
    OPreserved,
    NotMonotone,
    NotFunction,
    TopEmpty,
    TopWhole,
    TopUnion,
    TopIntersection,
    T0,
    DirectedUnion,
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One violated condition together with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    pub witness: String,
}

impl Diagnostic {
    pub fn new(code: Code, witness: impl Into<String>) -> Self {
        Diagnostic { code, witness: witness.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code, self.witness)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid structure: {}", list(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("guardrail: {what} has size {size}, limit {limit} (use the override to proceed)")]
    Guardrail { what: &'static str, size: usize, limit: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not distributive, witness {0}")]
    NotDistributive(String),
    #[error("theorem violation ({theorem}): {witness}")]
    TheoremViolation { theorem: &'static str, witness: String },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("parse error{}: {message}", loc(.line, .field))]
    Parse { line: Option<usize>, field: String, message: String },
}

fn list(ds: &[Diagnostic]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

fn loc(line: &Option<usize>, field: &str) -> String {
    match (line, field.is_empty()) {
        (Some(l), false) => format!(" at line {l}, field `{field}`"),
        (Some(l), true) => format!(" at line {l}"),
        (None, false) => format!(" in field `{field}`"),
        (None, true) => String::new(),
    }
}

impl Error {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            Error::Invalid(ds) => ds,
            _ => &[],
        }
    }

    pub fn has_code(&self, code: Code) -> bool {
        self.diagnostics().iter().any(|d| d.code == code)
    }

    pub(crate) fn theorem(theorem: &'static str, witness: String) -> Error {
        log::error!("theorem violation ({theorem}): {witness}");
        Error::TheoremViolation { theorem, witness }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Turn a non-empty diagnostic list into an error.
pub(crate) fn check(ds: Vec<Diagnostic>) -> Result<()> {
    if ds.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(ds))
    }
}
