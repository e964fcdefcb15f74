use crate::dsl::Diagnostic;
use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch { what: String, expected: usize, found: usize },
    #[error("invalid Lie superalgebra:\n{0}")]
    InvalidAlgebra(ValidationReport),
    #[error("element does not belong to this algebra: {0}")]
    AlgebraMismatch(String),
    #[error("map is not a parity-preserving bracket homomorphism:\n{0}")]
    InvalidAutomorphism(ValidationReport),
    #[error("invalid Harish-Chandra pair:\n{0}")]
    InvalidPair(ValidationReport),
    #[error("invalid unitary representation:\n{0}")]
    InvalidRepresentation(ValidationReport),
    #[error("basis element `{0}` is not even")]
    NotEven(String),
    #[error("operation needs a line group: {0}")]
    NeedsLineGroup(String),
    #[error("function classes do not match: {0}")]
    FunctionClassMismatch(String),
    #[error("unsupported line instance: Ad(t) acts nontrivially on the superalgebra")]
    NontrivialLineAction,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("probe image is zero; reconstruction undefined")]
    ZeroProbe,
    #[error("certified bound violated: lower {lower} > upper {upper}")]
    BoundViolation { lower: f64, upper: f64 },
    #[error("{0}")]
    Parse(Diagnostic),
    #[error("workspace: {0}")]
    Workspace(String),
}
