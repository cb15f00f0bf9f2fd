use thiserror::Error;

/// Every failure the workbench can report.
///
/// The `Display` strings are part of the command-line contract: scripts grep
/// for them, so keep them stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("pole of rational function")]
    RationalPole,
    #[error("gamma pole at {0}")]
    GammaPole(String),
    #[error("divergent series")]
    DivergentSeries,
    #[error("lower-parameter pole")]
    LowerParameterPole,
    #[error("zero parameter, operator singular")]
    ZeroParameter,
    #[error("operator singular")]
    OperatorSingular,
    #[error("unsupported shift direction")]
    UnsupportedShift,
    #[error("target not reachable: {0}")]
    Unreachable(String),
    #[error("representation undefined; use IBP module")]
    RepresentationUndefined,
    #[error("not a master: {0}")]
    NotAMaster(String),
    #[error("relation count mismatch: nullspace dimension {0}")]
    RelationCountMismatch(usize),
    #[error("outside convergence domain")]
    OutsideConvergence,
    #[error("IBP inconsistency: {0}")]
    IbpInconsistency(String),
    #[error("not reducible in table: {0}")]
    NotReducible(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
