use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Each variant maps onto a stable machine-readable code (see [`Error::code`])
/// which the command-line front end prints alongside exit status 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("element is not a unit in Z_p: {0}")]
    NotUnit(String),

    #[error("operation only defined over Q_p, got cyclotomic level {0}")]
    ExtensionInput(u32),

    #[error("argument outside the open unit disk: {0}")]
    OutsideDisk(String),

    #[error("exponential series diverges: {0}")]
    ExpDiverges(String),

    #[error("exponent is not in Z_p: {0}")]
    NotInZp(String),

    #[error("not a unit modulo p^m: {0}")]
    NotUnitModPm(String),

    #[error("coefficient field too small: {0}")]
    FieldTooSmall(String),

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("point outside level: {0}")]
    OutsideLevel(String),

    #[error("certificate violation: {0}")]
    CertViolation(String),

    #[error("outside supported range: {0}")]
    Unsupported(String),

    #[error("division by an element indistinguishable from zero")]
    DivisionByZero,

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "INVALID_FIELD",
            Error::NotUnit(_) => "NOT_UNIT",
            Error::ExtensionInput(_) => "EXTENSION_INPUT",
            Error::OutsideDisk(_) => "OUTSIDE_DISK",
            Error::ExpDiverges(_) => "EXP_DIVERGES",
            Error::NotInZp(_) => "NOT_IN_ZP",
            Error::NotUnitModPm(_) => "NOT_UNIT_MOD_PM",
            Error::FieldTooSmall(_) => "FIELD_TOO_SMALL",
            Error::Incompatible(_) => "INCOMPATIBLE",
            Error::LevelMismatch(_) => "LEVEL_MISMATCH",
            Error::OutsideLevel(_) => "OUTSIDE_LEVEL",
            Error::CertViolation(_) => "CERT_VIOLATION",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::Parse(_) => "PARSE",
        }
    }

    /// Malformed input as opposed to a violated mathematical precondition.
    pub fn is_malformed(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
