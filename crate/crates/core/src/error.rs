use core::fmt;

/// Idempotent component of a para-complex number or PSL(2,B) matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    Plus,
    Minus,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Plus => f.write_str("e+"),
            Component::Minus => f.write_str("e-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    DivisionByZeroDivisor,
    DomainError { function: &'static str, component: Component, value: f64 },
    InvalidCx { residual: f64 },
    InvalidCotVec { residual: f64 },
    InvalidTangent { residual: f64 },
    NonUnimodular { det: f64 },
    ConstraintViolation { residual: f64 },
    InvalidShapeOperator { det: f64 },
    ZeroDifferential,
    NotPositiveDefinite,
    NotTraceless { trace: f64 },
    NotLoxodromic { component: Component, trace: f64 },
    BaseMismatch,
    NotTimelike,
    DisjointAxes { component: Component },
    CyclicOrderMismatch,
    AntipodalPoints,
    StepTooLarge { c: f64, h: f64 },
    UnknownSuite,
}

impl Error {
    /// Domain errors are the ones caused by a well-formed input that lies
    /// outside the region where an operation is defined.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::UnknownSuite | Error::StepTooLarge { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZeroDivisor => f.write_str("division by a zero divisor (|y|^2 = 0)"),
            Error::DomainError { function, component, value } => {
                write!(f, "{function} undefined on component {component} = {value}")
            }
            Error::InvalidCx { residual } => {
                write!(f, "not a compatible linear complex structure (residual {residual:e})")
            }
            Error::InvalidCotVec { residual } => {
                write!(f, "sigma is not J-anti-invariant symmetric (residual {residual:e})")
            }
            Error::InvalidTangent { residual } => {
                write!(f, "jdot does not anticommute with J (residual {residual:e})")
            }
            Error::NonUnimodular { det } => write!(f, "matrix is not unimodular (det = {det})"),
            Error::ConstraintViolation { residual } => {
                write!(f, "trace constraint violated by {residual:e}")
            }
            Error::InvalidShapeOperator { det } => {
                write!(f, "shape operator has det B = {det}, outside (-1, 0]")
            }
            Error::ZeroDifferential => f.write_str("quadratic differential vanishes"),
            Error::NotPositiveDefinite => f.write_str("matrix is not symmetric positive definite"),
            Error::NotTraceless { trace } => write!(f, "matrix is not traceless (trace = {trace})"),
            Error::NotLoxodromic { component, trace } => {
                write!(f, "component {component} is not loxodromic (|trace| = {trace})")
            }
            Error::BaseMismatch => f.write_str("tangent vectors live at different base points"),
            Error::NotTimelike => f.write_str("points are not timelike related"),
            Error::DisjointAxes { component } => {
                write!(f, "axes do not intersect in component {component}")
            }
            Error::CyclicOrderMismatch => {
                f.write_str("fixed points have different cyclic orders in the two components")
            }
            Error::AntipodalPoints => f.write_str("timelike distance is pi/2, sign is ambiguous"),
            Error::StepTooLarge { c, h } => write!(f, "step {h} too large at c = {c}"),
            Error::UnknownSuite => f.write_str("unknown verification suite"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
