use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    FieldMismatch,
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    BadPrime {
        p: u64,
        reason: &'static str,
    },
    NLevelTooSmall {
        n: usize,
        required: usize,
    },
    BadPairing,
    ZeroParameter {
        vertex: String,
    },
    InvalidQuiver(String),
    NonComposable {
        pos: usize,
    },
    Parse {
        pos: usize,
        msg: String,
    },
    DegreeOverflow {
        degree: i64,
        max: usize,
    },
    VertexMismatch,
    NotHomogeneous,
    Obstruction {
        value: String,
    },
    SingularGroupElement {
        arrow: String,
    },
    UnsupportedShape(String),
    RetryExhausted {
        attempts: usize,
    },
    Consistency(String),
    DimensionMismatch(String),
    TooLarge {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    NotAComplex,
    SingularD,
    Singular,
    NotAModule(String),
}

impl Error {
    /// Variant name, used as a stable tag in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::FieldMismatch => "FieldMismatch",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::BadPrime { .. } => "BadPrime",
            Error::NLevelTooSmall { .. } => "NLevelTooSmall",
            Error::BadPairing => "BadPairing",
            Error::ZeroParameter { .. } => "ZeroParameter",
            Error::InvalidQuiver(_) => "InvalidQuiver",
            Error::NonComposable { .. } => "NonComposable",
            Error::Parse { .. } => "Parse",
            Error::DegreeOverflow { .. } => "DegreeOverflow",
            Error::VertexMismatch => "VertexMismatch",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::Obstruction { .. } => "Obstruction",
            Error::SingularGroupElement { .. } => "SingularGroupElement",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::RetryExhausted { .. } => "RetryExhausted",
            Error::Consistency(_) => "Consistency",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotAComplex => "NotAComplex",
            Error::SingularD => "SingularD",
            Error::Singular => "Singular",
            Error::NotAModule(_) => "NotAModule",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "scalars from different fields"),
            Error::ShapeMismatch { expected, found } => write!(
                f,
                "shape mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::BadPrime { p, reason } => write!(f, "bad prime {p}: {reason}"),
            Error::NLevelTooSmall { n, required } => {
                write!(f, "level bound {n} too small, need at least {required}")
            }
            Error::BadPairing => write!(
                f,
                "stability vector does not pair to zero with the dimension"
            ),
            Error::ZeroParameter { vertex } => write!(f, "parameter at vertex {vertex} is zero"),
            Error::InvalidQuiver(m) => write!(f, "invalid quiver: {m}"),
            Error::NonComposable { pos } => write!(f, "non-composable product at position {pos}"),
            Error::Parse { pos, msg } => write!(f, "parse error at position {pos}: {msg}"),
            Error::DegreeOverflow { degree, max } => {
                write!(f, "degree {degree} exceeds truncation level {max}")
            }
            Error::VertexMismatch => write!(f, "path does not end at a single vertex"),
            Error::NotHomogeneous => write!(f, "path polynomial is not homogeneous"),
            Error::Obstruction { value } => write!(f, "q^alpha = {value} is not 1"),
            Error::SingularGroupElement { arrow } => {
                write!(f, "1 + a a* is singular for arrow {arrow}")
            }
            Error::UnsupportedShape(m) => write!(f, "unsupported shape: {m}"),
            Error::RetryExhausted { attempts } => {
                write!(f, "sampler gave up after {attempts} attempts")
            }
            Error::Consistency(m) => write!(f, "consistency failure: {m}"),
            Error::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            Error::TooLarge { what, size, limit } => {
                write!(f, "{what} = {size} exceeds bound {limit}")
            }
            Error::NotAComplex => write!(f, "d1 * d0 is not zero"),
            Error::SingularD => write!(f, "D is not invertible"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotAModule(m) => write!(f, "not a module: {m}"),
        }
    }
}

impl core::error::Error for Error {}
