use thiserror::Error;

/// Errors raised by the restriction engine.
///
/// Every variant maps to the name of the precondition it violates, see
/// [`Error::precondition`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("form degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("interior product applied to a 0-form")]
    InteriorOfFunction,

    #[error("map component {0} does not vanish at the origin")]
    MapNotAtOrigin(usize),

    #[error("generator {0} does not vanish at the origin")]
    GeneratorNotAtOrigin(usize),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("ideal is not zero-dimensional (no power of the maximal ideal found up to degree {cap})")]
    NotZeroDimensional { cap: u32 },

    #[error("ideal is not quasi-homogeneous in the given coordinates")]
    NotQuasiHomogeneous,

    #[error("weight search space has dimension {0}, only up to 3 free weights are scanned")]
    WeightSearchTooLarge(usize),

    #[error("form is not closed")]
    NotClosed,

    #[error("form does not lie in the ideal times forms")]
    NotInIdeal,

    #[error("form does not represent the restriction of a closed form")]
    NotClosedRepresentable,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("form is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("ideal not recognized as a catalog member: {0}")]
    UnrecognizedIdeal(String),

    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),

    #[error("algebraic restriction is not realizable by a symplectic form")]
    NotRealizable,

    #[error("quotient dimension changed between truncation {low} ({low_dim}) and {high} ({high_dim})")]
    UnstableTruncation {
        low: u32,
        low_dim: usize,
        high: u32,
        high_dim: usize,
    },
}

impl Error {
    /// Short name of the failed precondition, used in CLI diagnostics.
    pub fn precondition(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "matching-dimensions",
            Error::DegreeMismatch { .. } => "matching-form-degree",
            Error::InteriorOfFunction => "positive-form-degree",
            Error::MapNotAtOrigin(_) => "map-germ-at-origin",
            Error::GeneratorNotAtOrigin(_) => "generators-vanish-at-origin",
            Error::InvalidWeights(_) => "positive-primitive-weights",
            Error::NotZeroDimensional { .. } => "zero-dimensional-ideal",
            Error::NotQuasiHomogeneous => "quasi-homogeneous-ideal",
            Error::WeightSearchTooLarge(_) => "bounded-weight-search",
            Error::NotClosed => "closed-form",
            Error::NotInIdeal => "form-in-ideal",
            Error::NotClosedRepresentable => "closed-representable",
            Error::Malformed(_) => "well-formed-input",
            Error::NotSymplectic(_) => "symplectic-form",
            Error::UnrecognizedIdeal(_) => "catalog-ideal",
            Error::InvalidParameters(_) => "admissible-parameters",
            Error::NotRealizable => "realizable-restriction",
            Error::UnstableTruncation { .. } => "stable-truncation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
