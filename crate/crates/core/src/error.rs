use std::fmt;

use thiserror::Error;

/// Evidence that an identity failed: basis indices and the two values that
/// should have been equal.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(indices: &[usize], lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Witness {
            indices: indices.to_vec(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: {} != {}", self.indices, self.lhs, self.rhs)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("operands belong to different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("algebra is degenerate")]
    DegenerateAlgebra,
    #[error("dimension {dim} exceeds the configured maximum {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("multiplier does not lie in the algebra")]
    NotInAlgebra,
    #[error("no local unit exists for the given elements")]
    NoLocalUnit,
    #[error("no counit: {0}")]
    NoCounit(String),
    #[error("no antipode: {0}")]
    NoAntipode(String),
    #[error("no non-zero left invariant functional")]
    NoHaar,
    #[error("left invariant functionals form a {0}-dimensional space")]
    NonUniqueHaar(usize),
    #[error("functional is not faithful")]
    NotFaithful,
    #[error("no modular element: {0}")]
    NoModularElement(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("phi composed with S^2 is not proportional to phi")]
    NotProportional,
    #[error("the two convolution formulas disagree {0}")]
    ConvolutionMismatch(Witness),
    #[error("the two constructions of the dual comultiplication disagree {0}")]
    DualComultMismatch(Witness),
    #[error("dual structure mismatch ({what}) {witness}")]
    DualStructureMismatch { what: String, witness: Witness },
    #[error("the two product formulas on M(A^) disagree {0}")]
    ProductMismatch(Witness),
    #[error("functional is not in the multiplier algebra of the dual")]
    NotInMultiplierDual,
    #[error("no *-structure present")]
    NoStarStructure,
    #[error("biduality check failed ({what}) {witness}")]
    BidualityFailure { what: String, witness: Witness },
    #[error("not a corepresentation {0}")]
    NotACorep(Witness),
    #[error("universal corepresentation check failed ({what}) {witness}")]
    UniversalConstructionFailure { what: String, witness: Witness },
    #[error("homomorphism is degenerate: {0}")]
    DegenerateHomomorphism(String),
    #[error("corepresentation is not non-degenerate (hypothesis: {0})")]
    NotNondegenerate(String),
    #[error("not a valid group table: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("axiom violated: {axiom} {witness}")]
    AxiomViolation { axiom: String, witness: Witness },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by unreadable or malformed input rather than
    /// a falsified identity.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Io(_) | Error::TooLarge { .. } | Error::DimensionMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
