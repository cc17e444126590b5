use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected} qubits, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("parse error{}: {message}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("{what} is limited to n <= {max}, got n = {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("operator {0} is not in the normalizer of the stabilizer")]
    NotInNormalizer(String),

    #[error("operator {0} is not Hermitian")]
    NotHermitian(String),

    #[error("invalid Clifford map: {0}")]
    InvalidMap(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("invalid transversal candidate: {0}")]
    InvalidCandidate(String),

    #[error("qubit {0} is entangled with the rest of the register and cannot be discarded")]
    Entangled(usize),

    #[error("measuring {0} would reveal logical information")]
    RevealsLogical(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
