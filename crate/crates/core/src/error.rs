use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid vertex id {id} (network has {n} vertices)")]
    InvalidVertex { id: usize, n: usize },
    #[error("line {source_label} - {target_label} has negative weight {weight}")]
    NegativeWeight {
        source_label: String,
        target_label: String,
        weight: f64,
    },
    #[error("line {source_label} - {target_label} has non-finite weight")]
    NonFiniteWeight {
        source_label: String,
        target_label: String,
    },
    #[error("property {property} is not supported here: {reason}")]
    UnsupportedProperty {
        property: &'static str,
        reason: &'static str,
    },
    #[error(
        "property {0} is not monotone; the result would be an order-dependent fixpoint \
         (pass the allow-non-monotone override to run anyway)"
    )]
    NonMonotone(&'static str),
    #[error("property {0} is not local")]
    NonLocal(&'static str),
    #[error("operation requires an undirected network")]
    DirectedNetwork,
    #[error("exhaustive search limited to {limit} vertices, network has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("thresholds must be strictly increasing and finite")]
    InvalidThresholds,
    #[error("clique search exceeded its budget of {0} branch nodes")]
    SearchBudgetExceeded(u64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
