use thiserror::Error;

use crate::picture::Index;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("relative depth {depth} at byte {position} must be positive")]
    NonPositiveDepth { position: usize, depth: String },

    #[error("proper cluster at byte {position} has exactly one child")]
    SingleChild { position: usize },

    #[error("leaf at byte {position} has no colour (expected 'r' or 'b')")]
    MissingColour { position: usize },

    #[error("picture needs at least one red and one blue root (red {red}, blue {blue})")]
    MonochromePicture { red: usize, blue: usize },

    #[error("invalid picture JSON: {0}")]
    Json(String),

    #[error("clusters belong to different pictures")]
    ForeignCluster,

    #[error("cluster {0} is a singleton and has no finite depth")]
    SingletonDepth(String),

    #[error("cluster {cluster}: chromatic genus would be negative ({value})")]
    NegativeGenus { cluster: String, value: i64 },

    #[error("cluster {0} is not chromatically principal")]
    NotPrincipal(String),

    #[error("picture has no chromatically principal cluster")]
    NoPrincipalCluster,

    #[error("top cluster is not principal and matches no supported configuration: {0}")]
    UnsupportedTop(String),

    #[error("top cluster matches conflicting edge rows: {0}")]
    TableConflict(String),

    #[error("internal error: dual graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("unsupported arithmetic input: {0}")]
    Unsupported(String),

    #[error("invalid polynomial input: {0}")]
    PolynomialInput(String),

    #[error("descriptors {first} and {second} share a root (polynomials not coprime)")]
    SharedRoot { first: String, second: String },

    #[error("roots {first} and {second} are indistinguishable at precision {precision}")]
    Indistinguishable {
        first: String,
        second: String,
        precision: u32,
    },

    #[error("reduction of {0} is not separable modulo p")]
    Inseparable(String),

    #[error("value {0} is not a p-adic unit")]
    NotUnit(String),

    #[error(
        "epsilon for cluster {cluster} in index {index} is undefined (odd valuation of theta^2)"
    )]
    UndefinedEpsilon { cluster: String, index: Index },

    #[error(
        "epsilon precondition violated: cluster {cluster} is odd and not a cotwin in index {index}"
    )]
    EpsilonPrecondition { cluster: String, index: Index },

    #[error("missing epsilon entries: {0}")]
    MissingEpsilon(String),

    #[error("inconsistent epsilon values for cluster {0}")]
    InconsistentEpsilon(String),

    #[error("cluster permutation is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
