use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible field: {0}")]
    IncompatibleField(String),
    #[error("degree {degree} exceeds the truncation bound {bound}")]
    Truncation { degree: u32, bound: u32 },
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("group element {element} is not an automorphism: relation {relation} does not map into the ideal")]
    NotAnAutomorphism { element: usize, relation: String },
    #[error("group closure exceeded {max_size} elements")]
    GroupTooLarge { max_size: usize },
    #[error("element is not normal: {0}")]
    NotNormal(String),
    #[error("ambiguous solution: {0}")]
    Ambiguous(String),
    #[error("completion budget exceeded: {0}")]
    Budget(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("empty input")]
    EmptyInput,
    #[error("window too small: {0}")]
    Window(String),
}

pub type Result<T> = std::result::Result<T, Error>;
