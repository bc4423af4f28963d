use thiserror::Error;

/// Errors raised by the transforms, solvers and file formats.
#[derive(Debug, Error)]
pub enum NlftError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The leading coefficient of `a_k^*` must stay real and positive.
    #[error("pivot a_0 = {value:e} is not positive at step {step}")]
    NonPositivePivot { step: usize, value: f64 },

    #[error("b is not admissible: 1 - |b|^2 reaches {min:e} on the unit circle")]
    NotAdmissible { min: f64 },

    #[error("root pairing failed: {0}")]
    RootPairing(String),

    #[error("sequence is not real: |Im gamma_{index}| = {imag:e}")]
    NonReal { index: usize, imag: f64 },

    #[error("degree {degree} exceeds the enumeration cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl NlftError {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            NlftError::InvalidInput(_)
            | NlftError::NotAdmissible { .. }
            | NlftError::DegreeCap { .. }
            | NlftError::Precondition(_)
            | NlftError::Json(_) => 2,
            NlftError::NonPositivePivot { .. }
            | NlftError::RootPairing(_)
            | NlftError::NonReal { .. } => 3,
            NlftError::Io(_) => 4,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            NlftError::InvalidInput(_) => "invalid_input",
            NlftError::NonPositivePivot { .. } => "non_positive_pivot",
            NlftError::NotAdmissible { .. } => "not_admissible",
            NlftError::RootPairing(_) => "root_pairing",
            NlftError::NonReal { .. } => "non_real",
            NlftError::DegreeCap { .. } => "degree_cap",
            NlftError::Precondition(_) => "precondition",
            NlftError::Io(_) => "io",
            NlftError::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, NlftError>;
