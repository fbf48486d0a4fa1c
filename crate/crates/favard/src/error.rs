use favard_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 0 ok, 1 io, 2 validation, 3 resource, 4 numeric grid or cover.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Resource { .. } => 3,
                CoreError::GridTooCoarse { .. } | CoreError::NoCover { .. } => 4,
                CoreError::Cardinality { .. }
                | CoreError::DigitRange { .. }
                | CoreError::DuplicateDigit { .. }
                | CoreError::Domain { .. }
                | CoreError::Size { .. }
                | CoreError::InvalidArgument(_) => 2,
            },
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
