use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Lib(nlci::Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(s) => f.write_str(s),
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl From<nlci::Error> for CliError {
    fn from(e: nlci::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    /// 3 for an exhausted resampling budget, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(nlci::Error::CertificationExhausted { .. }) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(nlci::Error::CertificationExhausted { .. }) => "certification_exhausted",
            CliError::Validation(_) | CliError::Lib(_) => "validation",
            CliError::Io(_) => "io",
        }
    }

    pub fn record(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() } })
    }
}
