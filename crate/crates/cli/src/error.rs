use serde::Serialize;

/// Command-level failure, printed to stderr as `{"error":{"code":..,"message":..}}`.
#[derive(Debug, Serialize)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: &'a CliError,
        }
        serde_json::to_string(&Wrapper { error: self }).expect("error object serializes")
    }
}

impl From<nbkemeny::Error> for CliError {
    fn from(e: nbkemeny::Error) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new("io_error", e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::new("io_error", e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new("io_error", e.to_string())
    }
}
