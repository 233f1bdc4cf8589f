use specht_core::Error;

/// Exit statuses besides 0 and clap's usage code 2.
pub const EXIT_UNSUPPORTED: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;
pub const EXIT_ORDER_GUARD: u8 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Input(String),
    #[error("{0} verification check(s) failed")]
    Mismatch(usize),
    /// The failure has already been written as part of the report.
    #[error("{0}")]
    Reported(u8),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::OrderGuard { .. }) => EXIT_ORDER_GUARD,
            CliError::Core(_) | CliError::Input(_) | CliError::Io(_) => EXIT_UNSUPPORTED,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Reported(code) => *code,
        }
    }
}
