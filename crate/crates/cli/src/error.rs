use std::fmt;

use spectra_core::Error;

/// Exit codes: 1 a failed check, 2 bad input, 3 empty result, 4 internal.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
    Failed(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                Error::Empty(_) => 3,
                Error::Internal(_) => 4,
                _ => 2,
            },
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        assert_eq!(CliError::Failed("x".into()).exit_code(), 1);
        assert_eq!(CliError::input("x").exit_code(), 2);
        assert_eq!(CliError::from(Error::Empty("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(Error::Internal("x".into())).exit_code(), 4);
        assert_eq!(CliError::from(std::io::Error::other("x")).exit_code(), 4);
    }
}
