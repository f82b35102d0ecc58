use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("input error: {0}")]
    Input(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration budget exceeded: {required} characters needed, budget is {budget}")]
    Budget { required: u128, budget: u128 },
    /// A zero test was requested on a value that is only known modulo p^M.
    #[error("inexact value: {0}")]
    Inexact(String),
    /// Working precision of the modular engine would overflow.
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("search exhausted: {0}")]
    Search(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
