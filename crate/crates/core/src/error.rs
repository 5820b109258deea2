use thiserror::Error;

use crate::pc::PcError;
use crate::table::TableError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("group of order {order} exceeds the {what} cap of {cap}")]
    CapExceeded { what: &'static str, order: u128, cap: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// A constructive step that the underlying theorem guarantees did not
    /// succeed. Seeing this means the implementation is wrong.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}
