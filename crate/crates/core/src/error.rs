use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
  #[error("domain error: {0}")]
  Domain(String),
  #[error("arity mismatch: expected {expected}, got {got}")]
  ArityMismatch { expected: usize, got: usize },
  #[error("operad kind mismatch: {0:?} vs {1:?}")]
  KindMismatch(crate::operad::OperadKind, crate::operad::OperadKind),
  #[error("invalid slot {slot} for arity {arity}")]
  InvalidSlot { slot: usize, arity: usize },
  #[error("malformed graph: {0}")]
  Structure(String),
  #[error("inconsistent slice key: {0}")]
  Slice(String),
  #[error("complex integrity violated: {0}")]
  Integrity(String),
  #[error("parse error: {0}")]
  Parse(String),
  #[error("cache error: {0}")]
  Cache(String),
  #[error(transparent)]
  Io(#[from] std::io::Error),
  #[error(transparent)]
  Json(#[from] serde_json::Error),
}
