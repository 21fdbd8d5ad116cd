//! Hairy graph complexes over the cyclic operads `Com`, `Assoc` and `Lie`.

pub mod cache;
pub mod checks;
pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod operad;
pub mod perm;
pub mod rational;
pub mod spider;
pub mod symplectic;
pub mod trace;

pub use error::{Error, Result};
pub use graph::{canonicalize, CanonicalGraph, Chain, HairyGraph, SliceKey};
pub use linalg::{HomologyReport, RationalMatrix};
pub use operad::{OperadBasisElement, OperadElement, OperadKind};
pub use rational::Q;
pub use symplectic::{Label, SymplecticSpace};

#[cfg(doctest)]
mod book {
  #[doc = include_str!("../../../book/src/overview.md")]
  pub struct Overview;
  #[doc = include_str!("../../../book/src/operads.md")]
  pub struct Operads;
  #[doc = include_str!("../../../book/src/graphs.md")]
  pub struct Graphs;
  #[doc = include_str!("../../../book/src/spiders.md")]
  pub struct Spiders;
  #[doc = include_str!("../../../book/src/trace.md")]
  pub struct Trace;
  #[doc = include_str!("../../../book/src/homology.md")]
  pub struct Homology;
  #[doc = include_str!("../../../book/src/closed_forms.md")]
  pub struct ClosedForms;
  #[doc = include_str!("../../../book/src/cli.md")]
  pub struct Cli;
}
