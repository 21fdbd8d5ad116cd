//! Hairy graphs: operad-decorated internal vertices, directed internal edges
//! and labeled hairs.
//!
//! A [`HairyGraph`] is a raw representative. Its orientation is the vertex
//! order together with the edge directions; hairs carry no orientation. Raw
//! graphs are turned into linear combinations of canonical graphs by
//! [`canonicalize`], and everything downstream works with [`Chain`]s.

mod boundary;
mod chain;
mod enumerate;
mod json;
mod quotient;
mod shape;

use std::collections::BTreeSet;

pub use boundary::{boundary, boundary_chain, contract_edges};
pub use chain::{canonicalize, CanonicalGraph, Chain};
pub use enumerate::{enumerate_basis, slice_boundary_matrix, slice_keys, SliceBasis};
pub use json::{GraphJson, SCHEMA_VERSION};
pub use quotient::ShapeData;
pub use shape::Shape;

use crate::error::{Error, Result};
use crate::operad::{OperadBasisElement, OperadKind};
use crate::symplectic::Label;

/// A slot of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port {
  pub vertex: usize,
  pub slot:   usize,
}

impl Port {
  pub fn new(vertex: usize, slot: usize) -> Port { Port { vertex, slot } }
}

/// An internal edge, directed from `tail` to `head`. Loops are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
  pub tail: Port,
  pub head: Port,
}

impl Edge {
  pub fn new(tail: Port, head: Port) -> Edge { Edge { tail, head } }

  pub fn is_loop(&self) -> bool { self.tail.vertex == self.head.vertex }

  pub fn reversed(&self) -> Edge { Edge { tail: self.head, head: self.tail } }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hair {
  pub at:    Port,
  pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HairyGraph {
  pub kind:     OperadKind,
  pub vertices: Vec<OperadBasisElement>,
  pub edges:    Vec<Edge>,
  pub hairs:    Vec<Hair>,
}

/// The gradings of a slice of the hairy graph complex.
///
/// `k` internal vertices, degree `d = Σ (arity - 2)`, rank `r` (first Betti
/// number of the underlying graph), `h` hairs, labels from `V_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct SliceKey {
  pub kind: OperadKind,
  pub n:    u16,
  pub k:    usize,
  pub d:    usize,
  pub r:    usize,
  pub h:    usize,
}

impl SliceKey {
  /// Number of internal edges, if the gradings are consistent.
  pub fn edges(&self) -> Option<usize> {
    let slots = self.d + 2 * self.k;
    if slots < self.h || (slots - self.h) % 2 != 0 {
      return None;
    }
    Some((slots - self.h) / 2)
  }

  /// Number of connected components, if the gradings are consistent.
  pub fn components(&self) -> Option<usize> {
    let e = self.edges()?;
    let c = (self.r + self.k).checked_sub(e)?;
    (c >= 1 && c <= self.k).then_some(c)
  }

  pub fn validate(&self) -> Result<()> {
    if self.n == 0 {
      return Err(Error::Slice("n must be positive".into()));
    }
    if self.k == 0 || self.d < self.k {
      return Err(Error::Slice(format!("{self}: need 1 <= k <= d")));
    }
    if self.components().is_none() {
      return Err(Error::Slice(format!("{self}: no graph has these gradings")));
    }
    Ok(())
  }

  /// The slice one vertex down, which the boundary maps into.
  pub fn below(&self) -> Option<SliceKey> {
    (self.k > 1).then_some(SliceKey { k: self.k - 1, ..*self })
  }
}

impl std::fmt::Display for SliceKey {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    write!(f, "{} n={} k={} d={} r={} h={}", self.kind, self.n, self.k, self.d, self.r, self.h)
  }
}

impl HairyGraph {
  /// A graph with no internal edges, one vertex per spider.
  pub fn edgeless(kind: OperadKind, spiders: &[(OperadBasisElement, Vec<Label>)]) -> Result<HairyGraph> {
    let mut vertices = Vec::new();
    let mut hairs = Vec::new();
    for (v, (e, labels)) in spiders.iter().enumerate() {
      if labels.len() != e.arity() {
        return Err(Error::ArityMismatch { expected: e.arity(), got: labels.len() });
      }
      vertices.push(e.clone());
      hairs.extend(labels.iter().enumerate().map(|(s, &label)| Hair { at: Port::new(v, s), label }));
    }
    let g = HairyGraph { kind, vertices, edges: vec![], hairs };
    g.validate()?;
    Ok(g)
  }

  /// Checks that every slot is used exactly once and decorations match.
  pub fn validate(&self) -> Result<()> {
    let mut used: Vec<Vec<bool>> = Vec::with_capacity(self.vertices.len());
    for (v, e) in self.vertices.iter().enumerate() {
      if e.kind != self.kind {
        return Err(Error::KindMismatch(self.kind, e.kind));
      }
      if e.arity() < 3 {
        return Err(Error::Structure(format!("vertex {v} has arity {} < 3", e.arity())));
      }
      used.push(vec![false; e.arity()]);
    }
    let mut take = |p: Port| -> Result<()> {
      let slots = used
        .get_mut(p.vertex)
        .ok_or_else(|| Error::Structure(format!("no vertex {}", p.vertex)))?;
      let arity = slots.len();
      let s = slots.get_mut(p.slot).ok_or(Error::InvalidSlot { slot: p.slot, arity })?;
      if *s {
        return Err(Error::Structure(format!("slot {} of vertex {} used twice", p.slot, p.vertex)));
      }
      *s = true;
      Ok(())
    };
    for e in &self.edges {
      take(e.tail)?;
      take(e.head)?;
    }
    for h in &self.hairs {
      take(h.at)?;
    }
    for (v, slots) in used.iter().enumerate() {
      if let Some(s) = slots.iter().position(|&u| !u) {
        return Err(Error::Structure(format!("slot {s} of vertex {v} is unused")));
      }
    }
    Ok(())
  }

  pub fn degree(&self) -> usize { self.vertices.iter().map(|e| e.arity() - 2).sum() }

  pub fn components(&self) -> usize {
    let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
      let mut x = x;
      while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
      }
      x
    }
    for e in &self.edges {
      let a = find(&mut parent, e.tail.vertex);
      let b = find(&mut parent, e.head.vertex);
      parent[a] = b;
    }
    (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count()
  }

  pub fn is_connected(&self) -> bool { self.components() == 1 }

  /// First Betti number of the underlying graph.
  pub fn rank(&self) -> usize { self.edges.len() + self.components() - self.vertices.len() }

  pub fn labels(&self) -> BTreeSet<Label> { self.hairs.iter().map(|h| h.label).collect() }

  /// The smallest `n` whose `V_n` contains every unprimed label.
  pub fn min_n(&self) -> u16 { self.hairs.iter().map(|h| h.label.index).max().unwrap_or(1).max(1) }

  pub fn slice_key(&self, n: u16) -> SliceKey {
    SliceKey {
      kind: self.kind,
      n,
      k: self.vertices.len(),
      d: self.degree(),
      r: self.rank(),
      h: self.hairs.len(),
    }
  }

  /// The same graph with every hair label passed through `f`.
  pub fn map_labels(&self, f: impl Fn(Label) -> Label) -> HairyGraph {
    let hairs = self.hairs.iter().map(|h| Hair { at: h.at, label: f(h.label) }).collect();
    HairyGraph { hairs, ..self.clone() }
  }
}
