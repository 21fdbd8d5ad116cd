//! The JSON form of a single hairy graph.
//!
//! ```json
//! {"schema":1,"kind":"lie","n":1,
//!  "vertices":[{"operad":[2],"slots":3}],
//!  "edges":[[0,0,0,1]],
//!  "hairs":[[0,2,"p1"]]}
//! ```
//!
//! `operad` is the payload of the vertex's basis element: empty for `com`,
//! the cyclic order starting at slot 0 for `assoc`, the comb tail (the slots
//! after 1) for `lie`. Edges are `[tail vertex, tail slot, head vertex, head slot]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operad::{OperadBasisElement, OperadKind};
use crate::symplectic::Label;

use super::{Edge, Hair, HairyGraph, Port};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
  pub operad: Vec<u8>,
  pub slots:  usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
  pub schema:   u32,
  pub kind:     OperadKind,
  pub n:        u16,
  pub vertices: Vec<VertexJson>,
  pub edges:    Vec<(usize, usize, usize, usize)>,
  pub hairs:    Vec<(usize, usize, Label)>,
}

impl GraphJson {
  pub fn from_graph(g: &HairyGraph, n: u16) -> GraphJson {
    GraphJson {
      schema: SCHEMA_VERSION,
      kind: g.kind,
      n,
      vertices: g.vertices.iter().map(|e| VertexJson { operad: e.payload.clone(), slots: e.arity() }).collect(),
      edges: g.edges.iter().map(|e| (e.tail.vertex, e.tail.slot, e.head.vertex, e.head.slot)).collect(),
      hairs: g.hairs.iter().map(|h| (h.at.vertex, h.at.slot, h.label)).collect(),
    }
  }

  /// The raw graph and its `n`, after structural validation.
  pub fn to_graph(&self) -> Result<(HairyGraph, u16)> {
    if self.schema != SCHEMA_VERSION {
      return Err(Error::Parse(format!("unsupported graph schema {}", self.schema)));
    }
    let vertices = self
      .vertices
      .iter()
      .map(|v| {
        let m = u8::try_from(v.slots).map_err(|_| Error::Domain(format!("arity {} too large", v.slots)))?;
        match self.kind {
          OperadKind::Com if v.operad.is_empty() => Ok(OperadBasisElement::com(m)),
          OperadKind::Com => Err(Error::Parse("com vertices carry no payload".into())),
          OperadKind::Assoc if v.operad.len() == v.slots => OperadBasisElement::assoc(&v.operad),
          OperadKind::Assoc => Err(Error::ArityMismatch { expected: v.slots, got: v.operad.len() }),
          OperadKind::Lie => OperadBasisElement::lie_comb(m, &v.operad),
        }
      })
      .collect::<Result<Vec<_>>>()?;
    let g = HairyGraph {
      kind: self.kind,
      vertices,
      edges: self.edges.iter().map(|&(a, b, c, d)| Edge::new(Port::new(a, b), Port::new(c, d))).collect(),
      hairs: self.hairs.iter().map(|&(v, s, label)| Hair { at: Port::new(v, s), label }).collect(),
    };
    g.validate()?;
    if self.n == 0 {
      return Err(Error::Domain("n must be positive".into()));
    }
    if let Some(h) = g.hairs.iter().find(|h| !h.label.primed && h.label.index > self.n) {
      return Err(Error::Domain(format!("label {} is outside V_{}", h.label, self.n)));
    }
    Ok((g, self.n))
  }

  pub fn parse(text: &str) -> Result<(HairyGraph, u16)> { serde_json::from_str::<GraphJson>(text)?.to_graph() }

  pub fn emit(g: &HairyGraph, n: u16) -> String {
    serde_json::to_string(&GraphJson::from_graph(g, n)).expect("graph serializes")
  }
}
