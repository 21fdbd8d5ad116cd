//! The boundary operator: contract one non-loop edge at a time.

use crate::error::{Error, Result};
use crate::operad::{self, OperadBasisElement, OperadElement};
use crate::rational::Q;

use super::chain::{CanonicalGraph, Chain};
use super::{Edge, Hair, HairyGraph, Port};

/// Contracts non-loop edge `idx` of `g`, whose vertex `v` is decorated by
/// `decorations[v]`. The edge is read from its lower vertex `i` to its higher
/// vertex `j` (reversing it costs a sign), the two decorations are composed
/// along it and the fused vertex goes first. Returns the contracted graph,
/// its decorations and whether the term carries a minus sign, including the
/// factor `(-1)^(i+j+1)`.
pub(crate) fn contract_raw(
  g: &HairyGraph,
  decorations: &[OperadElement],
  idx: usize,
) -> Result<(HairyGraph, Vec<OperadElement>, bool)> {
  let e = *g.edges.get(idx).ok_or_else(|| Error::Structure(format!("no edge {idx}")))?;
  if e.is_loop() {
    return Err(Error::Structure(format!("edge {idx} is a loop")));
  }
  let (e, flip) = if e.tail.vertex < e.head.vertex { (e, false) } else { (e.reversed(), true) };
  let (i, a) = (e.tail.vertex, e.tail.slot);
  let (j, b) = (e.head.vertex, e.head.slot);
  let mi = g.vertices[i].arity();
  let fused = operad::compose(&decorations[i], a, &decorations[j], b)?;
  let new_index = |v: usize| -> usize {
    if v == i || v == j {
      0
    } else {
      1 + v - (v > i) as usize - (v > j) as usize
    }
  };
  let port = |p: Port| -> Port {
    let slot = if p.vertex == i {
      p.slot - (p.slot > a) as usize
    } else if p.vertex == j {
      mi - 1 + p.slot - (p.slot > b) as usize
    } else {
      p.slot
    };
    Port::new(new_index(p.vertex), slot)
  };
  let edges: Vec<Edge> = g
    .edges
    .iter()
    .enumerate()
    .filter(|&(x, _)| x != idx)
    .map(|(_, f)| Edge::new(port(f.tail), port(f.head)))
    .collect();
  let hairs: Vec<Hair> = g.hairs.iter().map(|h| Hair { at: port(h.at), label: h.label }).collect();
  let mut vertices = Vec::with_capacity(g.vertices.len() - 1);
  vertices.push(OperadBasisElement::from_index(g.kind, fused.arity, 0));
  let mut decs: Vec<OperadElement> = vec![fused];
  for v in 0..g.vertices.len() {
    if v != i && v != j {
      vertices.push(g.vertices[v].clone());
      decs.push(decorations[v].clone());
    }
  }
  let negative = flip ^ ((i + j + 1) % 2 == 1);
  Ok((HairyGraph { kind: g.kind, vertices, edges, hairs }, decs, negative))
}

fn basis_decorations(g: &HairyGraph) -> Vec<OperadElement> {
  g.vertices.iter().map(|e| OperadElement::basis(e.clone())).collect()
}

/// Adds `coeff * ∂g` to `out`: the signed sum of [`contract_raw`] over all
/// non-loop edges.
pub(crate) fn add_boundary(g: &HairyGraph, coeff: &Q, out: &mut Chain) {
  let decorations = basis_decorations(g);
  for (idx, e) in g.edges.iter().enumerate() {
    if e.is_loop() {
      continue;
    }
    let (contracted, decs, negative) = contract_raw(g, &decorations, idx).expect("valid graph");
    let c = if negative { -coeff } else { coeff.clone() };
    out.add_decorated(&contracted, &decs, &c);
  }
}

/// The term of `∂g` from contracting edges `edges` of `g` one after another,
/// with the sign of each step. The edges must be distinct and form a forest.
pub fn contract_edges(g: &HairyGraph, edges: &[usize]) -> Result<Chain> {
  let distinct: std::collections::BTreeSet<usize> = edges.iter().copied().collect();
  if distinct.len() != edges.len() {
    return Err(Error::Domain(format!("edge list {edges:?} repeats an edge")));
  }
  let mut g = g.clone();
  let mut decs = basis_decorations(&g);
  let mut negative = false;
  let mut pending: Vec<usize> = edges.to_vec();
  while let Some(idx) = pending.pop() {
    let (h, d, neg) = contract_raw(&g, &decs, idx)?;
    (g, decs) = (h, d);
    negative ^= neg;
    for p in &mut pending {
      if *p > idx {
        *p -= 1;
      }
    }
  }
  let mut out = Chain::zero();
  out.add_decorated(&g, &decs, &Q::from_int(if negative { -1 } else { 1 }));
  Ok(out)
}

/// `∂` of a single canonical graph.
pub fn boundary(g: &CanonicalGraph) -> Chain {
  let mut out = Chain::zero();
  add_boundary(&g.graph(), &Q::from_int(1), &mut out);
  out
}

/// Linear extension of [`boundary`].
pub fn boundary_chain(c: &Chain) -> Chain {
  let mut out = Chain::zero();
  for (g, coeff) in c.iter() {
    add_boundary(&g.graph(), coeff, &mut out);
  }
  out
}
