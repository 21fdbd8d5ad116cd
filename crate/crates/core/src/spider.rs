//! Spiders, the Lie algebra they span, and its Chevalley-Eilenberg complex.
//!
//! A basic spider is an operad basis element with a symplectic label on every
//! leg. A wedge of spiders `s_1 ∧ .. ∧ s_k` is stored as the hairy graph with
//! one vertex per factor, in order, and no internal edges: the vertex-order
//! part of a graph orientation is exactly the sign rule of the exterior
//! algebra, so wedges reuse the graph canonical form. A [`LieElement`] is the
//! one-factor case.

use crate::error::{Error, Result};
use crate::graph::{CanonicalGraph, Chain, Hair, HairyGraph, Port};
use crate::operad::{self, OperadBasisElement, OperadElement, OperadKind};
use crate::rational::Q;
use crate::symplectic::{omega, Label};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicSpider {
  pub operad: OperadBasisElement,
  pub labels: Vec<Label>,
}

impl BasicSpider {
  pub fn new(operad: OperadBasisElement, labels: Vec<Label>) -> Result<BasicSpider> {
    if operad.arity() < 3 {
      return Err(Error::Domain(format!("spiders need at least 3 legs, got {}", operad.arity())));
    }
    if labels.len() != operad.arity() {
      return Err(Error::ArityMismatch { expected: operad.arity(), got: labels.len() });
    }
    Ok(BasicSpider { operad, labels })
  }

  pub fn com(labels: &[Label]) -> Result<BasicSpider> {
    BasicSpider::new(OperadBasisElement::com(labels.len() as u8), labels.to_vec())
  }

  pub fn kind(&self) -> OperadKind { self.operad.kind }

  /// Number of legs minus 2.
  pub fn degree(&self) -> usize { self.operad.arity() - 2 }

  /// This spider as a canonical element.
  pub fn element(&self) -> LieElement { LieElement(wedge(std::slice::from_ref(self)).expect("spider is valid")) }
}

/// The edgeless graph of the factors, in order.
fn edgeless(factors: &[BasicSpider]) -> Result<HairyGraph> {
  let kind = factors.first().map(BasicSpider::kind).ok_or_else(|| Error::Domain("empty wedge".into()))?;
  if let Some(s) = factors.iter().find(|s| s.kind() != kind) {
    return Err(Error::KindMismatch(kind, s.kind()));
  }
  let spiders: Vec<_> = factors.iter().map(|s| (s.operad.clone(), s.labels.clone())).collect();
  HairyGraph::edgeless(kind, &spiders)
}

/// The wedge `s_1 ∧ .. ∧ s_k` in canonical form.
pub fn wedge(factors: &[BasicSpider]) -> Result<Chain> { crate::graph::canonicalize(&edgeless(factors)?) }

/// The factors of an edgeless canonical graph, in vertex order.
pub fn factors(g: &CanonicalGraph) -> Vec<BasicSpider> {
  spiders_of(&g.graph())
}

fn spiders_of(g: &HairyGraph) -> Vec<BasicSpider> {
  let mut labels: Vec<Vec<Option<Label>>> = g.vertices.iter().map(|e| vec![None; e.arity()]).collect();
  for h in &g.hairs {
    labels[h.at.vertex][h.at.slot] = Some(h.label);
  }
  g.vertices
    .iter()
    .zip(labels)
    .map(|(e, ls)| BasicSpider {
      operad: e.clone(),
      labels: ls.into_iter().map(|l| l.expect("edgeless graphs have hairs on every slot")).collect(),
    })
    .collect()
}

/// An element of the Lie algebra: a combination of one-vertex edgeless graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement(pub Chain);

impl LieElement {
  pub fn zero() -> LieElement { LieElement(Chain::zero()) }

  pub fn is_zero(&self) -> bool { self.0.is_zero() }

  pub fn add_scaled(&mut self, other: &LieElement, c: &Q) { self.0.add_scaled(&other.0, c) }

  pub fn terms(&self) -> impl Iterator<Item = (BasicSpider, &Q)> {
    self.0.iter().map(|(g, c)| (factors(g).remove(0), c))
  }
}

/// The fusion of leg `leg1` of `s1` with leg `leg2` of `s2`, weighted by the
/// pairing of their labels. Remaining legs are those of `s1`, then those of `s2`.
pub fn fuse(s1: &BasicSpider, leg1: usize, s2: &BasicSpider, leg2: usize) -> Result<LieElement> {
  let mut out = Chain::zero();
  add_fusion(&mut out, s1, leg1, s2, leg2, &[], &Q::from_int(1))?;
  Ok(LieElement(out))
}

/// Adds `coeff * (s1 ·_{leg1,leg2} s2) ∧ rest` to `out`.
fn add_fusion(
  out: &mut Chain,
  s1: &BasicSpider,
  leg1: usize,
  s2: &BasicSpider,
  leg2: usize,
  rest: &[&BasicSpider],
  coeff: &Q,
) -> Result<()> {
  if leg1 >= s1.labels.len() {
    return Err(Error::InvalidSlot { slot: leg1, arity: s1.labels.len() });
  }
  if leg2 >= s2.labels.len() {
    return Err(Error::InvalidSlot { slot: leg2, arity: s2.labels.len() });
  }
  let w = omega(s1.labels[leg1], s2.labels[leg2]);
  if w == 0 {
    return Ok(());
  }
  let fused = operad::compose_basis(&s1.operad, leg1, &s2.operad, leg2)?;
  let labels: Vec<Label> = s1
    .labels
    .iter()
    .enumerate()
    .filter(|&(i, _)| i != leg1)
    .chain(s2.labels.iter().enumerate().filter(|&(i, _)| i != leg2))
    .map(|(_, &l)| l)
    .collect();
  let mut vertices = vec![OperadBasisElement::from_index(s1.kind(), fused.arity, 0)];
  let mut decorations = vec![fused];
  let mut hairs: Vec<Hair> = labels.iter().enumerate().map(|(s, &label)| Hair { at: Port::new(0, s), label }).collect();
  for (v, s) in rest.iter().enumerate() {
    vertices.push(s.operad.clone());
    decorations.push(OperadElement::basis(s.operad.clone()));
    hairs.extend(s.labels.iter().enumerate().map(|(i, &label)| Hair { at: Port::new(v + 1, i), label }));
  }
  let g = HairyGraph { kind: s1.kind(), vertices, edges: vec![], hairs };
  out.add_decorated(&g, &decorations, &(coeff * &Q::from_int(w)));
  Ok(())
}

/// `[a, b]`: the sum over all leg pairs of the fusions.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
  let mut out = Chain::zero();
  for (s1, c1) in a.terms() {
    for (s2, c2) in b.terms() {
      if s1.kind() != s2.kind() {
        return Err(Error::KindMismatch(s1.kind(), s2.kind()));
      }
      let c = c1 * c2;
      for i in 0..s1.labels.len() {
        for j in 0..s2.labels.len() {
          add_fusion(&mut out, &s1, i, &s2, j, &[], &c)?;
        }
      }
    }
  }
  Ok(LieElement(out))
}

/// The Chevalley-Eilenberg differential
/// `∂(s_1 ∧ .. ∧ s_k) = Σ_{i<j} (-1)^(i+j+1) [s_i, s_j] ∧ s_1 ∧ .. ŝ_i .. ŝ_j .. ∧ s_k`
/// on a combination of wedges.
pub fn ce_boundary(w: &Chain) -> Chain {
  let mut out = Chain::zero();
  for (g, c) in w.iter() {
    let fs = factors(g);
    for i in 0..fs.len() {
      for j in i + 1..fs.len() {
        let rest: Vec<&BasicSpider> = fs.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, s)| s).collect();
        let sign = if (i + j + 1) % 2 == 0 { c.clone() } else { -c };
        for a in 0..fs[i].labels.len() {
          for b in 0..fs[j].labels.len() {
            add_fusion(&mut out, &fs[i], a, &fs[j], b, &rest, &sign).expect("legs in range");
          }
        }
      }
    }
  }
  out
}

/// Number of factors of a wedge.
pub fn factor_count(g: &CanonicalGraph) -> usize { g.vertex_count() }
