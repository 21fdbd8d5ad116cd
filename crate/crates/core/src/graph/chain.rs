//! Canonical graphs and their linear combinations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::Result;
use crate::operad::{OperadElement, OperadKind};
use crate::rational::Q;

use super::quotient::{relabeling, shape_data, ShapeData};
use super::shape::Shape;
use super::{HairyGraph, SliceKey};

/// A basis element of the hairy graph complex: basis graph `index` of a
/// canonical shape.
#[derive(Clone)]
pub struct CanonicalGraph {
  pub data:  Arc<ShapeData>,
  pub index: u32,
}

impl CanonicalGraph {
  pub fn shape(&self) -> &Shape { &self.data.shape }

  pub fn kind(&self) -> OperadKind { self.data.shape.kind }

  /// The canonical raw representative.
  pub fn graph(&self) -> HairyGraph { self.data.representative(self.index as usize) }

  pub fn vertex_count(&self) -> usize { self.shape().k() }

  pub fn degree(&self) -> usize { self.shape().degree() }

  pub fn rank(&self) -> usize { self.shape().rank() }

  pub fn hair_count(&self) -> usize { self.shape().hair_count() }

  pub fn is_connected(&self) -> bool { self.shape().components() == 1 }

  pub fn slice_key(&self, n: u16) -> SliceKey {
    SliceKey { kind: self.kind(), n, k: self.vertex_count(), d: self.degree(), r: self.rank(), h: self.hair_count() }
  }
}

impl PartialEq for CanonicalGraph {
  fn eq(&self, other: &Self) -> bool {
    self.index == other.index && (Arc::ptr_eq(&self.data, &other.data) || self.data.shape == other.data.shape)
  }
}

impl Eq for CanonicalGraph {}

impl Ord for CanonicalGraph {
  fn cmp(&self, other: &Self) -> Ordering {
    if Arc::ptr_eq(&self.data, &other.data) {
      return self.index.cmp(&other.index);
    }
    self.data.shape.cmp(&other.data.shape).then(self.index.cmp(&other.index))
  }
}

impl PartialOrd for CanonicalGraph {
  fn partial_cmp(&self, other: &Self) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl Hash for CanonicalGraph {
  fn hash<H: Hasher>(&self, state: &mut H) {
    self.data.shape.hash(state);
    self.index.hash(state);
  }
}

impl fmt::Debug for CanonicalGraph {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{}", self) }
}

impl fmt::Display for CanonicalGraph {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let g = self.graph();
    let verts: Vec<String> = g.vertices.iter().map(|e| e.to_string()).collect();
    let edges: Vec<String> = g
      .edges
      .iter()
      .map(|e| format!("{}.{}->{}.{}", e.tail.vertex, e.tail.slot, e.head.vertex, e.head.slot))
      .collect();
    let hairs: Vec<String> = g.hairs.iter().map(|h| format!("{}.{}:{}", h.at.vertex, h.at.slot, h.label)).collect();
    write!(f, "<{} | {} | {}>", verts.join(" "), edges.join(" "), hairs.join(" "))
  }
}

/// A finite linear combination of canonical graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
  pub terms: BTreeMap<CanonicalGraph, Q>,
}

impl Chain {
  pub fn zero() -> Chain { Chain::default() }

  pub fn is_zero(&self) -> bool { self.terms.is_empty() }

  pub fn len(&self) -> usize { self.terms.len() }

  pub fn is_empty(&self) -> bool { self.terms.is_empty() }

  pub fn basis(g: CanonicalGraph) -> Chain {
    let mut c = Chain::zero();
    c.add_term(g, &Q::from_int(1));
    c
  }

  pub fn add_term(&mut self, g: CanonicalGraph, c: &Q) {
    if c.is_zero() {
      return;
    }
    match self.terms.entry(g) {
      std::collections::btree_map::Entry::Vacant(v) => {
        v.insert(c.clone());
      }
      std::collections::btree_map::Entry::Occupied(mut o) => {
        *o.get_mut() += c;
        if o.get().is_zero() {
          o.remove();
        }
      }
    }
  }

  pub fn add_scaled(&mut self, other: &Chain, c: &Q) {
    for (g, v) in &other.terms {
      self.add_term(g.clone(), &(v * c));
    }
  }

  pub fn scaled(&self, c: &Q) -> Chain {
    let mut out = Chain::zero();
    out.add_scaled(self, c);
    out
  }

  pub fn sub(&self, other: &Chain) -> Chain {
    let mut out = self.clone();
    out.add_scaled(other, &Q::from_int(-1));
    out
  }

  /// Adds `coeff` times the raw graph `g`, which must be structurally valid.
  pub(crate) fn add_graph(&mut self, g: &HairyGraph, coeff: &Q) {
    let decorations: Vec<OperadElement> = g.vertices.iter().map(|e| OperadElement::basis(e.clone())).collect();
    self.add_decorated(g, &decorations, coeff);
  }

  /// Adds `coeff` times the graph with the incidences of `g` and vertex `v`
  /// decorated by `decorations[v]` instead of `g.vertices[v]`.
  pub(crate) fn add_decorated(&mut self, g: &HairyGraph, decorations: &[OperadElement], coeff: &Q) {
    if coeff.is_zero() || decorations.iter().any(OperadElement::is_zero) {
      return;
    }
    let (canon, orders) = Shape::of(g).canonical_orders();
    let data = shape_data(&canon);
    if data.dim() == 0 {
      return;
    }
    let r = relabeling(g, &canon, &orders[0]);
    let mut factors = vec![Vec::new(); decorations.len()];
    for (v, dec) in decorations.iter().enumerate() {
      let mut f: BTreeMap<usize, Q> = BTreeMap::new();
      for (b, c) in &dec.terms {
        for (b2, c2) in crate::operad::act_basis_unchecked(&r.slot_maps[v], b).terms {
          *f.entry(b2.index()).or_insert_with(Q::zero) += &(c * &c2);
        }
      }
      factors[r.pos[v]] = f.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    let sign = if r.sign < 0 { -coeff } else { coeff.clone() };
    for (t, c) in data.index.expand(&factors) {
      let c = &c * &sign;
      for (i, v) in data.normal_form(t) {
        self.add_term(CanonicalGraph { data: data.clone(), index: *i }, &(&c * v));
      }
    }
  }

  /// Terms whose graphs satisfy `keep`.
  pub fn filter(&self, keep: impl Fn(&CanonicalGraph) -> bool) -> Chain {
    Chain { terms: self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, c)| (g.clone(), c.clone())).collect() }
  }

  pub fn iter(&self) -> impl Iterator<Item = (&CanonicalGraph, &Q)> { self.terms.iter() }
}

impl fmt::Display for Chain {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.terms.is_empty() {
      return write!(f, "0");
    }
    let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{c} {g}")).collect();
    write!(f, "{}", parts.join("\n+ "))
  }
}

/// The class of a raw graph as a combination of canonical graphs.
///
/// For `Com` and `Assoc` the result has at most one term with coefficient
/// `±1`; for `Lie` it can be a longer combination, because moving the slots
/// of a Lie vertex rewrites it in the comb basis. Graphs with an
/// orientation-reversing automorphism give the zero chain.
pub fn canonicalize(g: &HairyGraph) -> Result<Chain> {
  g.validate()?;
  let mut out = Chain::zero();
  out.add_graph(g, &Q::from_int(1));
  Ok(out)
}
