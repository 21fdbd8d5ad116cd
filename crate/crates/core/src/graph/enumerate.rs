//! Bases of graded slices and the matrices of the boundary between them.
//!
//! Enumeration runs in two stages. First the skeletons: arity and hair count
//! per vertex (sorted, since vertex order is free at this point), then every
//! multigraph with loops realizing the remaining degrees, deduplicated up to
//! isomorphism. Then label multisets are distributed over the vertices of
//! each skeleton, keeping only assignments that are lexicographically least
//! in their orbit under the skeleton's automorphisms.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::RationalMatrix;
use crate::symplectic::{Label, SymplecticSpace};

use super::boundary::add_boundary;
use super::chain::{CanonicalGraph, Chain};
use super::quotient::shape_data;
use super::shape::Shape;
use super::SliceKey;

/// The canonical basis of one slice.
#[derive(Clone, Debug)]
pub struct SliceBasis {
  pub key:       SliceKey,
  pub connected: bool,
  pub graphs:    Vec<CanonicalGraph>,
  position:      HashMap<CanonicalGraph, usize>,
}

impl SliceBasis {
  /// A basis with no graphs, for gradings no graph has.
  pub fn empty(key: SliceKey, connected: bool) -> SliceBasis {
    SliceBasis { key, connected, graphs: vec![], position: HashMap::new() }
  }

  pub fn len(&self) -> usize { self.graphs.len() }

  pub fn is_empty(&self) -> bool { self.graphs.is_empty() }

  pub fn position(&self, g: &CanonicalGraph) -> Option<usize> { self.position.get(g).copied() }

  /// Coordinates of a chain supported in this slice.
  pub fn coordinates(&self, c: &Chain) -> Option<Vec<(usize, crate::rational::Q)>> {
    c.iter().map(|(g, v)| self.position(g).map(|i| (i, v.clone()))).collect()
  }
}

/// Arity sequences (nonincreasing, each at least 3) with `Σ (m - 2) = d`.
fn arity_sequences(k: usize, d: usize) -> Vec<Vec<u8>> {
  fn rec(left: usize, slots: usize, max: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if slots == 0 {
      if left == 0 {
        out.push(cur.clone());
      }
      return;
    }
    // each remaining vertex needs at least 1
    if left < slots {
      return;
    }
    for x in (1..=max.min(left - (slots - 1))).rev() {
      cur.push(x as u8 + 2);
      rec(left - x, slots - 1, x, cur, out);
      cur.pop();
    }
  }
  let mut out = Vec::new();
  if k > 0 && d >= k {
    rec(d, k, d, &mut Vec::new(), &mut out);
  }
  out
}

/// Hair counts per vertex with sum `h`, nonincreasing among equal arities.
fn hair_distributions(arities: &[u8], h: usize) -> Vec<Vec<u8>> {
  fn rec(ar: &[u8], i: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if i == ar.len() {
      if left == 0 {
        out.push(cur.clone());
      }
      return;
    }
    let mut max = (ar[i] as usize).min(left);
    if i > 0 && ar[i] == ar[i - 1] {
      max = max.min(cur[i - 1] as usize);
    }
    for x in 0..=max {
      cur.push(x as u8);
      rec(ar, i + 1, left - x, cur, out);
      cur.pop();
    }
  }
  let mut out = Vec::new();
  rec(arities, 0, h, &mut Vec::new(), &mut out);
  out
}

/// Loop counts and adjacency matrices with `2 L_v + Σ_w A_vw = deg_v`.
fn multigraphs(deg: &[usize]) -> Vec<(Vec<u8>, Vec<u8>)> {
  let k = deg.len();
  let mut out = Vec::new();
  let mut rem = deg.to_vec();
  let mut loops = vec![0u8; k];
  let mut adj = vec![0u8; k * k];
  #[allow(clippy::too_many_arguments)]
  fn rec(
    v: usize,
    w: usize,
    k: usize,
    rem: &mut Vec<usize>,
    loops: &mut Vec<u8>,
    adj: &mut Vec<u8>,
    out: &mut Vec<(Vec<u8>, Vec<u8>)>,
  ) {
    if v == k {
      out.push((loops.clone(), adj.clone()));
      return;
    }
    if w == v {
      for l in 0..=rem[v] / 2 {
        loops[v] = l as u8;
        rem[v] -= 2 * l;
        rec(v, w + 1, k, rem, loops, adj, out);
        rem[v] += 2 * l;
      }
      loops[v] = 0;
      return;
    }
    if w == k {
      if rem[v] == 0 {
        rec(v + 1, v + 1, k, rem, loops, adj, out);
      }
      return;
    }
    // remaining capacity of later vertices must absorb rem[v]
    let cap: usize = (w..k).map(|x| rem[x]).sum();
    if cap < rem[v] {
      return;
    }
    for a in 0..=rem[v].min(rem[w]) {
      adj[v * k + w] = a as u8;
      adj[w * k + v] = a as u8;
      rem[v] -= a;
      rem[w] -= a;
      rec(v, w + 1, k, rem, loops, adj, out);
      rem[v] += a;
      rem[w] += a;
    }
    adj[v * k + w] = 0;
    adj[w * k + v] = 0;
  }
  rec(0, 0, k, &mut rem, &mut loops, &mut adj, &mut out);
  out
}

/// Multisets of size `size` drawn from `labels`, as sorted vectors.
fn multisets(labels: &[Label], size: usize) -> Vec<Vec<Label>> {
  fn rec(labels: &[Label], start: usize, size: usize, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
    if cur.len() == size {
      out.push(cur.clone());
      return;
    }
    for i in start..labels.len() {
      cur.push(labels[i]);
      rec(labels, i, size, cur, out);
      cur.pop();
    }
  }
  let mut sorted = labels.to_vec();
  sorted.sort_unstable();
  let mut out = Vec::new();
  rec(&sorted, 0, size, &mut Vec::new(), &mut out);
  out
}

/// Canonical skeletons (shapes whose hairs are all labeled `p1`).
fn skeletons(key: &SliceKey, connected: bool) -> Vec<Shape> {
  let Some(components) = key.components() else { return vec![] };
  if connected && components != 1 {
    return vec![];
  }
  let mut found = BTreeSet::new();
  for arities in arity_sequences(key.k, key.d) {
    for hairs in hair_distributions(&arities, key.h) {
      let deg: Vec<usize> = arities.iter().zip(&hairs).map(|(&m, &h)| (m - h) as usize).collect();
      if deg.iter().sum::<usize>() % 2 != 0 {
        continue;
      }
      for (loops, adj) in multigraphs(&deg) {
        let s = Shape {
          kind: key.kind,
          arities: arities.clone(),
          loops,
          hairs: hairs.iter().map(|&h| vec![Label::p(1); h as usize]).collect(),
          adj,
        };
        if s.components() != components {
          continue;
        }
        found.insert(s.canonical_orders().0);
      }
    }
  }
  found.into_iter().collect()
}

/// Canonical labeled shapes of a slice.
fn labeled_shapes(key: &SliceKey, connected: bool) -> Vec<Shape> {
  let labels = SymplecticSpace { n: key.n }.basis();
  let mut found = BTreeSet::new();
  for skel in skeletons(key, connected) {
    let (_, autos) = skel.canonical_orders();
    let choices: Vec<Vec<Vec<Label>>> = skel.hairs.iter().map(|h| multisets(&labels, h.len())).collect();
    let mut pick = vec![0usize; skel.k()];
    'assign: loop {
      let assignment: Vec<&Vec<Label>> = pick.iter().enumerate().map(|(v, &i)| &choices[v][i]).collect();
      let least = autos.iter().all(|o| {
        let moved: Vec<&Vec<Label>> = o.iter().map(|&v| assignment[v]).collect();
        moved >= assignment
      });
      if least {
        let s = Shape { hairs: assignment.iter().map(|h| (*h).clone()).collect(), ..skel.clone() };
        found.insert(s.canonical_orders().0);
      }
      // odometer over the per-vertex choices
      let mut v = 0;
      loop {
        if v == pick.len() {
          break 'assign;
        }
        pick[v] += 1;
        if pick[v] < choices[v].len() {
          break;
        }
        pick[v] = 0;
        v += 1;
      }
    }
  }
  found.into_iter().collect()
}

/// The canonical nonzero graphs of a slice, in a deterministic order.
pub fn enumerate_basis(key: &SliceKey, connected: bool) -> Result<SliceBasis> {
  key.validate()?;
  let shapes = labeled_shapes(key, connected);
  let data: Vec<_> = shapes.par_iter().map(shape_data).collect();
  let mut graphs = Vec::new();
  for d in data {
    for i in 0..d.dim() {
      graphs.push(CanonicalGraph { data: d.clone(), index: i as u32 });
    }
  }
  let position = graphs.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
  Ok(SliceBasis { key: *key, connected, graphs, position })
}

/// Matrix of the boundary from `from` (columns) to `to` (rows).
pub fn slice_boundary_matrix(from: &SliceBasis, to: &SliceBasis) -> Result<RationalMatrix> {
  let columns: Vec<Chain> = from
    .graphs
    .par_iter()
    .map(|g| {
      let mut c = Chain::zero();
      add_boundary(&g.graph(), &crate::rational::Q::from_int(1), &mut c);
      c
    })
    .collect();
  let mut m = RationalMatrix::zeros(to.len(), from.len());
  for (j, c) in columns.iter().enumerate() {
    for (g, v) in c.iter() {
      let i = to.position(g).ok_or_else(|| {
        crate::error::Error::Integrity(format!("boundary of a graph in {} leaves the slice below: {g}", from.key))
      })?;
      m.add(i, j, v);
    }
  }
  Ok(m)
}

/// Every consistent slice key with the given kind and `n`, degree `d`, and
/// at most `max_rank` loops, `max_hairs` hairs and `max_vertices` vertices.
pub fn slice_keys(
  kind: crate::operad::OperadKind,
  n: u16,
  d: usize,
  max_rank: usize,
  max_hairs: usize,
  max_vertices: usize,
) -> Vec<SliceKey> {
  let mut out = Vec::new();
  for k in 1..=d.min(max_vertices) {
    for r in 0..=max_rank {
      for h in 0..=max_hairs.min(d + 2 * k) {
        let key = SliceKey { kind, n, k, d, r, h };
        if key.validate().is_ok() {
          out.push(key);
        }
      }
    }
  }
  out
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn arity_sequences_partition_degree() {
    assert_eq!(arity_sequences(2, 3), vec![vec![4, 3]]);
    assert_eq!(arity_sequences(2, 4), vec![vec![5, 3], vec![4, 4]]);
    assert!(arity_sequences(3, 2).is_empty());
  }

  #[test]
  fn multigraph_degrees() {
    for (loops, adj) in multigraphs(&[3, 3, 2]) {
      for v in 0..3 {
        let d = 2 * loops[v] as usize + (0..3).map(|w| adj[v * 3 + w] as usize).sum::<usize>();
        assert_eq!(d, [3, 3, 2][v]);
      }
    }
    assert_eq!(multigraphs(&[2]).len(), 1);
    assert!(multigraphs(&[1]).is_empty());
  }

  #[test]
  fn multiset_counts() {
    let l = SymplecticSpace { n: 1 }.basis();
    assert_eq!(multisets(&l, 3).len(), 4);
    let l = SymplecticSpace { n: 2 }.basis();
    assert_eq!(multisets(&l, 3).len(), 20);
  }
}
