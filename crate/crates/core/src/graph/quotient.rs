//! The span of all decorations of a canonical shape, modulo its automorphisms.
//!
//! For a canonical [`Shape`] the decorations form the tensor product
//! `T = ⊗_v O((m_v))`, indexed in mixed radix with vertex 0 most significant.
//! Automorphisms of the shape (vertex permutations, swaps of equal hairs and
//! parallel edges, loop flips and loop swaps) act on `T` with orientation
//! signs, and the graphs of this shape are the coinvariants `T_A`.
//!
//! Generators whose action permutes basis tensors up to sign are folded in
//! with a signed union-find. The rest (Lie vertices whose slots 0 or 1 move)
//! give relation vectors between orbit representatives, kept in reduced row
//! echelon form. Orbit representatives that are neither zero nor pivots form
//! the basis of `T_A`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use once_cell::sync::Lazy;

use crate::operad::{self, OperadBasisElement, OperadKind};
use crate::perm;
use crate::rational::Q;

use super::shape::Shape;
use super::{Edge, Hair, HairyGraph, Port};

/// How a relabeling moves the vertices and slots of a graph onto a layout.
#[derive(Clone, Debug)]
pub(crate) struct Relabeling {
  /// Old vertex `v` becomes vertex `pos[v]`.
  pub pos:       Vec<usize>,
  /// Slot `s` of old vertex `v` becomes slot `slot_maps[v][s]`.
  pub slot_maps: Vec<Vec<usize>>,
  pub sign:      i64,
}

impl Relabeling {
  /// Fixes slots 0 and 1 at every vertex, so Lie decorations move as combs do.
  fn fixes_lie_roots(&self) -> bool { self.slot_maps.iter().all(|m| m[0] == 0 && m[1] == 1) }
}

/// The relabeling that moves `g` onto the slot layout of `canon`, where
/// `canon == Shape::of(g).permuted(order)`.
pub(crate) fn relabeling(g: &HairyGraph, canon: &Shape, order: &[usize]) -> Relabeling {
  let k = order.len();
  let pos = perm::inverse(order);
  let mut sign = perm::sign(&pos);
  let mut slot_maps: Vec<Vec<usize>> = g.vertices.iter().map(|e| vec![usize::MAX; e.arity()]).collect();
  let mut next_loop = vec![0usize; k];
  let mut next_par = vec![0usize; k * k];
  for e in &g.edges {
    let (u, w) = (pos[e.tail.vertex], pos[e.head.vertex]);
    if u == w {
      let j = next_loop[u];
      next_loop[u] += 1;
      slot_maps[e.tail.vertex][e.tail.slot] = 2 * j;
      slot_maps[e.head.vertex][e.head.slot] = 2 * j + 1;
    } else {
      let (a, b) = (u.min(w), u.max(w));
      let i = next_par[a * k + b];
      next_par[a * k + b] += 1;
      if u > w {
        sign = -sign;
      }
      slot_maps[e.tail.vertex][e.tail.slot] = canon.edge_slot_base(u, w) + i;
      slot_maps[e.head.vertex][e.head.slot] = canon.edge_slot_base(w, u) + i;
    }
  }
  let mut by_vertex: Vec<Vec<(crate::symplectic::Label, usize)>> = vec![Vec::new(); k];
  for h in &g.hairs {
    by_vertex[h.at.vertex].push((h.label, h.at.slot));
  }
  for (v, hs) in by_vertex.iter_mut().enumerate() {
    hs.sort_unstable();
    let base = canon.hair_slot_base(pos[v]);
    for (i, &(_, s)) in hs.iter().enumerate() {
      slot_maps[v][s] = base + i;
    }
  }
  Relabeling { pos, slot_maps, sign }
}

/// The canonical edges and hairs of a shape, in a fixed order.
pub(crate) fn skeleton(shape: &Shape) -> (Vec<Edge>, Vec<Hair>) {
  let k = shape.k();
  let mut edges = Vec::new();
  for v in 0..k {
    for j in 0..shape.loops[v] as usize {
      edges.push(Edge::new(Port::new(v, 2 * j), Port::new(v, 2 * j + 1)));
    }
  }
  for u in 0..k {
    for w in u + 1..k {
      for i in 0..shape.adj(u, w) as usize {
        edges.push(Edge::new(Port::new(u, shape.edge_slot_base(u, w) + i), Port::new(w, shape.edge_slot_base(w, u) + i)));
      }
    }
  }
  let mut hairs = Vec::new();
  for v in 0..k {
    let base = shape.hair_slot_base(v);
    for (i, &label) in shape.hairs[v].iter().enumerate() {
      hairs.push(Hair { at: Port::new(v, base + i), label });
    }
  }
  (edges, hairs)
}

/// Mixed-radix indexing of `⊗_v O((m_v))`.
#[derive(Clone, Debug)]
pub(crate) struct TensorIndex {
  pub kind:    OperadKind,
  pub arities: Vec<u8>,
  pub dims:    Vec<usize>,
  pub strides: Vec<usize>,
  pub total:   usize,
}

impl TensorIndex {
  pub fn new(kind: OperadKind, arities: &[u8]) -> TensorIndex {
    let dims: Vec<usize> = arities.iter().map(|&m| operad::dim(kind, m as usize).expect("arity >= 3")).collect();
    let mut strides = vec![1; dims.len()];
    for v in (0..dims.len().saturating_sub(1)).rev() {
      strides[v] = strides[v + 1] * dims[v + 1];
    }
    let total = dims.iter().product();
    TensorIndex { kind, arities: arities.to_vec(), dims, strides, total }
  }

  pub fn decode(&self, t: usize) -> Vec<OperadBasisElement> {
    (0..self.dims.len())
      .map(|v| OperadBasisElement::from_index(self.kind, self.arities[v], (t / self.strides[v]) % self.dims[v]))
      .collect()
  }

  /// Expands `⊗_v factors[v]` into tensor indices.
  pub fn expand(&self, factors: &[Vec<(usize, Q)>]) -> Vec<(usize, Q)> {
    let mut acc: Vec<(usize, Q)> = vec![(0, Q::from_int(1))];
    for (v, f) in factors.iter().enumerate() {
      let mut next = Vec::with_capacity(acc.len() * f.len());
      for (t, c) in &acc {
        for (i, ci) in f {
          next.push((t + i * self.strides[v], c * ci));
        }
      }
      acc = next;
    }
    acc
  }

  /// The image of the decorations `elems` of an old graph under `r`, as
  /// tensor indices of the new layout. The relabeling sign is included.
  pub fn transport(&self, r: &Relabeling, elems: &[OperadBasisElement]) -> Vec<(usize, Q)> {
    let mut factors: Vec<Vec<(usize, Q)>> = vec![Vec::new(); elems.len()];
    for (v, e) in elems.iter().enumerate() {
      let moved = operad::act_basis_unchecked(&r.slot_maps[v], e);
      factors[r.pos[v]] = moved.terms.into_iter().map(|(b, c)| (b.index(), c)).collect();
    }
    let mut out = self.expand(&factors);
    if r.sign < 0 {
      for (_, c) in &mut out {
        *c = -&*c;
      }
    }
    out
  }
}

/// A canonical shape together with the basis of its coinvariants.
#[derive(Debug)]
pub struct ShapeData {
  pub shape: Shape,
  pub(crate) index: TensorIndex,
  /// Tensor indices of the basis graphs, ascending.
  pub free: Vec<u32>,
  nf: Vec<Vec<(u32, Q)>>,
  pub automorphisms: usize,
}

impl ShapeData {
  pub fn dim(&self) -> usize { self.free.len() }

  /// The class of tensor `t` as a combination of basis graphs.
  pub fn normal_form(&self, t: usize) -> &[(u32, Q)] { &self.nf[t] }

  /// The canonical representative of basis graph `i`.
  pub fn representative(&self, i: usize) -> HairyGraph {
    let (edges, hairs) = skeleton(&self.shape);
    HairyGraph { kind: self.shape.kind, vertices: self.index.decode(self.free[i] as usize), edges, hairs }
  }

  fn build(shape: Shape) -> ShapeData {
    let index = TensorIndex::new(shape.kind, &shape.arities);
    let (edges, hairs) = skeleton(&shape);
    let skel = HairyGraph {
      kind: shape.kind,
      vertices: index.decode(0),
      edges,
      hairs,
    };
    let (canon, orders) = shape.canonical_orders();
    debug_assert_eq!(canon, shape, "ShapeData needs a canonical shape");
    let automorphisms = orders.len();
    let mut gens: Vec<Relabeling> =
      generating_set(&orders).iter().map(|o| relabeling(&skel, &shape, o)).collect();
    gens.extend(local_generators(&shape));

    let monomial = |g: &Relabeling| shape.kind != OperadKind::Lie || g.fixes_lie_roots();
    let mut uf = SignedUnionFind::new(index.total);
    for g in gens.iter().filter(|g| monomial(g)) {
      for t in 0..index.total {
        let img = index.transport(g, &index.decode(t));
        debug_assert_eq!(img.len(), 1);
        let (t2, c) = &img[0];
        uf.union(t, *t2, if c.is_negative() { -1 } else { 1 });
      }
    }

    let mut rref = Rref::default();
    for g in gens.iter().filter(|g| !monomial(g)) {
      for t in 0..index.total {
        let (rt, st) = uf.find(t);
        if uf.zero[rt] {
          continue;
        }
        let mut rel: BTreeMap<u32, Q> = BTreeMap::new();
        *rel.entry(rt as u32).or_insert_with(Q::zero) += &Q::from_int(st);
        for (t2, c) in index.transport(g, &index.decode(t)) {
          let (r2, s2) = uf.find(t2);
          if uf.zero[r2] {
            continue;
          }
          *rel.entry(r2 as u32).or_insert_with(Q::zero) -= &(&c * &Q::from_int(s2));
        }
        rel.retain(|_, c| !c.is_zero());
        rref.insert(rel);
      }
    }

    let mut free = Vec::new();
    let mut position: HashMap<u32, u32> = HashMap::new();
    for t in 0..index.total {
      let (r, _) = uf.find(t);
      if r == t && !uf.zero[t] && !rref.rows.contains_key(&(t as u32)) {
        position.insert(t as u32, free.len() as u32);
        free.push(t as u32);
      }
    }
    let nf = (0..index.total)
      .map(|t| {
        let (r, s) = uf.find(t);
        if uf.zero[r] {
          return vec![];
        }
        let s = Q::from_int(s);
        match rref.rows.get(&(r as u32)) {
          None => vec![(position[&(r as u32)], s)],
          Some(row) => row.iter().map(|(c, v)| (position[c], -&(v * &s))).collect(),
        }
      })
      .collect();
    ShapeData { shape, index, free, nf, automorphisms }
  }
}

/// A subset of the automorphisms of a canonical shape (given as vertex orders
/// that fix it) generating them all.
fn generating_set(autos: &[Vec<usize>]) -> Vec<Vec<usize>> {
  let k = autos.first().map_or(0, Vec::len);
  let identity: Vec<usize> = (0..k).collect();
  let mut group: std::collections::HashSet<Vec<usize>> = [identity].into_iter().collect();
  let mut gens = Vec::new();
  for a in autos {
    if group.contains(a) {
      continue;
    }
    gens.push(a.clone());
    let mut frontier: Vec<Vec<usize>> = group.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
      for g in &gens {
        let y = perm::compose(&x, g);
        if group.insert(y.clone()) {
          frontier.push(y);
        }
      }
    }
  }
  gens
}

/// Automorphisms fixing every vertex: equal hair swaps, parallel edge swaps,
/// loop flips and loop swaps.
fn local_generators(shape: &Shape) -> Vec<Relabeling> {
  let k = shape.k();
  let identity = |v: usize| -> Vec<usize> { (0..shape.arities[v] as usize).collect() };
  let plain = || -> Vec<Vec<usize>> { (0..k).map(identity).collect() };
  let pos: Vec<usize> = (0..k).collect();
  let mut out = Vec::new();
  let mut swap = |changes: &[(usize, usize, usize)], sign: i64| {
    let mut maps = plain();
    for &(v, a, b) in changes {
      maps[v].swap(a, b);
    }
    out.push(Relabeling { pos: pos.clone(), slot_maps: maps, sign });
  };
  for v in 0..k {
    let base = shape.hair_slot_base(v);
    for i in 1..shape.hairs[v].len() {
      if shape.hairs[v][i] == shape.hairs[v][i - 1] {
        swap(&[(v, base + i - 1, base + i)], 1);
      }
    }
    for j in 0..shape.loops[v] as usize {
      swap(&[(v, 2 * j, 2 * j + 1)], -1);
      if j > 0 {
        swap(&[(v, 2 * j - 2, 2 * j), (v, 2 * j - 1, 2 * j + 1)], 1);
      }
    }
  }
  for u in 0..k {
    for w in u + 1..k {
      let (bu, bw) = (shape.edge_slot_base(u, w), shape.edge_slot_base(w, u));
      for i in 1..shape.adj(u, w) as usize {
        swap(&[(u, bu + i - 1, bu + i), (w, bw + i - 1, bw + i)], 1);
      }
    }
  }
  out
}

/// Union-find where each element equals `±` its parent.
struct SignedUnionFind {
  parent: Vec<u32>,
  sign:   Vec<i8>,
  zero:   Vec<bool>,
}

impl SignedUnionFind {
  fn new(n: usize) -> SignedUnionFind {
    SignedUnionFind { parent: (0..n as u32).collect(), sign: vec![1; n], zero: vec![false; n] }
  }

  /// `(root, s)` with `x = s * root`.
  fn find(&mut self, x: usize) -> (usize, i64) {
    let p = self.parent[x] as usize;
    if p == x {
      return (x, 1);
    }
    let (r, s) = self.find(p);
    let total = s * self.sign[x] as i64;
    self.parent[x] = r as u32;
    self.sign[x] = total as i8;
    (r, total)
  }

  /// Records `a = s * b`.
  fn union(&mut self, a: usize, b: usize, s: i64) {
    let (ra, sa) = self.find(a);
    let (rb, sb) = self.find(b);
    let x = sa * s * sb; // ra = x * rb
    if ra == rb {
      if x < 0 {
        self.zero[ra] = true;
      }
      return;
    }
    let (keep, drop) = (ra.min(rb), ra.max(rb));
    self.parent[drop] = keep as u32;
    self.sign[drop] = x as i8;
    self.zero[keep] |= self.zero[drop];
  }
}

/// Fully reduced row echelon form of relations `x_p + Σ c_j x_j = 0`, keyed by pivot `p`.
#[derive(Default)]
struct Rref {
  rows:   HashMap<u32, BTreeMap<u32, Q>>,
  /// Rows that may contain a column; entries can be stale.
  by_col: HashMap<u32, Vec<u32>>,
}

impl Rref {
  fn insert(&mut self, mut rel: BTreeMap<u32, Q>) {
    let pivots_in: Vec<u32> = rel.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
    for p in pivots_in {
      let c = rel.remove(&p).expect("pivot entry present");
      for (j, v) in &self.rows[&p] {
        let e = rel.entry(*j).or_insert_with(Q::zero);
        *e -= &(&c * v);
        if e.is_zero() {
          rel.remove(j);
        }
      }
    }
    let Some((&p, lead)) = rel.iter().next_back() else { return };
    let inv = lead.recip();
    rel.remove(&p);
    for v in rel.values_mut() {
      *v *= &inv;
    }
    // eliminate p from existing rows: x_p = -Σ rel
    if let Some(users) = self.by_col.remove(&p) {
      for r in users {
        let Some(row) = self.rows.get_mut(&r) else { continue };
        let Some(a) = row.remove(&p) else { continue };
        for (j, v) in &rel {
          let e = row.entry(*j).or_insert_with(Q::zero);
          *e -= &(&a * v);
          if e.is_zero() {
            row.remove(j);
          } else {
            self.by_col.entry(*j).or_default().push(r);
          }
        }
      }
    }
    for j in rel.keys() {
      self.by_col.entry(*j).or_default().push(p);
    }
    self.rows.insert(p, rel);
  }
}

static REGISTRY: Lazy<RwLock<HashMap<Shape, Arc<ShapeData>>>> = Lazy::new(Default::default);

/// The shared coinvariant data of a canonical shape, built on first use.
pub fn shape_data(shape: &Shape) -> Arc<ShapeData> {
  if let Some(d) = REGISTRY.read().expect("registry lock").get(shape) {
    return d.clone();
  }
  let built = Arc::new(ShapeData::build(shape.clone()));
  REGISTRY.write().expect("registry lock").entry(shape.clone()).or_insert(built).clone()
}
