//! The undecorated skeleton of a hairy graph and its canonical vertex order.
//!
//! A [`Shape`] forgets the operad decorations and the edge directions: it
//! records arities, loop counts, edge multiplicities between vertices and the
//! sorted hair labels at every vertex. Canonical vertex orders come from
//! partition refinement followed by an exhaustive search tree; every leaf
//! with the least permuted shape is kept, so the leaves also give the
//! automorphisms.
//!
//! A shape also fixes a slot layout for every vertex: loops first (loop `j`
//! uses slots `2j -> 2j+1`), then the edges to the other vertices in
//! increasing vertex order (parallel edges consecutive, directed from the
//! smaller vertex to the larger), then the hairs in label order.

use crate::operad::OperadKind;
use crate::symplectic::Label;

use super::HairyGraph;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
  pub kind:    OperadKind,
  pub arities: Vec<u8>,
  pub loops:   Vec<u8>,
  pub hairs:   Vec<Vec<Label>>,
  /// Row-major `k * k` edge multiplicities, zero on the diagonal.
  pub adj:     Vec<u8>,
}

impl Shape {
  pub fn of(g: &HairyGraph) -> Shape {
    let k = g.vertices.len();
    let mut loops = vec![0u8; k];
    let mut adj = vec![0u8; k * k];
    for e in &g.edges {
      let (u, w) = (e.tail.vertex, e.head.vertex);
      if u == w {
        loops[u] += 1;
      } else {
        adj[u * k + w] += 1;
        adj[w * k + u] += 1;
      }
    }
    let mut hairs = vec![Vec::new(); k];
    for h in &g.hairs {
      hairs[h.at.vertex].push(h.label);
    }
    for hs in &mut hairs {
      hs.sort_unstable();
    }
    Shape { kind: g.kind, arities: g.vertices.iter().map(|e| e.arity).collect(), loops, hairs, adj }
  }

  pub fn k(&self) -> usize { self.arities.len() }

  pub fn adj(&self, u: usize, w: usize) -> u8 { self.adj[u * self.k() + w] }

  pub fn edge_count(&self) -> usize {
    let k = self.k();
    let between: usize = (0..k).flat_map(|u| (u + 1..k).map(move |w| (u, w))).map(|(u, w)| self.adj(u, w) as usize).sum();
    between + self.loops.iter().map(|&l| l as usize).sum::<usize>()
  }

  pub fn hair_count(&self) -> usize { self.hairs.iter().map(Vec::len).sum() }

  pub fn degree(&self) -> usize { self.arities.iter().map(|&m| m as usize - 2).sum() }

  pub fn components(&self) -> usize {
    let k = self.k();
    let mut seen = vec![false; k];
    let mut count = 0;
    for s in 0..k {
      if seen[s] {
        continue;
      }
      count += 1;
      let mut stack = vec![s];
      seen[s] = true;
      while let Some(u) = stack.pop() {
        for w in 0..k {
          if !seen[w] && self.adj(u, w) > 0 {
            seen[w] = true;
            stack.push(w);
          }
        }
      }
    }
    count
  }

  pub fn rank(&self) -> usize { self.edge_count() + self.components() - self.k() }

  /// The shape with new vertex `i` taken from old vertex `order[i]`.
  pub fn permuted(&self, order: &[usize]) -> Shape {
    let k = self.k();
    let mut adj = vec![0u8; k * k];
    for i in 0..k {
      for j in 0..k {
        adj[i * k + j] = self.adj(order[i], order[j]);
      }
    }
    Shape {
      kind: self.kind,
      arities: order.iter().map(|&v| self.arities[v]).collect(),
      loops: order.iter().map(|&v| self.loops[v]).collect(),
      hairs: order.iter().map(|&v| self.hairs[v].clone()).collect(),
      adj,
    }
  }

  /// First slot of vertex `v` used by edges towards `w != v`.
  pub fn edge_slot_base(&self, v: usize, w: usize) -> usize {
    2 * self.loops[v] as usize + (0..w).filter(|&x| x != v).map(|x| self.adj(v, x) as usize).sum::<usize>()
  }

  /// First hair slot of vertex `v`.
  pub fn hair_slot_base(&self, v: usize) -> usize { self.arities[v] as usize - self.hairs[v].len() }

  /// The minimal permuted shape and every vertex order achieving it.
  pub fn canonical_orders(&self) -> (Shape, Vec<Vec<usize>>) {
    let k = self.k();
    let mut verts: Vec<usize> = (0..k).collect();
    verts.sort_by(|&a, &b| self.invariant(a).cmp(&self.invariant(b)));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in verts {
      match cells.last_mut() {
        Some(c) if self.invariant(c[0]) == self.invariant(v) => c.push(v),
        _ => cells.push(vec![v]),
      }
    }
    let mut best: Option<(Shape, Vec<Vec<usize>>)> = None;
    self.search(cells, &mut best);
    best.expect("search visits at least one leaf")
  }

  fn invariant(&self, v: usize) -> (u8, u8, &[Label]) { (self.arities[v], self.loops[v], &self.hairs[v]) }

  /// Splits cells by edge counts into every cell until stable.
  fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
      let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
      for cell in &cells {
        if cell.len() == 1 {
          next.push(cell.clone());
          continue;
        }
        let sig = |v: usize| -> Vec<usize> {
          cells.iter().map(|c| c.iter().map(|&w| self.adj(v, w) as usize).sum()).collect()
        };
        let mut tagged: Vec<(Vec<usize>, usize)> = cell.iter().map(|&v| (sig(v), v)).collect();
        tagged.sort();
        let mut start = 0;
        for i in 1..=tagged.len() {
          if i == tagged.len() || tagged[i].0 != tagged[start].0 {
            let mut part: Vec<usize> = tagged[start..i].iter().map(|t| t.1).collect();
            part.sort_unstable();
            next.push(part);
            start = i;
          }
        }
      }
      if next.len() == cells.len() {
        return next;
      }
      cells = next;
    }
  }

  fn search(&self, cells: Vec<Vec<usize>>, best: &mut Option<(Shape, Vec<Vec<usize>>)>) {
    let cells = self.refine(cells);
    let Some(split) = cells.iter().position(|c| c.len() > 1) else {
      let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
      let candidate = self.permuted(&order);
      match best {
        Some((s, orders)) if *s == candidate => orders.push(order),
        Some((s, _)) if *s < candidate => {}
        _ => *best = Some((candidate, vec![order])),
      }
      return;
    };
    for &v in &cells[split] {
      let mut next = cells[..split].to_vec();
      next.push(vec![v]);
      next.push(cells[split].iter().copied().filter(|&w| w != v).collect());
      next.extend_from_slice(&cells[split + 1..]);
      self.search(next, best);
    }
  }
}
