//! The trace from wedges of spiders to hairy graphs, and the maps around it.
//!
//! `T` joins two hairs into an edge, weighted by the pairing of their labels.
//! `exp(T)` sums over all partial matchings of hairs at once, and the trace of
//! a wedge is `exp(T)` of its edgeless graph. `exp(-T)` is the inverse, with
//! sign `(-1)^|M|` on each matching. `alpha` cuts every internal edge and
//! labels the two new hairs with a fresh symplectic pair from an auxiliary
//! space `W` of dimension `2N`, `N = floor(3d/2)`, averaged over all ways to
//! do so.

use crate::error::{Error, Result};
use crate::graph::{Chain, Edge, Hair, HairyGraph};
use crate::rational::Q;
use crate::spider::{wedge, BasicSpider};
use crate::symplectic::{omega, Half, Label};

/// A partial matching of hair indices; each pair `(a, b)` has `a < b` and
/// becomes an edge from hair `a`'s slot to hair `b`'s slot.
pub type Matching = Vec<(usize, usize)>;

/// All partial matchings of the hairs of `g` whose weight is nonzero,
/// including the empty one.
pub fn matchings(g: &HairyGraph) -> Vec<Matching> {
  fn go(labels: &[Label], start: usize, used: &mut Vec<bool>, cur: &mut Matching, out: &mut Vec<Matching>) {
    out.push(cur.clone());
    for a in start..labels.len() {
      if used[a] {
        continue;
      }
      used[a] = true;
      for b in a + 1..labels.len() {
        if used[b] || omega(labels[a], labels[b]) == 0 {
          continue;
        }
        used[b] = true;
        cur.push((a, b));
        go(labels, a + 1, used, cur, out);
        cur.pop();
        used[b] = false;
      }
      used[a] = false;
    }
  }
  let labels: Vec<Label> = g.hairs.iter().map(|h| h.label).collect();
  let mut out = Vec::new();
  go(&labels, 0, &mut vec![false; labels.len()], &mut Vec::new(), &mut out);
  out
}

/// `g` with the hairs of `m` joined into edges, and the product of the
/// pairings of the joined labels.
pub fn apply_matching(g: &HairyGraph, m: &[(usize, usize)]) -> Result<(HairyGraph, i64)> {
  let mut used = vec![false; g.hairs.len()];
  let mut edges = g.edges.clone();
  let mut weight = 1;
  for &(a, b) in m {
    if a >= used.len() || b >= used.len() || a == b || used[a] || used[b] {
      return Err(Error::Structure(format!("({a}, {b}) is not part of a matching of {} hairs", used.len())));
    }
    used[a] = true;
    used[b] = true;
    weight *= omega(g.hairs[a].label, g.hairs[b].label);
    edges.push(Edge::new(g.hairs[a].at, g.hairs[b].at));
  }
  let hairs = g.hairs.iter().zip(&used).filter(|&(_, &u)| !u).map(|(h, _)| *h).collect();
  Ok((HairyGraph { kind: g.kind, vertices: g.vertices.clone(), edges, hairs }, weight))
}

fn exp_signed(c: &Chain, sign: i64, count: &mut usize) -> Chain {
  let mut out = Chain::zero();
  for (g, coeff) in c.iter() {
    let g = g.graph();
    for m in matchings(&g) {
      *count += 1;
      let (joined, w) = apply_matching(&g, &m).expect("matchings are valid");
      let s = if m.len() % 2 == 1 { sign } else { 1 };
      out.add_graph(&joined, &(coeff * &Q::from_int(w * s)));
    }
  }
  out
}

pub fn exp_t(c: &Chain) -> Chain { exp_signed(c, 1, &mut 0) }

pub fn exp_neg_t(c: &Chain) -> Chain { exp_signed(c, -1, &mut 0) }

/// The trace of a combination of wedges, and the number of matchings visited.
pub fn trace_counted(w: &Chain) -> Result<(Chain, usize)> {
  if let Some((g, _)) = w.iter().find(|(g, _)| g.shape().edge_count() > 0) {
    return Err(Error::Domain(format!("trace takes wedges of spiders, got a graph with {} edges", g.shape().edge_count())));
  }
  let mut count = 0;
  let out = exp_signed(w, 1, &mut count);
  Ok((out, count))
}

pub fn trace(w: &Chain) -> Result<Chain> { Ok(trace_counted(w)?.0) }

/// `N = floor(3d/2)`, the number of symplectic pairs `alpha` draws from in degree `d`.
pub fn stabilizer_size(d: usize) -> usize { 3 * d / 2 }

/// Cuts all internal edges. The tail of an edge gets `p'_i` or `q'_i` and the
/// head the dual label; over all injective choices of `i` and both
/// orientations, each state has weight `σ (N-m)! / (2^m N!)` with `σ = +1`
/// when the tail gets `p'`. `N` is taken from each graph's own degree.
pub fn alpha(c: &Chain) -> Result<Chain> {
  let mut out = Chain::zero();
  for (cg, coeff) in c.iter() {
    let g = cg.graph();
    let m = g.edges.len();
    let n = stabilizer_size(g.degree());
    if m > n {
      return Err(Error::Domain(format!("{m} edges exceed the {n} available pairs")));
    }
    let states = falling(n, m) * (1u64 << m);
    let weight = coeff * &Q::new(1, states as i64);
    let mut pick = Vec::with_capacity(m);
    let mut used = vec![false; n + 1];
    cut_all(&g, n, &mut pick, &mut used, &weight, &mut out)?;
  }
  Ok(out)
}

fn falling(n: usize, m: usize) -> u64 { (n - m + 1..=n).map(|x| x as u64).product() }

fn cut_all(
  g: &HairyGraph,
  n: usize,
  pick: &mut Vec<u16>,
  used: &mut [bool],
  weight: &Q,
  out: &mut Chain,
) -> Result<()> {
  if pick.len() == g.edges.len() {
    let m = g.edges.len();
    for orient in 0u32..(1 << m) {
      let mut hairs = g.hairs.clone();
      let mut sigma = 1;
      for (x, (e, &i)) in g.edges.iter().zip(pick.iter()).enumerate() {
        let tail_p = orient >> x & 1 == 0;
        let (tl, hl) = if tail_p { (Label::p_prime(i), Label::q_prime(i)) } else { (Label::q_prime(i), Label::p_prime(i)) };
        if !tail_p {
          sigma = -sigma;
        }
        hairs.push(Hair { at: e.tail, label: tl });
        hairs.push(Hair { at: e.head, label: hl });
      }
      let cut = HairyGraph { kind: g.kind, vertices: g.vertices.clone(), edges: vec![], hairs };
      out.add_graph(&cut, &(weight * &Q::from_int(sigma)));
    }
    return Ok(());
  }
  for i in 1..=n {
    if used[i] {
      continue;
    }
    used[i] = true;
    pick.push(u16::try_from(i).map_err(|_| Error::Domain("too many auxiliary labels".into()))?);
    cut_all(g, n, pick, used, weight, out)?;
    pick.pop();
    used[i] = false;
  }
  Ok(())
}

/// `beta = alpha ∘ exp(-T)`.
pub fn beta(c: &Chain) -> Result<Chain> { alpha(&exp_neg_t(c)) }

/// Renames `p'_i, q'_i` to `p_{n+i}, q_{n+i}`.
pub fn relabel_stabilizer(c: &Chain, n: u16) -> Result<Chain> {
  let mut out = Chain::zero();
  for (g, coeff) in c.iter() {
    let g = g.graph();
    let top = g.hairs.iter().filter(|h| h.label.primed).map(|h| h.label.index).max().unwrap_or(0);
    if n.checked_add(top).is_none() {
      return Err(Error::Domain("relabeled index overflows".into()));
    }
    let renamed =
      g.map_labels(|l| if l.primed { Label { primed: false, index: n + l.index, half: l.half } } else { l });
    out.add_graph(&renamed, coeff);
  }
  Ok(out)
}

/// Keeps the terms whose labels are all unprimed `p`.
pub fn project_plus(c: &Chain) -> Chain {
  c.filter(|g| g.shape().hairs.iter().flatten().all(|l| !l.primed && l.half == Half::P))
}

/// The rank-one part of the trace of a single spider.
pub fn morita_projection(s: &BasicSpider) -> Result<Chain> {
  Ok(trace(&wedge(std::slice::from_ref(s))?)?.filter(|g| g.rank() == 1))
}
