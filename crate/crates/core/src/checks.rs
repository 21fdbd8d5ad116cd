//! Exhaustive identity suites for the trace, run by `hairy trace-check`.
//!
//! Each suite walks its inputs in increasing `(d, k)` and basis order, so the
//! first failure reported is the smallest one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{boundary_chain, CanonicalGraph, Chain, GraphJson, SliceKey};
use crate::homology::{basis, boundary_out};
use crate::linalg::RationalMatrix;
use crate::operad::OperadKind;
use crate::rational::Q;
use crate::spider::ce_boundary;
use crate::symplectic::Half;
use crate::trace::{beta, project_plus, relabel_stabilizer, trace_counted};

/// A deliberate defect for exercising the failure path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
  #[default]
  None,
  /// Negates the Lie-side differential.
  SignFlip,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
  pub suite:     &'static str,
  pub kind:      OperadKind,
  pub n:         u16,
  pub checked:   usize,
  pub matchings: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
  pub suite:    &'static str,
  pub slice:    SliceKey,
  /// The input as a JSON graph (a wedge is an edgeless graph).
  pub input:    String,
  pub expected: String,
  pub actual:   String,
}

pub type Outcome = std::result::Result<SuiteReport, Box<Counterexample>>;

/// Slices of wedges of `k` spiders of total degree `d`.
pub fn wedge_slices(kind: OperadKind, n: u16, max_degree: usize, max_factors: usize) -> Vec<SliceKey> {
  let mut out = Vec::new();
  for d in 1..=max_degree {
    for k in 1..=max_factors.min(d) {
      out.push(SliceKey { kind, n, k, d, r: 0, h: d + 2 * k });
    }
  }
  out
}

fn run<T: Send + Sync>(
  suite: &'static str,
  kind: OperadKind,
  n: u16,
  slices: &[SliceKey],
  inputs: impl Fn(&SliceKey) -> Result<Vec<T>>,
  check: impl Fn(&T) -> Result<(usize, Option<Counterexample>)> + Sync,
) -> Result<Outcome> {
  let mut report = SuiteReport { suite, kind, n, checked: 0, matchings: 0 };
  for key in slices {
    let items = inputs(key)?;
    let results: Vec<_> = items.par_iter().map(&check).collect::<Result<Vec<_>>>()?;
    for (matchings, failure) in results {
      report.matchings += matchings;
      if let Some(c) = failure {
        return Ok(Err(Box::new(c)));
      }
      report.checked += 1;
    }
  }
  Ok(Ok(report))
}

fn graph_json(g: &CanonicalGraph, n: u16) -> String { GraphJson::emit(&g.graph(), n) }

fn failure(suite: &'static str, slice: SliceKey, input: String, expected: &Chain, actual: &Chain) -> Counterexample {
  Counterexample { suite, slice, input, expected: expected.to_string(), actual: actual.to_string() }
}

fn wedges(key: &SliceKey) -> Result<Vec<CanonicalGraph>> { Ok(basis(key, false)?.graphs.clone()) }

/// `∂_H ∘ Tr = Tr ∘ ∂_CE` on every wedge basis element.
pub fn chain_map(kind: OperadKind, n: u16, max_degree: usize, max_factors: usize, fault: Fault) -> Result<Outcome> {
  let slices = wedge_slices(kind, n, max_degree, max_factors);
  run("chain-map", kind, n, &slices, wedges, |g| {
    let w = Chain::basis(g.clone());
    let (tw, a) = trace_counted(&w)?;
    let lhs = boundary_chain(&tw);
    let mut dw = ce_boundary(&w);
    if fault == Fault::SignFlip {
      dw = dw.scaled(&Q::from_int(-1));
    }
    let (rhs, b) = trace_counted(&dw)?;
    let bad = (lhs != rhs).then(|| failure("chain-map", g.slice_key(n), graph_json(g, n), &lhs, &rhs));
    Ok((a + b, bad))
  })
}

/// The chain map identity on `samples` random integer combinations of up to
/// four wedges per slice, drawn from a generator seeded by `seed`.
pub fn chain_map_random(
  kind: OperadKind,
  n: u16,
  max_degree: usize,
  max_factors: usize,
  seed: u64,
  samples: usize,
) -> Result<Outcome> {
  let slices = wedge_slices(kind, n, max_degree, max_factors);
  let base = ChaCha8Rng::seed_from_u64(seed);
  let combos = |key: &SliceKey| -> Result<Vec<Chain>> {
    let b = wedges(key)?;
    if b.is_empty() {
      return Ok(vec![]);
    }
    let mut out = Vec::with_capacity(samples);
    let mut rng = base.clone();
    rng.set_stream(key.k as u64 * 64 + key.d as u64);
    for _ in 0..samples {
      let mut c = Chain::zero();
      for _ in 0..rng.gen_range(1..=4) {
        let g = &b[rng.gen_range(0..b.len())];
        c.add_term(g.clone(), &Q::from_int(rng.gen_range(-3..=3)));
      }
      out.push(c);
    }
    Ok(out)
  };
  run("chain-map-random", kind, n, &slices, combos, |w| {
    let (tw, a) = trace_counted(w)?;
    let lhs = boundary_chain(&tw);
    let (rhs, b) = trace_counted(&ce_boundary(w))?;
    let bad = (lhs != rhs).then(|| {
      let key = w.iter().next().map(|(g, _)| g.slice_key(n)).expect("nonzero combination");
      failure("chain-map-random", key, w.to_string(), &lhs, &rhs)
    });
    Ok((a + b, bad))
  })
}

/// `β ∘ Tr` is the inclusion on every wedge basis element.
pub fn beta_trace(kind: OperadKind, n: u16, max_degree: usize, max_factors: usize) -> Result<Outcome> {
  let slices = wedge_slices(kind, n, max_degree, max_factors);
  run("beta-trace", kind, n, &slices, wedges, |g| {
    let w = Chain::basis(g.clone());
    let (tw, a) = trace_counted(&w)?;
    let back = beta(&tw)?;
    let bad = (back != w).then(|| failure("beta-trace", g.slice_key(n), graph_json(g, n), &w, &back));
    Ok((a, bad))
  })
}

fn all_p(g: &CanonicalGraph) -> bool { g.shape().hairs.iter().flatten().all(|l| !l.primed && l.half == Half::P) }

/// A basis of the cycles among chains of connected graphs whose labels are
/// all `p`. Those graphs span a subcomplex: the boundary keeps labels.
pub fn all_p_cycles(key: &SliceKey) -> Result<Vec<Chain>> {
  let b = basis(key, true)?;
  let cols: Vec<usize> = (0..b.len()).filter(|&i| all_p(&b.graphs[i])).collect();
  let d = boundary_out(key, true)?;
  let sub = RationalMatrix::from_triplets(
    d.rows(),
    cols.len(),
    cols.iter().enumerate().flat_map(|(j, &c)| d.column(c).into_iter().map(move |(r, v)| (r, j, v))),
  );
  Ok(
    sub
      .kernel_basis()
      .into_iter()
      .map(|v| {
        let mut z = Chain::zero();
        for (j, c) in v {
          z.add_term(b.graphs[cols[j]].clone(), &c);
        }
        z
      })
      .collect(),
  )
}

/// Connected slices holding graphs of degree at most `max_degree`.
pub fn graph_slices(kind: OperadKind, n: u16, max_degree: usize, max_vertices: usize) -> Vec<SliceKey> {
  (1..=max_degree)
    .flat_map(|d| crate::graph::slice_keys(kind, n, d, d + 1, 3 * d, max_vertices))
    .filter(|k| k.components() == Some(1))
    .collect()
}

/// `p ∘ Tr ∘ relabel ∘ β` is the identity on all-`p` cycles.
pub fn roundtrip(kind: OperadKind, n: u16, max_degree: usize, max_vertices: usize) -> Result<Outcome> {
  let slices = graph_slices(kind, n, max_degree, max_vertices);
  run("p-trace-beta", kind, n, &slices, all_p_cycles, |z| {
    let lifted = relabel_stabilizer(&beta(z)?, n)?;
    let (t, a) = trace_counted(&lifted)?;
    let back = project_plus(&t);
    let bad = (&back != z).then(|| {
      let (g, _) = z.iter().next().expect("cycles are nonzero");
      failure("p-trace-beta", g.slice_key(n), z.to_string(), z, &back)
    });
    Ok((a, bad))
  })
}
