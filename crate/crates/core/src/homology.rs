//! Homology of slices of the hairy graph complex.
//!
//! The boundary lowers the vertex count `k` and keeps `(d, r, h)`, so for
//! fixed `(kind, n, d, r, h)` the slices over `k = 1..=d` form a finite chain
//! complex. Bases and boundary matrices are memoized in memory for the life
//! of the process.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::Result;
use crate::graph::{enumerate_basis, slice_boundary_matrix, SliceBasis, SliceKey};
use crate::linalg::{homology_dim, HomologyReport, RationalMatrix};
use crate::operad::OperadKind;

type BasisMemo = HashMap<(SliceKey, bool), Arc<SliceBasis>>;
type MatrixMemo = HashMap<(SliceKey, bool), Arc<RationalMatrix>>;

static BASES: Lazy<Mutex<BasisMemo>> = Lazy::new(Default::default);
static MATRICES: Lazy<Mutex<MatrixMemo>> = Lazy::new(Default::default);

/// The basis of a slice, or the empty basis if the gradings are impossible.
pub fn basis(key: &SliceKey, connected: bool) -> Result<Arc<SliceBasis>> {
  if let Some(b) = BASES.lock().expect("memo lock").get(&(*key, connected)) {
    return Ok(b.clone());
  }
  let b = if key.validate().is_ok() { enumerate_basis(key, connected)? } else { SliceBasis::empty(*key, connected) };
  let b = Arc::new(b);
  BASES.lock().expect("memo lock").insert((*key, connected), b.clone());
  Ok(b)
}

/// Matrix of the boundary out of `key` into the slice with one vertex fewer.
/// For `k = 1` this is the `0 x dim` matrix.
pub fn boundary_out(key: &SliceKey, connected: bool) -> Result<Arc<RationalMatrix>> {
  if let Some(m) = MATRICES.lock().expect("memo lock").get(&(*key, connected)) {
    return Ok(m.clone());
  }
  let from = basis(key, connected)?;
  let m = match key.below() {
    None => RationalMatrix::zeros(0, from.len()),
    Some(below) => slice_boundary_matrix(&from, &*basis(&below, connected)?)?,
  };
  let m = Arc::new(m);
  MATRICES.lock().expect("memo lock").insert((*key, connected), m.clone());
  Ok(m)
}

/// Betti number of one slice, with the boundary-squared check on both sides.
pub fn slice_homology(key: &SliceKey, connected: bool) -> Result<HomologyReport> {
  let d_out = boundary_out(key, connected)?;
  let above = SliceKey { k: key.k + 1, ..*key };
  let d_in = if above.k <= key.d {
    boundary_out(&above, connected)?
  } else {
    Arc::new(RationalMatrix::zeros(d_out.cols(), 0))
  };
  homology_dim(*key, &d_out, &d_in)
}

/// Checks `∂∂ = 0` for every pair of consecutive slices with these gradings.
pub fn check_boundary_squared(kind: OperadKind, n: u16, d: usize, r: usize, h: usize, connected: bool) -> Result<()> {
  for k in 3..=d {
    let key = SliceKey { kind, n, k, d, r, h };
    if key.validate().is_err() {
      continue;
    }
    let upper = boundary_out(&key, connected)?;
    let lower = boundary_out(&SliceKey { k: k - 1, ..key }, connected)?;
    if !lower.mul(&upper)?.is_zero() {
      return Err(crate::error::Error::Integrity(format!("{key}: boundary squared is nonzero")));
    }
  }
  Ok(())
}

/// Betti number at one vertex summed over the hair counts, for a fixed rank
/// or summed over all ranks up to `3d`.
pub fn h1(kind: OperadKind, n: u16, d: usize, r: Option<usize>, connected: bool) -> Result<usize> {
  let ranks: Vec<usize> = match r {
    Some(r) => vec![r],
    None => (0..=d + 1).collect(),
  };
  let mut total = 0;
  for r in ranks {
    for h in 0..=3 * d {
      let key = SliceKey { kind, n, k: 1, d, r, h };
      if key.validate().is_err() {
        continue;
      }
      total += slice_homology(&key, connected)?.betti;
    }
  }
  Ok(total)
}
